#include "core/sweep.hpp"

#include "core/eigensystem.hpp"
#include "core/two_level.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace eplab {

namespace {

struct PointRecord {
  double a = 0.0;
  cplx ev1, ev2, z;
  cplx v1[2], v2[2];
  double r1 = 0.0, r2 = 0.0;
  bool defect = false;
  double scale = 1.0;
  double e1_bare = 0.0, e2_bare = 0.0;
};

int effective_threads(int requested, std::size_t n) {
  unsigned hw = std::thread::hardware_concurrency();
  int eff = requested > 0 ? requested : (hw > 0 ? static_cast<int>(hw) : 1);
  if (const char *s = std::getenv("EP_LAB_THREADS")) {
    char *end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v > 0)
      eff = std::min(eff, static_cast<int>(std::min(v, 1024L)));
    // 0 or malformed leaves the automatic choice in place
  }
  if (eff < 1)
    eff = 1;
  if (static_cast<std::size_t>(eff) > n)
    eff = static_cast<int>(n);
  return eff;
}

PointRecord evaluate_point(const Scenario &sc, std::size_t k) {
  PointRecord rec;
  rec.a = sc.grid.point(k);
  System sys = sc.system_at(rec.a);
  validate(sys); // an affine family can overflow at a single grid point
  cplx delta = sc.delta_at(rec.a);
  cplx mean = 0.5 * (sys.eps1() + sys.eps2());
  SpectralPair sp = eigenvalues_from(mean, delta, sys.omega);
  rec.scale = scale_of(sys);

  cplx trace_diff = (sp.ev1 + sp.ev2) - (sys.eps1() + sys.eps2());
  if (std::abs(trace_diff) > 1e-10 * rec.scale)
    throw Error(Errc::internal, "trace conservation violated");

  EigenPair pr = eigenvectors(sys, &sp, &delta);
  rec.ev1 = sp.ev1;
  rec.ev2 = sp.ev2;
  rec.z = sp.z;
  rec.v1[0] = pr.v1[0];
  rec.v1[1] = pr.v1[1];
  rec.v2[0] = pr.v2[0];
  rec.v2[1] = pr.v2[1];
  rec.r1 = std::abs(pr.r1);
  rec.r2 = std::abs(pr.r2);
  rec.defect = pr.defect;
  rec.e1_bare = sc.e1.at(rec.a);
  rec.e2_bare = sc.e2.at(rec.a);
  return rec;
}

} // namespace

SweepResult run_sweep(const Scenario &sc, int threads) {
  sc.validate();
  const std::size_t n = static_cast<std::size_t>(sc.grid.count);
  std::vector<PointRecord> pts(n);

  // Concurrent phase: every point is independent, so any partition yields
  // identical records. Failures keep the lowest grid index.
  struct Failure {
    std::size_t k;
    Errc code;
    std::string msg;
  };
  std::mutex fail_mtx;
  bool failed = false;
  Failure first_fail{0, Errc::internal, ""};

  int eff = effective_threads(threads, n);
  auto worker = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      try {
        pts[k] = evaluate_point(sc, k);
      } catch (const Error &e) {
        std::lock_guard<std::mutex> g(fail_mtx);
        if (!failed || k < first_fail.k) {
          failed = true;
          first_fail = {k, e.code(), e.what()};
        }
        return;
      } catch (const std::exception &e) {
        std::lock_guard<std::mutex> g(fail_mtx);
        if (!failed || k < first_fail.k) {
          failed = true;
          first_fail = {k, Errc::internal, e.what()};
        }
        return;
      }
    }
  };

  if (eff <= 1) {
    worker(0, n);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(eff));
    std::size_t chunk = (n + static_cast<std::size_t>(eff) - 1) /
                        static_cast<std::size_t>(eff);
    for (int t = 0; t < eff; ++t) {
      std::size_t lo = static_cast<std::size_t>(t) * chunk;
      std::size_t hi = std::min(n, lo + chunk);
      if (lo >= hi)
        break;
      pool.emplace_back(worker, lo, hi);
    }
    for (auto &th : pool)
      th.join();
  }

  if (failed)
    throw Error(first_fail.code, first_fail.msg + " at grid index " +
                                     std::to_string(first_fail.k));

  // Sequential tracking phase. perm == false keeps the canonical order,
  // perm == true swaps the branches relative to it.
  SweepResult out;
  out.rows.resize(n);
  bool perm = false;
  bool prev_near_ep = false;
  cplx prev1, prev2;

  for (std::size_t k = 0; k < n; ++k) {
    const PointRecord &p = pts[k];
    double zabs = std::abs(p.z);
    bool near_ep = zabs < 1e-6 * p.scale || p.defect;
    bool prev_perm = perm;

    if (k > 0 && !near_ep && !prev_near_ep) {
      double keep = std::abs(p.ev1 - prev1) + std::abs(p.ev2 - prev2);
      double swp = std::abs(p.ev2 - prev1) + std::abs(p.ev1 - prev2);
      perm = swp < keep;
    }
    // else: pairing frozen across the defect neighborhood

    SweepRow &row = out.rows[k];
    row.a = p.a;
    const cplx &f1 = perm ? p.ev2 : p.ev1;
    const cplx &f2 = perm ? p.ev1 : p.ev2;
    const cplx *w1 = perm ? p.v2 : p.v1;
    const cplx *w2 = perm ? p.v1 : p.v2;
    row.E1 = f1.real();
    row.G1_half = f1.imag();
    row.E2 = f2.real();
    row.G2_half = f2.imag();
    row.b11sq = std::norm(w1[0]);
    row.b12sq = std::norm(w1[1]);
    row.b21sq = std::norm(w2[0]);
    row.b22sq = std::norm(w2[1]);
    row.r1_abs = perm ? p.r2 : p.r1;
    row.r2_abs = perm ? p.r1 : p.r2;
    row.z_abs = zabs;
    row.defect = p.defect;
    row.swapped = k > 0 && perm != prev_perm;
    if (row.swapped)
      ++out.swap_count;
    row.e1_bare = p.e1_bare;
    row.e2_bare = p.e2_bare;

    prev1 = f1;
    prev2 = f2;
    prev_near_ep = near_ep;
  }

  return out;
}

} // namespace eplab

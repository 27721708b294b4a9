#include "core/ep_locator.hpp"

#include "core/two_level.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace eplab {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double abs_z_of(cplx radicand) { return 0.5 * std::sqrt(std::abs(radicand)); }

BranchContext context_of(const System &sys) {
  switch (classify_branch(sys)) {
  case Branch::z_real:
    return BranchContext::z_real_side;
  case Branch::z_imag:
    return BranchContext::z_imag_side;
  default:
    return BranchContext::none;
  }
}

double step_ulp(double v, int d) {
  if (d > 0)
    return std::nextafter(v, std::numeric_limits<double>::infinity());
  if (d < 0)
    return std::nextafter(v, -std::numeric_limits<double>::infinity());
  return v;
}

// Maps the two named unknowns onto (a, omega) overrides for a scenario.
struct UnknownMap {
  const Scenario &sc;
  double fixed_a;
  std::array<int, 2> kind; // 0 = a, 1 = omega_r, 2 = omega_i

  UnknownMap(const Scenario &s, const std::array<std::string, 2> &names,
             double fa)
      : sc(s), fixed_a(fa) {
    for (int i = 0; i < 2; ++i) {
      if (names[i] == "a")
        kind[i] = 0;
      else if (names[i] == "omega_r")
        kind[i] = 1;
      else if (names[i] == "omega_i")
        kind[i] = 2;
      else
        throw Error(Errc::invalid_argument,
                    "unknown parameter name '" + names[i] +
                        "' (choose from a, omega_r, omega_i)");
    }
    if (kind[0] == kind[1])
      throw Error(Errc::invalid_argument, "the two unknowns must be distinct");
  }

  System system_at(const std::array<double, 2> &x) const {
    double a = fixed_a;
    for (int i = 0; i < 2; ++i)
      if (kind[i] == 0)
        a = x[i];
    cplx w = sc.omega.at(a);
    for (int i = 0; i < 2; ++i) {
      if (kind[i] == 1)
        w.real(x[i]);
      else if (kind[i] == 2)
        w.imag(x[i]);
    }
    return {sc.e1.at(a), sc.e2.at(a), sc.g1, sc.g2, w};
  }

  // radicand of (2Z)^2 with the level difference evaluated coefficient-first
  cplx radicand_at(const std::array<double, 2> &x) const {
    double a = fixed_a;
    for (int i = 0; i < 2; ++i)
      if (kind[i] == 0)
        a = x[i];
    cplx w = sc.omega.at(a);
    for (int i = 0; i < 2; ++i) {
      if (kind[i] == 1)
        w.real(x[i]);
      else if (kind[i] == 2)
        w.imag(x[i]);
    }
    return splitting_radicand(sc.delta_at(a), w);
  }
};

} // namespace

Branch classify_branch(const System &sys) {
  const double tol = 1e-12 * scale_of(sys);
  const cplx z = discriminant(sys);
  if (std::abs(z.imag()) <= tol)
    return Branch::z_real;
  if (std::abs(z.real()) <= tol)
    return Branch::z_imag;
  return Branch::z_complex;
}

std::vector<EpSolution> eps_imaginary_coupling(const Scenario &sc,
                                               double omega_i, double a_lo,
                                               double a_hi) {
  if (!std::isfinite(omega_i) || !std::isfinite(a_lo) || !std::isfinite(a_hi))
    throw Error(Errc::invalid_argument, "arguments must be finite");
  if (!(a_lo < a_hi))
    throw Error(Errc::invalid_argument, "empty bracketing interval");
  if (sc.g1 != sc.g2)
    throw Error(Errc::invalid_argument,
                "imaginary-coupling solver requires equal widths g1 == g2");

  const double dc1 = sc.e1.c1 - sc.e2.c1;
  const cplx w_eff(0.0, omega_i);
  const double targets[2] = {2.0 * omega_i, -2.0 * omega_i};

  std::vector<double> roots;
  for (double t : targets) {
    if (dc1 == 0.0) {
      if (sc.delta_real_at(a_lo) == t)
        throw Error(Errc::no_convergence,
                    "degenerate family: e1 - e2 is constant and meets the "
                    "crossing condition everywhere");
      continue;
    }
    auto f = [&](double a) { return sc.delta_real_at(a) - t; };
    const int n = 2048;
    const double span = a_hi - a_lo;
    double a_prev = a_lo;
    double f_prev = f(a_prev);
    for (int i = 1; i <= n; ++i) {
      const double a_cur =
          (i == n) ? a_hi : a_lo + (static_cast<double>(i) * span) / n;
      const double f_cur = f(a_cur);
      if (f_prev == 0.0)
        roots.push_back(a_prev);
      else if ((f_prev < 0.0 && f_cur > 0.0) || (f_prev > 0.0 && f_cur < 0.0)) {
        double l = a_prev, r = a_cur, fl = f_prev;
        while (true) {
          const double m = 0.5 * (l + r);
          if (m <= l || m >= r)
            break;
          const double fm = f(m);
          if (fm == 0.0) {
            l = r = m;
            break;
          }
          if ((fm < 0.0) == (fl < 0.0)) {
            l = m;
            fl = fm;
          } else {
            r = m;
          }
        }
        roots.push_back(std::abs(f(l)) <= std::abs(f(r)) ? l : r);
      }
      a_prev = a_cur;
      f_prev = f_cur;
    }
    if (f_prev == 0.0)
      roots.push_back(a_hi);
  }

  // local scan over neighboring representable a minimizing |Z|
  for (double &root : roots) {
    double best_a = root;
    double best = abs_z_of(splitting_radicand(sc.delta_at(root), w_eff));
    for (int d = -32; d <= 32; ++d) {
      double a = root;
      for (int s = 0; s < std::abs(d); ++s)
        a = step_ulp(a, d);
      const double az = abs_z_of(splitting_radicand(sc.delta_at(a), w_eff));
      if (az < best) {
        best = az;
        best_a = a;
      }
    }
    root = best_a;
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots) {
    if (unique.empty() || std::abs(r - unique.back()) > 1e-12 * std::max(1.0, std::abs(r)))
      unique.push_back(r);
  }
  if (unique.empty())
    throw Error(Errc::no_root_in_interval,
                "no crossing of e1(a) - e2(a) = +-2*omega_i in the interval");

  std::vector<EpSolution> out;
  for (double a : unique) {
    EpSolution s;
    s.params = {{"a", a}, {"omega_i", omega_i}};
    s.residual = abs_z_of(splitting_radicand(sc.delta_at(a), w_eff));
    s.kind = EpKind::analytic_imag_coupling;
    const double a_off = a + 1e-3;
    s.branch_context = context_of(
        {sc.e1.at(a_off), sc.e2.at(a_off), sc.g1, sc.g2, w_eff});
    out.push_back(std::move(s));
  }
  return out;
}

std::array<EpSolution, 2> eps_gainloss_real_coupling(double g1, double g2) {
  if (!std::isfinite(g1) || !std::isfinite(g2))
    throw Error(Errc::invalid_argument, "widths must be finite");
  if (g1 == g2)
    throw Error(Errc::degenerate_widths,
                "equal widths leave only the trivial crossing omega_r = 0");
  const double v = (g1 - g2) / 4.0;
  const cplx delta(0.0, 0.5 * (g1 - g2));
  std::array<EpSolution, 2> out;
  int idx = 0;
  for (double wr : {v, -v}) {
    EpSolution s;
    s.params = {{"omega_r", wr}};
    s.residual = abs_z_of(splitting_radicand(delta, cplx(wr, 0.0)));
    s.kind = EpKind::analytic_gainloss;
    s.branch_context =
        context_of({0.0, 0.0, g1, g2, cplx(wr + 1e-3, 0.0)});
    out[idx++] = std::move(s);
  }
  return out;
}

EpSolution find_ep(const Scenario &sc,
                   const std::array<std::string, 2> &unknowns, double fixed_a,
                   const std::array<double, 2> &box_lo,
                   const std::array<double, 2> &box_hi,
                   const std::optional<std::array<double, 2>> &seed) {
  const UnknownMap um(sc, unknowns, fixed_a);
  for (int i = 0; i < 2; ++i) {
    if (!std::isfinite(box_lo[i]) || !std::isfinite(box_hi[i]) ||
        !(box_lo[i] < box_hi[i]))
      throw Error(Errc::invalid_argument, "search box must be a finite, "
                                          "nonempty interval per unknown");
  }
  const auto inside = [&](const std::array<double, 2> &x) {
    return x[0] >= box_lo[0] && x[0] <= box_hi[0] && x[1] >= box_lo[1] &&
           x[1] <= box_hi[1];
  };

  std::array<double, 2> x;
  if (seed) {
    if (!inside(*seed))
      throw Error(Errc::invalid_argument, "seed must lie inside the box");
    x = *seed;
  } else {
    // deterministic coarse scan; ties keep the smallest index
    double best = std::numeric_limits<double>::infinity();
    int degenerate_cells = 0;
    std::array<double, 2> best_x = {box_lo[0], box_lo[1]};
    for (int i = 0; i <= 100; ++i) {
      const double xi =
          box_lo[0] + (static_cast<double>(i) * (box_hi[0] - box_lo[0])) / 100;
      for (int j = 0; j <= 100; ++j) {
        const double xj = box_lo[1] +
                          (static_cast<double>(j) * (box_hi[1] - box_lo[1])) / 100;
        const std::array<double, 2> p = {xi, xj};
        const double ar = std::abs(um.radicand_at(p));
        if (abs_z_of(um.radicand_at(p)) <= 1e-6 * scale_of(um.system_at(p)))
          ++degenerate_cells;
        if (ar < best) {
          best = ar;
          best_x = p;
        }
      }
    }
    if (degenerate_cells >= 30)
      throw Error(Errc::no_convergence,
                  "degenerate family: near-zero Z fills a continuum of the "
                  "box; no isolated solution to report");
    x = best_x;
  }

  cplx R = um.radicand_at(x);

  const auto polish = [&](std::array<double, 2> &p, cplx &r) {
    for (int moves = 0; moves < 200; ++moves) {
      double best = std::abs(r);
      std::array<double, 2> best_p = p;
      cplx best_r = r;
      bool improved = false;
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0)
            continue;
          const std::array<double, 2> q = {step_ulp(p[0], di),
                                           step_ulp(p[1], dj)};
          if (!inside(q))
            continue;
          const cplx rq = um.radicand_at(q);
          if (std::abs(rq) < best) {
            best = std::abs(rq);
            best_p = q;
            best_r = rq;
            improved = true;
          }
        }
      }
      if (!improved)
        break;
      p = best_p;
      r = best_r;
    }
  };

  const auto finish = [&](const std::array<double, 2> &p,
                          const cplx &r) -> EpSolution {
    EpSolution s;
    s.params = {{unknowns[0], p[0]}, {unknowns[1], p[1]}};
    s.residual = abs_z_of(r);
    s.kind = EpKind::newton_general;
    std::array<double, 2> off = p;
    off[0] += 1e-3;
    s.branch_context = context_of(um.system_at(off));
    return s;
  };

  for (int iter = 0; iter < 200; ++iter) {
    const double sx = scale_of(um.system_at(x));
    const double conv = 4e-20 * sx * sx; // |Z^2| <= (1e-10*scale)^2
    if (std::abs(R) <= conv)
      return finish(x, R);

    // forward-difference Jacobian of (Re R, Im R)
    double J[2][2];
    for (int j = 0; j < 2; ++j) {
      const double hj = 1e-8 * std::max(1.0, std::abs(x[j]));
      std::array<double, 2> xp = x;
      xp[j] += hj;
      const cplx Rp = um.radicand_at(xp);
      J[0][j] = (Rp.real() - R.real()) / hj;
      J[1][j] = (Rp.imag() - R.imag()) / hj;
    }
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    const double row0 = std::abs(J[0][0]) + std::abs(J[0][1]);
    const double row1 = std::abs(J[1][0]) + std::abs(J[1][1]);
    const bool stall_zone = std::abs(R) <= 1e-12 * sx * sx;
    if (std::abs(det) <= 1e-14 * row0 * row1) {
      if (stall_zone) {
        polish(x, R);
        const double s2 = scale_of(um.system_at(x));
        if (std::abs(R) <= 4e-20 * s2 * s2)
          return finish(x, R);
      }
      throw Error(Errc::no_convergence,
                  "singular Jacobian; Z^2 has no simple zero nearby");
    }

    const double fx = R.real(), fy = R.imag();
    const double dx0 = -(J[1][1] * fx - J[0][1] * fy) / det;
    const double dx1 = -(-J[1][0] * fx + J[0][0] * fy) / det;

    double lambda = 1.0;
    bool accepted = false;
    std::array<double, 2> xn = x;
    cplx Rn = R;
    for (int halve = 0; halve <= 30; ++halve) {
      xn = {x[0] + lambda * dx0, x[1] + lambda * dx1};
      Rn = um.radicand_at(xn);
      if (std::abs(Rn) < std::abs(R)) {
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      if (stall_zone) {
        polish(x, R);
        const double s2 = scale_of(um.system_at(x));
        if (std::abs(R) <= 4e-20 * s2 * s2)
          return finish(x, R);
      }
      throw Error(Errc::no_convergence,
                  "stalled: step damping failed to reduce |Z^2|");
    }
    if (!inside(xn))
      throw Error(Errc::left_box, "iterate left the search box");
    x = xn;
    R = Rn;
  }
  throw Error(Errc::no_convergence, "no convergence within 200 iterations");
}

Certificate no_ep_certificate(const Scenario &sc) {
  if (sc.omega.c0.real() != 0.0 || sc.omega.c1.real() != 0.0)
    throw Error(Errc::family_mismatch,
                "certificate requires a purely imaginary coupling family");
  if (sc.g1 == sc.g2)
    throw Error(Errc::family_mismatch,
                "equal widths admit exceptional points under imaginary "
                "coupling; nothing to certify");

  Certificate c;
  c.min_abs_z = std::numeric_limits<double>::infinity();
  c.a_at_min = sc.grid.start;
  c.min_bound = kNan;
  c.obstruction = kNan;
  for (int k = 0; k < sc.grid.count; ++k) {
    const double a = sc.grid.point(k);
    const double az =
        abs_z_of(splitting_radicand(sc.delta_at(a), sc.omega.at(a)));
    if (az < c.min_abs_z) {
      c.min_abs_z = az;
      c.a_at_min = a;
    }
  }

  char buf[512];
  if (sc.e1.c0 == sc.e2.c0 && sc.e1.c1 == sc.e2.c1) {
    c.family = 1;
    const double dg = sc.g1 - sc.g2;
    double wmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < sc.grid.count; ++k)
      wmin = std::min(wmin, std::abs(sc.omega.at(sc.grid.point(k)).imag()));
    c.min_bound = (dg * dg) / 4.0 + 4.0 * (wmin * wmin);
    std::snprintf(buf, sizeof buf,
                  "no exceptional point: coinciding levels with imaginary "
                  "coupling give |2Z|^2 = (g1-g2)^2/4 + 4*omega_i(a)^2 >= %g "
                  "> 0 for every a; min |Z| on the grid = %g at a = %g",
                  c.min_bound, c.min_abs_z, c.a_at_min);
  } else {
    c.family = 2;
    const double dg = sc.g1 - sc.g2;
    double ob = std::numeric_limits<double>::infinity();
    bool have = false;
    for (int k = 0; k < sc.grid.count; ++k) {
      const double val = sc.delta_real_at(sc.grid.point(k)) * dg;
      if (val == 0.0)
        throw Error(Errc::family_mismatch,
                    "the obstruction (e1-e2)(g1-g2) vanishes at grid index " +
                        std::to_string(k) + "; no certificate applies");
      if (!have || std::abs(val) < std::abs(ob)) {
        ob = val;
        have = true;
      }
    }
    c.obstruction = ob;
    std::snprintf(buf, sizeof buf,
                  "no exceptional point on the grid: with omega_r = 0, "
                  "Im(4Z^2) = (e1(a)-e2(a))*(g1-g2) stays away from zero "
                  "(smallest value %g), so Z cannot vanish; min |Z| on the "
                  "grid = %g at a = %g",
                  c.obstruction, c.min_abs_z, c.a_at_min);
  }
  c.text = buf;
  return c;
}

} // namespace eplab

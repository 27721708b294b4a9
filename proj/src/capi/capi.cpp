#include "eplab/eplab.h"

#include "core/eigensystem.hpp"
#include "core/ep_locator.hpp"
#include "core/scenario.hpp"
#include "core/smatrix.hpp"
#include "core/sweep.hpp"
#include "core/two_level.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <string>
#include <vector>

struct eplab_scenario {
  eplab::Scenario sc;
};

struct eplab_sweep {
  eplab::SweepResult res;
};

namespace {

thread_local std::string t_last_error;

eplab_status fail(eplab_status st, const char *msg) {
  t_last_error = msg;
  return st;
}

eplab_status null_arg() {
  return fail(EPLAB_ERR_INVALID_ARGUMENT, "null pointer argument");
}

template <typename F> eplab_status guarded(F &&fn) {
  try {
    fn();
    return EPLAB_OK;
  } catch (const eplab::Error &e) {
    t_last_error = e.what();
    return static_cast<eplab_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc &) {
    t_last_error = "out of memory";
    return EPLAB_ERR_INTERNAL;
  } catch (const std::exception &e) {
    t_last_error = e.what();
    return EPLAB_ERR_INTERNAL;
  }
}

eplab_complex to_c(eplab::cplx z) { return {z.real(), z.imag()}; }
eplab::cplx from_c(eplab_complex z) { return {z.re, z.im}; }

eplab::System from_c(const eplab_system &s) {
  return {s.e1, s.e2, s.g1, s.g2, from_c(s.omega)};
}

eplab::SpectralPair from_c(const eplab_spectral_pair &p) {
  return {from_c(p.ev1), from_c(p.ev2), from_c(p.z)};
}

void copy_pair(const eplab::EigenPair &pr, eplab_eigenvector_pair *out) {
  for (int i = 0; i < 2; ++i) {
    out->v1[i] = to_c(pr.v1[i]);
    out->v2[i] = to_c(pr.v2[i]);
  }
  out->rigidity1 = to_c(pr.r1);
  out->rigidity2 = to_c(pr.r2);
  out->defect = pr.defect ? 1 : 0;
}

void copy_solution(const eplab::EpSolution &sol, eplab_ep_solution *out) {
  out->nparams = static_cast<int>(std::min<std::size_t>(sol.params.size(), 2));
  for (int i = 0; i < 2; ++i) {
    std::memset(out->params[i].name, 0, sizeof out->params[i].name);
    out->params[i].value = 0.0;
  }
  for (int i = 0; i < out->nparams; ++i) {
    std::snprintf(out->params[i].name, sizeof out->params[i].name, "%s",
                  sol.params[static_cast<std::size_t>(i)].name.c_str());
    out->params[i].value = sol.params[static_cast<std::size_t>(i)].value;
  }
  out->residual = sol.residual;
  out->kind = static_cast<int>(sol.kind);
  out->branch_context = static_cast<int>(sol.branch_context);
}

void copy_peak(const eplab::Peak &p, eplab_peak *out) {
  out->position = p.position;
  out->height = p.height;
  out->left_halfwidth = p.left_halfwidth;
  out->right_halfwidth = p.right_halfwidth;
  out->asymmetry = p.asymmetry;
}

} // namespace

extern "C" {

const char *eplab_version(void) { return EPLAB_VERSION_STRING; }

const char *eplab_last_error(void) { return t_last_error.c_str(); }

/* ---- spectral core ---- */

eplab_status eplab_discriminant(const eplab_system *sys,
                                eplab_complex *z_out) {
  if (!sys || !z_out)
    return null_arg();
  return guarded([&] { *z_out = to_c(eplab::discriminant(from_c(*sys))); });
}

eplab_status eplab_eigenvalues(const eplab_system *sys,
                               eplab_spectral_pair *out) {
  if (!sys || !out)
    return null_arg();
  return guarded([&] {
    eplab::SpectralPair sp = eplab::eigenvalues(from_c(*sys));
    out->ev1 = to_c(sp.ev1);
    out->ev2 = to_c(sp.ev2);
    out->z = to_c(sp.z);
  });
}

eplab_status eplab_hamiltonian(const eplab_system *sys, eplab_complex out[4]) {
  if (!sys || !out)
    return null_arg();
  return guarded([&] {
    eplab::cplx h[4];
    eplab::hamiltonian(from_c(*sys), h);
    for (int i = 0; i < 4; ++i)
      out[i] = to_c(h[i]);
  });
}

/* ---- eigensystem ---- */

eplab_status eplab_eigenvectors(const eplab_system *sys,
                                const eplab_spectral_pair *pair,
                                eplab_eigenvector_pair *out) {
  if (!sys || !out)
    return null_arg();
  return guarded([&] {
    eplab::SpectralPair sp;
    const eplab::SpectralPair *given = nullptr;
    if (pair) {
      sp = from_c(*pair);
      given = &sp;
    }
    eplab::EigenPair pr = eplab::eigenvectors(from_c(*sys), given, nullptr);
    copy_pair(pr, out);
  });
}

eplab_status eplab_phase_rigidity(const eplab_complex v[2],
                                  eplab_complex *r_out) {
  if (!v || !r_out)
    return null_arg();
  return guarded([&] {
    eplab::cplx w[2] = {from_c(v[0]), from_c(v[1])};
    *r_out = to_c(eplab::phase_rigidity(w));
  });
}

eplab_status eplab_mixing_coefficients(const eplab_system *sys,
                                       const eplab_spectral_pair *pair,
                                       eplab_mixing_table *out) {
  if (!sys || !out)
    return null_arg();
  return guarded([&] {
    eplab::SpectralPair sp;
    const eplab::SpectralPair *given = nullptr;
    if (pair) {
      sp = from_c(*pair);
      given = &sp;
    }
    eplab::EigenPair pr = eplab::eigenvectors(from_c(*sys), given, nullptr);
    eplab::MixingTable mt = eplab::mixing_coefficients(pr);
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l) {
        out->b[k][l] = to_c(mt.b[k][l]);
        out->theta[k][l] = mt.theta[k][l];
      }
    out->defect = mt.defect ? 1 : 0;
  });
}

eplab_status eplab_coalescence_metric(const eplab_system *sys,
                                      const eplab_spectral_pair *pair,
                                      double *out) {
  if (!sys || !out)
    return null_arg();
  return guarded([&] {
    eplab::SpectralPair sp;
    const eplab::SpectralPair *given = nullptr;
    if (pair) {
      sp = from_c(*pair);
      given = &sp;
    }
    eplab::EigenPair pr = eplab::eigenvectors(from_c(*sys), given, nullptr);
    *out = eplab::coalescence_metric(pr);
  });
}

eplab_status eplab_classify_branch(const eplab_system *sys, int *branch_out) {
  if (!sys || !branch_out)
    return null_arg();
  return guarded([&] {
    *branch_out = static_cast<int>(eplab::classify_branch(from_c(*sys)));
  });
}

/* ---- scenarios ---- */

eplab_status eplab_scenario_preset(const char *name, eplab_scenario **out) {
  if (!name || !out)
    return null_arg();
  return guarded([&] { *out = new eplab_scenario{eplab::preset(name)}; });
}

eplab_status eplab_scenario_parse(const char *json_text,
                                  eplab_scenario **out) {
  if (!json_text || !out)
    return null_arg();
  return guarded(
      [&] { *out = new eplab_scenario{eplab::parse_scenario(json_text)}; });
}

eplab_status eplab_scenario_set_grid(eplab_scenario *sc, double start,
                                     double stop, int count) {
  if (!sc)
    return null_arg();
  return guarded([&] {
    eplab::Scenario tmp = sc->sc;
    tmp.grid = {start, stop, count};
    tmp.validate();
    sc->sc = std::move(tmp);
  });
}

eplab_status eplab_scenario_to_json(const eplab_scenario *sc,
                                    char **json_out) {
  if (!sc || !json_out)
    return null_arg();
  return guarded([&] {
    std::string s = eplab::scenario_to_json(sc->sc);
    char *buf = static_cast<char *>(std::malloc(s.size() + 1));
    if (!buf)
      throw std::bad_alloc();
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *json_out = buf;
  });
}

eplab_status eplab_scenario_system_at(const eplab_scenario *sc, double a,
                                      eplab_system *out) {
  if (!sc || !out)
    return null_arg();
  if (!std::isfinite(a))
    return fail(EPLAB_ERR_INVALID_ARGUMENT, "parameter a must be finite");
  return guarded([&] {
    eplab::System sys = sc->sc.system_at(a);
    out->e1 = sys.e1;
    out->e2 = sys.e2;
    out->g1 = sys.g1;
    out->g2 = sys.g2;
    out->omega = to_c(sys.omega);
  });
}

eplab_status eplab_scenario_grid(const eplab_scenario *sc, double *start,
                                 double *stop, int *count) {
  if (!sc)
    return null_arg();
  if (start)
    *start = sc->sc.grid.start;
  if (stop)
    *stop = sc->sc.grid.stop;
  if (count)
    *count = sc->sc.grid.count;
  return EPLAB_OK;
}

eplab_status eplab_scenario_grid_point(const eplab_scenario *sc, int k,
                                       double *a_out) {
  if (!sc || !a_out)
    return null_arg();
  if (k < 0 || k >= sc->sc.grid.count)
    return fail(EPLAB_ERR_INVALID_ARGUMENT, "grid index out of range");
  *a_out = sc->sc.grid.point(k);
  return EPLAB_OK;
}

const char *eplab_scenario_name(const eplab_scenario *sc) {
  return sc ? sc->sc.name.c_str() : "";
}

void eplab_scenario_free(eplab_scenario *sc) { delete sc; }

void eplab_string_free(char *s) { std::free(s); }

/* ---- sweep engine ---- */

eplab_status eplab_sweep_run(const eplab_scenario *sc, int threads,
                             eplab_sweep **out) {
  if (!sc || !out)
    return null_arg();
  return guarded(
      [&] { *out = new eplab_sweep{eplab::run_sweep(sc->sc, threads)}; });
}

int eplab_sweep_count(const eplab_sweep *sw) {
  return sw ? static_cast<int>(sw->res.rows.size()) : 0;
}

eplab_status eplab_sweep_row_at(const eplab_sweep *sw, int k,
                                eplab_sweep_row *out) {
  if (!sw || !out)
    return null_arg();
  if (k < 0 || k >= static_cast<int>(sw->res.rows.size()))
    return fail(EPLAB_ERR_INVALID_ARGUMENT, "row index out of range");
  const eplab::SweepRow &r = sw->res.rows[static_cast<std::size_t>(k)];
  out->a = r.a;
  out->E1 = r.E1;
  out->E2 = r.E2;
  out->G1_half = r.G1_half;
  out->G2_half = r.G2_half;
  out->b11sq = r.b11sq;
  out->b12sq = r.b12sq;
  out->b21sq = r.b21sq;
  out->b22sq = r.b22sq;
  out->r1_abs = r.r1_abs;
  out->r2_abs = r.r2_abs;
  out->Z_abs = r.z_abs;
  out->defect = r.defect ? 1 : 0;
  out->swapped = r.swapped ? 1 : 0;
  out->e1_bare = r.e1_bare;
  out->e2_bare = r.e2_bare;
  return EPLAB_OK;
}

int eplab_sweep_swap_count(const eplab_sweep *sw) {
  return sw ? sw->res.swap_count : 0;
}

void eplab_sweep_free(eplab_sweep *sw) { delete sw; }

/* ---- exceptional point location ---- */

eplab_status eplab_find_ep(const eplab_scenario *sc, const char *unknown1,
                           const char *unknown2, double fixed_a,
                           const double box_lo[2], const double box_hi[2],
                           const double *seed2, eplab_ep_solution *out) {
  if (!sc || !unknown1 || !unknown2 || !box_lo || !box_hi || !out)
    return null_arg();
  return guarded([&] {
    std::optional<std::array<double, 2>> seed;
    if (seed2)
      seed = std::array<double, 2>{seed2[0], seed2[1]};
    eplab::EpSolution sol =
        eplab::find_ep(sc->sc, {unknown1, unknown2}, fixed_a,
                       {box_lo[0], box_lo[1]}, {box_hi[0], box_hi[1]}, seed);
    copy_solution(sol, out);
  });
}

eplab_status eplab_eps_imaginary_coupling(const eplab_scenario *sc,
                                          double omega_i, double a_lo,
                                          double a_hi, eplab_ep_solution *out,
                                          int cap, int *nfound) {
  if (!sc || !nfound || (cap > 0 && !out))
    return null_arg();
  return guarded([&] {
    std::vector<eplab::EpSolution> sols =
        eplab::eps_imaginary_coupling(sc->sc, omega_i, a_lo, a_hi);
    int n = std::min<int>(static_cast<int>(sols.size()), std::max(cap, 0));
    for (int i = 0; i < n; ++i)
      copy_solution(sols[static_cast<std::size_t>(i)], &out[i]);
    *nfound = n;
  });
}

eplab_status eplab_eps_gainloss_real_coupling(double g1, double g2,
                                              eplab_ep_solution out[2]) {
  if (!out)
    return null_arg();
  return guarded([&] {
    std::array<eplab::EpSolution, 2> sols =
        eplab::eps_gainloss_real_coupling(g1, g2);
    copy_solution(sols[0], &out[0]);
    copy_solution(sols[1], &out[1]);
  });
}

eplab_status eplab_no_ep_certificate(const eplab_scenario *sc,
                                     eplab_certificate *out) {
  if (!sc || !out)
    return null_arg();
  return guarded([&] {
    eplab::Certificate c = eplab::no_ep_certificate(sc->sc);
    out->family = c.family;
    out->min_bound = c.min_bound;
    out->min_abs_z = c.min_abs_z;
    out->a_at_min = c.a_at_min;
    out->obstruction = c.obstruction;
    std::snprintf(out->text, sizeof out->text, "%s", c.text.c_str());
  });
}

/* ---- S-matrix ---- */

eplab_status eplab_s_one(double energy, double e_res, double g_res,
                         eplab_complex *out) {
  if (!out)
    return null_arg();
  return guarded([&] { *out = to_c(eplab::s_one(energy, e_res, g_res)); });
}

eplab_status eplab_s_two(double energy, double e_res1, double g_res1,
                         double e_res2, double g_res2, eplab_complex *out) {
  if (!out)
    return null_arg();
  return guarded([&] {
    *out = to_c(eplab::s_two(energy, e_res1, g_res1, e_res2, g_res2));
  });
}

eplab_status eplab_s_double_pole(double energy, double e_d, double g_d,
                                 eplab_complex *out) {
  if (!out)
    return null_arg();
  return guarded([&] { *out = to_c(eplab::s_double_pole(energy, e_d, g_d)); });
}

double eplab_cross_section(eplab_complex s) {
  return eplab::cross_section(from_c(s));
}

eplab_status eplab_line_shape_features(const double *energy,
                                       const double *sigma, int n,
                                       eplab_peak *peaks, int peaks_cap,
                                       int *npeaks, eplab_peak *minima,
                                       int minima_cap, int *nminima) {
  if (!energy || !sigma || !npeaks || !nminima)
    return null_arg();
  if ((peaks_cap > 0 && !peaks) || (minima_cap > 0 && !minima))
    return null_arg();
  if (n < 0)
    return fail(EPLAB_ERR_INVALID_ARGUMENT, "negative sample count");
  return guarded([&] {
    std::vector<double> e(energy, energy + n);
    std::vector<double> s(sigma, sigma + n);
    eplab::LineShapeFeatures f = eplab::line_shape_features(e, s);
    int np = std::min<int>(static_cast<int>(f.peaks.size()),
                           std::max(peaks_cap, 0));
    for (int i = 0; i < np; ++i)
      copy_peak(f.peaks[static_cast<std::size_t>(i)], &peaks[i]);
    int nm = std::min<int>(static_cast<int>(f.minima.size()),
                           std::max(minima_cap, 0));
    for (int i = 0; i < nm; ++i)
      copy_peak(f.minima[static_cast<std::size_t>(i)], &minima[i]);
    *npeaks = np;
    *nminima = nm;
  });
}

} /* extern "C" */

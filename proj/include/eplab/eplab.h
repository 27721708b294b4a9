#ifndef EPLAB_H
#define EPLAB_H

/* ep-lab: two-level non-Hermitian spectra, exceptional points and resonance
 * line shapes behind a plain C interface.
 *
 * Conventions:
 *  - g1, g2 are full widths, signed: negative = loss (decay), positive = gain.
 *    The complex level energies entering the matrix are e_k + (i/2) g_k.
 *  - Functions returning eplab_status leave their outputs untouched on
 *    failure; a message is retrievable via eplab_last_error() (thread local,
 *    valid until the next failing call on the same thread).
 *  - Opaque handles are released with their matching *_free function; passing
 *    NULL to a *_free function is a no-op.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum eplab_status {
  EPLAB_OK = 0,
  EPLAB_ERR_INVALID_ARGUMENT = 1,
  EPLAB_ERR_INCONSISTENT_SPECTRUM = 2,
  EPLAB_ERR_ZERO_VECTOR = 3,
  EPLAB_ERR_NO_ROOT_IN_INTERVAL = 4,
  EPLAB_ERR_DEGENERATE_WIDTHS = 5,
  EPLAB_ERR_NO_CONVERGENCE = 6,
  EPLAB_ERR_LEFT_BOX = 7,
  EPLAB_ERR_FAMILY_MISMATCH = 8,
  EPLAB_ERR_UNKNOWN_PRESET = 9,
  EPLAB_ERR_TOO_FEW_POINTS = 10,
  EPLAB_ERR_POLE_ON_REAL_AXIS = 11,
  EPLAB_ERR_PARSE = 12,
  EPLAB_ERR_IO = 13,
  EPLAB_ERR_INTERNAL = 14
} eplab_status;

const char *eplab_version(void);
const char *eplab_last_error(void);

/* ---- spectral core ---- */

typedef struct eplab_complex {
  double re, im;
} eplab_complex;

typedef struct eplab_system {
  double e1, e2;       /* bare level positions */
  double g1, g2;       /* full widths, signed */
  eplab_complex omega; /* symmetric coupling */
} eplab_system;

typedef struct eplab_spectral_pair {
  eplab_complex ev1, ev2; /* ev1 carries +Z */
  eplab_complex z;        /* half level splitting */
} eplab_spectral_pair;

eplab_status eplab_discriminant(const eplab_system *sys, eplab_complex *z_out);
eplab_status eplab_eigenvalues(const eplab_system *sys,
                               eplab_spectral_pair *out);
/* row-major [[eps1, omega], [omega, eps2]] */
eplab_status eplab_hamiltonian(const eplab_system *sys, eplab_complex out[4]);

/* ---- eigensystem ---- */

typedef struct eplab_eigenvector_pair {
  eplab_complex v1[2], v2[2];
  eplab_complex rigidity1, rigidity2;
  int defect; /* nonzero when the matrix is numerically defective */
} eplab_eigenvector_pair;

typedef struct eplab_mixing_table {
  eplab_complex b[2][2]; /* row k = components of eigenvector k */
  double theta[2][2];
  int defect;
} eplab_mixing_table;

/* pair may be NULL; when given it is validated against the system. */
eplab_status eplab_eigenvectors(const eplab_system *sys,
                                const eplab_spectral_pair *pair,
                                eplab_eigenvector_pair *out);
eplab_status eplab_phase_rigidity(const eplab_complex v[2],
                                  eplab_complex *r_out);
eplab_status eplab_mixing_coefficients(const eplab_system *sys,
                                       const eplab_spectral_pair *pair,
                                       eplab_mixing_table *out);
eplab_status eplab_coalescence_metric(const eplab_system *sys,
                                      const eplab_spectral_pair *pair,
                                      double *out);

typedef enum eplab_branch {
  EPLAB_BRANCH_Z_REAL = 0,
  EPLAB_BRANCH_Z_IMAG = 1,
  EPLAB_BRANCH_Z_COMPLEX = 2
} eplab_branch;

eplab_status eplab_classify_branch(const eplab_system *sys, int *branch_out);

/* ---- scenarios (affine parameter families) ---- */

typedef struct eplab_scenario eplab_scenario;

/* names: fig1_left, fig1_right, fig2_left, fig2_right */
eplab_status eplab_scenario_preset(const char *name, eplab_scenario **out);
/* JSON schema: {name, e1_expr:{c0,c1}, e2_expr:{c0,c1}, g1, g2,
 * omega_expr:{c0:[re,im], c1:[re,im]}, a_grid:{start,stop,count}, channels}.
 * A run manifest ({"command":..., "config":{...}}) is unwrapped. */
eplab_status eplab_scenario_parse(const char *json_text, eplab_scenario **out);
eplab_status eplab_scenario_set_grid(eplab_scenario *sc, double start,
                                     double stop, int count);
eplab_status eplab_scenario_to_json(const eplab_scenario *sc, char **json_out);
eplab_status eplab_scenario_system_at(const eplab_scenario *sc, double a,
                                      eplab_system *out);
eplab_status eplab_scenario_grid(const eplab_scenario *sc, double *start,
                                 double *stop, int *count);
eplab_status eplab_scenario_grid_point(const eplab_scenario *sc, int k,
                                       double *a_out);
const char *eplab_scenario_name(const eplab_scenario *sc);
void eplab_scenario_free(eplab_scenario *sc);
void eplab_string_free(char *s);

/* ---- sweep engine ---- */

typedef struct eplab_sweep_row {
  double a;
  double E1, E2;             /* tracked branch energies */
  double G1_half, G2_half;   /* tracked half widths */
  double b11sq, b12sq, b21sq, b22sq;
  double r1_abs, r2_abs;
  double Z_abs;
  int defect;  /* matrix numerically defective at this point */
  int swapped; /* branch pairing changed relative to the previous point */
  double e1_bare, e2_bare;
} eplab_sweep_row;

typedef struct eplab_sweep eplab_sweep;

/* threads: 0 = auto; the EP_LAB_THREADS environment variable caps it. */
eplab_status eplab_sweep_run(const eplab_scenario *sc, int threads,
                             eplab_sweep **out);
int eplab_sweep_count(const eplab_sweep *sw);
eplab_status eplab_sweep_row_at(const eplab_sweep *sw, int k,
                                eplab_sweep_row *out);
int eplab_sweep_swap_count(const eplab_sweep *sw);
void eplab_sweep_free(eplab_sweep *sw);

/* ---- exceptional point location ---- */

typedef enum eplab_ep_kind {
  EPLAB_EP_ANALYTIC_IMAG_COUPLING = 0,
  EPLAB_EP_ANALYTIC_GAINLOSS_REAL_COUPLING = 1,
  EPLAB_EP_NEWTON_GENERAL = 2
} eplab_ep_kind;

typedef enum eplab_branch_context {
  EPLAB_CONTEXT_Z_REAL_SIDE = 0,
  EPLAB_CONTEXT_Z_IMAG_SIDE = 1,
  EPLAB_CONTEXT_NONE = 2
} eplab_branch_context;

typedef struct eplab_param {
  char name[16];
  double value;
} eplab_param;

typedef struct eplab_ep_solution {
  eplab_param params[2];
  int nparams;
  double residual;    /* |Z| at the solution */
  int kind;           /* eplab_ep_kind */
  int branch_context; /* eplab_branch_context, adjacent to the solution */
} eplab_ep_solution;

/* Damped Newton on Re(Z^2) = Im(Z^2) = 0. unknown1/unknown2 name two distinct
 * members of {"a", "omega_r", "omega_i"}; omega unknowns replace the matching
 * component of the scenario's omega(a). fixed_a is used when "a" is not an
 * unknown. box_lo/box_hi bound the unknowns in order; seed2 may be NULL, in
 * which case a 101x101 grid scan of the box picks the seed. */
eplab_status eplab_find_ep(const eplab_scenario *sc, const char *unknown1,
                           const char *unknown2, double fixed_a,
                           const double box_lo[2], const double box_hi[2],
                           const double *seed2, eplab_ep_solution *out);

/* Bracketing + bisection for e1(a) - e2(a) = +-2*omega_i on [a_lo, a_hi];
 * requires g1 == g2. Stores up to cap solutions, *nfound = stored count. */
eplab_status eplab_eps_imaginary_coupling(const eplab_scenario *sc,
                                          double omega_i, double a_lo,
                                          double a_hi, eplab_ep_solution *out,
                                          int cap, int *nfound);

/* omega_r = +-(g1 - g2)/4 for e1 = e2; error when g1 == g2. */
eplab_status eplab_eps_gainloss_real_coupling(double g1, double g2,
                                              eplab_ep_solution out[2]);

typedef struct eplab_certificate {
  int family;        /* 1: e1 == e2 with g1 != g2;  2: pointwise obstruction */
  double min_bound;  /* family 1: lower bound for |2Z|^2 (NaN otherwise) */
  double min_abs_z;  /* smallest |Z| over the scenario grid */
  double a_at_min;
  double obstruction; /* family 2: smallest-|.| value of (e1-e2)(g1-g2) */
  char text[256];
} eplab_certificate;

/* Proof record that a purely imaginary coupling family has no exceptional
 * point on its grid. */
eplab_status eplab_no_ep_certificate(const eplab_scenario *sc,
                                     eplab_certificate *out);

/* ---- S-matrix ---- */

eplab_status eplab_s_one(double energy, double e_res, double g_res,
                         eplab_complex *out);
eplab_status eplab_s_two(double energy, double e_res1, double g_res1,
                         double e_res2, double g_res2, eplab_complex *out);
eplab_status eplab_s_double_pole(double energy, double e_d, double g_d,
                                 eplab_complex *out);
/* |1 - S|^2 with the proportionality constant fixed to 1. */
double eplab_cross_section(eplab_complex s);

typedef struct eplab_peak {
  double position, height;
  double left_halfwidth, right_halfwidth; /* NaN when no crossing found */
  double asymmetry;                       /* (right - left)/(right + left) */
} eplab_peak;

/* Discrete extrema of a sampled cross section plus half-height diagnostics.
 * minima entries carry position/height only (other fields NaN). */
eplab_status eplab_line_shape_features(const double *energy,
                                       const double *sigma, int n,
                                       eplab_peak *peaks, int peaks_cap,
                                       int *npeaks, eplab_peak *minima,
                                       int minima_cap, int *nminima);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EPLAB_H */

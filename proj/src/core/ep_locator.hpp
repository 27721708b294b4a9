#pragma once

#include "core/scenario.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace eplab {

enum class Branch { z_real, z_imag, z_complex };
enum class EpKind { analytic_imag_coupling, analytic_gainloss, newton_general };
enum class BranchContext { z_real_side, z_imag_side, none };

struct EpParam {
  std::string name;
  double value;
};

struct EpSolution {
  std::vector<EpParam> params;
  double residual = 0.0; // |Z| at the solution
  EpKind kind = EpKind::newton_general;
  BranchContext branch_context = BranchContext::none;
};

struct Certificate {
  int family = 0;     // 1: e1 == e2 with g1 != g2;  2: pointwise obstruction
  double min_bound;   // family 1: analytic lower bound for |2Z|^2
  double min_abs_z;   // smallest |Z| over the scenario grid
  double a_at_min;
  double obstruction; // family 2: smallest-modulus (e1-e2)(g1-g2) on the grid
  std::string text;
};

Branch classify_branch(const System &sys);

// Solutions of e1(a) - e2(a) = +-2*omega_i on [a_lo, a_hi] for a family with
// equal widths and coupling i*omega_i; bracketing + bisection, then a local
// ulp scan minimizing |Z|. Throws NoRootInInterval when none exist.
std::vector<EpSolution> eps_imaginary_coupling(const Scenario &sc,
                                               double omega_i, double a_lo,
                                               double a_hi);

// omega_r = +-(g1 - g2)/4 for coinciding levels; DegenerateWidths if g1 == g2.
std::array<EpSolution, 2> eps_gainloss_real_coupling(double g1, double g2);

// Damped Newton on Re(Z^2) = Im(Z^2) = 0 over two unknowns drawn from
// {"a", "omega_r", "omega_i"}; omega unknowns replace the matching component
// of the scenario's omega(a), fixed_a is used when "a" is not an unknown.
// Without a seed the box is scanned on a 101x101 grid; a continuum of
// near-zero cells is reported as NoConvergence instead of an arbitrary point.
EpSolution find_ep(const Scenario &sc,
                   const std::array<std::string, 2> &unknowns, double fixed_a,
                   const std::array<double, 2> &box_lo,
                   const std::array<double, 2> &box_hi,
                   const std::optional<std::array<double, 2>> &seed);

// Proof record that a purely imaginary coupling family has no exceptional
// point on its grid; FamilyMismatch when no certified family applies.
Certificate no_ep_certificate(const Scenario &sc);

} // namespace eplab

#pragma once

#include "core/scenario.hpp"

#include <vector>

namespace eplab {

struct SweepRow {
  double a = 0.0;
  double E1 = 0.0, E2 = 0.0;           // tracked branch energies
  double G1_half = 0.0, G2_half = 0.0; // tracked half widths
  double b11sq = 0.0, b12sq = 0.0, b21sq = 0.0, b22sq = 0.0;
  double r1_abs = 0.0, r2_abs = 0.0;
  double z_abs = 0.0;
  bool defect = false;
  bool swapped = false; // pairing changed relative to the previous point
  double e1_bare = 0.0, e2_bare = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  int swap_count = 0;
};

// Evaluates the spectrum and eigensystem at every grid point (concurrently;
// threads = 0 picks the hardware count, the EP_LAB_THREADS environment
// variable caps it, 0 there means auto), then tracks branches sequentially
// by greedy minimal-sum pairing against the previous tracked point. Pairing
// is frozen across defect neighborhoods (|Z| < 100 * ep_tol).
SweepResult run_sweep(const Scenario &sc, int threads);

} // namespace eplab

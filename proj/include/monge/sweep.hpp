#pragma once

// Property sweeps: generate and verify positive and negative corpora per
// (geometry, kind, dimension) cell and summarize the outcome.

#include <string>
#include <utility>
#include <vector>

#include "monge/generators.hpp"
#include "monge/scenario.hpp"

namespace monge {

struct SweepSpec {
  Geometry geometry = Geometry::Euclidean;
  int dim_lo = 2;
  int dim_hi = 4;
  int per_cell = 100;
  std::uint64_t seed = 0;
  Tolerance tol = Tolerance::uniform(1e-9);
  double perturb = 1e-2;
  double ratio_gap = 1.5;
};

struct SweepRow {
  Geometry geometry = Geometry::Euclidean;
  GenKind kind = GenKind::EdgePoints;
  int dimension = 0;
  int pos_pass = 0;
  int pos_fail = 0;
  int neg_pass = 0;
  int neg_fail = 0;
  /// Largest residual among positive cases.
  double max_pos_residual = 0.0;
  /// Smallest residual among negative cases, where a negative case's
  /// residual is the smaller of its product and hyperplane residuals.
  /// Infinite when the cell has no negative cases.
  double min_neg_residual = 0.0;

  bool clean() const { return pos_fail == 0 && neg_fail == 0; }
};

/// "2..6", "2-6" or a single "3".
std::pair<int, int> parse_dims(const std::string& text);

/// Shape kinds (balls, vertex sets) only have positive cases; edge-point
/// cells get per_cell positives and per_cell negatives. A zero count yields
/// no rows.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

std::string format_sweep(const std::vector<SweepRow>& rows);

inline bool sweep_clean(const std::vector<SweepRow>& rows) {
  for (const auto& r : rows)
    if (!r.clean()) return false;
  return true;
}

}  // namespace monge

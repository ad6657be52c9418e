#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "herder/errors.hpp"

namespace herder {

// Denominator guard for items whose total weight is zero. Such items are
// strictly beneficial and must rank highest in the heuristic.
inline constexpr double kHeuristicEpsilon = 1e-9;

// One static MKP instance at a given position of a dynamic run.
// Immutable after construction; shared read-only by all ant workers.
struct MkpState {
  std::size_t state_index = 0;
  std::size_t n = 0;                               // items
  std::size_t m = 0;                               // knapsacks
  std::vector<std::int64_t> profits;               // n
  std::vector<std::vector<std::int64_t>> weights;  // m rows of n
  std::vector<std::int64_t> capacities;            // m

  std::int64_t weight(std::size_t knapsack, std::size_t item) const {
    return weights[knapsack][item];
  }

  // Sum of the item's weights across all knapsacks.
  std::int64_t item_total_weight(std::size_t item) const;

  // Throws ParameterError/DimensionError if any invariant is broken.
  void validate() const;
};

// A complete packing decision with cached objective and loads.
struct Solution {
  std::vector<std::uint8_t> picks;   // n, values 0/1
  std::int64_t profit = 0;
  std::vector<std::int64_t> loads;   // m
  bool feasible = false;

  std::size_t item_count() const;
};

// Ordered sequence of states plus metadata.
struct DmkpInstance {
  std::string name;
  double delta = 0.0;  // dynamism magnitude in [0,1]
  std::vector<MkpState> states;
  std::map<std::size_t, std::int64_t> best_known;  // state index -> profit

  std::size_t item_count() const { return states.empty() ? 0 : states.front().n; }
  std::size_t knapsack_count() const { return states.empty() ? 0 : states.front().m; }
  std::size_t state_count() const { return states.size(); }

  void validate() const;
};

std::int64_t evaluate_profit(const MkpState& state, std::span<const std::uint8_t> picks);

struct Feasibility {
  bool feasible = false;
  std::vector<std::int64_t> loads;
};

Feasibility is_feasible(const MkpState& state, std::span<const std::uint8_t> picks);

// Builds a Solution with cached profit/loads/feasibility for `picks`.
Solution make_solution(const MkpState& state, std::vector<std::uint8_t> picks);

// Per-item desirability: profit over the item's total weight across all
// knapsacks, epsilon-guarded.
std::vector<double> heuristic_values(const MkpState& state);

// Affine rescale to [0,1]; a degenerate all-equal input maps to all 0.5.
std::vector<double> normalize_heuristic(std::span<const double> eta);

double mean_of(std::span<const double> values);

}  // namespace herder

#include "herder/problem.hpp"

#include <algorithm>
#include <numeric>

namespace herder {

std::int64_t MkpState::item_total_weight(std::size_t item) const {
  std::int64_t total = 0;
  for (std::size_t k = 0; k < m; ++k) total += weights[k][item];
  return total;
}

void MkpState::validate() const {
  if (n < 1 || m < 1) throw ParameterError("state needs n >= 1 and m >= 1");
  if (profits.size() != n) throw DimensionError("profits length != n");
  if (capacities.size() != m) throw DimensionError("capacities length != m");
  if (weights.size() != m) throw DimensionError("weights row count != m");
  for (const auto& row : weights) {
    if (row.size() != n) throw DimensionError("weights row length != n");
  }
  for (auto p : profits) {
    if (p < 0) throw ParameterError("negative profit");
  }
  for (auto c : capacities) {
    if (c < 0) throw ParameterError("negative capacity");
  }
  for (const auto& row : weights) {
    for (auto w : row) {
      if (w < 0) throw ParameterError("negative weight");
    }
  }
}

std::size_t Solution::item_count() const {
  return static_cast<std::size_t>(
      std::count(picks.begin(), picks.end(), std::uint8_t{1}));
}

void DmkpInstance::validate() const {
  if (states.empty()) throw ParameterError("instance has no states");
  if (delta < 0.0 || delta > 1.0) throw ParameterError("delta outside [0,1]");
  const std::size_t n = states.front().n;
  const std::size_t m = states.front().m;
  for (std::size_t s = 0; s < states.size(); ++s) {
    states[s].validate();
    if (states[s].n != n || states[s].m != m)
      throw DimensionError("states disagree on n or m");
    if (states[s].state_index != s)
      throw ParameterError("state indices not contiguous from 0");
  }
}

std::int64_t evaluate_profit(const MkpState& state, std::span<const std::uint8_t> picks) {
  if (picks.size() != state.n) throw DimensionError("picks length != n");
  std::int64_t profit = 0;
  for (std::size_t i = 0; i < state.n; ++i) {
    if (picks[i]) profit += state.profits[i];
  }
  return profit;
}

Feasibility is_feasible(const MkpState& state, std::span<const std::uint8_t> picks) {
  if (picks.size() != state.n) throw DimensionError("picks length != n");
  Feasibility result;
  result.loads.assign(state.m, 0);
  for (std::size_t k = 0; k < state.m; ++k) {
    const auto& row = state.weights[k];
    std::int64_t load = 0;
    for (std::size_t i = 0; i < state.n; ++i) {
      if (picks[i]) load += row[i];
    }
    result.loads[k] = load;
  }
  result.feasible = true;
  for (std::size_t k = 0; k < state.m; ++k) {
    if (result.loads[k] > state.capacities[k]) {
      result.feasible = false;
      break;
    }
  }
  return result;
}

Solution make_solution(const MkpState& state, std::vector<std::uint8_t> picks) {
  Solution solution;
  solution.profit = evaluate_profit(state, picks);
  auto feas = is_feasible(state, picks);
  solution.loads = std::move(feas.loads);
  solution.feasible = feas.feasible;
  solution.picks = std::move(picks);
  return solution;
}

std::vector<double> heuristic_values(const MkpState& state) {
  std::vector<double> eta(state.n);
  for (std::size_t i = 0; i < state.n; ++i) {
    const double total = static_cast<double>(state.item_total_weight(i));
    eta[i] = static_cast<double>(state.profits[i]) / std::max(total, kHeuristicEpsilon);
  }
  return eta;
}

std::vector<double> normalize_heuristic(std::span<const double> eta) {
  if (eta.empty()) throw ParameterError("normalize_heuristic needs a non-empty input");
  const auto [lo_it, hi_it] = std::minmax_element(eta.begin(), eta.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<double> out(eta.size());
  if (hi == lo) {
    std::fill(out.begin(), out.end(), 0.5);
    return out;
  }
  const double inv_range = 1.0 / (hi - lo);
  for (std::size_t i = 0; i < eta.size(); ++i) out[i] = (eta[i] - lo) * inv_range;
  return out;
}

double mean_of(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

}  // namespace herder

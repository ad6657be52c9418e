#include "herder/aco.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace herder {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// base^exp with fast paths for the small integer exponents the defaults use.
// exp == 0 means "factor absent", so 0^0 evaluates to 1.
double pow_term(double base, double exp) {
  if (exp == 0.0) return 1.0;
  if (exp == 1.0) return base;
  const double rounded = std::nearbyint(exp);
  if (rounded == exp && exp > 0.0 && exp <= 64.0) {
    auto e = static_cast<unsigned>(exp);
    double acc = 1.0;
    double b = base;
    while (e != 0) {
      if (e & 1u) acc *= b;
      b *= b;
      e >>= 1;
    }
    return acc;
  }
  return std::pow(base, exp);
}

// exp * log(base) with the same absent-factor convention.
double log_term(double base, double exp) {
  if (exp == 0.0) return 0.0;
  if (base <= 0.0) return kNegInf;
  return exp * std::log(base);
}

bool fits(std::span<const std::int64_t> weights,
          std::span<const std::int64_t> remaining) {
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] > remaining[k]) return false;
  }
  return true;
}

}  // namespace

PheromoneField PheromoneField::uniform(std::size_t n, double tau_min, double tau_max,
                                       double tau_0, double delta_tau_0) {
  PheromoneField field;
  field.tau_min = tau_min;
  field.tau_max = tau_max;
  field.tau_0 = tau_0;
  field.delta_tau_0 = delta_tau_0;
  field.tau.assign(n, tau_0);
  return field;
}

void PheromoneField::reset() { std::fill(tau.begin(), tau.end(), tau_0); }

void AcoParams::validate() const {
  if (!(rho > 0.0) || !(rho < 1.0)) throw ParameterError("rho must be in (0,1)");
  if (q0 < 0.0 || q0 > 1.0) throw ParameterError("q0 must be in [0,1]");
  if (ants_per_iteration < 1) throw ParameterError("ants_per_iteration must be >= 1");
  if (alpha < 0.0 || beta < 0.0 || gamma < 0.0)
    throw ParameterError("score exponents must be non-negative");
  if (!(tau_min > 0.0) || tau_min > tau_max)
    throw ParameterError("need 0 < tau_min <= tau_max");
  if (!(tau_0 > 0.0)) throw ParameterError("tau_0 must be positive");
  if (delta_tau_0 < 0.0) throw ParameterError("delta_tau_0 must be non-negative");
}

PheromoneField AcoParams::make_pheromone(std::size_t n) const {
  return PheromoneField::uniform(n, tau_min, tau_max, tau_0, delta_tau_0);
}

StateView StateView::prepare(const MkpState& state, std::span<const double> eta_hat) {
  if (eta_hat.size() != state.n) throw DimensionError("eta_hat length != n");
  StateView view;
  view.state = &state;
  view.n = state.n;
  view.m = state.m;
  view.item_weights.resize(state.n * state.m);
  view.item_weights_d.resize(state.n * state.m);
  for (std::size_t i = 0; i < state.n; ++i) {
    for (std::size_t k = 0; k < state.m; ++k) {
      const std::int64_t w = state.weights[k][i];
      view.item_weights[i * state.m + k] = w;
      view.item_weights_d[i * state.m + k] = static_cast<double>(w);
    }
  }
  view.profits_d.resize(state.n);
  for (std::size_t i = 0; i < state.n; ++i)
    view.profits_d[i] = static_cast<double>(state.profits[i]);
  view.eta_hat.assign(eta_hat.begin(), eta_hat.end());
  return view;
}

void ProfitPerConsumedCapacityImpact::compute(const StateView& view,
                                              std::span<const std::uint32_t> candidates,
                                              std::span<const std::int64_t> remaining,
                                              std::span<double> out,
                                              ImpactScratch& scratch) const {
  const std::size_t m = view.m;
  scratch.inv_remaining.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    scratch.inv_remaining[k] = remaining[k] > 0
                                   ? 1.0 / static_cast<double>(remaining[k])
                                   : 1.0 / kHeuristicEpsilon;
  }

  scratch.consumption.resize(candidates.size());
  const double inv_m = 1.0 / static_cast<double>(m);
  double max_consumption = 0.0;
  double max_profit = 0.0;
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    const std::uint32_t item = candidates[j];
    const double* weights = view.item_weights_d.data() + item * m;
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) acc += weights[k] * scratch.inv_remaining[k];
    const double consumption = std::max(kHeuristicEpsilon, acc * inv_m);
    scratch.consumption[j] = consumption;
    max_consumption = std::max(max_consumption, consumption);
    max_profit = std::max(max_profit, view.profits_d[item]);
  }

  const double inv_max_profit = max_profit > 0.0 ? 1.0 / max_profit : 0.0;
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    const double profit_share = max_profit > 0.0
                                    ? view.profits_d[candidates[j]] * inv_max_profit
                                    : 1.0;
    out[j] = profit_share * (max_consumption / scratch.consumption[j]);
  }
}

void UnitImpact::compute(const StateView&, std::span<const std::uint32_t> candidates,
                         std::span<const std::int64_t>, std::span<double> out,
                         ImpactScratch&) const {
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(candidates.size()),
            1.0);
}

const ImpactPolicy& default_impact_policy() {
  static const ProfitPerConsumedCapacityImpact policy;
  return policy;
}

namespace {

std::size_t argmax_lowest_index(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (values[j] > values[best]) best = j;
  }
  return best;
}

// Roulette over non-negative weights; the caller guarantees total > 0.
std::size_t roulette(std::span<const double> weights, double total, Rng& rng) {
  const double r = rng.next_double() * total;
  double cumulative = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    cumulative += weights[j];
    if (r < cumulative) return j;
  }
  return weights.size() - 1;  // rounding left r at/past the end
}

// Selection in log-space for steps where direct scores over/underflowed.
std::size_t select_log_space(const StateView& view, const PheromoneField& pheromone,
                             const AcoParams& params,
                             std::span<const std::uint32_t> candidates,
                             std::span<const double> impacts, bool greedy,
                             ConstructScratch& scratch, Rng& rng) {
  scratch.log_score.resize(candidates.size());
  double max_log = kNegInf;
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    const std::uint32_t item = candidates[j];
    const double value = log_term(pheromone.tau[item], params.alpha) +
                         log_term(view.eta_hat[item], params.beta) +
                         log_term(impacts[j], params.gamma);
    scratch.log_score[j] = value;
    max_log = std::max(max_log, value);
  }
  if (max_log == kNegInf) {
    // Every candidate scored zero; fall back to a uniform pick.
    return static_cast<std::size_t>(rng.next_below(candidates.size()));
  }
  if (greedy) return argmax_lowest_index(scratch.log_score);

  double total = 0.0;
  for (auto& value : scratch.log_score) {
    value = value == kNegInf ? 0.0 : std::exp(value - max_log);
    total += value;
  }
  return roulette(scratch.log_score, total, rng);
}

}  // namespace

Solution construct_solution(const StateView& view, const PheromoneField& pheromone,
                            const AcoParams& params, Rng& rng,
                            ConstructScratch& scratch, const ImpactPolicy& impact) {
  const std::size_t n = view.n;
  const std::size_t m = view.m;
  const MkpState& state = *view.state;
  if (pheromone.tau.size() != n) throw DimensionError("pheromone length != n");

  auto& candidates = scratch.candidates;
  auto& remaining = scratch.remaining;
  candidates.clear();
  remaining.assign(state.capacities.begin(), state.capacities.end());

  std::vector<std::uint8_t> picks(n, 0);
  std::vector<std::int64_t> loads(m, 0);
  std::int64_t profit = 0;

  for (std::size_t i = 0; i < n; ++i) {
    if (fits(view.weights_of(i), remaining)) candidates.push_back(static_cast<std::uint32_t>(i));
  }

  while (!candidates.empty()) {
    const std::size_t count = candidates.size();
    scratch.impact.resize(count);
    impact.compute(view, candidates, remaining, scratch.impact, scratch.impact_scratch);

    scratch.score.resize(count);
    double total = 0.0;
    bool degenerate = false;
    for (std::size_t j = 0; j < count; ++j) {
      const std::uint32_t item = candidates[j];
      const double score = pow_term(pheromone.tau[item], params.alpha) *
                           pow_term(view.eta_hat[item], params.beta) *
                           pow_term(scratch.impact[j], params.gamma);
      scratch.score[j] = score;
      total += score;
      if (!std::isfinite(score)) degenerate = true;
    }
    if (!(total > 0.0) || !std::isfinite(total)) degenerate = true;

    const bool greedy = rng.next_double() < params.q0;
    std::size_t chosen_pos;
    if (degenerate) {
      chosen_pos = select_log_space(view, pheromone, params, candidates,
                                    scratch.impact, greedy, scratch, rng);
    } else if (greedy) {
      chosen_pos = argmax_lowest_index(scratch.score);
    } else {
      chosen_pos = roulette(scratch.score, total, rng);
    }

    const std::uint32_t chosen = candidates[chosen_pos];
    picks[chosen] = 1;
    profit += state.profits[chosen];
    const auto chosen_weights = view.weights_of(chosen);
    for (std::size_t k = 0; k < m; ++k) {
      loads[k] += chosen_weights[k];
      remaining[k] -= chosen_weights[k];
    }

    // Drop the chosen item and anything that no longer fits, keeping order.
    std::size_t write = 0;
    for (std::size_t j = 0; j < count; ++j) {
      if (j == chosen_pos) continue;
      const std::uint32_t item = candidates[j];
      if (fits(view.weights_of(item), remaining)) candidates[write++] = item;
    }
    candidates.resize(write);
  }

  Solution solution;
  solution.picks = std::move(picks);
  solution.profit = profit;
  solution.loads = std::move(loads);
  solution.feasible = true;
  return solution;
}

Solution construct_solution(const MkpState& state, const PheromoneField& pheromone,
                            std::span<const double> eta_hat, const AcoParams& params,
                            Rng& rng, const ImpactPolicy& impact) {
  const StateView view = StateView::prepare(state, eta_hat);
  ConstructScratch scratch;
  return construct_solution(view, pheromone, params, rng, scratch, impact);
}

void evaporate(PheromoneField& pheromone, double rho) {
  if (!(rho > 0.0) || !(rho < 1.0)) throw ParameterError("rho must be in (0,1)");
  const double keep = 1.0 - rho;
  for (auto& tau : pheromone.tau)
    tau = std::clamp(tau * keep, pheromone.tau_min, pheromone.tau_max);
}

void deposit(PheromoneField& pheromone, const Solution& best, double rho,
             double delta_tau_0) {
  if (best.picks.size() != pheromone.tau.size())
    throw DimensionError("solution length != pheromone length");
  const double amount = rho * delta_tau_0;
  for (std::size_t i = 0; i < best.picks.size(); ++i) {
    if (best.picks[i]) {
      pheromone.tau[i] =
          std::clamp(pheromone.tau[i] + amount, pheromone.tau_min, pheromone.tau_max);
    }
  }
}

Solution run_iteration(const StateView& view, PheromoneField& pheromone,
                       const AcoParams& params, std::uint64_t run_seed,
                       std::size_t state_index, std::size_t iteration_index,
                       ThreadPool& pool, const ImpactPolicy& impact) {
  const std::size_t ants = params.ants_per_iteration;
  std::vector<Solution> solutions(ants);
  const PheromoneField& snapshot = pheromone;  // read-only during construction
  pool.parallel_for(ants, [&](std::size_t ant) {
    thread_local ConstructScratch scratch;
    Rng rng = Rng::stream(run_seed, state_index, iteration_index, ant);
    solutions[ant] = construct_solution(view, snapshot, params, rng, scratch, impact);
  });

  std::size_t best = 0;
  for (std::size_t ant = 1; ant < ants; ++ant) {
    if (solutions[ant].profit > solutions[best].profit) best = ant;
  }

  evaporate(pheromone, params.rho);
  deposit(pheromone, solutions[best], params.rho, pheromone.delta_tau_0);
  return std::move(solutions[best]);
}

}  // namespace herder

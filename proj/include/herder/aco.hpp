#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "herder/problem.hpp"
#include "herder/rng.hpp"
#include "herder/thread_pool.hpp"

namespace herder {

// Per-item pheromone trail with MMAS bounds. Item inclusions are the solution
// components here, so the trail is a flat array rather than an edge matrix.
struct PheromoneField {
  std::vector<double> tau;
  double tau_min = 0.001;
  double tau_max = 1.0;
  double tau_0 = 1.0;
  double delta_tau_0 = 1.0;

  static PheromoneField uniform(std::size_t n, double tau_min = 0.001,
                                double tau_max = 1.0, double tau_0 = 1.0,
                                double delta_tau_0 = 1.0);

  // Back to the default level; used at every restart-style state begin.
  void reset();
};

struct AcoParams {
  double alpha = 1.0;   // pheromone exponent
  double beta = 0.0;    // heuristic exponent
  double gamma = 8.0;   // dynamic-impact exponent
  double q0 = 0.01;     // greedy-selection probability
  double rho = 0.1;     // evaporation rate
  std::size_t ants_per_iteration = 512;

  // MMAS trail configuration used to build PheromoneField instances.
  double tau_min = 0.001;
  double tau_max = 1.0;
  double tau_0 = 1.0;
  double delta_tau_0 = 1.0;

  void validate() const;
  PheromoneField make_pheromone(std::size_t n) const;
};

// Contiguous per-state arrays in the layout the construction loop wants.
struct StateView {
  const MkpState* state = nullptr;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::int64_t> item_weights;  // n*m, item-major
  std::vector<double> item_weights_d;      // same values as double
  std::vector<double> profits_d;
  std::vector<double> eta_hat;             // normalized heuristic, [0,1]

  static StateView prepare(const MkpState& state, std::span<const double> eta_hat);

  std::span<const std::int64_t> weights_of(std::size_t item) const {
    return {item_weights.data() + item * m, m};
  }
};

struct ImpactScratch {
  std::vector<double> inv_remaining;
  std::vector<double> consumption;
};

// Per-step desirability of adding an item given the current partial solution.
// The default model scores profit per consumed remaining capacity; it is a
// policy interface so alternatives can be swapped in without touching the
// construction loop.
class ImpactPolicy {
 public:
  virtual ~ImpactPolicy() = default;

  // candidates hold item indices that still fit; remaining holds per-knapsack
  // residual capacity. Writes one impact value per candidate position.
  virtual void compute(const StateView& view,
                       std::span<const std::uint32_t> candidates,
                       std::span<const std::int64_t> remaining,
                       std::span<double> out, ImpactScratch& scratch) const = 0;
};

// I_i = p_hat_i / c_hat_i with p_hat the profit relative to the best candidate
// profit and c_hat the mean weight-to-remaining-capacity ratio relative to the
// largest candidate ratio. Both terms normalize into (0,1], which keeps
// gamma-exponentiation in range.
class ProfitPerConsumedCapacityImpact final : public ImpactPolicy {
 public:
  void compute(const StateView& view, std::span<const std::uint32_t> candidates,
               std::span<const std::int64_t> remaining, std::span<double> out,
               ImpactScratch& scratch) const override;
};

// I_i = 1 for every candidate; neutralizes the gamma term.
class UnitImpact final : public ImpactPolicy {
 public:
  void compute(const StateView& view, std::span<const std::uint32_t> candidates,
               std::span<const std::int64_t> remaining, std::span<double> out,
               ImpactScratch& scratch) const override;
};

const ImpactPolicy& default_impact_policy();

// Reusable per-worker buffers for solution construction.
struct ConstructScratch {
  std::vector<std::uint32_t> candidates;
  std::vector<std::int64_t> remaining;
  std::vector<double> impact;
  std::vector<double> score;
  std::vector<double> log_score;
  ImpactScratch impact_scratch;
};

// Builds one feasible solution with the pseudo-random proportional rule:
// with probability q0 take the argmax score (ties to the lowest index),
// otherwise roulette proportional to score. Scores fall back to log-space
// when direct evaluation over/underflows.
Solution construct_solution(const StateView& view, const PheromoneField& pheromone,
                            const AcoParams& params, Rng& rng,
                            ConstructScratch& scratch,
                            const ImpactPolicy& impact = default_impact_policy());

// Convenience overload matching the module-level operation signature.
Solution construct_solution(const MkpState& state, const PheromoneField& pheromone,
                            std::span<const double> eta_hat, const AcoParams& params,
                            Rng& rng,
                            const ImpactPolicy& impact = default_impact_policy());

// tau := tau * (1 - rho), clamped into [tau_min, tau_max]. The upper clamp is
// what removes any honeydew overshoot after the first iteration of a state.
void evaporate(PheromoneField& pheromone, double rho);

// tau_i += rho * delta_tau_0 for items picked in best, clamped.
void deposit(PheromoneField& pheromone, const Solution& best, double rho,
             double delta_tau_0);

// Constructs params.ants_per_iteration solutions concurrently from an
// immutable pheromone snapshot (streams keyed by ant index), picks the
// iteration best (ties to the lowest ant index), then evaporates and deposits.
Solution run_iteration(const StateView& view, PheromoneField& pheromone,
                       const AcoParams& params, std::uint64_t run_seed,
                       std::size_t state_index, std::size_t iteration_index,
                       ThreadPool& pool,
                       const ImpactPolicy& impact = default_impact_policy());

}  // namespace herder

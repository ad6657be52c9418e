#pragma once

#include <optional>
#include <span>
#include <string>

#include "herder/aco.hpp"
#include "herder/problem.hpp"

namespace herder {

enum class StrategyKind { FullRestart, PheromoneSharing, Aphids };

// CLI names: full-restart, pheromone-sharing, aphids.
std::string to_string(StrategyKind kind);
StrategyKind parse_strategy(const std::string& name);

struct AphidParams {
  double default_level = 1.0;  // A_0
  double relocation = 2.0;     // A_r
  double honeydew = 1.0;       // A_h
  double kill = 0.8;           // A_k
  double lay = 1.0;            // A_l

  void validate() const;
};

// The tuned configuration that performed best in the hyper-parameter sweeps.
AphidParams tuned_aphid_params();

// Baseline configuration used as the sweep starting point
// (A_r=1, A_h=1, A_l=1, A_k=0.5).
AphidParams sweep_default_aphid_params();

// Per-item aphid population carried across dynamic states.
struct AphidField {
  std::vector<double> levels;
  AphidParams params;

  double total() const;
};

// Uniform population at the default level; called exactly once per dynamic
// run, before the first state.
AphidField init_aphids(std::size_t n, const AphidParams& params);

// A_i *= 1 + (eta_hat_i - eta_mean) * A_r, clamped at zero. The formula can
// go negative when (eta_hat_i - eta_mean) * A_r < -1; populations cannot.
void relocate_aphids(AphidField& field, std::span<const double> eta_hat,
                     double eta_mean);

// tau_i += A_i * A_h. Deliberately unclamped: overshoot above tau_max decays
// at the first iteration's evaporation.
void collect_honeydew(PheromoneField& pheromone, const AphidField& field);

// A_i *= 1 - A_k.
void kill_aphids(AphidField& field);

// A_i += A_l for every item in the best solution.
void lay_aphids(AphidField& field, const Solution& best);

// Drives the inter-state hooks for one dynamic run. Owns the aphid field and
// enforces the once-only initialization contract.
class DynamicStrategy {
 public:
  DynamicStrategy(StrategyKind kind, AphidParams aphid_params);

  // Must be called exactly once, before the first state.
  void begin_run(std::size_t item_count);

  // Prepares the pheromone for the state about to be searched:
  //   FullRestart      reset to tau_0
  //   PheromoneSharing carry verbatim (first state: tau_0)
  //   Aphids           reset to tau_0, relocate, collect honeydew
  void on_state_begin(PheromoneField& pheromone, std::span<const double> eta_hat);

  // Aphids: kill then lay on the state best. Baselines: no-op.
  void on_state_end(const Solution& state_best);

  StrategyKind kind() const { return kind_; }
  const AphidField* aphids() const { return aphids_ ? &*aphids_ : nullptr; }

 private:
  StrategyKind kind_;
  AphidParams aphid_params_;
  std::optional<AphidField> aphids_;
  bool run_started_ = false;
  bool first_state_ = true;
};

}  // namespace herder

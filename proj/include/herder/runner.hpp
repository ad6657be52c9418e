#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "herder/aco.hpp"
#include "herder/problem.hpp"
#include "herder/strategies.hpp"
#include "herder/thread_pool.hpp"

namespace herder {

enum class BudgetMode { WallClock, Iterations };

struct RunConfig {
  BudgetMode budget_mode = BudgetMode::Iterations;
  double seconds_per_200_items = 1.0;   // wall-clock dispatch rule
  std::size_t iterations_per_state = 100;
  std::size_t runs = 1;
  std::uint64_t master_seed = 0;
  StrategyKind strategy = StrategyKind::Aphids;
  AcoParams aco;
  AphidParams aphids = tuned_aphid_params();
  std::size_t start_state = 0;     // first dispatched state of the run
  bool record_convergence = false; // keep the per-iteration best series

  void validate() const;
};

// Dispatch window for one state. In wall-clock mode the window scales with
// the item count; in iteration mode it is a fixed iteration count.
struct StateBudget {
  BudgetMode mode = BudgetMode::Iterations;
  double seconds = 0.0;
  std::size_t iterations = 0;
};

StateBudget state_budget(std::size_t item_count, const RunConfig& config);

struct StateResult {
  std::size_t state_index = 0;
  std::int64_t first_iteration_profit = 0;
  std::int64_t final_profit = 0;
  std::vector<std::uint8_t> final_picks;
  std::size_t iterations_executed = 0;
  double elapsed_seconds = 0.0;
  // Filled when RunConfig::record_convergence is set: best-so-far profit and
  // elapsed time at the end of each iteration.
  std::vector<std::int64_t> iteration_best_profits;
  std::vector<double> iteration_elapsed_seconds;
};

struct RunRecord {
  RunConfig config;
  std::size_t run_index = 0;
  std::uint64_t run_seed = 0;
  std::vector<StateResult> states;
};

// Reveals states one at a time. dispatch(s) is called exactly once per state,
// in order; future states must stay untouched until dispatched (instrumented
// providers verify this in tests).
class StateProvider {
 public:
  virtual ~StateProvider() = default;
  virtual std::size_t state_count() const = 0;
  virtual std::size_t item_count() const = 0;
  virtual const MkpState& dispatch(std::size_t index) = 0;
};

class InstanceStateProvider final : public StateProvider {
 public:
  explicit InstanceStateProvider(const DmkpInstance& instance) : instance_(&instance) {}
  std::size_t state_count() const override { return instance_->state_count(); }
  std::size_t item_count() const override { return instance_->item_count(); }
  const MkpState& dispatch(std::size_t index) override { return instance_->states[index]; }

 private:
  const DmkpInstance* instance_;
};

std::uint64_t derive_run_seed(std::uint64_t master_seed, std::size_t run_index);

// One full dynamic run: aphids initialized once, then per state in order:
// heuristic preparation, strategy begin hook, iterations until the budget is
// exhausted (checked between iterations; a started iteration completes),
// strategy end hook. The budget window includes heuristic and hook work.
RunRecord run_dynamic(StateProvider& provider, const RunConfig& config,
                      std::uint64_t run_seed, ThreadPool& pool,
                      std::size_t run_index = 0);
RunRecord run_dynamic(const DmkpInstance& instance, const RunConfig& config,
                      ThreadPool& pool);
RunRecord run_dynamic(const DmkpInstance& instance, const RunConfig& config);

// config.runs independent records with per-run seeds derived from the master
// seed; each record can be reproduced individually via derive_run_seed.
std::vector<RunRecord> run_batch(const DmkpInstance& instance, const RunConfig& config,
                                 ThreadPool& pool);
std::vector<RunRecord> run_batch(const DmkpInstance& instance, const RunConfig& config);

}  // namespace herder

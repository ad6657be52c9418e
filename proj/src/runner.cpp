#include "herder/runner.hpp"

#include <chrono>

namespace herder {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void RunConfig::validate() const {
  aco.validate();
  aphids.validate();
  if (runs < 1) throw ParameterError("runs must be >= 1");
  if (budget_mode == BudgetMode::Iterations && iterations_per_state < 1)
    throw ParameterError("iterations_per_state must be >= 1");
  if (budget_mode == BudgetMode::WallClock && !(seconds_per_200_items > 0.0))
    throw ParameterError("seconds_per_200_items must be > 0");
}

StateBudget state_budget(std::size_t item_count, const RunConfig& config) {
  if (item_count < 1) throw ParameterError("item_count must be >= 1");
  StateBudget budget;
  budget.mode = config.budget_mode;
  if (config.budget_mode == BudgetMode::WallClock) {
    budget.seconds =
        static_cast<double>(item_count) / 200.0 * config.seconds_per_200_items;
  } else {
    budget.iterations = config.iterations_per_state;
  }
  return budget;
}

std::uint64_t derive_run_seed(std::uint64_t master_seed, std::size_t run_index) {
  return mix_seed(master_seed, 0x52554e53ULL, static_cast<std::uint64_t>(run_index));
}

RunRecord run_dynamic(StateProvider& provider, const RunConfig& config,
                      std::uint64_t run_seed, ThreadPool& pool,
                      std::size_t run_index) {
  config.validate();
  const std::size_t state_count = provider.state_count();
  const std::size_t n = provider.item_count();
  if (state_count == 0) throw ConfigError("instance has no states");
  if (config.start_state >= state_count)
    throw ConfigError("start_state beyond the last state");

  RunRecord record;
  record.config = config;
  record.run_index = run_index;
  record.run_seed = run_seed;
  record.states.reserve(state_count - config.start_state);

  DynamicStrategy strategy(config.strategy, config.aphids);
  strategy.begin_run(n);
  PheromoneField pheromone = config.aco.make_pheromone(n);

  for (std::size_t s = config.start_state; s < state_count; ++s) {
    const auto state_start = Clock::now();
    const MkpState& state = provider.dispatch(s);
    if (state.n != n) throw ConfigError("state item count differs from instance");

    const auto eta = heuristic_values(state);
    const auto eta_hat = normalize_heuristic(eta);
    const StateView view = StateView::prepare(state, eta_hat);
    strategy.on_state_begin(pheromone, eta_hat);

    const StateBudget budget = state_budget(n, config);
    StateResult result;
    result.state_index = state.state_index;

    Solution best;
    std::size_t iteration = 0;
    while (true) {
      if (budget.mode == BudgetMode::Iterations) {
        if (iteration >= budget.iterations) break;
      } else {
        if (iteration > 0 && seconds_since(state_start) >= budget.seconds) break;
      }

      Solution iteration_best = run_iteration(view, pheromone, config.aco, run_seed,
                                              state.state_index, iteration, pool);
      if (iteration == 0 || iteration_best.profit > best.profit)
        best = std::move(iteration_best);
      ++iteration;
      if (iteration == 1) result.first_iteration_profit = best.profit;
      if (config.record_convergence) {
        result.iteration_best_profits.push_back(best.profit);
        result.iteration_elapsed_seconds.push_back(seconds_since(state_start));
      }
    }

    result.final_profit = best.profit;
    result.final_picks = best.picks;
    result.iterations_executed = iteration;
    result.elapsed_seconds = seconds_since(state_start);

    strategy.on_state_end(best);
    record.states.push_back(std::move(result));
  }
  return record;
}

RunRecord run_dynamic(const DmkpInstance& instance, const RunConfig& config,
                      ThreadPool& pool) {
  instance.validate();
  InstanceStateProvider provider(instance);
  return run_dynamic(provider, config, derive_run_seed(config.master_seed, 0), pool);
}

RunRecord run_dynamic(const DmkpInstance& instance, const RunConfig& config) {
  ThreadPool pool;
  return run_dynamic(instance, config, pool);
}

std::vector<RunRecord> run_batch(const DmkpInstance& instance, const RunConfig& config,
                                 ThreadPool& pool) {
  config.validate();
  instance.validate();
  std::vector<RunRecord> records;
  records.reserve(config.runs);
  for (std::size_t run = 0; run < config.runs; ++run) {
    InstanceStateProvider provider(instance);
    records.push_back(run_dynamic(provider, config, derive_run_seed(config.master_seed, run),
                                  pool, run));
  }
  return records;
}

std::vector<RunRecord> run_batch(const DmkpInstance& instance, const RunConfig& config) {
  ThreadPool pool;
  return run_batch(instance, config, pool);
}

}  // namespace herder

#include "herder/strategies.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace herder {

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::FullRestart: return "full-restart";
    case StrategyKind::PheromoneSharing: return "pheromone-sharing";
    case StrategyKind::Aphids: return "aphids";
  }
  throw std::logic_error("unknown strategy kind");
}

StrategyKind parse_strategy(const std::string& name) {
  if (name == "full-restart") return StrategyKind::FullRestart;
  if (name == "pheromone-sharing") return StrategyKind::PheromoneSharing;
  if (name == "aphids") return StrategyKind::Aphids;
  throw ParameterError("unknown strategy '" + name +
                       "' (expected full-restart, pheromone-sharing, or aphids)");
}

void AphidParams::validate() const {
  if (!(default_level > 0.0)) throw ParameterError("A_0 must be > 0");
  if (relocation < 0.0) throw ParameterError("A_r must be >= 0");
  if (honeydew < 0.0) throw ParameterError("A_h must be >= 0");
  if (kill < 0.0 || kill > 1.0) throw ParameterError("A_k must be in [0,1]");
  if (lay < 0.0) throw ParameterError("A_l must be >= 0");
}

AphidParams tuned_aphid_params() {
  return AphidParams{.default_level = 1.0,
                     .relocation = 2.0,
                     .honeydew = 1.0,
                     .kill = 0.8,
                     .lay = 1.0};
}

AphidParams sweep_default_aphid_params() {
  return AphidParams{.default_level = 1.0,
                     .relocation = 1.0,
                     .honeydew = 1.0,
                     .kill = 0.5,
                     .lay = 1.0};
}

double AphidField::total() const {
  return std::accumulate(levels.begin(), levels.end(), 0.0);
}

AphidField init_aphids(std::size_t n, const AphidParams& params) {
  params.validate();
  AphidField field;
  field.params = params;
  field.levels.assign(n, params.default_level);
  return field;
}

void relocate_aphids(AphidField& field, std::span<const double> eta_hat,
                     double eta_mean) {
  if (eta_hat.size() != field.levels.size())
    throw DimensionError("eta_hat length != aphid field length");
  const double rate = field.params.relocation;
  for (std::size_t i = 0; i < field.levels.size(); ++i) {
    const double factor = 1.0 + (eta_hat[i] - eta_mean) * rate;
    field.levels[i] = std::max(0.0, field.levels[i] * factor);
  }
}

void collect_honeydew(PheromoneField& pheromone, const AphidField& field) {
  if (pheromone.tau.size() != field.levels.size())
    throw DimensionError("pheromone length != aphid field length");
  const double production = field.params.honeydew;
  for (std::size_t i = 0; i < field.levels.size(); ++i)
    pheromone.tau[i] += field.levels[i] * production;
}

void kill_aphids(AphidField& field) {
  const double keep = 1.0 - field.params.kill;
  for (auto& level : field.levels) level *= keep;
}

void lay_aphids(AphidField& field, const Solution& best) {
  if (best.picks.size() != field.levels.size())
    throw DimensionError("solution length != aphid field length");
  const double amount = field.params.lay;
  for (std::size_t i = 0; i < field.levels.size(); ++i) {
    if (best.picks[i]) field.levels[i] += amount;
  }
}

DynamicStrategy::DynamicStrategy(StrategyKind kind, AphidParams aphid_params)
    : kind_(kind), aphid_params_(aphid_params) {}

void DynamicStrategy::begin_run(std::size_t item_count) {
  if (run_started_)
    throw std::logic_error("begin_run called twice; aphids initialize once per run");
  run_started_ = true;
  first_state_ = true;
  if (kind_ == StrategyKind::Aphids) aphids_ = init_aphids(item_count, aphid_params_);
}

void DynamicStrategy::on_state_begin(PheromoneField& pheromone,
                                     std::span<const double> eta_hat) {
  if (!run_started_) throw std::logic_error("on_state_begin before begin_run");
  switch (kind_) {
    case StrategyKind::FullRestart:
      pheromone.reset();
      break;
    case StrategyKind::PheromoneSharing:
      if (first_state_) pheromone.reset();
      break;
    case StrategyKind::Aphids:
      pheromone.reset();
      relocate_aphids(*aphids_, eta_hat, mean_of(eta_hat));
      collect_honeydew(pheromone, *aphids_);
      break;
  }
  first_state_ = false;
}

void DynamicStrategy::on_state_end(const Solution& state_best) {
  if (kind_ != StrategyKind::Aphids) return;
  kill_aphids(*aphids_);
  lay_aphids(*aphids_, state_best);
}

}  // namespace herder

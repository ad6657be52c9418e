#include "herder/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace herder {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mean(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sum_squared_deviations(std::span<const double> values, double center) {
  double sum = 0.0;
  for (double v : values) sum += (v - center) * (v - center);
  return sum;
}

// Continued-fraction evaluation for the incomplete beta (Lentz's method).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 300;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta parameters must be > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double result_gap(std::int64_t profit, std::int64_t best_known) {
  if (best_known <= 0) throw std::domain_error("best_known must be > 0");
  return 100.0 * static_cast<double>(best_known - profit) /
         static_cast<double>(best_known);
}

double gap_slip(double prev_final_gap, double curr_first_gap) {
  return curr_first_gap - prev_final_gap;
}

TTestResult t_test(std::span<const double> sample_a, std::span<const double> sample_b) {
  if (sample_a.size() < 2 || sample_b.size() < 2)
    throw ParameterError("t_test needs at least 2 values per sample");
  const double na = static_cast<double>(sample_a.size());
  const double nb = static_cast<double>(sample_b.size());
  const double mean_a = mean(sample_a);
  const double mean_b = mean(sample_b);
  const double df = na + nb - 2.0;
  const double pooled_variance = (sum_squared_deviations(sample_a, mean_a) +
                                  sum_squared_deviations(sample_b, mean_b)) /
                                 df;

  TTestResult result;
  result.df = df;
  if (pooled_variance <= 0.0) {
    if (mean_a == mean_b) {
      result.t = 0.0;
      result.p = 1.0;
    } else {
      result.t = mean_a < mean_b ? -std::numeric_limits<double>::infinity()
                                 : std::numeric_limits<double>::infinity();
      result.p = 0.0;  // below any reporting threshold
    }
    return result;
  }

  const double standard_error = std::sqrt(pooled_variance * (1.0 / na + 1.0 / nb));
  result.t = (mean_a - mean_b) / standard_error;
  result.p = regularized_incomplete_beta(df / 2.0, 0.5,
                                         df / (df + result.t * result.t));
  return result;
}

BatchSummary aggregate(std::span<const RunRecord> records,
                       const std::map<std::size_t, std::int64_t>& best_known) {
  if (records.empty()) throw std::domain_error("aggregate needs at least one record");
  const std::size_t state_count = records.front().states.size();
  for (const auto& record : records) {
    if (record.states.size() != state_count)
      throw ParameterError("records disagree on state count");
  }

  BatchSummary summary;
  summary.runs = records.size();
  summary.states = state_count;

  std::vector<double> state_gap_sums(state_count, 0.0);
  std::vector<std::size_t> state_gap_counts(state_count, 0);

  double profit_sum = 0.0;
  double iteration_sum = 0.0;

  for (const auto& record : records) {
    double gap_sum = 0.0;
    double first_gap_sum = 0.0;
    std::size_t gap_count = 0;
    double slip_sum = 0.0;
    std::size_t slip_count = 0;

    for (std::size_t idx = 0; idx < record.states.size(); ++idx) {
      const StateResult& state = record.states[idx];
      profit_sum += static_cast<double>(state.final_profit);
      iteration_sum += static_cast<double>(state.iterations_executed);

      const auto bk = best_known.find(state.state_index);
      if (bk == best_known.end()) continue;
      const double gap = result_gap(state.final_profit, bk->second);
      const double first_gap = result_gap(state.first_iteration_profit, bk->second);
      gap_sum += gap;
      first_gap_sum += first_gap;
      ++gap_count;
      state_gap_sums[idx] += gap;
      ++state_gap_counts[idx];

      if (idx > 0) {
        const StateResult& prev = record.states[idx - 1];
        const auto prev_bk = best_known.find(prev.state_index);
        if (prev_bk != best_known.end()) {
          slip_sum += gap_slip(result_gap(prev.final_profit, prev_bk->second), first_gap);
          ++slip_count;
        }
      }
    }

    summary.per_run_mean_gap.push_back(
        gap_count > 0 ? gap_sum / static_cast<double>(gap_count) : kNaN);
    summary.per_run_mean_slip.push_back(
        slip_count > 0 ? slip_sum / static_cast<double>(slip_count) : kNaN);
    summary.mean_first_gap +=
        gap_count > 0 ? first_gap_sum / static_cast<double>(gap_count) : kNaN;
    summary.states_with_best_known = std::max(summary.states_with_best_known, gap_count);
  }

  const double run_count = static_cast<double>(summary.runs);
  summary.mean_gap = mean(summary.per_run_mean_gap);
  summary.mean_slip = mean(summary.per_run_mean_slip);
  summary.mean_first_gap /= run_count;
  summary.mean_final_profit = profit_sum / (run_count * static_cast<double>(state_count));
  summary.mean_iterations = iteration_sum / (run_count * static_cast<double>(state_count));

  if (summary.runs > 1) {
    summary.gap_stddev = std::sqrt(
        sum_squared_deviations(summary.per_run_mean_gap, summary.mean_gap) /
        (run_count - 1.0));
  }

  summary.per_state_mean_gap.resize(state_count, kNaN);
  for (std::size_t idx = 0; idx < state_count; ++idx) {
    if (state_gap_counts[idx] > 0)
      summary.per_state_mean_gap[idx] =
          state_gap_sums[idx] / static_cast<double>(state_gap_counts[idx]);
  }
  return summary;
}

namespace {

// Piecewise-linear lookup with flat extension beyond the recorded range.
double interpolate_gap(std::span<const double> times, std::span<const double> gaps,
                       double t) {
  if (t <= times.front()) return gaps.front();
  if (t >= times.back()) return gaps.back();
  const auto upper = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t hi = static_cast<std::size_t>(upper - times.begin());
  const std::size_t lo = hi - 1;
  const double span = times[hi] - times[lo];
  if (span <= 0.0) return gaps[hi];
  const double w = (t - times[lo]) / span;
  return gaps[lo] + w * (gaps[hi] - gaps[lo]);
}

}  // namespace

std::vector<CurvePoint> convergence_curve(
    std::span<const RunRecord> records,
    const std::map<std::size_t, std::int64_t>& best_known, std::size_t grid_size) {
  if (grid_size < 1) throw ParameterError("grid_size must be >= 1");

  std::vector<double> grid_sums(grid_size, 0.0);
  std::size_t series_count = 0;
  std::vector<double> times;
  std::vector<double> gaps;

  for (const auto& record : records) {
    for (const auto& state : record.states) {
      if (state.iteration_best_profits.empty())
        throw ParameterError("convergence_curve needs records with record_convergence");
      const auto bk = best_known.find(state.state_index);
      if (bk == best_known.end()) continue;

      const std::size_t iters = state.iteration_best_profits.size();
      times.resize(iters);
      gaps.resize(iters);
      const bool wall = record.config.budget_mode == BudgetMode::WallClock;
      const double budget_seconds =
          wall ? state_budget(state.final_picks.size(), record.config).seconds : 0.0;
      for (std::size_t j = 0; j < iters; ++j) {
        times[j] = wall ? std::clamp(state.iteration_elapsed_seconds[j] / budget_seconds,
                                     0.0, 1.0)
                        : static_cast<double>(j + 1) / static_cast<double>(iters);
        gaps[j] = result_gap(state.iteration_best_profits[j], bk->second);
      }

      for (std::size_t g = 0; g < grid_size; ++g) {
        const double t = static_cast<double>(g + 1) / static_cast<double>(grid_size);
        grid_sums[g] += interpolate_gap(times, gaps, t);
      }
      ++series_count;
    }
  }

  std::vector<CurvePoint> curve(grid_size);
  for (std::size_t g = 0; g < grid_size; ++g) {
    curve[g].time = static_cast<double>(g + 1) / static_cast<double>(grid_size);
    curve[g].gap = series_count > 0
                       ? grid_sums[g] / static_cast<double>(series_count)
                       : kNaN;
  }
  return curve;
}

}  // namespace herder

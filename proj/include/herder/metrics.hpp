#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "herder/runner.hpp"

namespace herder {

// Percentage shortfall of profit versus the best-known profit. Negative when
// profit beats best-known (a new best). Requires best_known > 0.
double result_gap(std::int64_t profit, std::int64_t best_known);

// Increase in result gap across a dynamic change: the first-iteration gap of
// the current state minus the final gap of the previous state.
double gap_slip(double prev_final_gap, double curr_first_gap);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;  // two-tailed
  double df = 0.0;
};

// Two-sample unpaired Student t-test with pooled variance. Zero pooled
// variance: equal means give (t=0, p=1); unequal means give p = 0
// (reported below any printable threshold) with t at +/- infinity.
TTestResult t_test(std::span<const double> sample_a, std::span<const double> sample_b);

// Regularized incomplete beta I_x(a,b), exposed for verification against
// published tables.
double regularized_incomplete_beta(double a, double b, double x);

struct BatchSummary {
  std::size_t runs = 0;
  std::size_t states = 0;
  std::size_t states_with_best_known = 0;
  double mean_gap = 0.0;          // mean over states, then over runs
  double gap_stddev = 0.0;        // sample std-dev of the per-run mean gaps
  double mean_slip = 0.0;         // mean over states s >= 1, then over runs
  double mean_first_gap = 0.0;    // first-iteration gap counterpart
  double mean_final_profit = 0.0;
  double mean_iterations = 0.0;
  std::vector<double> per_run_mean_gap;
  std::vector<double> per_run_mean_slip;
  std::vector<double> per_state_mean_gap;  // averaged over runs, indexed by position
};

// Aggregates a batch of records over one instance. States without a
// best-known entry are excluded from gap/slip statistics, never imputed.
BatchSummary aggregate(std::span<const RunRecord> records,
                       const std::map<std::size_t, std::int64_t>& best_known);

struct CurvePoint {
  double time = 0.0;  // normalized state time in (0,1]
  double gap = 0.0;
};

// Mean result-gap trajectory over normalized state time. Each state's
// per-iteration best series is rescaled to [0,1] over its budget, sampled
// onto a fixed grid with linear interpolation, and averaged across states and
// runs. Requires records produced with record_convergence set.
std::vector<CurvePoint> convergence_curve(
    std::span<const RunRecord> records,
    const std::map<std::size_t, std::int64_t>& best_known, std::size_t grid_size = 50);

}  // namespace herder

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "haudim/config.hpp"
#include "haudim/process_class.hpp"
#include "haudim/timeset_dim.hpp"

namespace haudim {

struct RunOutcome {
  bool completed = false;
  bool tolerances_ok = true;
  std::string summary;
};

// Shared Monte Carlo batch parameters for the dimension experiments.
struct BatchParams {
  std::size_t trials = 20;
  std::size_t n_steps = 10000000;
  double horizon = 1.0;
  double x0 = 0.0;
  double gamma = 1.0;
  double ladder_ratio = 2.0;
  double window_lo_dt = 16.0;    // delta_min = window_lo_dt * dt
  double window_hi_frac = 64.0;  // delta_max = horizon / window_hi_frac
  std::uint64_t seed = 1;
};

std::vector<double> batch_ladder(const BatchParams& p);

// One estimate per trial; trials are independent streams of the batch seed
// and run on the worker pool (results indexed by trial, so identical for any
// worker count).
std::vector<DimensionEstimate> level_batch(const ProcessClass& proc, const TargetSet& target,
                                           const BatchParams& p);
std::vector<DimensionEstimate> collision_batch(const ProcessClass& p1, const ProcessClass& p2,
                                               const TargetSet& within, const BatchParams& p);

// Median of the non-empty slopes; empty_count reports the Empty verdicts.
struct BatchSummary {
  double median_slope = 0.0;
  std::size_t empty_count = 0;
  std::size_t trials = 0;
};
BatchSummary summarize_batch(const std::vector<DimensionEstimate>& batch);

ProcessClass process_from_block(const ProcessBlock& block);
TargetSet parse_target(const std::string& text);

// Execute one configured experiment: writes result.csv, report.txt and
// config.echo under cfg.out_dir.
RunOutcome run_experiment(const ExperimentConfig& cfg);

}  // namespace haudim

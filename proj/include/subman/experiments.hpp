#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "subman/kernel_estimate.hpp"
#include "subman/measure.hpp"
#include "subman/synth.hpp"

namespace subman {

struct ExperimentConfig {
  AnalyticCurve curve = AnalyticCurve::sawtooth(1.0, 1);
  Measure measure = Measure::uniform();
  NoiseModel noise = NoiseModel::none();

  std::vector<int> levels;              // partition levels n
  std::vector<std::size_t> sample_counts;  // m grid
  std::vector<double> betas;
  double lambda = 0.0;
  Metric metric = Metric::kChordal;
  std::size_t centers = 16;             // beta sweep center count
  int trials = 50;
  std::uint64_t seed = 0;
  std::size_t quad_floor = 4096;
  double rate_r = -1.0;  // < 0: pre-estimate via estimate_approx_rate

  void validate() const;  // nonempty grids, trials >= 1
};

struct RateCell {
  int level = 0;
  std::size_t m = 0;
  double mean_sq = 0.0, se_sq = 0.0;   // squared L2 error over trials
  double mean_err = 0.0, se_err = 0.0; // unsquared
};

struct RateReport {
  std::vector<RateCell> cells;  // level-major, sample_counts inner
  double rate_r = 0.0;          // the r used in the bound model
  double bias_slope = 0.0;      // log mean_err vs log N at largest m
  double variance_slope = 0.0;  // log mean_sq vs log m at smallest level
  double c1 = 0.0, c2 = 0.0;    // bound C1 N^-r + C2 N log N / m, fitted on
                                // even-indexed cells
  double holdout_max_ratio = 0.0;  // max measured/bound over odd-indexed cells
  std::size_t failed_trials = 0;
};

RateReport run_rate_study(const ExperimentConfig& cfg);

struct CenterSweepRow {
  int level = 0;
  std::size_t num_centers = 0;
  double partition_risk = 0.0, kernel_risk = 0.0;
  double partition_l2 = 0.0, kernel_l2 = 0.0;  // vs the exact regressor
  std::size_t min_count = 0, empty_cells = 0;
  double sup_gap = 0.0;       // max over a dense grid of |partition - kernel|
  double kernel_condition = 0.0;
  bool kernel_failed = false;
  std::string kernel_error;
};

// Fits both estimators per level on one shared dataset; kernel centers are
// the partition representatives.
std::vector<CenterSweepRow> run_center_sweep(const ExperimentConfig& cfg);

struct BetaSweepRow {
  double beta = 0.0;
  double risk = 0.0;
  double condition = 0.0;        // Gram condition on the centers
  double total_variation = 0.0;  // of the fit over a dense grid, all coords
  bool failed = false;
  std::string error;
};

// Fixed equispaced center count, one shared dataset, one row per beta.
// Singular solves are recorded per row, not fatal.
std::vector<BetaSweepRow> run_beta_sweep(const ExperimentConfig& cfg);

}  // namespace subman

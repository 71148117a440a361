#include "subman/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "subman/analysis.hpp"
#include "subman/errors.hpp"
#include "subman/numerics.hpp"
#include "subman/partition_estimate.hpp"
#include "subman/quadrature.hpp"
#include "subman/rng.hpp"

namespace subman {

void ExperimentConfig::validate() const {
  if (levels.empty()) throw InputError("experiment config: empty level grid");
  if (sample_counts.empty()) throw InputError("experiment config: empty sample grid");
  if (trials < 1) throw InputError("experiment config: trials must be >= 1");
  for (int n : levels) {
    if (n < 0 || n > Partition::kMaxLevel) {
      throw InputError("experiment config: level out of range");
    }
  }
  for (std::size_t m : sample_counts) {
    if (m < 1) throw InputError("experiment config: sample count must be >= 1");
  }
}

namespace {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe aggregate(const std::vector<double>& values) {
  const auto n = static_cast<double>(values.size());
  MeanSe out;
  out.mean = compensated_sum(values) / n;
  if (values.size() > 1) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double d = values[i] - out.mean;
      sq[i] = d * d;
    }
    out.se = std::sqrt(compensated_sum(sq) / (n * (n - 1.0)));
  }
  return out;
}

double resolve_rate(const ExperimentConfig& cfg) {
  if (cfg.rate_r >= 0.0) return cfg.rate_r;
  const ScalarFn g = coordinate_of(cfg.curve.as_curve(), 0);
  const ApproxRate est =
      estimate_approx_rate(g, {3, 4, 5, 6, 7, 8}, cfg.measure, cfg.quad_floor);
  if (est.exact) {
    throw InputError("rate study: curve is exactly piecewise constant; "
                     "specify rate_r explicitly");
  }
  return est.rate;
}

// Least squares of y against [N^-r, N log N / m], restricted to nonnegative
// coefficients by dropping a basis function whose fitted weight goes negative.
void fit_bound(const std::vector<double>& phi1, const std::vector<double>& phi2,
               const std::vector<double>& y, double& c1, double& c2) {
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    a11 += phi1[i] * phi1[i];
    a12 += phi1[i] * phi2[i];
    a22 += phi2[i] * phi2[i];
    b1 += phi1[i] * y[i];
    b2 += phi2[i] * y[i];
  }
  const double det = a11 * a22 - a12 * a12;
  if (det > 0.0) {
    c1 = (a22 * b1 - a12 * b2) / det;
    c2 = (a11 * b2 - a12 * b1) / det;
  } else {
    c1 = a11 > 0.0 ? b1 / a11 : 0.0;
    c2 = 0.0;
  }
  if (c1 < 0.0) {
    c1 = 0.0;
    c2 = a22 > 0.0 ? std::max(0.0, b2 / a22) : 0.0;
  } else if (c2 < 0.0) {
    c2 = 0.0;
    c1 = a11 > 0.0 ? std::max(0.0, b1 / a11) : 0.0;
  }
}

}  // namespace

RateReport run_rate_study(const ExperimentConfig& cfg) {
  cfg.validate();
  RateReport report;
  report.rate_r = resolve_rate(cfg);

  const Curve regressor = regressor_of(cfg.curve, cfg.noise);
  const std::size_t n_cells = cfg.levels.size() * cfg.sample_counts.size();
  const auto trials = static_cast<std::size_t>(cfg.trials);

  std::vector<Quadrature> quads;
  quads.reserve(cfg.levels.size());
  for (int level : cfg.levels) {
    quads.push_back(Quadrature::for_cells(std::size_t{1} << level, cfg.quad_floor));
  }

  // One slot per (cell, trial); trial order and thread count do not affect
  // the aggregates because each task writes only its own slot.
  const std::size_t n_tasks = n_cells * trials;
  std::vector<double> errs(n_tasks, 0.0);
  std::vector<char> failed(n_tasks, 0);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t task = 0; task < static_cast<std::ptrdiff_t>(n_tasks); ++task) {
    const std::size_t cell = static_cast<std::size_t>(task) / trials;
    const std::size_t trial = static_cast<std::size_t>(task) % trials;
    const std::size_t li = cell / cfg.sample_counts.size();
    const std::size_t mi = cell % cfg.sample_counts.size();
    try {
      const std::uint64_t trial_seed =
          mix_seed(mix_seed(cfg.seed, cell + 1), trial + 1);
      const Dataset ds = sample_dataset(cfg.curve, cfg.measure, cfg.noise,
                                        cfg.sample_counts[mi], trial_seed);
      const PartitionEstimate est = fit_partition(ds, Partition(cfg.levels[li]));
      errs[static_cast<std::size_t>(task)] =
          l2_error(est.as_curve(), regressor, cfg.measure, quads[li]);
    } catch (const std::exception&) {
      failed[static_cast<std::size_t>(task)] = 1;
    }
  }

  for (std::size_t cell = 0; cell < n_cells; ++cell) {
    const std::size_t li = cell / cfg.sample_counts.size();
    const std::size_t mi = cell % cfg.sample_counts.size();
    std::vector<double> cell_err, cell_sq;
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t task = cell * trials + t;
      if (failed[task]) {
        ++report.failed_trials;
        continue;
      }
      cell_err.push_back(errs[task]);
      cell_sq.push_back(errs[task] * errs[task]);
    }
    if (cell_err.empty()) {
      throw NumericError("rate study: every trial failed for one grid cell");
    }
    RateCell rc;
    rc.level = cfg.levels[li];
    rc.m = cfg.sample_counts[mi];
    const MeanSe e = aggregate(cell_err);
    const MeanSe s = aggregate(cell_sq);
    rc.mean_err = e.mean;
    rc.se_err = e.se;
    rc.mean_sq = s.mean;
    rc.se_sq = s.se;
    report.cells.push_back(rc);
  }

  // Bias slope: largest m, level varying. Variance slope: smallest level,
  // m varying. The two terms of the error bound dominate in opposite corners.
  const std::size_t m_max = *std::max_element(cfg.sample_counts.begin(),
                                              cfg.sample_counts.end());
  const int n_min = *std::min_element(cfg.levels.begin(), cfg.levels.end());
  std::vector<double> bx, by, vx, vy;
  for (const RateCell& rc : report.cells) {
    if (rc.m == m_max && rc.mean_err > 0.0) {
      bx.push_back(std::log(std::pow(2.0, rc.level)));
      by.push_back(std::log(rc.mean_err));
    }
    if (rc.level == n_min && rc.mean_sq > 0.0) {
      vx.push_back(std::log(static_cast<double>(rc.m)));
      vy.push_back(std::log(rc.mean_sq));
    }
  }
  report.bias_slope = bx.size() >= 2 ? fit_line(bx, by).slope
                                     : std::numeric_limits<double>::quiet_NaN();
  report.variance_slope = vx.size() >= 2 ? fit_line(vx, vy).slope
                                         : std::numeric_limits<double>::quiet_NaN();

  // Bound envelope: fit on even-indexed cells, validate on the rest.
  std::vector<double> phi1, phi2, y;
  for (std::size_t i = 0; i < report.cells.size(); i += 2) {
    const RateCell& rc = report.cells[i];
    const double n_dim = std::pow(2.0, rc.level);
    phi1.push_back(std::pow(n_dim, -report.rate_r));
    phi2.push_back(n_dim * std::log(n_dim) / static_cast<double>(rc.m));
    y.push_back(rc.mean_err);
  }
  fit_bound(phi1, phi2, y, report.c1, report.c2);
  double max_ratio = 0.0;
  for (std::size_t i = 1; i < report.cells.size(); i += 2) {
    const RateCell& rc = report.cells[i];
    const double n_dim = std::pow(2.0, rc.level);
    const double bound = report.c1 * std::pow(n_dim, -report.rate_r) +
                         report.c2 * n_dim * std::log(n_dim) /
                             static_cast<double>(rc.m);
    max_ratio = std::max(max_ratio,
                         bound > 0.0 ? rc.mean_err / bound
                                     : std::numeric_limits<double>::infinity());
  }
  report.holdout_max_ratio = max_ratio;
  return report;
}

std::vector<CenterSweepRow> run_center_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.betas.empty()) throw InputError("center sweep: need a beta value");
  const Dataset ds = sample_dataset(cfg.curve, cfg.measure, cfg.noise,
                                    cfg.sample_counts.front(), cfg.seed);
  const Curve regressor = regressor_of(cfg.curve, cfg.noise);
  const double beta = cfg.betas.front();

  constexpr std::size_t kGrid = 4096;
  std::vector<CenterSweepRow> rows;
  for (int level : cfg.levels) {
    const Partition partition(level);
    const Quadrature quad = Quadrature::for_cells(partition.size(), cfg.quad_floor);
    CenterSweepRow row;
    row.level = level;
    row.num_centers = partition.size();

    const PartitionEstimate pe = fit_partition(ds, partition);
    row.partition_risk = empirical_risk(pe.as_curve(), ds);
    row.partition_l2 = l2_error(pe.as_curve(), regressor, cfg.measure, quad);
    row.min_count = *std::min_element(pe.counts().begin(), pe.counts().end());
    row.empty_cells = pe.fills().size();

    try {
      const KernelEstimate ke =
          fit_kernel(ds, partition.representatives(), beta, cfg.lambda, cfg.metric);
      row.kernel_risk = empirical_risk(ke.as_curve(), ds);
      row.kernel_l2 = l2_error(ke.as_curve(), regressor, cfg.measure, quad);
      row.kernel_condition = ke.condition();
      double sup = 0.0;
      for (std::size_t i = 0; i < kGrid; ++i) {
        const double s = (static_cast<double>(i) + 0.5) / kGrid;
        sup = std::max(sup, (pe(s) - ke(s)).cwiseAbs().maxCoeff());
      }
      row.sup_gap = sup;
    } catch (const std::exception& e) {
      row.kernel_failed = true;
      row.kernel_error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<BetaSweepRow> run_beta_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.betas.empty()) throw InputError("beta sweep: empty beta grid");
  if (cfg.centers < 1) throw InputError("beta sweep: need at least one center");
  const Dataset ds = sample_dataset(cfg.curve, cfg.measure, cfg.noise,
                                    cfg.sample_counts.front(), cfg.seed);

  std::vector<double> centers(cfg.centers);
  for (std::size_t k = 0; k < cfg.centers; ++k) {
    centers[k] = (static_cast<double>(k) + 0.5) / static_cast<double>(cfg.centers);
  }

  constexpr std::size_t kGrid = 4096;
  std::vector<BetaSweepRow> rows;
  for (double beta : cfg.betas) {
    BetaSweepRow row;
    row.beta = beta;
    row.condition = kernel_gram_condition(centers, beta, cfg.metric);
    try {
      const KernelEstimate ke = fit_kernel(ds, centers, beta, cfg.lambda, cfg.metric);
      row.risk = empirical_risk(ke.as_curve(), ds);
      double tv = 0.0;
      Eigen::VectorXd prev = ke(0.0);
      for (std::size_t i = 1; i <= kGrid; ++i) {  // closes the loop at the wrap
        const Eigen::VectorXd cur = ke(static_cast<double>(i % kGrid) / kGrid);
        tv += (cur - prev).cwiseAbs().sum();
        prev = cur;
      }
      row.total_variation = tv;
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace subman

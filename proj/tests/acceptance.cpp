// End-to-end acceptance checks. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any criterion fails. Tolerances are
// pinned as constants next to each check.

#include <Eigen/Core>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "subman/analysis.hpp"
#include "subman/experiments.hpp"
#include "subman/gait.hpp"
#include "subman/io.hpp"
#include "subman/kernel_estimate.hpp"
#include "subman/numerics.hpp"
#include "subman/partition_estimate.hpp"
#include "subman/rng.hpp"
#include "subman/synth.hpp"

#ifndef SUBMAN_CLI_PATH
#define SUBMAN_CLI_PATH "./subman"
#endif

using namespace subman;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& label,
            const std::string& detail) {
  std::cout << "criterion " << criterion << ": " << (pass ? "PASS" : "FAIL")
            << " - " << label << " (" << detail << ")" << std::endl;
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1: closed-form minimizer vs naive oracle --------------------

void criterion1() {
  constexpr double kCoeffTol = 1e-12;
  const auto t0 = std::chrono::steady_clock::now();
  Rng meta(1001);
  double worst_gap = 0.0;
  bool risk_ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 50 + static_cast<std::size_t>(meta.uniform01() * 950);
    const int n = 1 + static_cast<int>(meta.uniform01() * 6);
    const int d = 1 + static_cast<int>(meta.uniform01() * 3);
    Rng rng(mix_seed(2000, static_cast<std::uint64_t>(trial)));
    Dataset ds;
    ds.phases.resize(m);
    ds.coords.resize(static_cast<Eigen::Index>(m), d);
    for (std::size_t i = 0; i < m; ++i) {
      ds.phases[i] = rng.uniform01();
      for (int j = 0; j < d; ++j) {
        ds.coords(static_cast<Eigen::Index>(i), j) = rng.normal();
      }
    }
    const Partition p(n);
    const PartitionEstimate est = fit_partition(ds, p);

    // naive group-by means
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p.size()), d);
    std::vector<std::size_t> counts(p.size(), 0);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t k = p.cell_index(ds.phases[i]);
      sums.row(static_cast<Eigen::Index>(k)) += ds.coords.row(static_cast<Eigen::Index>(i));
      ++counts[k];
    }
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (counts[k] == 0) continue;
      const Eigen::RowVectorXd mean = sums.row(static_cast<Eigen::Index>(k)) /
                                      static_cast<double>(counts[k]);
      worst_gap = std::max(
          worst_gap,
          (est.coeffs().row(static_cast<Eigen::Index>(k)) - mean).cwiseAbs().maxCoeff());
    }

    const double base = empirical_risk(est.as_curve(), ds);
    for (int pert = 0; pert < 100; ++pert) {
      Eigen::MatrixXd coeffs = est.coeffs();
      for (Eigen::Index a = 0; a < coeffs.rows(); ++a) {
        for (Eigen::Index b = 0; b < coeffs.cols(); ++b) {
          coeffs(a, b) += 0.1 * rng.normal();
        }
      }
      const PartitionEstimate other(p, coeffs, est.counts(), est.fills());
      if (base > empirical_risk(other.as_curve(), ds) + 1e-15) {
        risk_ok = false;
      }
    }
  }
  const double dt = seconds_since(t0);
  std::ostringstream detail;
  detail << "max coefficient gap " << worst_gap << ", risk minimal " << std::boolalpha
         << risk_ok << ", " << dt << " s";
  report(1, worst_gap < kCoeffTol && risk_ok && dt < 10.0,
         "closed-form minimizer equals the group-mean oracle", detail.str());
}

// ---- criterion 2: bias decay slope on a noiseless Lipschitz regressor ------

void criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  const AnalyticCurve curve = AnalyticCurve::sawtooth(1.0, 1);
  const Measure mu = Measure::uniform();

  const ApproxRate ar = estimate_approx_rate(
      [&](double s) { return curve.eval(s)(0); }, {3, 4, 5, 6, 7, 8}, mu);
  const bool rate_ok = std::fabs(ar.rate - 1.0) <= 0.15;

  const std::size_t m = 1000000;
  const Dataset ds = sample_dataset(curve, mu, NoiseModel::none(), m, 77);
  const Curve exact = curve.as_curve();
  std::vector<double> log_n, log_err;
  for (int n = 2; n <= 7; ++n) {
    const Partition p(n);
    const PartitionEstimate est = fit_partition(ds, p);
    const Quadrature quad = Quadrature::for_cells(p.size());
    const double err = l2_error(est.as_curve(), exact, mu, quad);
    log_n.push_back(std::log(static_cast<double>(p.size())));
    log_err.push_back(std::log(err));
  }
  const double slope = fit_line(log_n, log_err).slope;
  const double dt = seconds_since(t0);
  std::ostringstream detail;
  detail << "regressor rate " << ar.rate << ", error slope " << slope << ", " << dt
         << " s";
  report(2, rate_ok && slope >= -1.15 && slope <= -0.85 && dt < 180.0,
         "noiseless error decays like 1/N", detail.str());
}

// ---- criterion 3: variance decay slope at a fixed partition ----------------

void criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg;
  cfg.curve = AnalyticCurve::sawtooth(0.0, 1);  // regressor identically zero
  cfg.measure = Measure::uniform();
  cfg.noise = NoiseModel::gaussian(0.2);
  cfg.levels = {4};
  cfg.sample_counts = {256, 512, 1024, 2048, 4096, 8192, 16384};
  cfg.trials = 50;
  cfg.seed = 303;
  cfg.rate_r = 1.0;  // irrelevant for a single level; skips pre-estimation
  const RateReport report_data = run_rate_study(cfg);
  const double slope = report_data.variance_slope;
  const double dt = seconds_since(t0);
  std::ostringstream detail;
  detail << "mean-square slope " << slope << ", failed trials "
         << report_data.failed_trials << ", " << dt << " s";
  report(3, slope >= -1.2 && slope <= -0.8 && report_data.failed_trials == 0 &&
             dt < 180.0,
         "noise-only squared error decays like 1/m", detail.str());
}

// ---- criterion 4: fitted bound envelopes the held-out cells ----------------

void criterion4() {
  constexpr double kEnvelopeFactor = 1.25;
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg;
  cfg.curve = AnalyticCurve::sawtooth(1.0, 1);
  cfg.measure = Measure::uniform();
  cfg.noise = NoiseModel::gaussian(0.05);
  cfg.levels = {2, 3, 4, 5, 6};
  cfg.sample_counts = {1024, 4096, 16384};
  cfg.trials = 50;
  cfg.seed = 404;
  cfg.rate_r = 1.0;
  const RateReport r = run_rate_study(cfg);
  const double dt = seconds_since(t0);
  std::ostringstream detail;
  detail << "holdout max ratio " << r.holdout_max_ratio << " (limit " << kEnvelopeFactor
         << "), C1 " << r.c1 << ", C2 " << r.c2 << ", " << dt << " s";
  report(4, r.holdout_max_ratio <= kEnvelopeFactor && r.holdout_max_ratio > 0.0,
         "two-term bound envelopes held-out measurements", detail.str());
}

// ---- criterion 5: projection machinery -------------------------------------

void criterion5() {
  constexpr double kIdemTol = 1e-12;
  constexpr double kCoeffTol = 1e-8;
  const Measure mu = Measure::uniform();

  const Partition p4(4);
  const Quadrature q4 = Quadrature::for_cells(p4.size());
  auto g = [](double s) { return std::exp(std::cos(2.0 * std::numbers::pi * s)); };
  const Eigen::VectorXd once = project_l2(g, p4, mu, q4);
  auto pg = [&](double s) { return once(static_cast<Eigen::Index>(p4.cell_index(s))); };
  const Eigen::VectorXd twice = project_l2(pg, p4, mu, q4);
  const double idem_gap = (once - twice).cwiseAbs().maxCoeff();

  const Partition p2(2);
  const Quadrature q2 = Quadrature::for_cells(p2.size(), 1 << 16);
  const Eigen::VectorXd cosc = project_l2(
      [](double s) { return std::cos(2.0 * std::numbers::pi * s); }, p2, mu, q2);
  const double v = 2.0 / std::numbers::pi;
  const double coeff_gap = std::max(
      std::max(std::fabs(cosc(0) - v), std::fabs(cosc(1) + v)),
      std::max(std::fabs(cosc(2) + v), std::fabs(cosc(3) - v)));

  auto sq_error = [&](const Eigen::VectorXd& c) {
    return integrate(
        [&](double s) {
          const double gap = g(s) - c(static_cast<Eigen::Index>(p4.cell_index(s)));
          return gap * gap;
        },
        mu, q4);
  };
  const double best = sq_error(once);
  bool best_ok = true;
  Rng rng(505);
  for (int t = 0; t < 1000; ++t) {
    Eigen::VectorXd other = once;
    for (Eigen::Index k = 0; k < other.size(); ++k) other(k) += 0.05 * rng.normal();
    if (best > sq_error(other) + 1e-14) best_ok = false;
  }

  std::ostringstream detail;
  detail << "idempotence gap " << idem_gap << ", coefficient gap " << coeff_gap
         << ", best-approximation " << std::boolalpha << best_ok;
  report(5, idem_gap < kIdemTol && coeff_gap < kCoeffTol && best_ok,
         "projection is idempotent, analytic, and optimal", detail.str());
}

// ---- criterion 6: kernel estimator properties ------------------------------

void criterion6() {
  constexpr double kResidualTol = 1e-6;
  std::vector<double> centers(16);
  for (std::size_t k = 0; k < 16; ++k) centers[k] = (k + 0.5) / 16.0;

  Dataset ds;
  ds.phases = centers;
  ds.coords.resize(16, 2);
  Rng rng(606);
  for (Eigen::Index i = 0; i < 16; ++i) {
    ds.coords(i, 0) = std::sin(2.0 * std::numbers::pi * centers[static_cast<std::size_t>(i)]);
    ds.coords(i, 1) = rng.normal();
  }
  const KernelEstimate interp = fit_kernel(ds, centers, 25.0, 0.0, Metric::kChordal);
  double max_rel_residual = 0.0;
  for (std::size_t i = 0; i < 16; ++i) {
    const Eigen::VectorXd pred = interp(centers[i]);
    const Eigen::VectorXd truth = ds.coords.row(static_cast<Eigen::Index>(i)).transpose();
    max_rel_residual = std::max(
        max_rel_residual, (pred - truth).norm() / (1.0 + truth.norm()));
  }

  bool cond_monotone = true;
  double prev_cond = 0.0;
  for (double beta : {400.0, 100.0, 25.0, 6.0}) {
    const double cond = kernel_gram_condition(centers, beta, Metric::kChordal);
    if (cond < prev_cond) cond_monotone = false;
    prev_cond = cond;
  }

  Rng srng(607);
  Dataset big;
  big.phases.resize(400);
  big.coords.resize(400, 1);
  for (std::size_t i = 0; i < 400; ++i) {
    big.phases[i] = srng.uniform01();
    big.coords(static_cast<Eigen::Index>(i), 0) =
        std::cos(2.0 * std::numbers::pi * big.phases[i]) + 0.1 * srng.normal();
  }
  bool shrink_monotone = true;
  double prev_norm = -1.0;
  for (double lambda : {0.0, 1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
    const KernelEstimate est = fit_kernel(big, centers, 25.0, lambda, Metric::kChordal);
    const double norm = est.coeffs().norm();
    if (prev_norm >= 0.0 && norm > prev_norm + 1e-12) shrink_monotone = false;
    prev_norm = norm;
  }

  std::ostringstream detail;
  detail << "max relative residual " << max_rel_residual << ", condition monotone "
         << std::boolalpha << cond_monotone << ", shrinkage monotone "
         << shrink_monotone;
  report(6,
         max_rel_residual <= kResidualTol && cond_monotone && shrink_monotone,
         "kernel fit interpolates, conditions, and shrinks as expected",
         detail.str());
}

// ---- criterion 7: phase pipeline round-trip --------------------------------

void criterion7() {
  constexpr double kPhaseTol = 1e-12;
  const std::vector<Stride> strides = {{0.0, 0.8}, {1.0, 0.9}, {2.0, 0.75}, {3.0, 0.81}};
  std::vector<double> times, expected;
  Rng rng(707);
  for (const Stride& st : strides) {
    std::vector<double> phases;
    for (int i = 0; i < 25; ++i) phases.push_back(rng.uniform01() * 0.999);
    std::sort(phases.begin(), phases.end());
    for (double s : phases) {
      times.push_back(st.t_p + s * st.T_p);
      expected.push_back(s);
    }
  }
  Trajectory traj;
  traj.timestamps = times;
  traj.positions = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(times.size()), 1);
  traj.columns = {"p_x"};
  GaitSegmentation seg;
  seg.strides = strides;
  const PhaseMapResult res = phase_map(traj, seg);
  double worst = 1.0;
  if (res.samples.size() == expected.size()) {
    worst = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      worst = std::max(worst, std::fabs(res.samples.phases[i] - expected[i]));
    }
  }

  Trajectory point;
  point.timestamps = {1.25};
  point.positions = Eigen::MatrixXd::Zero(1, 1);
  point.columns = {"p_x"};
  GaitSegmentation pseg;
  pseg.strides = {{1.0, 0.5}};
  const PhaseMapResult pres = phase_map(point, pseg);
  const bool point_ok = pres.samples.size() == 1 && pres.samples.phases[0] == 0.5;

  std::ostringstream detail;
  detail << "max round-trip gap " << worst << ", point check " << std::boolalpha
         << point_ok;
  report(7, worst < kPhaseTol && point_ok, "phase map recovers known phases",
         detail.str());
}

// ---- criterion 8: CLI byte-determinism -------------------------------------

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SUBMAN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

bool same_bytes(const std::string& a, const std::string& b) {
  return read_file(a) == read_file(b);
}

void criterion8() {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() /
                        ("subman_accept_" +
                         std::to_string(Rng(std::random_device{}()).next_u64()));
  const fs::path run1 = base / "run1", run2 = base / "run2";
  fs::create_directories(run1);
  fs::create_directories(run2);

  const std::string spec = (base / "spec.json").string();
  write_file(spec,
             "{\"curve\": {\"kind\": \"sawtooth\", \"slope\": 1.0, \"dim\": 2},\n"
             " \"noise\": {\"kind\": \"gaussian\", \"sigma\": 0.1},\n"
             " \"m\": 400, \"seed\": 12}\n");
  const std::string cfg = (base / "cfg.json").string();
  write_file(cfg,
             "{\"curve\": {\"kind\": \"sawtooth\"},\n"
             " \"noise\": {\"kind\": \"gaussian\", \"sigma\": 0.1},\n"
             " \"levels\": [2, 3], \"sample_counts\": [256, 512],\n"
             " \"betas\": [100.0, 25.0], \"lambda\": 1e-8, \"trials\": 4,\n"
             " \"seed\": 2, \"rate_r\": 1.0}\n");

  bool ok = true;
  std::string failed_step;
  auto step = [&](const std::string& name, const std::function<bool()>& f) {
    if (!ok) return;
    if (!f()) {
      ok = false;
      failed_step = name;
    }
  };

  auto per_run = [&](const fs::path& dir) {
    const std::string d = dir.string();
    if (run_cli("synth --config " + spec + " --out " + d + "/traj.csv --seg " + d +
                "/seg.json") != 0) return false;
    if (run_cli("fit --traj " + d + "/traj.csv --seg " + d +
                "/seg.json --method partition --level 3 --out " + d +
                "/part.json") != 0) return false;
    if (run_cli("fit --synth " + spec +
                " --method kernel --centers 8 --beta 25 --lambda 1e-6 --out " + d +
                "/kern.json") != 0) return false;
    if (run_cli("project --synth " + spec + " --level 3 --out " + d +
                "/proj.csv") != 0) return false;
    if (run_cli("rate-study --config " + cfg + " --out-dir " + d + "/rate") != 0)
      return false;
    if (run_cli("center-sweep --config " + cfg + " --out-dir " + d + "/csweep") != 0)
      return false;
    if (run_cli("beta-sweep --config " + cfg + " --out-dir " + d + "/bsweep") != 0)
      return false;
    if (run_cli("compare --a " + d + "/part.json --b " + d +
                "/kern.json --grid 512 --out " + d + "/gaps.csv") != 0) return false;
    return true;
  };

  step("run1", [&] { return per_run(run1); });
  step("run2", [&] { return per_run(run2); });

  const std::vector<std::string> files = {
      "traj.csv",        "seg.json",           "part.json",
      "kern.json",       "proj.csv",           "rate/rate.csv",
      "rate/rate.svg",   "rate/rate_summary.json", "rate/provenance.json",
      "csweep/center_sweep.csv", "csweep/center_sweep.svg",
      "bsweep/beta_sweep.csv",   "bsweep/beta_sweep.svg",
      "gaps.csv"};
  for (const std::string& f : files) {
    step(f, [&] { return same_bytes((run1 / f).string(), (run2 / f).string()); });
  }

  std::ostringstream detail;
  if (ok) {
    detail << files.size() << " artifact kinds byte-identical across re-runs";
  } else {
    detail << "first divergence or failure at: " << failed_step;
  }
  report(8, ok, "CLI re-runs are byte-identical", detail.str());
  if (ok) fs::remove_all(base);
}

}  // namespace

int main() {
  try {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
  } catch (const std::exception& e) {
    std::cout << "acceptance aborted: " << e.what() << std::endl;
    return 1;
  }
  return g_failures == 0 ? 0 : 1;
}

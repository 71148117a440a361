// Command-line front end: synthetic data generation, fitting, projection,
// rate studies, hyperparameter sweeps, and estimate comparison.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "subman/analysis.hpp"
#include "subman/errors.hpp"
#include "subman/experiments.hpp"
#include "subman/gait.hpp"
#include "subman/io.hpp"
#include "subman/partition_estimate.hpp"
#include "subman/report.hpp"
#include "subman/synth.hpp"

namespace {

using namespace subman;

std::string provenance_comment(const Provenance& prov) {
  return "# provenance input_hash=" + prov.input_hash +
         " seed=" + std::to_string(prov.seed) +
         " tool_version=" + prov.tool_version + "\n";
}

void write_provenance_json(const Provenance& prov, const std::string& out_dir) {
  const nlohmann::json doc = {{"input_hash", prov.input_hash},
                              {"seed", prov.seed},
                              {"tool_version", prov.tool_version}};
  write_file(out_dir + "/provenance.json", doc.dump(2) + "\n");
}

int cmd_synth(const std::string& config_path, const std::string& out_path,
              const std::string& seg_path) {
  const SynthSpec spec = read_synth_spec(config_path);
  Dataset ds = sample_dataset(spec.curve, spec.measure, spec.noise, spec.m, spec.seed);

  // Emit as a trajectory over one unit-period stride: t = phase, sorted.
  std::vector<std::size_t> order(ds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ds.phases[a] < ds.phases[b]; });

  Trajectory traj;
  traj.timestamps.reserve(ds.size());
  traj.positions.resize(ds.coords.rows(), ds.coords.cols());
  Eigen::Index row = 0;
  for (std::size_t i : order) {
    if (!traj.timestamps.empty() && ds.phases[i] == traj.timestamps.back()) {
      continue;  // duplicate phase cannot appear in a strictly increasing time axis
    }
    traj.timestamps.push_back(ds.phases[i]);
    traj.positions.row(row++) = ds.coords.row(static_cast<Eigen::Index>(i));
  }
  traj.positions.conservativeResize(row, Eigen::NoChange);
  const Eigen::Index d = traj.positions.cols();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (d % 3 == 0) {
      const char* axis[] = {"x", "y", "z"};
      traj.columns.push_back("m" + std::to_string(j / 3) + "_" + axis[j % 3]);
    } else {
      traj.columns.push_back("c" + std::to_string(j));
    }
  }
  write_trajectory_csv(traj, out_path);
  if (!seg_path.empty()) {
    GaitSegmentation seg;
    seg.strides.push_back({0.0, 1.0});
    write_segmentation_json(seg, seg_path);
  }
  std::cout << "synth: wrote " << traj.timestamps.size() << " frames, d=" << d
            << " to " << out_path << "\n";
  return 0;
}

struct FitInputs {
  Dataset ds;
  Provenance prov;
};

FitInputs gather_fit_inputs(const std::string& traj_path, const std::string& seg_path,
                            const std::string& synth_path) {
  FitInputs in;
  if (!synth_path.empty()) {
    const std::string bytes = read_file(synth_path);
    const SynthSpec spec = read_synth_spec(synth_path);
    in.ds = sample_dataset(spec.curve, spec.measure, spec.noise, spec.m, spec.seed);
    in.prov.input_hash = hex64(fnv1a64(bytes));
    in.prov.seed = spec.seed;
    return in;
  }
  if (traj_path.empty() || seg_path.empty()) {
    throw InputError("fit: provide either --synth or both --traj and --seg");
  }
  const std::string bytes = read_file(traj_path) + read_file(seg_path);
  const Trajectory traj = read_trajectory_csv(traj_path);
  const GaitSegmentation seg = read_segmentation_json(seg_path);
  PhaseMapResult mapped = phase_map(traj, seg);
  in.ds = std::move(mapped.samples);
  in.prov.input_hash = hex64(fnv1a64(bytes));
  in.prov.seed = 0;
  return in;
}

int cmd_fit(const std::string& traj_path, const std::string& seg_path,
            const std::string& synth_path, const std::string& method, int level,
            std::size_t centers, double beta, double lambda,
            const std::string& metric_str, const std::string& out_path) {
  FitInputs in = gather_fit_inputs(traj_path, seg_path, synth_path);
  std::cout << "m=" << in.ds.size() << " d=" << in.ds.dim() << "\n";

  if (method == "partition") {
    const Partition partition(level);
    const PartitionEstimate est = fit_partition(in.ds, partition);
    std::cout << "cells=" << partition.size() << " empty=" << est.fills().size()
              << "\ncounts:";
    for (std::size_t c : est.counts()) std::cout << ' ' << c;
    std::cout << "\nempirical_risk=" << format_double(empirical_risk(est.as_curve(), in.ds))
              << "\n";
    if (!out_path.empty()) save_estimate(est, in.prov, out_path);
    return 0;
  }
  if (method == "kernel") {
    std::vector<double> center_phases(centers);
    for (std::size_t k = 0; k < centers; ++k) {
      center_phases[k] = (static_cast<double>(k) + 0.5) / static_cast<double>(centers);
    }
    const KernelEstimate est = fit_kernel(in.ds, center_phases, beta, lambda,
                                          metric_from_name(metric_str));
    std::cout << "centers=" << centers
              << " condition=" << format_double(est.condition())
              << "\nempirical_risk=" << format_double(empirical_risk(est.as_curve(), in.ds))
              << "\n";
    if (!out_path.empty()) save_estimate(est, in.prov, out_path);
    return 0;
  }
  throw InputError("fit: unknown --method '" + method + "' (partition|kernel)");
}

int cmd_project(const std::string& synth_path, int level, const std::string& out_path) {
  const std::string bytes = read_file(synth_path);
  const SynthSpec spec = read_synth_spec(synth_path);
  const Partition partition(level);
  const Quadrature quad = Quadrature::for_cells(partition.size());
  const Curve curve = spec.curve.as_curve();

  Eigen::MatrixXd coeffs(static_cast<Eigen::Index>(partition.size()), curve.dim);
  for (int j = 0; j < curve.dim; ++j) {
    coeffs.col(j) = project_l2(coordinate_of(curve, j), partition, spec.measure, quad);
  }

  Provenance prov;
  prov.input_hash = hex64(fnv1a64(bytes));
  prov.seed = spec.seed;
  std::ostringstream csv;
  csv << provenance_comment(prov);
  csv << "cell,lower,upper";
  for (int j = 0; j < curve.dim; ++j) csv << ",coef_" << j;
  csv << '\n';
  for (std::size_t k = 0; k < partition.size(); ++k) {
    csv << k << ',' << format_double(partition.cell_lower(k)) << ','
        << format_double(partition.cell_upper(k));
    for (int j = 0; j < curve.dim; ++j) {
      csv << ',' << format_double(coeffs(static_cast<Eigen::Index>(k), j));
    }
    csv << '\n';
  }
  write_file(out_path, csv.str());
  std::cout << "project: wrote " << partition.size() << " cells to " << out_path << "\n";
  return 0;
}

Provenance config_provenance(const std::string& config_path, std::uint64_t seed) {
  Provenance prov;
  prov.input_hash = hex64(fnv1a64(read_file(config_path)));
  prov.seed = seed;
  return prov;
}

int cmd_rate_study(const std::string& config_path, const std::string& out_dir,
                   std::int64_t seed_override) {
  ExperimentConfig cfg = read_experiment_config(config_path);
  if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
  const RateReport report = run_rate_study(cfg);
  emit_rate_report(report, out_dir);
  write_provenance_json(config_provenance(config_path, cfg.seed), out_dir);
  std::cout << "rate-study: r=" << format_double(report.rate_r)
            << " bias_slope=" << format_double(report.bias_slope)
            << " variance_slope=" << format_double(report.variance_slope)
            << " holdout_ratio=" << format_double(report.holdout_max_ratio)
            << " failed_trials=" << report.failed_trials << "\n";
  return 0;
}

int cmd_center_sweep(const std::string& config_path, const std::string& out_dir) {
  const ExperimentConfig cfg = read_experiment_config(config_path);
  emit_center_sweep(run_center_sweep(cfg), out_dir);
  write_provenance_json(config_provenance(config_path, cfg.seed), out_dir);
  std::cout << "center-sweep: wrote " << out_dir << "/center_sweep.csv\n";
  return 0;
}

int cmd_beta_sweep(const std::string& config_path, const std::string& out_dir) {
  const ExperimentConfig cfg = read_experiment_config(config_path);
  emit_beta_sweep(run_beta_sweep(cfg), out_dir);
  write_provenance_json(config_provenance(config_path, cfg.seed), out_dir);
  std::cout << "beta-sweep: wrote " << out_dir << "/beta_sweep.csv\n";
  return 0;
}

int cmd_compare(const std::string& path_a, const std::string& path_b,
                std::size_t grid, const std::string& out_path) {
  const std::string bytes = read_file(path_a) + read_file(path_b);
  const LoadedEstimate a = load_estimate(path_a);
  const LoadedEstimate b = load_estimate(path_b);
  if (a.dim() != b.dim()) {
    throw InputError("compare: dimension mismatch (" + std::to_string(a.dim()) +
                     " vs " + std::to_string(b.dim()) + ")");
  }
  Provenance prov;
  prov.input_hash = hex64(fnv1a64(bytes));

  std::ostringstream csv;
  csv << provenance_comment(prov);
  csv << "s";
  for (int j = 0; j < a.dim(); ++j) csv << ",a_" << j;
  for (int j = 0; j < b.dim(); ++j) csv << ",b_" << j;
  csv << ",gap\n";
  double max_gap = 0.0, sum_gap = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    const double s = (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
    const Eigen::VectorXd va = a.eval(s);
    const Eigen::VectorXd vb = b.eval(s);
    const double gap = (va - vb).norm();
    max_gap = std::max(max_gap, gap);
    sum_gap += gap;
    csv << format_double(s);
    for (int j = 0; j < a.dim(); ++j) csv << ',' << format_double(va(j));
    for (int j = 0; j < b.dim(); ++j) csv << ',' << format_double(vb(j));
    csv << ',' << format_double(gap) << '\n';
  }
  write_file(out_path, csv.str());
  std::cout << "compare: max_gap=" << format_double(max_gap)
            << " mean_gap=" << format_double(sum_gap / static_cast<double>(grid))
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Submanifold estimation from phase-indexed motion samples"};
  app.require_subcommand(1);

  std::string config_path, out_path, seg_path, traj_path, synth_path, out_dir;
  std::string method = "partition", metric = "chordal", path_a, path_b;
  int level = 5;
  std::size_t centers = 16, grid = 4096;
  double beta = 25.0, lambda = 0.0;
  std::int64_t seed_override = -1;

  auto* synth = app.add_subcommand("synth", "Generate a synthetic trajectory");
  synth->add_option("--config", config_path, "synth spec JSON")->required();
  synth->add_option("--out", out_path, "output trajectory CSV")->required();
  synth->add_option("--seg", seg_path, "output segmentation JSON");

  auto* fit = app.add_subcommand("fit", "Fit an estimate to samples");
  fit->add_option("--traj", traj_path, "trajectory CSV");
  fit->add_option("--seg", seg_path, "segmentation JSON");
  fit->add_option("--synth", synth_path, "synth spec JSON (alternative input)");
  fit->add_option("--method", method, "partition|kernel");
  fit->add_option("--level", level, "partition level n");
  fit->add_option("--centers", centers, "kernel center count");
  fit->add_option("--beta", beta, "kernel inverse squared length scale");
  fit->add_option("--lambda", lambda, "ridge regularization");
  fit->add_option("--metric", metric, "chordal|geodesic");
  fit->add_option("--out", out_path, "output estimate JSON");

  auto* project = app.add_subcommand("project", "Piecewise-constant projection of a curve");
  project->add_option("--synth", synth_path, "synth spec JSON")->required();
  project->add_option("--level", level, "partition level n");
  project->add_option("--out", out_path, "output coefficient CSV")->required();

  auto* rate = app.add_subcommand("rate-study", "Monte-Carlo convergence study");
  rate->add_option("--config", config_path, "experiment config JSON")->required();
  rate->add_option("--out-dir", out_dir, "output directory")->required();
  rate->add_option("--seed", seed_override, "override config seed");

  auto* csweep = app.add_subcommand("center-sweep", "Partition vs kernel by center count");
  csweep->add_option("--config", config_path, "experiment config JSON")->required();
  csweep->add_option("--out-dir", out_dir, "output directory")->required();

  auto* bsweep = app.add_subcommand("beta-sweep", "Kernel hyperparameter sweep");
  bsweep->add_option("--config", config_path, "experiment config JSON")->required();
  bsweep->add_option("--out-dir", out_dir, "output directory")->required();

  auto* compare = app.add_subcommand("compare", "Evaluate two estimates on a grid");
  compare->add_option("--a", path_a, "first estimate JSON")->required();
  compare->add_option("--b", path_b, "second estimate JSON")->required();
  compare->add_option("--grid", grid, "evaluation grid size");
  compare->add_option("--out", out_path, "output gap CSV")->required();

  try {
    app.parse(argc, argv);
    if (synth->parsed()) return cmd_synth(config_path, out_path, seg_path);
    if (fit->parsed()) {
      return cmd_fit(traj_path, seg_path, synth_path, method, level, centers, beta,
                     lambda, metric, out_path);
    }
    if (project->parsed()) return cmd_project(synth_path, level, out_path);
    if (rate->parsed()) return cmd_rate_study(config_path, out_dir, seed_override);
    if (csweep->parsed()) return cmd_center_sweep(config_path, out_dir);
    if (bsweep->parsed()) return cmd_beta_sweep(config_path, out_dir);
    if (compare->parsed()) return cmd_compare(path_a, path_b, grid, out_path);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const subman::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const subman::NumericError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subman/experiments.hpp"
#include "subman/gait.hpp"
#include "subman/kernel_estimate.hpp"
#include "subman/partition_estimate.hpp"

namespace subman {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a over raw bytes; used for the provenance input hash.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

// Shortest round-trip decimal for a double (17 significant digits).
std::string format_double(double v);

struct Provenance {
  std::string input_hash;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
};

// ---- trajectory CSV: header "t,<name>_x,<name>_y,..." -------------------

Trajectory read_trajectory_csv(const std::string& path);
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

// ---- segmentation JSON: [{"t_p": seconds, "T_p": seconds}, ...] ----------

GaitSegmentation read_segmentation_json(const std::string& path);
void write_segmentation_json(const GaitSegmentation& seg, const std::string& path);

// ---- estimate JSON --------------------------------------------------------

void save_estimate(const PartitionEstimate& est, const Provenance& prov,
                   const std::string& path);
void save_estimate(const KernelEstimate& est, const Provenance& prov,
                   const std::string& path);

struct LoadedEstimate {
  std::string kind;  // "partition" | "kernel"
  std::optional<PartitionEstimate> partition;
  std::optional<KernelEstimate> kernel;
  Provenance provenance;

  int dim() const;
  Eigen::VectorXd eval(double s) const;
  Curve as_curve() const;
};

LoadedEstimate load_estimate(const std::string& path);

// ---- experiment config JSON ----------------------------------------------

ExperimentConfig read_experiment_config(const std::string& path);

// ---- synthetic dataset spec (curve/measure/noise/m/seed) ------------------

struct SynthSpec {
  AnalyticCurve curve = AnalyticCurve::sawtooth(1.0, 1);
  Measure measure = Measure::uniform();
  NoiseModel noise = NoiseModel::none();
  std::size_t m = 1000;
  std::uint64_t seed = 0;
};

SynthSpec read_synth_spec(const std::string& path);

std::string read_file(const std::string& path);   // throws InputError
void write_file(const std::string& path, const std::string& content);

}  // namespace subman

#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <string>
#include <vector>

#include "subman/dataset.hpp"

namespace subman {

// Timestamped marker positions. One row per frame.
struct Trajectory {
  std::vector<double> timestamps;  // strictly increasing, seconds
  Eigen::MatrixXd positions;       // frames x d
  std::vector<std::string> columns;

  void validate() const;  // throws InputError
};

// One locomotion cycle: start time and period, seconds.
struct Stride {
  double t_p = 0.0;
  double T_p = 0.0;
};

struct GaitSegmentation {
  std::vector<Stride> strides;
  void validate() const;  // positive periods, ordered, non-overlapping
};

struct PhaseMapResult {
  Dataset samples;                          // stride-major order
  std::vector<std::size_t> stride_counts;   // emitted per stride
  std::size_t dropped = 0;                  // timestamps outside all strides
};

// s_i = (t_i - t_p) / T_p, wrapped to [0,1). A timestamp marginally past the
// stride end (within 1e-9 * T_p) still wraps into this stride rather than
// being dropped. throws InputError if no timestamp falls in any stride.
PhaseMapResult phase_map(const Trajectory& traj, const GaitSegmentation& seg);

// Concatenate per-stride datasets into one, stride-major.
// throws InputError on dimension mismatch or empty input.
Dataset pool_strides(const std::vector<Dataset>& per_stride);

}  // namespace subman

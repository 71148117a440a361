#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <vector>

namespace subman {

// One observation (s, x) on the circle times ambient space.
struct Sample {
  double s = 0.0;
  Eigen::VectorXd x;
};

// Column-major bulk storage for m samples sharing one ambient dimension d.
struct Dataset {
  std::vector<double> phases;  // wrapped to [0, 1)
  Eigen::MatrixXd coords;      // m x d

  std::size_t size() const { return phases.size(); }
  Eigen::Index dim() const { return coords.cols(); }

  Sample sample(std::size_t i) const {
    return {phases[i], coords.row(static_cast<Eigen::Index>(i)).transpose()};
  }

  static Dataset from_samples(const std::vector<Sample>& samples);

  // throws InputError: empty, d < 1, row-count mismatch, non-finite entries
  void validate() const;
};

}  // namespace subman

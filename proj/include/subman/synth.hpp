#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "subman/curve.hpp"
#include "subman/dataset.hpp"
#include "subman/measure.hpp"

namespace subman {

// Analytic ground-truth curves with known smoothness class:
//   fourier   - trigonometric polynomial, smooth (projection error saturates
//               at first order on piecewise constants)
//   sawtooth  - slope * geodesic distance to phase 0, Lipschitz, rate 1
//   step      - piecewise constant with declared jumps, rate 1/2
class AnalyticCurve {
 public:
  enum class Kind { kFourier, kSawtooth, kStep };

  // const_term: d; cos_coeffs/sin_coeffs: d x K (harmonic k+1 in column k)
  static AnalyticCurve fourier(Eigen::VectorXd const_term,
                               Eigen::MatrixXd cos_coeffs,
                               Eigen::MatrixXd sin_coeffs);
  static AnalyticCurve sawtooth(double slope, int dim);
  // jumps strictly inside (0,1), sorted; values: (J+1) x d, value i on
  // [jump_{i-1}, jump_i) with jump_0 = 0
  static AnalyticCurve step(std::vector<double> jumps, Eigen::MatrixXd values);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double slope() const { return slope_; }
  const std::vector<double>& jumps() const { return jumps_; }
  const Eigen::MatrixXd& values() const { return values_; }
  const Eigen::VectorXd& const_term() const { return const_term_; }
  const Eigen::MatrixXd& cos_coeffs() const { return cos_coeffs_; }
  const Eigen::MatrixXd& sin_coeffs() const { return sin_coeffs_; }

  Eigen::VectorXd eval(double s) const;
  Curve as_curve() const;

 private:
  AnalyticCurve() = default;

  Kind kind_ = Kind::kSawtooth;
  int dim_ = 1;
  double slope_ = 1.0;
  Eigen::VectorXd const_term_;
  Eigen::MatrixXd cos_coeffs_, sin_coeffs_;
  std::vector<double> jumps_;
  Eigen::MatrixXd values_;
};

// Additive observation noise with conditional mean zero, so the regressor of
// the synthetic measure is the curve itself.
struct NoiseModel {
  double sigma = 0.0;
  static NoiseModel none() { return {0.0}; }
  static NoiseModel gaussian(double sigma);  // sigma >= 0
};

// m i.i.d. samples: s_i from the measure, x_i = curve(s_i) + sigma * z_i.
// Deterministic given the seed; phases and each coordinate's noise use
// separate substreams.
Dataset sample_dataset(const AnalyticCurve& curve, const Measure& mu,
                       const NoiseModel& noise, std::size_t m, std::uint64_t seed);

// The exact conditional mean of x given s: the curve itself.
Curve regressor_of(const AnalyticCurve& curve, const NoiseModel& noise);

}  // namespace subman

#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "subman/curve.hpp"
#include "subman/dataset.hpp"
#include "subman/phase.hpp"

namespace subman {

// Distance used inside the exponential kernel. Chordal is the plane-embedding
// Euclidean distance; geodesic is arc length.
enum class Metric { kChordal, kGeodesic };

std::string metric_name(Metric m);
Metric metric_from_name(const std::string& name);  // throws InputError

inline double kernel_distance(double s, double center, Metric metric) {
  return metric == Metric::kChordal ? chordal_distance(s, center)
                                    : geodesic_distance(s, center);
}

inline double kernel_value(double s, double center, double beta, Metric metric) {
  const double r = kernel_distance(s, center, metric);
  return std::exp(-beta * r * r);
}

// K(i, j) = exp(-beta * dist(phases[i], centers[j])^2), rows assembled in
// parallel.
Eigen::MatrixXd kernel_matrix(const std::vector<double>& phases,
                              const std::vector<double>& centers, double beta,
                              Metric metric);

namespace reference {
Eigen::MatrixXd kernel_matrix(const std::vector<double>& phases,
                              const std::vector<double>& centers, double beta,
                              Metric metric);
}  // namespace reference

// Regularized least-squares fit in the span of exponential kernels:
// (K^T K + m lambda I) a^j = K^T x^j, one independent solve per coordinate.
class KernelEstimate {
 public:
  KernelEstimate(std::vector<double> centers, double beta, double lambda,
                 Metric metric, Eigen::MatrixXd coeffs, double condition)
      : centers_(std::move(centers)),
        beta_(beta),
        lambda_(lambda),
        metric_(metric),
        coeffs_(std::move(coeffs)),
        condition_(condition) {}

  const std::vector<double>& centers() const { return centers_; }
  double beta() const { return beta_; }
  double lambda() const { return lambda_; }
  Metric metric() const { return metric_; }
  const Eigen::MatrixXd& coeffs() const { return coeffs_; }  // n x d
  double condition() const { return condition_; }  // of K^T K + m lambda I
  int dim() const { return static_cast<int>(coeffs_.cols()); }

  Eigen::VectorXd operator()(double s) const;
  Curve as_curve() const;

 private:
  std::vector<double> centers_;
  double beta_;
  double lambda_;
  Metric metric_;
  Eigen::MatrixXd coeffs_;
  double condition_;
};

// throws InputError (duplicate centers, bad beta/lambda) and NumericError
// (condition estimate above 1e12 with lambda = 0, or a non-positive pivot).
KernelEstimate fit_kernel(const Dataset& ds, const std::vector<double>& centers,
                          double beta, double lambda, Metric metric);

// Condition number (max/min eigenvalue ratio) of the symmetric PSD kernel
// Gram matrix on the given centers; the oracle used by the beta sweep.
double kernel_gram_condition(const std::vector<double>& centers, double beta,
                             Metric metric);

}  // namespace subman

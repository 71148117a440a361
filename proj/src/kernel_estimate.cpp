#include "subman/kernel_estimate.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <sstream>

#include "subman/errors.hpp"

namespace subman {

std::string metric_name(Metric m) {
  return m == Metric::kChordal ? "chordal" : "geodesic";
}

Metric metric_from_name(const std::string& name) {
  if (name == "chordal") return Metric::kChordal;
  if (name == "geodesic") return Metric::kGeodesic;
  throw InputError("unknown metric '" + name + "' (expected chordal|geodesic)");
}

Eigen::MatrixXd kernel_matrix(const std::vector<double>& phases,
                              const std::vector<double>& centers, double beta,
                              Metric metric) {
  const auto m = static_cast<Eigen::Index>(phases.size());
  const auto n = static_cast<Eigen::Index>(centers.size());
  Eigen::MatrixXd K(m, n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      K(i, j) = kernel_value(phases[static_cast<std::size_t>(i)],
                             centers[static_cast<std::size_t>(j)], beta, metric);
    }
  }
  return K;
}

namespace reference {

Eigen::MatrixXd kernel_matrix(const std::vector<double>& phases,
                              const std::vector<double>& centers, double beta,
                              Metric metric) {
  Eigen::MatrixXd K(static_cast<Eigen::Index>(phases.size()),
                    static_cast<Eigen::Index>(centers.size()));
  for (Eigen::Index i = 0; i < K.rows(); ++i) {
    for (Eigen::Index j = 0; j < K.cols(); ++j) {
      K(i, j) = kernel_value(phases[static_cast<std::size_t>(i)],
                             centers[static_cast<std::size_t>(j)], beta, metric);
    }
  }
  return K;
}

}  // namespace reference

Eigen::VectorXd KernelEstimate::operator()(double s) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(coeffs_.cols());
  for (std::size_t j = 0; j < centers_.size(); ++j) {
    out += kernel_value(s, centers_[j], beta_, metric_) *
           coeffs_.row(static_cast<Eigen::Index>(j)).transpose();
  }
  return out;
}

Curve KernelEstimate::as_curve() const {
  Curve c;
  c.dim = dim();
  c.eval = [*this](double s) { return (*this)(s); };
  return c;
}

namespace {
constexpr double kConditionCap = 1e12;
}

KernelEstimate fit_kernel(const Dataset& ds, const std::vector<double>& centers,
                          double beta, double lambda, Metric metric) {
  ds.validate();
  if (centers.empty()) throw InputError("fit_kernel: no centers");
  if (!(beta > 0.0)) throw InputError("fit_kernel: beta must be positive");
  if (lambda < 0.0) throw InputError("fit_kernel: lambda must be nonnegative");
  for (std::size_t a = 0; a < centers.size(); ++a) {
    for (std::size_t b = a + 1; b < centers.size(); ++b) {
      if (geodesic_distance(centers[a], centers[b]) == 0.0) {
        throw InputError("fit_kernel: duplicate centers at index " +
                         std::to_string(a) + " and " + std::to_string(b));
      }
    }
  }

  const double m = static_cast<double>(ds.size());
  const Eigen::MatrixXd K = kernel_matrix(ds.phases, centers, beta, metric);
  Eigen::MatrixXd G = K.transpose() * K;
  G.diagonal().array() += m * lambda;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  const double ev_min = es.eigenvalues().minCoeff();
  const double ev_max = es.eigenvalues().maxCoeff();
  const double cond = ev_min > 0.0 ? ev_max / ev_min
                                   : std::numeric_limits<double>::infinity();
  if (lambda == 0.0 && !(cond < kConditionCap)) {
    std::ostringstream msg;
    msg << "fit_kernel: normal-equation condition estimate " << cond
        << " exceeds 1e12 with lambda = 0; supply a positive --lambda";
    throw NumericError(msg.str());
  }

  Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
  if (ldlt.info() != Eigen::Success) {
    throw NumericError("fit_kernel: LDLT factorization of the normal equations failed");
  }
  const Eigen::MatrixXd coeffs = ldlt.solve(K.transpose() * ds.coords);

  return KernelEstimate(centers, beta, lambda, metric, coeffs, cond);
}

double kernel_gram_condition(const std::vector<double>& centers, double beta,
                             Metric metric) {
  const Eigen::MatrixXd K = reference::kernel_matrix(centers, centers, beta, metric);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
  const double ev_min = es.eigenvalues().minCoeff();
  const double ev_max = es.eigenvalues().maxCoeff();
  return ev_min > 0.0 ? ev_max / ev_min
                      : std::numeric_limits<double>::infinity();
}

}  // namespace subman

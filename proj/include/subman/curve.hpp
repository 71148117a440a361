#pragma once

#include <Eigen/Core>
#include <functional>
#include <utility>

namespace subman {

// An evaluatable map phase -> R^d. Wraps an estimate, a projection, or an
// analytic regressor. Evaluation is total on [0, 1).
struct Curve {
  int dim = 0;
  std::function<Eigen::VectorXd(double)> eval;

  Eigen::VectorXd operator()(double s) const { return eval(s); }
};

using ScalarFn = std::function<double(double)>;

inline Curve constant_curve(Eigen::VectorXd value) {
  Curve c;
  c.dim = static_cast<int>(value.size());
  c.eval = [v = std::move(value)](double) { return v; };
  return c;
}

inline ScalarFn coordinate_of(const Curve& curve, int j) {
  return [curve, j](double s) { return curve.eval(s)(j); };
}

}  // namespace subman

#pragma once

#include <Eigen/Core>
#include <vector>

#include "subman/curve.hpp"
#include "subman/dataset.hpp"
#include "subman/measure.hpp"
#include "subman/partition.hpp"
#include "subman/quadrature.hpp"

namespace subman {

// Mean squared ambient-space residual over the samples.
// throws InputError on dimension mismatch or empty data.
double empirical_risk(const Curve& curve, const Dataset& ds);

// L2-orthogonal projection of a scalar function onto the piecewise-constant
// span of the partition: coefficient k is the measure-weighted average of g
// over cell k. Analytic measures only; scattered data routes through
// fit_partition instead.
Eigen::VectorXd project_l2(const ScalarFn& g, const Partition& partition,
                           const Measure& mu, const Quadrature& quad);

// sqrt of the integrated squared gap between two curves under the measure.
double l2_error(const Curve& f, const Curve& g, const Measure& mu,
                const Quadrature& quad);

struct ApproxRate {
  double rate = 0.0;     // decay exponent r of the projection error vs N
  double constant = 0.0; // exp(intercept) of the log-log fit
  bool exact = false;    // some level reproduced g exactly; rate is +inf
  std::vector<double> errors;  // per-level projection errors
};

// Fits log ||g - P_n g|| against log N over the given levels. Per-level
// quadrature resolution is raised to a multiple of the cell count.
// throws InputError for fewer than 3 levels.
ApproxRate estimate_approx_rate(const ScalarFn& g, const std::vector<int>& levels,
                                const Measure& mu, std::size_t quad_floor = 4096);

}  // namespace subman

#include "subman/analysis.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "subman/errors.hpp"
#include "subman/numerics.hpp"

namespace subman {

double empirical_risk(const Curve& curve, const Dataset& ds) {
  ds.validate();
  if (curve.dim != ds.dim()) {
    throw InputError("empirical_risk: curve dimension " +
                     std::to_string(curve.dim) + " does not match data dimension " +
                     std::to_string(ds.dim()));
  }
  const auto m = static_cast<std::ptrdiff_t>(ds.size());
  std::vector<double> residuals(static_cast<std::size_t>(m));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    const Eigen::VectorXd r =
        ds.coords.row(i).transpose() - curve.eval(ds.phases[static_cast<std::size_t>(i)]);
    residuals[static_cast<std::size_t>(i)] = r.squaredNorm();
  }
  return compensated_sum(residuals) / static_cast<double>(m);
}

Eigen::VectorXd project_l2(const ScalarFn& g, const Partition& partition,
                           const Measure& mu, const Quadrature& quad) {
  if (!mu.is_analytic()) {
    throw InputError("project_l2: empirical measures route through fit_partition");
  }
  const std::size_t n = partition.size();
  std::vector<double> num(n, 0.0), den(n, 0.0);
  for (std::size_t i = 0; i < quad.points.size(); ++i) {
    const double p = quad.points[i];
    const double w = quad.weights[i] * mu.density(p);
    const std::size_t k = partition.cell_index(p);
    num[k] += w * g(p);
    den[k] += w;
  }
  Eigen::VectorXd coeffs(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    if (den[k] <= 0.0) {
      throw InputError("project_l2: cell " + std::to_string(k) +
                       " has zero measure at this quadrature resolution");
    }
    coeffs(static_cast<Eigen::Index>(k)) = num[k] / den[k];
  }
  return coeffs;
}

double l2_error(const Curve& f, const Curve& g, const Measure& mu,
                const Quadrature& quad) {
  if (f.dim != g.dim) {
    throw InputError("l2_error: curve dimensions differ (" +
                     std::to_string(f.dim) + " vs " + std::to_string(g.dim) + ")");
  }
  const auto gap_sq = [&](double s) {
    return (f.eval(s) - g.eval(s)).squaredNorm();
  };
  const double val = integrate(gap_sq, mu, quad);
  return std::sqrt(std::max(0.0, val));
}

ApproxRate estimate_approx_rate(const ScalarFn& g, const std::vector<int>& levels,
                                const Measure& mu, std::size_t quad_floor) {
  if (levels.size() < 3) {
    throw InputError("estimate_approx_rate: need at least 3 levels");
  }
  ApproxRate result;
  std::vector<double> log_n, log_e;
  for (int level : levels) {
    const Partition partition(level);
    const Quadrature quad = Quadrature::for_cells(partition.size(), quad_floor);
    const Eigen::VectorXd coeffs = project_l2(g, partition, mu, quad);
    const auto residual_sq = [&](double s) {
      const double r = g(s) - coeffs(static_cast<Eigen::Index>(partition.cell_index(s)));
      return r * r;
    };
    const double e = std::sqrt(std::max(0.0, integrate(residual_sq, mu, quad)));
    result.errors.push_back(e);
    if (e < 1e-13) {
      result.exact = true;
    } else {
      log_n.push_back(std::log(static_cast<double>(partition.size())));
      log_e.push_back(std::log(e));
    }
  }
  if (result.exact || log_n.size() < 2) {
    result.exact = true;
    result.rate = std::numeric_limits<double>::infinity();
    result.constant = 0.0;
    return result;
  }
  const LineFit fit = fit_line(log_n, log_e);
  result.rate = -fit.slope;
  result.constant = std::exp(fit.intercept);
  return result;
}

}  // namespace subman

#include "subman/quadrature.hpp"

#include <algorithm>

#include "subman/errors.hpp"
#include "subman/numerics.hpp"

namespace subman {

Quadrature Quadrature::midpoint(std::size_t m) {
  if (m < 2) throw InputError("quadrature needs at least 2 points");
  Quadrature q;
  q.points.resize(m);
  q.weights.assign(m, 1.0 / static_cast<double>(m));
  for (std::size_t i = 0; i < m; ++i) {
    q.points[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(m);
  }
  return q;
}

Quadrature Quadrature::for_cells(std::size_t cells, std::size_t floor_points) {
  const std::size_t want = std::max(floor_points, 64 * cells);
  const std::size_t m = ((want + cells - 1) / cells) * cells;
  return midpoint(m);
}

double integrate(const std::function<double(double)>& f, const Measure& mu,
                 const Quadrature& quad) {
  if (mu.kind() == Measure::Kind::kEmpirical) {
    const auto& atoms = mu.atoms();
    std::vector<double> vals(atoms.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(atoms.size()); ++i) {
      vals[i] = f(atoms[i]);
    }
    return compensated_sum(vals) / static_cast<double>(atoms.size());
  }
  const std::size_t m = quad.points.size();
  std::vector<double> vals(m);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    vals[i] = quad.weights[i] * mu.density(quad.points[i]) * f(quad.points[i]);
  }
  return compensated_sum(vals);
}

namespace reference {

double integrate(const std::function<double(double)>& f, const Measure& mu,
                 const Quadrature& quad) {
  if (mu.kind() == Measure::Kind::kEmpirical) {
    double acc = 0.0;
    for (double s : mu.atoms()) acc += f(s);
    return acc / static_cast<double>(mu.atoms().size());
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < quad.points.size(); ++i) {
    acc += quad.weights[i] * mu.density(quad.points[i]) * f(quad.points[i]);
  }
  return acc;
}

}  // namespace reference

}  // namespace subman

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "subman/measure.hpp"

namespace subman {

// Composite midpoint rule on the circle. Weights sum to 1; integration error
// is O(M^-2) for smooth integrands under analytic measures, and exact for
// piecewise-constant integrands aligned to a dyadic partition whose cell
// count divides M.
struct Quadrature {
  std::vector<double> points;
  std::vector<double> weights;

  static Quadrature midpoint(std::size_t m);  // throws InputError for m < 2

  // M = max(floor, 64 * cells), rounded up to a multiple of cells.
  static Quadrature for_cells(std::size_t cells, std::size_t floor_points = 4096);
};

// Integral of f against the measure. Empirical measures ignore the grid and
// average over their atoms. Function evaluations run in parallel into a
// buffer; the reduction is a serial compensated sum, so the result does not
// depend on the thread count.
double integrate(const std::function<double(double)>& f, const Measure& mu,
                 const Quadrature& quad);

namespace reference {
// Plain serial loop, kept as the comparison baseline for the parallel path.
double integrate(const std::function<double(double)>& f, const Measure& mu,
                 const Quadrature& quad);
}  // namespace reference

}  // namespace subman

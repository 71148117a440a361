#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace subman {

// Uniform dyadic decomposition of the circle into N = 2^level half-open arcs
// [k/N, (k+1)/N), with midpoint representatives. Nested by construction:
// every level-n cell is the union of two level-(n+1) cells.
class Partition {
 public:
  static constexpr int kMaxLevel = 20;

  explicit Partition(int level);  // throws InputError outside [0, kMaxLevel]

  int level() const { return level_; }
  std::size_t size() const { return num_cells_; }

  std::size_t cell_index(double s) const;  // wraps s first
  double cell_lower(std::size_t k) const;
  double cell_upper(std::size_t k) const;
  double representative(std::size_t k) const;  // arc midpoint
  std::vector<double> representatives() const;

 private:
  int level_;
  std::size_t num_cells_;
};

// Exact max-min geodesic distance from any point of the circle to the nearest
// representative: half the largest circular gap between sorted reps.
double fill_distance(std::span<const double> reps);  // throws InputError if empty

}  // namespace subman

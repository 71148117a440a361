#include "subman/partition.hpp"

#include <algorithm>
#include <string>

#include "subman/errors.hpp"
#include "subman/phase.hpp"

namespace subman {

Partition::Partition(int level) : level_(level) {
  if (level < 0 || level > kMaxLevel) {
    throw InputError("partition level " + std::to_string(level) +
                     " outside supported range [0, " +
                     std::to_string(kMaxLevel) + "]");
  }
  num_cells_ = std::size_t{1} << level;
}

std::size_t Partition::cell_index(double s) const {
  const double w = wrap_phase(s);
  auto k = static_cast<std::size_t>(w * static_cast<double>(num_cells_));
  return std::min(k, num_cells_ - 1);
}

double Partition::cell_lower(std::size_t k) const {
  return static_cast<double>(k) / static_cast<double>(num_cells_);
}

double Partition::cell_upper(std::size_t k) const {
  return static_cast<double>(k + 1) / static_cast<double>(num_cells_);
}

double Partition::representative(std::size_t k) const {
  return (static_cast<double>(k) + 0.5) / static_cast<double>(num_cells_);
}

std::vector<double> Partition::representatives() const {
  std::vector<double> reps(num_cells_);
  for (std::size_t k = 0; k < num_cells_; ++k) reps[k] = representative(k);
  return reps;
}

double fill_distance(std::span<const double> reps) {
  if (reps.empty()) throw InputError("fill_distance: empty representative set");
  std::vector<double> sorted(reps.begin(), reps.end());
  for (double& s : sorted) s = wrap_phase(s);
  std::sort(sorted.begin(), sorted.end());
  double max_gap = 1.0 - sorted.back() + sorted.front();  // gap across the wrap
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    max_gap = std::max(max_gap, sorted[i] - sorted[i - 1]);
  }
  return 0.5 * max_gap;
}

}  // namespace subman

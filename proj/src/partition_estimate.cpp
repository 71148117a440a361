#include "subman/partition_estimate.hpp"

#include <algorithm>
#include <omp.h>

#include "subman/errors.hpp"

namespace subman {

Curve PartitionEstimate::as_curve() const {
  Curve c;
  c.dim = dim();
  c.eval = [*this](double s) { return (*this)(s); };
  return c;
}

namespace {

std::size_t circular_index_gap(std::size_t a, std::size_t b, std::size_t n) {
  const std::size_t g = a > b ? a - b : b - a;
  return std::min(g, n - g);
}

}  // namespace

PartitionEstimate fit_partition(const Dataset& ds, const Partition& partition) {
  ds.validate();
  const std::size_t n_cells = partition.size();
  const Eigen::Index d = ds.dim();
  const auto m = static_cast<std::ptrdiff_t>(ds.size());

  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_cells), d);
  std::vector<std::size_t> counts(n_cells, 0);

#pragma omp parallel
  {
    Eigen::MatrixXd local_sums =
        Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_cells), d);
    std::vector<std::size_t> local_counts(n_cells, 0);
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < m; ++i) {
      const std::size_t k = partition.cell_index(ds.phases[static_cast<std::size_t>(i)]);
      local_sums.row(static_cast<Eigen::Index>(k)) += ds.coords.row(i);
      ++local_counts[k];
    }
#pragma omp critical
    {
      sums += local_sums;
      for (std::size_t k = 0; k < n_cells; ++k) counts[k] += local_counts[k];
    }
  }

  Eigen::MatrixXd coeffs(static_cast<Eigen::Index>(n_cells), d);
  std::vector<std::size_t> nonempty;
  nonempty.reserve(n_cells);
  for (std::size_t k = 0; k < n_cells; ++k) {
    if (counts[k] > 0) {
      coeffs.row(static_cast<Eigen::Index>(k)) =
          sums.row(static_cast<Eigen::Index>(k)) / static_cast<double>(counts[k]);
      nonempty.push_back(k);
    }
  }
  // Some cell contains each sample, so nonempty cannot be empty here.

  // Nearest-nonempty fill. Representatives are uniformly spaced, so geodesic
  // distance between reps is monotone in the circular index gap.
  std::vector<FillRecord> fills;
  for (std::size_t k = 0; k < n_cells; ++k) {
    if (counts[k] > 0) continue;
    const auto it = std::lower_bound(nonempty.begin(), nonempty.end(), k);
    const std::size_t succ = it == nonempty.end() ? nonempty.front() : *it;
    const std::size_t pred = it == nonempty.begin() ? nonempty.back() : *(it - 1);
    const std::size_t d_succ = circular_index_gap(k, succ, n_cells);
    const std::size_t d_pred = circular_index_gap(k, pred, n_cells);
    std::size_t src;
    if (d_pred < d_succ) {
      src = pred;
    } else if (d_succ < d_pred) {
      src = succ;
    } else {
      src = std::min(pred, succ);  // tie toward the lower cell index
    }
    coeffs.row(static_cast<Eigen::Index>(k)) =
        coeffs.row(static_cast<Eigen::Index>(src));
    fills.push_back({k, src});
  }

  return PartitionEstimate(partition, std::move(coeffs), std::move(counts),
                           std::move(fills));
}

}  // namespace subman

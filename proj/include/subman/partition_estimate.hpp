#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <vector>

#include "subman/curve.hpp"
#include "subman/dataset.hpp"
#include "subman/partition.hpp"

namespace subman {

// An empty cell and the nonempty cell whose coefficient it inherited.
struct FillRecord {
  std::size_t cell = 0;
  std::size_t source = 0;
};

// The closed-form piecewise-constant empirical-risk minimizer: each cell value
// is the arithmetic mean of the samples falling in that cell. Cells with no
// samples are filled from the nearest nonempty cell by geodesic distance
// between representatives (ties toward the lower source index) and recorded.
class PartitionEstimate {
 public:
  PartitionEstimate(Partition partition, Eigen::MatrixXd coeffs,
                    std::vector<std::size_t> counts, std::vector<FillRecord> fills)
      : partition_(partition),
        coeffs_(std::move(coeffs)),
        counts_(std::move(counts)),
        fills_(std::move(fills)) {}

  const Partition& partition() const { return partition_; }
  const Eigen::MatrixXd& coeffs() const { return coeffs_; }  // N x d
  const std::vector<std::size_t>& counts() const { return counts_; }
  const std::vector<FillRecord>& fills() const { return fills_; }
  int dim() const { return static_cast<int>(coeffs_.cols()); }

  Eigen::VectorXd operator()(double s) const {
    return coeffs_.row(static_cast<Eigen::Index>(partition_.cell_index(s))).transpose();
  }

  Curve as_curve() const;

 private:
  Partition partition_;
  Eigen::MatrixXd coeffs_;
  std::vector<std::size_t> counts_;
  std::vector<FillRecord> fills_;
};

PartitionEstimate fit_partition(const Dataset& ds, const Partition& partition);

}  // namespace subman

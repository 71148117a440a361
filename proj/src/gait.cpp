#include "subman/gait.hpp"

#include <cmath>
#include <string>

#include "subman/errors.hpp"
#include "subman/phase.hpp"

namespace subman {

void Trajectory::validate() const {
  if (timestamps.empty()) throw InputError("trajectory: no frames");
  if (positions.rows() != static_cast<Eigen::Index>(timestamps.size())) {
    throw InputError("trajectory: position rows do not match timestamp count");
  }
  if (positions.cols() < 1) throw InputError("trajectory: no position columns");
  if (!positions.allFinite()) throw InputError("trajectory: non-finite position");
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    if (!(timestamps[i] > timestamps[i - 1])) {
      throw InputError("trajectory: timestamps not strictly increasing at row " +
                       std::to_string(i));
    }
  }
}

void GaitSegmentation::validate() const {
  if (strides.empty()) throw InputError("segmentation: no strides");
  for (std::size_t i = 0; i < strides.size(); ++i) {
    if (!(strides[i].T_p > 0.0)) {
      throw InputError("segmentation: stride " + std::to_string(i) +
                       " has non-positive period");
    }
    if (i > 0 && strides[i].t_p < strides[i - 1].t_p + strides[i - 1].T_p) {
      throw InputError("segmentation: strides overlap or are out of order at index " +
                       std::to_string(i));
    }
  }
}

PhaseMapResult phase_map(const Trajectory& traj, const GaitSegmentation& seg) {
  traj.validate();
  seg.validate();

  PhaseMapResult result;
  result.stride_counts.assign(seg.strides.size(), 0);

  std::vector<double> phases;
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < traj.timestamps.size(); ++i) {
    const double t = traj.timestamps[i];
    bool emitted = false;
    for (std::size_t k = 0; k < seg.strides.size(); ++k) {
      const Stride& st = seg.strides[k];
      const double tol = 1e-9 * st.T_p;  // timestamp jitter past the stride end
      if (t >= st.t_p && t < st.t_p + st.T_p + tol) {
        phases.push_back(wrap_phase((t - st.t_p) / st.T_p));
        rows.push_back(static_cast<Eigen::Index>(i));
        ++result.stride_counts[k];
        emitted = true;
        break;
      }
    }
    if (!emitted) ++result.dropped;
  }
  if (phases.empty()) {
    throw InputError("phase_map: no timestamp falls inside any stride");
  }

  result.samples.phases = std::move(phases);
  result.samples.coords.resize(static_cast<Eigen::Index>(rows.size()),
                               traj.positions.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    result.samples.coords.row(static_cast<Eigen::Index>(i)) =
        traj.positions.row(rows[i]);
  }
  return result;
}

Dataset pool_strides(const std::vector<Dataset>& per_stride) {
  if (per_stride.empty()) throw InputError("pool_strides: no strides");
  const Eigen::Index d = per_stride.front().dim();
  std::size_t total = 0;
  for (std::size_t k = 0; k < per_stride.size(); ++k) {
    if (per_stride[k].dim() != d) {
      throw InputError("pool_strides: stride " + std::to_string(k) +
                       " has dimension " + std::to_string(per_stride[k].dim()) +
                       ", expected " + std::to_string(d));
    }
    total += per_stride[k].size();
  }
  Dataset pooled;
  pooled.phases.reserve(total);
  pooled.coords.resize(static_cast<Eigen::Index>(total), d);
  Eigen::Index row = 0;
  for (const Dataset& ds : per_stride) {
    pooled.phases.insert(pooled.phases.end(), ds.phases.begin(), ds.phases.end());
    pooled.coords.middleRows(row, ds.coords.rows()) = ds.coords;
    row += ds.coords.rows();
  }
  return pooled;
}

}  // namespace subman

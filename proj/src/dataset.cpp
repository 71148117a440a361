#include "subman/dataset.hpp"

#include <cmath>
#include <string>

#include "subman/errors.hpp"
#include "subman/phase.hpp"

namespace subman {

Dataset Dataset::from_samples(const std::vector<Sample>& samples) {
  if (samples.empty()) throw InputError("dataset: no samples");
  const Eigen::Index d = samples.front().x.size();
  Dataset ds;
  ds.phases.resize(samples.size());
  ds.coords.resize(static_cast<Eigen::Index>(samples.size()), d);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].x.size() != d) {
      throw InputError("dataset: sample " + std::to_string(i) +
                       " has dimension " + std::to_string(samples[i].x.size()) +
                       ", expected " + std::to_string(d));
    }
    ds.phases[i] = wrap_phase(samples[i].s);
    ds.coords.row(static_cast<Eigen::Index>(i)) = samples[i].x;
  }
  ds.validate();
  return ds;
}

void Dataset::validate() const {
  if (phases.empty()) throw InputError("dataset: no samples");
  if (coords.cols() < 1) throw InputError("dataset: ambient dimension must be >= 1");
  if (coords.rows() != static_cast<Eigen::Index>(phases.size())) {
    throw InputError("dataset: phase count does not match coordinate rows");
  }
  if (!coords.allFinite()) throw InputError("dataset: non-finite coordinate");
  for (double s : phases) {
    if (!(s >= 0.0 && s < 1.0)) throw InputError("dataset: phase outside [0,1)");
  }
}

}  // namespace subman

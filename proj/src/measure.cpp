#include "subman/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "subman/errors.hpp"
#include "subman/phase.hpp"

namespace subman {

namespace {
constexpr std::size_t kVmTableSize = 1u << 16;
}

Measure Measure::uniform() {
  Measure m;
  m.kind_ = Kind::kUniform;
  return m;
}

Measure Measure::von_mises(double mu0, double kappa) {
  if (!(kappa > 0.0)) throw InputError("von Mises kappa must be positive");
  Measure m;
  m.kind_ = Kind::kVonMises;
  m.mu0_ = wrap_phase(mu0);
  m.kappa_ = kappa;
  // Cumulative midpoint table for inverse-CDF sampling. Deterministic and
  // portable, accurate to ~1/kVmTableSize^2 in the phase coordinate.
  m.vm_cdf_.resize(kVmTableSize + 1);
  m.vm_cdf_[0] = 0.0;
  double acc = 0.0;
  const double h = 1.0 / static_cast<double>(kVmTableSize);
  for (std::size_t i = 0; i < kVmTableSize; ++i) {
    const double mid = (static_cast<double>(i) + 0.5) * h;
    acc += m.density(mid) * h;
    m.vm_cdf_[i + 1] = acc;
  }
  const double total = m.vm_cdf_.back();
  for (double& c : m.vm_cdf_) c /= total;
  return m;
}

Measure Measure::empirical(std::vector<double> phases) {
  if (phases.empty()) throw InputError("empirical measure needs at least one phase");
  Measure m;
  m.kind_ = Kind::kEmpirical;
  for (double& s : phases) s = wrap_phase(s);
  m.atoms_ = std::move(phases);
  return m;
}

double Measure::density(double s) const {
  switch (kind_) {
    case Kind::kUniform:
      return 1.0;
    case Kind::kVonMises: {
      const double ang = 2.0 * std::numbers::pi * (wrap_phase(s) - mu0_);
      return std::exp(kappa_ * std::cos(ang)) / std::cyl_bessel_i(0.0, kappa_);
    }
    case Kind::kEmpirical:
      throw InputError("empirical measure has no density");
  }
  return 0.0;
}

double Measure::sample(Rng& rng) const {
  const double u = rng.uniform01();
  switch (kind_) {
    case Kind::kUniform:
      return u;
    case Kind::kVonMises: {
      const auto it = std::upper_bound(vm_cdf_.begin(), vm_cdf_.end(), u);
      const std::size_t hi = std::min<std::size_t>(
          static_cast<std::size_t>(it - vm_cdf_.begin()), kVmTableSize);
      const std::size_t lo = hi - 1;
      const double span = vm_cdf_[hi] - vm_cdf_[lo];
      const double frac = span > 0.0 ? (u - vm_cdf_[lo]) / span : 0.0;
      return wrap_phase((static_cast<double>(lo) + frac) /
                        static_cast<double>(kVmTableSize));
    }
    case Kind::kEmpirical: {
      auto idx = static_cast<std::size_t>(u * static_cast<double>(atoms_.size()));
      return atoms_[std::min(idx, atoms_.size() - 1)];
    }
  }
  return 0.0;
}

}  // namespace subman

#include "subman/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "subman/errors.hpp"
#include "subman/phase.hpp"
#include "subman/rng.hpp"

namespace subman {

AnalyticCurve AnalyticCurve::fourier(Eigen::VectorXd const_term,
                                     Eigen::MatrixXd cos_coeffs,
                                     Eigen::MatrixXd sin_coeffs) {
  if (const_term.size() < 1) throw InputError("fourier curve: dimension must be >= 1");
  if (cos_coeffs.rows() != const_term.size() || sin_coeffs.rows() != const_term.size() ||
      cos_coeffs.cols() != sin_coeffs.cols()) {
    throw InputError("fourier curve: coefficient table shapes disagree");
  }
  AnalyticCurve c;
  c.kind_ = Kind::kFourier;
  c.dim_ = static_cast<int>(const_term.size());
  c.const_term_ = std::move(const_term);
  c.cos_coeffs_ = std::move(cos_coeffs);
  c.sin_coeffs_ = std::move(sin_coeffs);
  return c;
}

AnalyticCurve AnalyticCurve::sawtooth(double slope, int dim) {
  if (dim < 1) throw InputError("sawtooth curve: dimension must be >= 1");
  AnalyticCurve c;
  c.kind_ = Kind::kSawtooth;
  c.dim_ = dim;
  c.slope_ = slope;
  return c;
}

AnalyticCurve AnalyticCurve::step(std::vector<double> jumps, Eigen::MatrixXd values) {
  if (jumps.empty()) throw InputError("step curve: need at least one jump");
  if (!std::is_sorted(jumps.begin(), jumps.end())) {
    throw InputError("step curve: jumps must be sorted");
  }
  for (double z : jumps) {
    if (!(z > 0.0 && z < 1.0)) throw InputError("step curve: jumps must lie in (0,1)");
  }
  if (values.rows() != static_cast<Eigen::Index>(jumps.size()) + 1 || values.cols() < 1) {
    throw InputError("step curve: values must have one row per segment (J+1)");
  }
  AnalyticCurve c;
  c.kind_ = Kind::kStep;
  c.dim_ = static_cast<int>(values.cols());
  c.jumps_ = std::move(jumps);
  c.values_ = std::move(values);
  return c;
}

Eigen::VectorXd AnalyticCurve::eval(double s) const {
  const double w = wrap_phase(s);
  switch (kind_) {
    case Kind::kFourier: {
      Eigen::VectorXd out = const_term_;
      for (Eigen::Index k = 0; k < cos_coeffs_.cols(); ++k) {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(k + 1) * w;
        out += cos_coeffs_.col(k) * std::cos(ang) + sin_coeffs_.col(k) * std::sin(ang);
      }
      return out;
    }
    case Kind::kSawtooth:
      return Eigen::VectorXd::Constant(dim_, slope_ * geodesic_distance(w, 0.0));
    case Kind::kStep: {
      const auto it = std::upper_bound(jumps_.begin(), jumps_.end(), w);
      const auto seg = static_cast<Eigen::Index>(it - jumps_.begin());
      return values_.row(seg).transpose();
    }
  }
  return Eigen::VectorXd::Zero(dim_);
}

Curve AnalyticCurve::as_curve() const {
  Curve c;
  c.dim = dim_;
  c.eval = [*this](double s) { return eval(s); };
  return c;
}

NoiseModel NoiseModel::gaussian(double sigma) {
  if (sigma < 0.0) throw InputError("noise sigma must be nonnegative");
  return {sigma};
}

Dataset sample_dataset(const AnalyticCurve& curve, const Measure& mu,
                       const NoiseModel& noise, std::size_t m, std::uint64_t seed) {
  if (m < 1) throw InputError("sample_dataset: m must be >= 1");
  Dataset ds;
  ds.phases.resize(m);
  Rng phase_rng(mix_seed(seed, 0));
  for (std::size_t i = 0; i < m; ++i) ds.phases[i] = mu.sample(phase_rng);

  const int d = curve.dim();
  ds.coords.resize(static_cast<Eigen::Index>(m), d);
  for (std::size_t i = 0; i < m; ++i) {
    ds.coords.row(static_cast<Eigen::Index>(i)) = curve.eval(ds.phases[i]).transpose();
  }
  if (noise.sigma > 0.0) {
    for (int j = 0; j < d; ++j) {  // one substream per coordinate
      Rng noise_rng(mix_seed(seed, static_cast<std::uint64_t>(j) + 1));
      for (std::size_t i = 0; i < m; ++i) {
        ds.coords(static_cast<Eigen::Index>(i), j) += noise.sigma * noise_rng.normal();
      }
    }
  }
  return ds;
}

Curve regressor_of(const AnalyticCurve& curve, const NoiseModel&) {
  return curve.as_curve();  // the noise has conditional mean zero
}

}  // namespace subman

#pragma once

#include <cstddef>
#include <vector>

#include "subman/rng.hpp"

namespace subman {

// Sampling measure on the circle. Analytic kinds (uniform, von Mises) have an
// evaluable density with respect to arc length; the empirical kind puts mass
// 1/m on each listed phase.
class Measure {
 public:
  enum class Kind { kUniform, kVonMises, kEmpirical };

  static Measure uniform();
  static Measure von_mises(double mu0, double kappa);  // kappa > 0
  static Measure empirical(std::vector<double> phases);  // nonempty, wrapped

  Kind kind() const { return kind_; }
  bool is_analytic() const { return kind_ != Kind::kEmpirical; }

  double density(double s) const;  // analytic kinds only
  double sample(Rng& rng) const;

  const std::vector<double>& atoms() const { return atoms_; }
  double vm_mu() const { return mu0_; }
  double vm_kappa() const { return kappa_; }

 private:
  Measure() = default;

  Kind kind_ = Kind::kUniform;
  double mu0_ = 0.0;
  double kappa_ = 0.0;
  std::vector<double> atoms_;
  std::vector<double> vm_cdf_;  // tabulated inverse-CDF support for sampling
};

}  // namespace subman

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace subman {

// Order-insensitive compensated summation (Neumaier). Summing a fixed buffer
// with this gives identical results for any degree of parallelism upstream,
// as long as the buffer contents are deterministic per index.
inline double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double c = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      c += (sum - t) + v;
    } else {
      c += (v - t) + sum;
    }
    sum = t;
  }
  return sum + c;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least-squares line through (x_i, y_i).
inline LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace subman

#pragma once

#include <cmath>
#include <numbers>

namespace subman {

// Map any real to the canonical phase coordinate in [0, 1).
inline double wrap_phase(double s) {
  double w = s - std::floor(s);
  return w >= 1.0 ? w - 1.0 : w;
}

// A point on the circle, stored as a fraction of one period. Always wrapped.
struct PhasePoint {
  double s = 0.0;
  PhasePoint() = default;
  explicit PhasePoint(double raw) : s(wrap_phase(raw)) {}
};

// Arc-length distance on the unit-circumference circle; range [0, 1/2].
inline double geodesic_distance(double a, double b) {
  const double g = std::fabs(wrap_phase(a) - wrap_phase(b));
  return g > 0.5 ? 1.0 - g : g;
}

inline double geodesic_distance(PhasePoint a, PhasePoint b) {
  return geodesic_distance(a.s, b.s);
}

// Euclidean distance between the plane embeddings (cos 2pi s, sin 2pi s);
// equals 2 sin(pi * geodesic). Range [0, 2].
inline double chordal_distance(double a, double b) {
  return 2.0 * std::sin(std::numbers::pi * geodesic_distance(a, b));
}

inline double chordal_distance(PhasePoint a, PhasePoint b) {
  return chordal_distance(a.s, b.s);
}

}  // namespace subman

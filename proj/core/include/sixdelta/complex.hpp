#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace sixdelta {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// |a - b| / |b|, falling back to the absolute difference when b == 0.
inline double rel_diff(Complex a, Complex b) {
  const double scale = std::abs(b);
  return scale == 0.0 ? std::abs(a - b) : std::abs(a - b) / scale;
}

/// x^p for x > 0 on the principal branch: exp(p ln x).
inline Complex real_pow(double x, Complex p) { return std::exp(p * std::log(x)); }

}  // namespace sixdelta

#pragma once

#include <functional>
#include <vector>

#include "sixdelta/complex.hpp"

namespace sixdelta {

/// Values of a function on the vertical lattice line {c + i m h : m_lo <= m <= m_hi}.
///
/// Every Gamma argument of a Mellin-Barnes integrand on a uniform node grid has
/// this form, so a handful of lines replaces all per-point Gamma evaluations.
class LatticeLine {
 public:
  LatticeLine() = default;
  LatticeLine(Complex c, double h, int m_lo, int m_hi, const std::function<Complex(Complex)>& f);

  Complex point(int m) const { return {c_.real(), c_.imag() + m * h_}; }
  Complex operator[](int m) const { return values_[static_cast<std::size_t>(m - m_lo_)]; }
  int m_lo() const { return m_lo_; }
  int m_hi() const { return m_hi_; }

 private:
  Complex c_{};
  double h_ = 0.0;
  int m_lo_ = 0;
  int m_hi_ = -1;
  std::vector<Complex> values_;
};

/// log Gamma on a lattice line.
LatticeLine log_gamma_line(Complex c, double h, int m_lo, int m_hi);

/// Upsilon_d(x) = Gamma(x) / Gamma(d/2 - x) on a lattice line, one exponentiation per entry.
LatticeLine upsilon_line(Complex c, double h, int m_lo, int m_hi, int d);

/// 1 / Upsilon_d(x) on a lattice line.
LatticeLine inverse_upsilon_line(Complex c, double h, int m_lo, int m_hi, int d);

}  // namespace sixdelta

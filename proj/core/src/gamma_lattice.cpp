#include "sixdelta/gamma_lattice.hpp"

#include "sixdelta/errors.hpp"
#include "sixdelta/specfun.hpp"

namespace sixdelta {

LatticeLine::LatticeLine(Complex c, double h, int m_lo, int m_hi,
                         const std::function<Complex(Complex)>& f)
    : c_(c), h_(h), m_lo_(m_lo), m_hi_(m_hi) {
  if (m_hi < m_lo) throw ParameterError("LatticeLine: empty index range");
  values_.reserve(static_cast<std::size_t>(m_hi - m_lo + 1));
  for (int m = m_lo; m <= m_hi; ++m) values_.push_back(f(point(m)));
}

LatticeLine log_gamma_line(Complex c, double h, int m_lo, int m_hi) {
  return LatticeLine(c, h, m_lo, m_hi, [](Complex z) { return specfun::log_gamma_c(z); });
}

LatticeLine upsilon_line(Complex c, double h, int m_lo, int m_hi, int d) {
  return LatticeLine(c, h, m_lo, m_hi, [d](Complex z) { return specfun::upsilon_d(z, d); });
}

LatticeLine inverse_upsilon_line(Complex c, double h, int m_lo, int m_hi, int d) {
  return LatticeLine(c, h, m_lo, m_hi, [d](Complex z) {
    // 1/Upsilon(z) = Gamma(d/2 - z) / Gamma(z): zero at poles of Gamma(z).
    if (specfun::is_gamma_pole(z)) return Complex{};
    return specfun::upsilon_d(0.5 * d - z, d);
  });
}

}  // namespace sixdelta

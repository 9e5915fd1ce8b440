#include "sixdelta/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "sixdelta/errors.hpp"
#include "sixdelta/quadrature.hpp"

namespace sixdelta::specfun {

namespace {

constexpr double kPoleTol = 1e-12;
constexpr double kLanczosG = 607.0 / 128.0;
// Godfrey's coefficients for g = 607/128.
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);

std::string fmt_complex(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

Complex lanczos_log_gamma(Complex z) {
  // Valid for Re z >= 0.5.
  z -= 1.0;
  Complex x = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) x += kLanczos[k] / (z + static_cast<double>(k));
  const Complex t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

Complex stirling_log_gamma(Complex z) {
  // Bernoulli terms B_{2k} / (2k (2k-1)).
  static constexpr std::array<double, 8> kCoef = {
      1.0 / 12.0,         -1.0 / 360.0,        1.0 / 1260.0,         -1.0 / 1680.0,
      1.0 / 1188.0,       -691.0 / 360360.0,   1.0 / 156.0,          -3617.0 / 122400.0};
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series{};
  Complex p = inv;
  for (double c : kCoef) {
    series += c * p;
    p *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + series;
}

// log Gamma for Re z >= 0.5, Im z >= 0.
Complex log_gamma_right(Complex z) {
  if (std::abs(z.imag()) > 100.0) return stirling_log_gamma(z);
  return lanczos_log_gamma(z);
}

Complex log_gamma_upper(Complex z) {
  // Im z >= 0 here.
  if (z.real() >= 0.5) return log_gamma_right(z);
  return std::log(kPi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

Complex hyp_series_impl(Complex a, Complex b, Complex c, double z, int max_terms = 20000) {
  Complex term = 1.0;
  Complex sum = 1.0;
  int small_streak = 0;
  for (int n = 0; n < max_terms; ++n) {
    const double nn = n;
    term *= (a + nn) * (b + nn) / ((c + nn) * (nn + 1.0)) * z;
    sum += term;
    if (term == Complex{}) return sum;  // terminating series
    if (std::abs(term) <= 1e-17 * std::abs(sum)) {
      if (++small_streak >= 2) return sum;
    } else {
      small_streak = 0;
    }
  }
  throw DomainError("hyp2f1: power series did not converge");
}

bool is_nonpositive_integer(Complex z) {
  return std::abs(z.imag()) < kPoleTol && z.real() < 0.5 &&
         std::abs(z.real() - std::round(z.real())) < kPoleTol;
}

// Distance of w to the nearest integer.
double integer_distance(Complex w) {
  const double re = w.real() - std::round(w.real());
  return std::hypot(re, w.imag());
}

// Gamma(p1) Gamma(p2) / (Gamma(q1) Gamma(q2)), zero if a denominator is a pole.
Complex gamma_ratio(Complex p1, Complex p2, Complex q1, Complex q2) {
  if (is_gamma_pole(q1) || is_gamma_pole(q2)) return 0.0;
  return std::exp(log_gamma_c(p1) + log_gamma_c(p2) - log_gamma_c(q1) - log_gamma_c(q2));
}

// Euler integral with b as the integration exponent; needs Re c > Re b > 0.
Complex hyp_euler(Complex a, Complex b, Complex c, double z) {
  const auto est = quad::tanh_sinh_unit(
      [&](double t, double tc) {
        const Complex lt = b - 1.0;
        const Complex lc = c - b - 1.0;
        return std::exp(lt * std::log(t) + lc * std::log(tc) - a * std::log1p(-t * z));
      },
      1e-14, 14);
  const Complex pref = std::exp(log_gamma_c(c) - log_gamma_c(b) - log_gamma_c(c - b));
  return pref * est.value;
}

bool euler_ok(Complex b, Complex c) { return b.real() > 0.0 && (c - b).real() > 0.0; }

// 1/(1-z) connection formula, z < -1.
Complex hyp_connection_large(Complex a, Complex b, Complex c, double z) {
  const double zeta = 1.0 / (1.0 - z);
  const double log1mz = std::log1p(-z);
  const Complex t1 = gamma_ratio(c, b - a, b, c - a) * std::exp(-a * log1mz) *
                     hyp_series_impl(a, c - b, a - b + 1.0, zeta);
  const Complex t2 = gamma_ratio(c, a - b, a, c - b) * std::exp(-b * log1mz) *
                     hyp_series_impl(b, c - a, b - a + 1.0, zeta);
  return t1 + t2;
}

// 1-z connection formula, 1/2 < z < 1.
Complex hyp_connection_unit(Complex a, Complex b, Complex c, double z) {
  const double omz = 1.0 - z;
  const Complex t1 =
      gamma_ratio(c, c - a - b, c - a, c - b) * hyp_series_impl(a, b, a + b - c + 1.0, omz);
  const Complex t2 = gamma_ratio(c, a + b - c, a, b) * std::exp((c - a - b) * std::log(omz)) *
                     hyp_series_impl(c - a, c - b, c - a - b + 1.0, omz);
  return t1 + t2;
}

Complex hyp_connection(Complex a, Complex b, Complex c, double z) {
  return z < 0.0 ? hyp_connection_large(a, b, c, z) : hyp_connection_unit(a, b, c, z);
}

// Evaluation used when a connection formula is near-degenerate.
Complex hyp_fallback(Complex a, Complex b, Complex c, double z) {
  if (euler_ok(b, c)) return hyp_euler(a, b, c, z);
  if (euler_ok(a, c)) return hyp_euler(b, a, c, z);
  // Symmetric perturbation of b; second-order accurate in the offset.
  constexpr double eps = 1e-5;
  return 0.5 * (hyp_connection(a, b + eps, c, z) + hyp_connection(a, b - eps, c, z));
}

constexpr double kDegenerateGap = 0.05;

}  // namespace

double pole_distance(Complex z) {
  if (z.real() > 0.5) return std::numeric_limits<double>::infinity();
  const double n = std::min(0.0, std::round(z.real()));
  return std::hypot(z.real() - n, z.imag());
}

bool is_gamma_pole(Complex z) { return is_nonpositive_integer(z); }

Complex log_sin_pi(Complex z) {
  if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
  const double y = z.imag();
  // Reduce the real part to [-1, 1) to keep sin(pi x) accurate near integers.
  const double x = z.real() - 2.0 * std::round(0.5 * z.real());
  if (y > 10.0) {
    // sin(pi z) = (i/2) exp(pi y - i pi x) (1 - exp(2 i pi z))
    const Complex e2 = std::exp(Complex(-2.0 * kPi * y, 2.0 * kPi * x));
    return Complex(kPi * y - std::log(2.0), -kPi * x + 0.5 * kPi) + std::log(1.0 - e2);
  }
  const double sx = std::sin(kPi * x), cx = std::cos(kPi * x);
  const Complex s(sx * std::cosh(kPi * y), cx * std::sinh(kPi * y));
  return std::log(s);
}

Complex log_gamma_c(Complex z) {
  if (!is_finite(z)) throw DomainError("log_gamma_c: non-finite argument " + fmt_complex(z));
  if (is_gamma_pole(z)) throw PoleError("Gamma pole at " + fmt_complex(z));
  if (z.imag() < 0.0) return std::conj(log_gamma_upper(std::conj(z)));
  return log_gamma_upper(z);
}

Complex gamma_c(Complex z) {
  if (!is_finite(z)) throw DomainError("gamma_c: non-finite argument " + fmt_complex(z));
  if (is_gamma_pole(z)) throw PoleError("Gamma pole at " + fmt_complex(z));
  if (z.imag() < 0.0) return std::conj(gamma_c(std::conj(z)));
  if (z.imag() == 0.0 && z.real() >= 0.5) {
    return {std::exp(lanczos_log_gamma(Complex(z.real(), 0.0)).real()), 0.0};
  }
  if (z.real() < 0.5) {
    // Reflection in linear space keeps the sign of Gamma on the negative axis.
    const double x = z.real() - 2.0 * std::round(0.5 * z.real());
    const double y = z.imag();
    if (y < 10.0) {
      const Complex s(std::sin(kPi * x) * std::cosh(kPi * y), std::cos(kPi * x) * std::sinh(kPi * y));
      const Complex g = kPi / (s * gamma_c(1.0 - z));
      return y == 0.0 ? Complex(g.real(), 0.0) : g;
    }
  }
  return std::exp(log_gamma_upper(z));
}

Complex rgamma_c(Complex z) {
  if (is_gamma_pole(z)) return 0.0;
  return 1.0 / gamma_c(z);
}

Complex upsilon_d(Complex x, int d) {
  const Complex y = 0.5 * d - x;
  if (is_gamma_pole(x)) throw PoleError("upsilon_d: Gamma pole in numerator at " + fmt_complex(x));
  if (is_gamma_pole(y)) return 0.0;
  return std::exp(log_gamma_c(x) - log_gamma_c(y));
}

Complex log_upsilon_d(Complex x, int d) { return log_gamma_c(x) - log_gamma_c(0.5 * d - x); }

Complex hyp2f1_series(Complex a, Complex b, Complex c, double z) {
  if (is_gamma_pole(c)) throw PoleError("hyp2f1: c is a non-positive integer " + fmt_complex(c));
  return hyp_series_impl(a, b, c, z);
}

Complex hyp2f1(Complex a, Complex b, Complex c, double z) {
  if (!(z < 1.0)) throw DomainError("hyp2f1: requires real z < 1");
  if (is_gamma_pole(c)) throw PoleError("hyp2f1: c is a non-positive integer " + fmt_complex(c));
  if (z == 0.0) return 1.0;
  // Terminating series converge for every z.
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) return hyp_series_impl(a, b, c, z);
  if (std::abs(z) <= 0.5) return hyp_series_impl(a, b, c, z);

  if (z < 0.0 && z >= -3.0) {
    // Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1)), argument in (1/3, 3/4].
    const double w = z / (z - 1.0);
    return std::exp(-a * std::log1p(-z)) * hyp_series_impl(a, c - b, c, w);
  }

  if (z < -3.0) {
    // Singular when a - b is an integer.
    if (integer_distance(a - b) < kDegenerateGap) return hyp_fallback(a, b, c, z);
    return hyp_connection_large(a, b, c, z);
  }

  // 0.5 < z < 1, singular when c - a - b is an integer.
  if (integer_distance(c - a - b) < kDegenerateGap) return hyp_fallback(a, b, c, z);
  return hyp_connection_unit(a, b, c, z);
}

}  // namespace sixdelta::specfun

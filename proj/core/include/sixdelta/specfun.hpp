#pragma once

#include "sixdelta/complex.hpp"

namespace sixdelta::specfun {

/// Distance from z to the nearest non-positive integer (infinity when Re z > 0.5).
double pole_distance(Complex z);

/// True when z lies within 1e-12 of a pole of Gamma.
bool is_gamma_pole(Complex z);

/// Complex Gamma function. Lanczos approximation (g = 607/128, 15 terms) with
/// reflection for Re z < 0.5; conjugate-symmetric by construction.
/// Throws PoleError at non-positive integers.
Complex gamma_c(Complex z);

/// Principal-branch log Gamma: continuous for Re z > 0, agrees with log of
/// gamma_c up to a multiple of 2*pi*i elsewhere. Stirling series when |Im z| > 100.
Complex log_gamma_c(Complex z);

/// 1 / Gamma(z); exactly zero at the poles of Gamma.
Complex rgamma_c(Complex z);

/// Log of sin(pi z), stable for large |Im z|.
Complex log_sin_pi(Complex z);

/// Gamma(x) / Gamma(d/2 - x). Exactly zero when d/2 - x is a pole of Gamma;
/// throws PoleError when x is.
Complex upsilon_d(Complex x, int d);

/// log Upsilon_d(x). Throws PoleError when either Gamma argument is a pole.
Complex log_upsilon_d(Complex x, int d);

/// Gauss hypergeometric 2F1(a, b; c; z) for complex parameters and real z < 1.
///
/// Regions: power series for |z| <= 1/2, Pfaff transformation z -> z/(z-1) on
/// [-3, -1/2), the 1/(1-z) connection formula below -3 and the 1-z connection
/// formula on (1/2, 1). Near-degenerate connection formulas fall back to the
/// Euler integral when its parameters allow.
/// Throws DomainError for z >= 1 and PoleError when c is a pole.
Complex hyp2f1(Complex a, Complex b, Complex c, double z);

/// Truncated power series of 2F1 (no transformation); used by tests and by hyp2f1.
Complex hyp2f1_series(Complex a, Complex b, Complex c, double z);

}  // namespace sixdelta::specfun

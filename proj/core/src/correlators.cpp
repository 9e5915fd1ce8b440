#include "sixdelta/correlators.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "sixdelta/errors.hpp"
#include "sixdelta/quadrature.hpp"
#include "sixdelta/specfun.hpp"

namespace sixdelta {

namespace {

std::string describe(const char* what, Complex z) {
  std::ostringstream os;
  os.precision(15);
  os << what << ": Gamma pole at argument (" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

Complex checked_log_gamma(const char* label, Complex z) {
  if (specfun::is_gamma_pole(z)) throw PoleError(describe(label, z));
  return specfun::log_gamma_c(z);
}

void require_same_d(const ConformalWeight& a, const ConformalWeight& b) {
  if (a.d() != b.d()) throw ParameterError("weights of different dimension d");
}

Complex log_c_coeff(const TripleWeights& t) {
  const double d = t.d();
  const Complex s = t.sum();
  const Complex a1 = t.d1.delta(), a2 = t.d2.delta(), a3 = t.d3.delta();
  Complex lg = 0.5 * d * std::log(kPi) - std::log(2.0);
  lg += checked_log_gamma("c_coeff (S-d)/2", 0.5 * (s - d));
  lg += checked_log_gamma("c_coeff (D2+D3-D1)/2", 0.5 * (a2 + a3 - a1));
  lg += checked_log_gamma("c_coeff (D1+D3-D2)/2", 0.5 * (a1 + a3 - a2));
  lg += checked_log_gamma("c_coeff (D1+D2-D3)/2", 0.5 * (a1 + a2 - a3));
  lg -= checked_log_gamma("c_coeff D1", a1);
  lg -= checked_log_gamma("c_coeff D2", a2);
  lg -= checked_log_gamma("c_coeff D3", a3);
  return lg;
}

}  // namespace

TripleWeights::TripleWeights(ConformalWeight a, ConformalWeight b, ConformalWeight c)
    : d1(a), d2(b), d3(c) {
  require_same_d(d1, d2);
  require_same_d(d1, d3);
}

ConvergenceReport check_convergence(const TripleWeights& t) {
  ConvergenceReport r;
  const double s = t.sum().real();
  r.sum_condition = s > t.d();
  r.triangle_conditions[0] = s - 2.0 * t.d1.delta().real() > 0.0;
  r.triangle_conditions[1] = s - 2.0 * t.d2.delta().real() > 0.0;
  r.triangle_conditions[2] = s - 2.0 * t.d3.delta().real() > 0.0;
  return r;
}

Complex c_coeff(const TripleWeights& t) { return std::exp(log_c_coeff(t)); }

Complex three_point(const TripleWeights& t, const BoundaryPoint& x1, const BoundaryPoint& x2,
                    const BoundaryPoint& x3) {
  const double x12 = boundary_distance(x1, x2);
  const double x13 = boundary_distance(x1, x3);
  const double x23 = boundary_distance(x2, x3);
  if (x12 == 0.0 || x13 == 0.0 || x23 == 0.0)
    throw CoincidentPointsError("three_point: boundary points must be pairwise distinct");
  const Complex a1 = t.d1.delta(), a2 = t.d2.delta(), a3 = t.d3.delta();
  const Complex lg = log_c_coeff(t) - (a1 + a2 - a3) * std::log(x12) - (a1 + a3 - a2) * std::log(x13) -
                     (a2 + a3 - a1) * std::log(x23);
  return std::exp(lg);
}

Complex theta(const TripleWeights& t) { return std::exp(log_c_coeff(t) + log_c_coeff(t.dual())); }

Complex k_prefactor(const ConformalWeight& d1, const ConformalWeight& d2, const ConformalWeight& d3,
                    const ConformalWeight& d5, const ConformalWeight& d6) {
  for (const auto* w : {&d2, &d3, &d5, &d6}) require_same_d(d1, *w);
  const double d = d1.d();
  const Complex a1 = d1.delta(), a2 = d2.delta(), a3 = d3.delta(), a5 = d5.delta(), a6 = d6.delta();
  for (Complex den : {a1, d - a1, a2, a3, a5, a6})
    if (specfun::is_gamma_pole(den)) return 0.0;
  Complex lg = 1.5 * d * std::log(kPi) - std::log(4.0);
  lg += checked_log_gamma("k_prefactor (D1+D2+D3-d)/2", 0.5 * (a1 + a2 + a3 - d));
  lg += checked_log_gamma("k_prefactor (D1+D5+D6-d)/2", 0.5 * (a1 + a5 + a6 - d));
  lg += checked_log_gamma("k_prefactor (D2+D3-D1)/2", 0.5 * (a2 + a3 - a1));
  lg += checked_log_gamma("k_prefactor (D5+D6-D1)/2", 0.5 * (a5 + a6 - a1));
  lg -= specfun::log_gamma_c(a1) + specfun::log_gamma_c(d - a1);
  lg -= specfun::log_gamma_c(a2) + specfun::log_gamma_c(a3);
  lg -= specfun::log_gamma_c(a5) + specfun::log_gamma_c(a6);
  return std::exp(lg);
}

Complex k_prefactor_via_c(const ConformalWeight& d1, const ConformalWeight& d2,
                          const ConformalWeight& d3, const ConformalWeight& d5,
                          const ConformalWeight& d6) {
  const ConformalWeight b1 = d1.dual();
  const Complex a1 = d1.delta(), a2 = d2.delta(), a3 = d3.delta(), a5 = d5.delta(), a6 = d6.delta();
  const Complex c1 = a1, b = b1.delta();
  Complex lg = 0.5 * d1.d() * std::log(kPi);
  lg += log_c_coeff(TripleWeights(d1, d2, d3)) + log_c_coeff(TripleWeights(b1, d5, d6));
  lg -= checked_log_gamma("k_prefactor_via_c (D1+D2-D3)/2", 0.5 * (c1 + a2 - a3));
  lg -= checked_log_gamma("k_prefactor_via_c (D1+D3-D2)/2", 0.5 * (c1 + a3 - a2));
  lg -= checked_log_gamma("k_prefactor_via_c (dual D1+D5-D6)/2", 0.5 * (b + a5 - a6));
  lg -= checked_log_gamma("k_prefactor_via_c (dual D1+D6-D5)/2", 0.5 * (b + a6 - a5));
  return std::exp(lg);
}

double gauge_volume_ratio(int d) {
  return quad::sphere_area(d) * quad::sphere_area(d - 1) / std::pow(2.0, d);
}

}  // namespace sixdelta

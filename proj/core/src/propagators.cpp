#include "sixdelta/propagators.hpp"

#include <cmath>

#include "sixdelta/errors.hpp"
#include "sixdelta/specfun.hpp"

namespace sixdelta {

namespace {

// sinh(z)/z, with a short series near 0.
Complex sinhc(Complex z) {
  if (std::abs(z) < 1e-4) return 1.0 + z * z / 6.0;
  return std::sinh(z) / z;
}

// l / sinh(l) for l >= 0.
double l_over_sinh(double l) {
  if (l < 1e-4) return 1.0 - l * l / 6.0;
  return l / std::sinh(l);
}

}  // namespace

Complex bulk_to_bulk(const ConformalWeight& w, double l) {
  if (!(l >= 0.0) || !std::isfinite(l)) throw DomainError("bulk_to_bulk: l must be finite and >= 0");
  const int d = w.d();
  const double half_d = 0.5 * d;
  const double pref = std::pow(kPi, half_d) * std::tgamma(half_d) / std::tgamma(static_cast<double>(d));
  if (l == 0.0) return pref;
  // 1 - mu^2 with mu = e^l, computed as -expm1(2l).
  const double z = -std::expm1(2.0 * l);
  return pref * std::exp(w.delta() * l) * specfun::hyp2f1(half_d, w.delta(), static_cast<double>(d), z);
}

Complex bulk_to_bulk(const ConformalWeight& w, const BulkPoint& p, const BulkPoint& q) {
  return bulk_to_bulk(w, distance(p, q));
}

double bulk_to_bulk_d2(double rho, double l) {
  if (!(l >= 0.0)) throw DomainError("bulk_to_bulk_d2: l must be >= 0");
  const double x = rho * l;
  const double sinc = std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
  return kPi * sinc * l_over_sinh(l);
}

Complex bulk_to_bulk_general_d2(Complex delta, double l) {
  if (!(l >= 0.0)) throw DomainError("bulk_to_bulk_general_d2: l must be >= 0");
  return kPi * sinhc((delta - 1.0) * l) * l_over_sinh(l);
}

}  // namespace sixdelta

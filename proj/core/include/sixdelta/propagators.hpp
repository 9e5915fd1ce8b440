#pragma once

#include "sixdelta/complex.hpp"
#include "sixdelta/hyperbolic.hpp"

namespace sixdelta {

/// Bulk-to-bulk propagator as a function of the geodesic distance l >= 0:
///   pi^{d/2} mu^Delta Gamma(d/2)/Gamma(d) 2F1(d/2, Delta; d; 1 - mu^2),  mu = e^l.
/// Symmetric under Delta -> d - Delta and real for type-I weights.
Complex bulk_to_bulk(const ConformalWeight& w, double l);

/// Convenience overload taking two bulk points.
Complex bulk_to_bulk(const ConformalWeight& w, const BulkPoint& p, const BulkPoint& q);

/// d = 2, Delta = 1 + i rho: (pi / rho) sin(rho l) / sinh l, with the rho -> 0 and l -> 0 limits.
double bulk_to_bulk_d2(double rho, double l);

/// d = 2, any Delta: pi / (Delta - 1) sinh((Delta - 1) l) / sinh l, with the Delta -> 1 limit.
Complex bulk_to_bulk_general_d2(Complex delta, double l);

}  // namespace sixdelta

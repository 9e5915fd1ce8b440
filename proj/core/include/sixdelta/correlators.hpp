#pragma once

#include <array>

#include "sixdelta/complex.hpp"
#include "sixdelta/hyperbolic.hpp"

namespace sixdelta {

/// Three weights of a common dimension d.
struct TripleWeights {
  ConformalWeight d1, d2, d3;

  TripleWeights(ConformalWeight a, ConformalWeight b, ConformalWeight c);
  int d() const { return d1.d(); }
  Complex sum() const { return d1.delta() + d2.delta() + d3.delta(); }
  TripleWeights dual() const { return {d1.dual(), d2.dual(), d3.dual()}; }
};

/// Convergence of the bulk integral of three bulk-to-boundary propagators.
struct ConvergenceReport {
  bool sum_condition = false;                 // Re(D1 + D2 + D3) > d
  std::array<bool, 3> triangle_conditions{};  // Re(Dj + Dk - Di) > 0 for i = 1, 2, 3
  bool ok() const {
    return sum_condition && triangle_conditions[0] && triangle_conditions[1] && triangle_conditions[2];
  }
};

ConvergenceReport check_convergence(const TripleWeights& t);

/// Coefficient C of the three-point function:
///   pi^{d/2} Gamma((S-d)/2) prod_i Gamma((S - 2 D_i)/2) / (2 Gamma(D1) Gamma(D2) Gamma(D3)),
/// S = D1 + D2 + D3. Throws PoleError naming the offending argument.
Complex c_coeff(const TripleWeights& t);

/// C / (x12^{D1+D2-D3} x13^{D1+D3-D2} x23^{D2+D3-D1}).
Complex three_point(const TripleWeights& t, const BoundaryPoint& x1, const BoundaryPoint& x2,
                    const BoundaryPoint& x3);

/// theta = C(D) C(dual D).
Complex theta(const TripleWeights& t);

/// Prefactor of the four-point function for labels (D1, D2, D3, D5, D6):
///   pi^{3d/2} Gamma((D1+D2+D3-d)/2) Gamma((D1+D5+D6-d)/2) Gamma((D2+D3-D1)/2) Gamma((D5+D6-D1)/2)
///   / (4 Gamma(D1) Gamma(d-D1) Gamma(D2) Gamma(D3) Gamma(D5) Gamma(D6)).
/// Poles of the Gamma functions in the denominator give exactly 0.
Complex k_prefactor(const ConformalWeight& d1, const ConformalWeight& d2, const ConformalWeight& d3,
                    const ConformalWeight& d5, const ConformalWeight& d6);

/// The same prefactor assembled from two C coefficients:
///   pi^{d/2} C(D1, D2, D3) C(dual D1, D5, D6) / [Gamma((D1+D2-D3)/2) Gamma((D1+D3-D2)/2)
///   Gamma((dual D1+D5-D6)/2) Gamma((dual D1+D6-D5)/2)].
/// Throws PoleError when a C coefficient has a pole, even if it cancels.
Complex k_prefactor_via_c(const ConformalWeight& d1, const ConformalWeight& d2,
                          const ConformalWeight& d3, const ConformalWeight& d5,
                          const ConformalWeight& d6);

/// Ratio between the bulk theta integral with one point frozen and C(D) C(dual D):
/// |S^d| |S^{d-1}| / 2^d.
double gauge_volume_ratio(int d);

}  // namespace sixdelta

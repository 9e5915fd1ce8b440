#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sixdelta/complex.hpp"
#include "sixdelta/correlators.hpp"
#include "sixdelta/hyperbolic.hpp"

namespace sixdelta::oracle {

/// Value with an error estimate from an independent brute-force integration.
struct Estimate {
  Complex value{};
  double error = 0.0;  // standard error (Monte Carlo) or refinement difference (quadrature)
  long long evaluations = 0;
};

// ---------------------------------------------------------------------------
// Monte Carlo over H_{d+1}

enum class Stratification {
  none,    // one heavy-tailed component around the centroid
  radial,  // mixture of components centered on the boundary points of the integrand
};

struct McConfig {
  std::uint64_t seed = 20240601;
  long long samples = 1 << 22;
  Stratification stratification = Stratification::radial;
};

/// Proposal component centered on a boundary point c. In polar coordinates
/// xi - (0, c) = R (cos th, sin th w) the radius follows R^{a-1} below R0 and
/// R^{-b-1} above, and cos th has density proportional to cos^k th on the
/// upper hemisphere.
struct Component {
  std::vector<double> center;
  double a = 1.0;
  double b = 1.0;
  double R0 = 1.0;
  double k = 0.0;
};

/// Importance-sampled estimate of int_{H_{d+1}} f(xi) dxi0 d^dxi / xi0^{d+1}.
/// Samples are drawn in blocks of 2^14 with one RNG stream per block, and
/// blocks are combined by tree reduction, so the estimate does not depend on
/// the worker count. Throws NonConvergedError when one sample dominates the variance.
Estimate integrate_hd(const std::function<Complex(const BulkPoint&)>& f, int d,
                      const std::vector<Component>& components, const McConfig& cfg);

/// Same with a default proposal (a single component around the origin).
Estimate integrate_hd(const std::function<Complex(const BulkPoint&)>& f, int d, const McConfig& cfg);

/// Bulk integral of three bulk-to-boundary propagators. Throws NonConvergedError
/// when the weights violate the convergence conditions.
Estimate three_point_oracle(const TripleWeights& t, const BoundaryPoint& x1, const BoundaryPoint& x2,
                            const BoundaryPoint& x3, const McConfig& cfg);

// ---------------------------------------------------------------------------
// Deterministic quadrature over R^d

/// Factor |x - p|^exponent of the integrand.
struct SingularPoint {
  std::vector<double> p;
  Complex exponent{};
};

/// Integrand f(x) prod_i |x - p_i|^{exponent_i} on R^d (d = 2 or 3), where f is
/// smooth (empty means 1) and the product times f decays like |x|^far_exponent.
struct PlaneIntegrand {
  int d = 2;
  std::vector<SingularPoint> points;
  Complex far_exponent{};
  std::function<Complex(const std::vector<double>&)> f;
};

/// Polar quadrature around each singular point, glued with a smooth partition
/// of unity; log-radial trapezoid rule whose tails are summed as geometric series.
/// The step is halved until two levels agree to rel_tol.
Estimate integrate_plane(const PlaneIntegrand& g, double rel_tol, int max_level = 5);

/// K_Delta at distance l as the boundary integral int d^dx K_Delta(xi1, x) K_{d-Delta}(xi2, x).
Estimate bulk_to_bulk_oracle(const ConformalWeight& w, double l, double rel_tol = 1e-9);

/// Theta integral with xi1 frozen at (1, 0): geodesic polar quadrature of
/// K_{D1} K_{D2} K_{D3} over xi2, divided by gauge_volume_ratio(d).
Estimate theta_oracle(const TripleWeights& t, double rel_tol = 1e-8);

/// Result of the sphere-integral oracle.
struct SphereOracle {
  Estimate reduced;  // int d^dx2 |x2-x3|^{2a-d} |x2-x5|^{2b} / |x2-x6|^{2a+2b+d}
  Estimate full;     // reduced times the fixed-point prefactor
};

/// Throws NonConvergedError unless Re a > 0, Re(b + d/2) > 0, Re(a + b) < 0.
SphereOracle sphere_integral_oracle(Complex a, Complex b, int d, const BoundaryPoint& x3,
                                    const BoundaryPoint& x5, const BoundaryPoint& x6,
                                    double rel_tol = 1e-9);

/// I(u, v) from the Feynman-parameter integral over t12, t13, t15, t16 (twice
/// its value). t16 and the overall scale are integrated analytically; the
/// remaining two directions use a double-exponential trapezoid rule.
Estimate i_uv_oracle(const ConformalWeight& d1, const ConformalWeight& d2, const ConformalWeight& d3,
                     const ConformalWeight& d5, const ConformalWeight& d6, double u, double v,
                     double rel_tol = 1e-9);

/// Four-point function as C C' times the boundary integral over x1 of the product
/// of two three-point structures.
Estimate four_point_oracle(const ConformalWeight& d1, const ConformalWeight& d2,
                           const ConformalWeight& d3, const ConformalWeight& d5,
                           const ConformalWeight& d6, const BoundaryPoint& x2,
                           const BoundaryPoint& x3, const BoundaryPoint& x5,
                           const BoundaryPoint& x6, double rel_tol = 1e-6);

/// Volume of the geodesic ball of radius R in H_{d+1} by 1D quadrature.
double ball_volume(int d, double R);

// ---------------------------------------------------------------------------
// Elementary identities

struct IdentityCheck {
  std::string name;
  double max_rel_err = 0.0;
  double tolerance = 0.0;
  int draws = 0;
  bool passed() const { return max_rel_err < tolerance; }
};

/// Feynman parametrization, the radial Gaussian integral and the d-dimensional
/// Gaussian product formula, each at five random parameter draws.
std::vector<IdentityCheck> integral_identity_checks(std::uint64_t seed = 7);

}  // namespace sixdelta::oracle

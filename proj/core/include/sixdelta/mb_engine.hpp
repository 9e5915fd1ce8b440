#pragma once

#include <array>
#include <limits>
#include <utility>
#include <vector>

#include "sixdelta/complex.hpp"
#include "sixdelta/gamma_lattice.hpp"
#include "sixdelta/hyperbolic.hpp"

namespace sixdelta {

/// Contour and quadrature settings shared by every Mellin-Barnes integral.
///
/// All contours run along Re = r. Nodes are t_k = -T + k h, k = 0..n, h = 2T/n.
/// T = 0 or n = 0 let the planner choose; n is then doubled until two successive
/// values agree to tol (relative).
struct ContourConfig {
  double r = std::numeric_limits<double>::quiet_NaN();  // NaN: -d/16 (-1/4 for mb_exp)
  double T = 0.0;
  int n = 0;
  double tol = 1e-3;
  int max_doublings = 4;
  double T_max = 40.0;
  bool use_lattice = true;  // table lookups instead of per-point Gamma evaluations
  bool prune = true;        // drop negligible entries of the 2D factor tables (racah only)
  bool adaptive = true;     // false: evaluate once at (T, n) and estimate the error from (T, n/2)
  double max_grid = 1e10;   // TruncationError before evaluating a level with more nodes (racah: after pruning)

  double r_for(int d) const;
};

/// Result of a contour quadrature.
struct QuadResult {
  Complex value{};
  double err_estimate = 0.0;  // |I(n) - I(n/2)| at the final node count
  double tail_bound = 0.0;    // truncation and pruning bound
  long long nodes_used = 0;   // integrand evaluations summed over all refinement levels
  int n = 0;                  // nodes per axis at the final level
  double T = 0.0;
  double r = 0.0;
  bool converged = false;
};

/// The six weights of a (6 Delta) symbol. Opposite edges: (1,4), (2,5), (3,6).
struct SixLabels {
  std::array<ConformalWeight, 6> w;

  SixLabels(const std::array<ConformalWeight, 6>& weights);
  static SixLabels type_one(const std::array<double, 6>& rho, int d);

  const ConformalWeight& operator()(int i) const { return w[static_cast<std::size_t>(i - 1)]; }
  int d() const { return w[0].d(); }
  bool all_type_one() const;
  /// Copy with label i (1-based) replaced by its dual.
  SixLabels with_dual(int i) const;
  /// Copy with every rho negated (complex conjugate weights).
  SixLabels conjugate() const;
};

/// Parameters of the double Mellin-Barnes integral I(u, v) for labels (D1, D2, D3, D5, D6).
struct PairParams {
  Complex alpha, beta, gamma, delta;
  int d = 2;
};

PairParams pair_params(const ConformalWeight& d1, const ConformalWeight& d2,
                       const ConformalWeight& d3, const ConformalWeight& d5,
                       const ConformalWeight& d6);

/// Unprimed and primed parameters of the quadruple integral plus the coupling shift A.
struct MBParams {
  PairParams first;   // from (D1, D2, D3, D5, D6)
  PairParams second;  // from (D4, dual D2, dual D6, dual D5, dual D3)
  Complex A;          // (D1 - D4 + D2 + D5 - d) / 2
};

MBParams mb_params(const SixLabels& labels);

/// e^{-z} = (1/2 pi i) int Gamma(-s) z^s ds over Re s = r < 0.
QuadResult mb_exp(double z, const ContourConfig& cfg);

/// pi^{d/2} Upsilon_d(a) Upsilon_d(-a-b) / Upsilon_d(-b).
Complex sphere_integral(Complex a, Complex b, int d);

/// (u, v) = (x25^2 x36^2 / (x26^2 x35^2), x23^2 x56^2 / (x26^2 x35^2)).
std::pair<double, double> cross_ratios(const BoundaryPoint& x2, const BoundaryPoint& x3,
                                       const BoundaryPoint& x5, const BoundaryPoint& x6);

/// Integrand of I(u, v) at (s, lambda), without the 1/(2 pi i)^2 measure.
Complex i_uv_integrand(const PairParams& p, double u, double v, Complex s, Complex lambda);

/// I(u, v) = int int ds dlambda / (2 pi i)^2 Gamma(-lambda) Gamma(-s) u^s v^lambda
///           Gamma(alpha+s+lambda) Gamma(beta+s+lambda) Gamma(gamma-s) Gamma(delta-lambda).
/// Requires every Gamma argument to have positive real part on the contour.
QuadResult i_uv(const ConformalWeight& d1, const ConformalWeight& d2, const ConformalWeight& d3,
                const ConformalWeight& d5, const ConformalWeight& d6, double u, double v,
                const ContourConfig& cfg);

/// Four-point function of boundary points x2, x3, x5, x6 from the prefactor,
/// I(u, v) and explicit powers of the distances.
QuadResult four_point(const ConformalWeight& d1, const ConformalWeight& d2,
                      const ConformalWeight& d3, const ConformalWeight& d5,
                      const ConformalWeight& d6, const BoundaryPoint& x2, const BoundaryPoint& x3,
                      const BoundaryPoint& x5, const BoundaryPoint& x6, const ContourConfig& cfg);

/// Ordering of the labels in the second prefactor of racah().
enum class PrimeOrder {
  Matched,  // K(D4, dual D2, dual D6, dual D5, dual D3), consistent with the primed parameters
  Swapped,  // K(D4, dual D2, dual D3, dual D5, dual D6)
};

/// Prefactor K K' pi^{d/2} of the quadruple integral.
Complex racah_prefactor(const SixLabels& labels, PrimeOrder order = PrimeOrder::Matched);

/// The (6 Delta) symbol as a quadruple Mellin-Barnes integral over s, lambda, s', lambda'.
QuadResult racah(const SixLabels& labels, const ContourConfig& cfg,
                 PrimeOrder order = PrimeOrder::Matched);

/// Quadruple integral without the prefactor; exposed for diagnostics.
QuadResult racah_integral(const SixLabels& labels, const ContourConfig& cfg);

/// Log-Gamma lattice lines needed for the offsets, on m in [-2n, 2n] with spacing 2T/n.
std::vector<LatticeLine> gamma_lattice(const ContourConfig& cfg, const std::vector<Complex>& offsets);

}  // namespace sixdelta

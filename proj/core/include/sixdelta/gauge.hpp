#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sixdelta/hyperbolic.hpp"

namespace sixdelta::gauge {

/// (d+2)x(d+2) matrix acting on R^{1,d+1} with coordinates (t, y, z).
using LorentzMatrix = Eigen::MatrixXd;

/// diag(-1, 1, ..., 1).
Eigen::MatrixXd minkowski_metric(int d);

/// M^T eta M = eta, det M = +1 and M_00 >= 1, all to tol.
bool is_lorentz(const LorentzMatrix& m, double tol = 1e-12);

/// Null rotation acting as x -> x + q.
LorentzMatrix n_plus(const Eigen::VectorXd& q);

/// Null rotation acting as x/x^2 -> x/x^2 + q.
LorentzMatrix n_minus(const Eigen::VectorXd& q);

/// Boost acting as x -> lambda x.
LorentzMatrix a_boost(double lambda, int d);

/// Rotation in the plane of the unit vectors u and v taking u to v, as the
/// d x d block. Throws AntipodalError when u = -v.
Eigen::MatrixXd s_rot_block(const Eigen::VectorXd& v, const Eigen::VectorXd& u);

/// diag(1, 1, s_rot_block(v, u)).
LorentzMatrix s_rot(const Eigen::VectorXd& v, const Eigen::VectorXd& u);

/// Future null vector s(1/2 (1 + x^2), 1/2 (1 - x^2), x) with s = 1; infinity is (1, -1, 0).
Eigen::VectorXd null_vector(const BoundaryPoint& x);

/// Image of x under g. Returns the point at infinity when |t' + y'| <= 1e-12 |X'|.
BoundaryPoint conformal_act(const LorentzMatrix& g, const BoundaryPoint& x);

/// Three pairwise distinct finite boundary points.
struct PointTriple {
  BoundaryPoint a, b, c;

  /// Throws CoincidentPointsError for repeated points and DomainError for points at infinity.
  PointTriple(BoundaryPoint xa, BoundaryPoint xb, BoundaryPoint xc);
  int d() const { return a.dim(); }
};

/// x_D = x_AB^2 x_AC^2 / x_BC^2 ((x_B - x_A)/x_AB^2 - (x_C - x_A)/x_AC^2); |x_D| = x_AB x_AC / x_BC.
Eigen::VectorXd x_d_point(const PointTriple& t);

/// S(v, x_D/|x_D|) A(1/|x_D|) N_-(b) N_+(a) with a = -x_A, b = (x_A - x_C)/x_AC^2.
/// Maps (x_A, x_B, x_C) to (0, v, infinity). Throws AntipodalError when x_D/|x_D| = -v.
LorentzMatrix h_of_triple(const PointTriple& t, const Eigen::VectorXd& v);

/// Same with v = (1, 0, ..., 0).
LorentzMatrix h_of_triple(const PointTriple& t);

/// x_AB^d x_AC^d x_BC^d.
double fp_factor(const PointTriple& t);

/// Invariant density 1 / fp_factor of d^dx_A d^dx_B d^dx_C.
double measure_density(const PointTriple& t);

/// |det dx'/dx| of the conformal action at a finite x, from centered differences
/// with Richardson extrapolation. When the image is far out the map is composed
/// with the inversion x -> x/x^2 and the inversion's Jacobian |x'|^{-2d} is divided out.
double jacobian_det(const LorentzMatrix& g, const BoundaryPoint& x, double step = 1e-5);

/// Product of random translations, dilatations, special conformal maps and rotations.
LorentzMatrix random_conformal_map(int d, std::mt19937_64& rng);

struct GaugeCheck {
  std::string name;
  double max_err = 0.0;
  double tolerance = 0.0;
  int trials = 0;
  bool passed() const { return max_err < tolerance; }
};

/// Mapping of random triples (half in d = 2, half in d = 3) by h_of_triple, and
/// invariance of the triple measure under random conformal maps.
std::vector<GaugeCheck> gauge_fixing_checks(std::uint64_t seed = 11, int triples = 1000, int maps = 100);

}  // namespace sixdelta::gauge

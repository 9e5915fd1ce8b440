#pragma once

#include <vector>

#include "sixdelta/complex.hpp"

namespace sixdelta {

/// Point of the upper half-space model of H_{d+1}: height xi0 > 0 and d coordinates xi.
struct BulkPoint {
  double xi0 = 1.0;
  std::vector<double> xi;

  BulkPoint() = default;
  BulkPoint(double height, std::vector<double> coords);
  int dim() const { return static_cast<int>(xi.size()); }
};

/// Point of the conformal boundary R^d, or the point at infinity.
struct BoundaryPoint {
  std::vector<double> x;
  bool at_infinity = false;

  BoundaryPoint() = default;
  explicit BoundaryPoint(std::vector<double> coords);
  static BoundaryPoint infinity(int d);
  int dim() const { return static_cast<int>(x.size()); }
};

/// Conformal dimension delta of a representation of SO_0(1, d+1).
class ConformalWeight {
 public:
  ConformalWeight() = default;
  ConformalWeight(Complex delta, int d);

  /// Delta = d/2 + i rho.
  static ConformalWeight type_one(double rho, int d);

  Complex delta() const { return delta_; }
  int d() const { return d_; }
  ConformalWeight dual() const;
  bool is_type_one(double tol = 1e-12) const;
  /// Im(delta); the label rho of a type-I weight.
  double rho() const { return delta_.imag(); }

 private:
  Complex delta_{1.0, 0.0};
  int d_ = 2;
};

/// Euclidean distance between finite boundary points.
double boundary_distance(const BoundaryPoint& a, const BoundaryPoint& b);

/// Geodesic distance, from cosh l = 1 + (dxi0^2 + |dxi|^2) / (2 xi0 eta0).
double distance(const BulkPoint& p, const BulkPoint& q);

/// Point on the hyperboloid -X0^2 + X1^2 + ... = -1 in R^{1,d+1}.
std::vector<double> embed_bulk(const BulkPoint& p);

/// Null vector (1 + x^2, 1 - x^2, 2x) representing a boundary point.
std::vector<double> embed_boundary(const BoundaryPoint& x);

/// Minkowski pairing with signature (-, +, ..., +).
double minkowski(const std::vector<double>& a, const std::vector<double>& b);

/// Distance computed from the hyperboloid pairing cosh l = -X.Y.
double distance_embedding(const BulkPoint& p, const BulkPoint& q);

/// xi0^Delta / (xi0^2 + |xi - x|^2)^Delta. Throws DomainError for x at infinity.
Complex bulk_to_boundary(const ConformalWeight& w, const BulkPoint& p, const BoundaryPoint& x);

/// Same kernel written as (-X.x)^{-Delta} with the normalizations of embed_bulk/embed_boundary.
Complex bulk_to_boundary_embedding(const ConformalWeight& w, const BulkPoint& p,
                                   const BoundaryPoint& x);

}  // namespace sixdelta

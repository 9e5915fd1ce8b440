#include "sixdelta/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sixdelta/errors.hpp"

namespace sixdelta {

namespace {

void require_same_dim(int a, int b, const char* where) {
  if (a != b) throw ParameterError(std::string(where) + ": dimension mismatch");
}

}  // namespace

BulkPoint::BulkPoint(double height, std::vector<double> coords) : xi0(height), xi(std::move(coords)) {
  if (!(xi0 > 0.0) || !std::isfinite(xi0)) throw DomainError("BulkPoint: height must be positive");
}

BoundaryPoint::BoundaryPoint(std::vector<double> coords) : x(std::move(coords)) {
  for (double c : x)
    if (!std::isfinite(c)) throw DomainError("BoundaryPoint: non-finite coordinate");
}

BoundaryPoint BoundaryPoint::infinity(int d) {
  BoundaryPoint p;
  p.x.assign(static_cast<std::size_t>(d), 0.0);
  p.at_infinity = true;
  return p;
}

ConformalWeight::ConformalWeight(Complex delta, int d) : delta_(delta), d_(d) {
  if (d < 1) throw ParameterError("ConformalWeight: d must be positive");
  if (!is_finite(delta)) throw ParameterError("ConformalWeight: non-finite delta");
}

ConformalWeight ConformalWeight::type_one(double rho, int d) {
  return ConformalWeight(Complex(0.5 * d, rho), d);
}

ConformalWeight ConformalWeight::dual() const {
  return ConformalWeight(static_cast<double>(d_) - delta_, d_);
}

bool ConformalWeight::is_type_one(double tol) const {
  return std::abs(delta_.real() - 0.5 * d_) <= tol;
}

double boundary_distance(const BoundaryPoint& a, const BoundaryPoint& b) {
  if (a.at_infinity || b.at_infinity) throw DomainError("boundary_distance: point at infinity");
  require_same_dim(a.dim(), b.dim(), "boundary_distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i) s += (a.x[i] - b.x[i]) * (a.x[i] - b.x[i]);
  return std::sqrt(s);
}

double distance(const BulkPoint& p, const BulkPoint& q) {
  require_same_dim(p.dim(), q.dim(), "distance");
  double num = (p.xi0 - q.xi0) * (p.xi0 - q.xi0);
  for (std::size_t i = 0; i < p.xi.size(); ++i) num += (p.xi[i] - q.xi[i]) * (p.xi[i] - q.xi[i]);
  // cosh l - 1 = 2 sinh^2(l/2) avoids cancellation for nearby points.
  return 2.0 * std::asinh(std::sqrt(num / (4.0 * p.xi0 * q.xi0)));
}

std::vector<double> embed_bulk(const BulkPoint& p) {
  double r2 = p.xi0 * p.xi0;
  for (double c : p.xi) r2 += c * c;
  std::vector<double> out;
  out.reserve(p.xi.size() + 2);
  out.push_back((1.0 + r2) / (2.0 * p.xi0));
  out.push_back((1.0 - r2) / (2.0 * p.xi0));
  for (double c : p.xi) out.push_back(c / p.xi0);
  return out;
}

std::vector<double> embed_boundary(const BoundaryPoint& x) {
  if (x.at_infinity) throw DomainError("embed_boundary: point at infinity");
  double r2 = 0.0;
  for (double c : x.x) r2 += c * c;
  std::vector<double> out;
  out.reserve(x.x.size() + 2);
  out.push_back(1.0 + r2);
  out.push_back(1.0 - r2);
  for (double c : x.x) out.push_back(2.0 * c);
  return out;
}

double minkowski(const std::vector<double>& a, const std::vector<double>& b) {
  double s = -a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double distance_embedding(const BulkPoint& p, const BulkPoint& q) {
  require_same_dim(p.dim(), q.dim(), "distance_embedding");
  const double c = -minkowski(embed_bulk(p), embed_bulk(q));
  return std::acosh(std::max(1.0, c));
}

Complex bulk_to_boundary(const ConformalWeight& w, const BulkPoint& p, const BoundaryPoint& x) {
  if (x.at_infinity) throw DomainError("bulk_to_boundary: boundary point at infinity");
  require_same_dim(p.dim(), x.dim(), "bulk_to_boundary");
  double base = p.xi0 * p.xi0;
  for (std::size_t i = 0; i < p.xi.size(); ++i) base += (p.xi[i] - x.x[i]) * (p.xi[i] - x.x[i]);
  return std::exp(w.delta() * (std::log(p.xi0) - std::log(base)));
}

Complex bulk_to_boundary_embedding(const ConformalWeight& w, const BulkPoint& p,
                                   const BoundaryPoint& x) {
  if (x.at_infinity) throw DomainError("bulk_to_boundary_embedding: boundary point at infinity");
  require_same_dim(p.dim(), x.dim(), "bulk_to_boundary_embedding");
  const double pairing = -minkowski(embed_bulk(p), embed_boundary(x));
  return std::exp(-w.delta() * std::log(pairing));
}

}  // namespace sixdelta

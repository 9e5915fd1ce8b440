#include "sixdelta/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "sixdelta/errors.hpp"

namespace sixdelta::gauge {

namespace {

constexpr double kInfinityTol = 1e-12;

Eigen::VectorXd to_eigen(const std::vector<double>& x) {
  return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

std::vector<double> to_std(const Eigen::VectorXd& x) { return {x.data(), x.data() + x.size()}; }

// Boundary coordinate of a null vector; inverted = true gives the chart x/x^2.
Eigen::VectorXd chart(const Eigen::VectorXd& X, bool inverted) {
  const Eigen::Index d = X.size() - 2;
  const double den = inverted ? X(0) - X(1) : X(0) + X(1);
  return X.tail(d) / den;
}

Eigen::VectorXd random_unit(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(d);
  do {
    for (int i = 0; i < d; ++i) v(i) = normal(rng);
  } while (v.norm() < 1e-3);
  return v.normalized();
}

}  // namespace

Eigen::MatrixXd minkowski_metric(int d) {
  Eigen::MatrixXd eta = Eigen::MatrixXd::Identity(d + 2, d + 2);
  eta(0, 0) = -1.0;
  return eta;
}

bool is_lorentz(const LorentzMatrix& m, double tol) {
  const Eigen::Index n = m.rows();
  if (n < 3 || m.cols() != n) return false;
  const Eigen::MatrixXd eta = minkowski_metric(static_cast<int>(n - 2));
  const double scale = std::max(1.0, m.squaredNorm());
  if ((m.transpose() * eta * m - eta).cwiseAbs().maxCoeff() > tol * scale) return false;
  if (std::abs(m.determinant() - 1.0) > tol * std::pow(scale, 0.5 * n)) return false;
  return m(0, 0) >= 1.0 - tol;
}

LorentzMatrix n_plus(const Eigen::VectorXd& q) {
  const Eigen::Index d = q.size();
  const double q2 = q.squaredNorm();
  LorentzMatrix m = LorentzMatrix::Identity(d + 2, d + 2);
  m(0, 0) = 1.0 + 0.5 * q2;
  m(0, 1) = 0.5 * q2;
  m(1, 0) = -0.5 * q2;
  m(1, 1) = 1.0 - 0.5 * q2;
  m.block(0, 2, 1, d) = q.transpose();
  m.block(1, 2, 1, d) = -q.transpose();
  m.block(2, 0, d, 1) = q;
  m.block(2, 1, d, 1) = q;
  return m;
}

LorentzMatrix n_minus(const Eigen::VectorXd& q) {
  const Eigen::Index d = q.size();
  const double q2 = q.squaredNorm();
  LorentzMatrix m = LorentzMatrix::Identity(d + 2, d + 2);
  m(0, 0) = 1.0 + 0.5 * q2;
  m(0, 1) = -0.5 * q2;
  m(1, 0) = 0.5 * q2;
  m(1, 1) = 1.0 - 0.5 * q2;
  m.block(0, 2, 1, d) = q.transpose();
  m.block(1, 2, 1, d) = q.transpose();
  m.block(2, 0, d, 1) = q;
  m.block(2, 1, d, 1) = -q;
  return m;
}

LorentzMatrix a_boost(double lambda, int d) {
  if (!(lambda > 0.0)) throw DomainError("a_boost: lambda must be positive");
  LorentzMatrix m = LorentzMatrix::Identity(d + 2, d + 2);
  m(0, 0) = m(1, 1) = 0.5 * (1.0 / lambda + lambda);
  m(0, 1) = m(1, 0) = 0.5 * (1.0 / lambda - lambda);
  return m;
}

Eigen::MatrixXd s_rot_block(const Eigen::VectorXd& v, const Eigen::VectorXd& u) {
  if (v.size() != u.size()) throw ParameterError("s_rot: dimension mismatch");
  if (std::abs(u.norm() - 1.0) > 1e-10 || std::abs(v.norm() - 1.0) > 1e-10)
    throw DomainError("s_rot: u and v must be unit vectors");
  const double c = 1.0 + u.dot(v);
  if (c <= 1e-14) throw AntipodalError("s_rot: u = -v");
  const Eigen::VectorXd w = u + v;
  return Eigen::MatrixXd::Identity(u.size(), u.size()) + 2.0 * v * u.transpose() - w * w.transpose() / c;
}

LorentzMatrix s_rot(const Eigen::VectorXd& v, const Eigen::VectorXd& u) {
  const Eigen::Index d = u.size();
  LorentzMatrix m = LorentzMatrix::Identity(d + 2, d + 2);
  m.block(2, 2, d, d) = s_rot_block(v, u);
  return m;
}

Eigen::VectorXd null_vector(const BoundaryPoint& x) {
  const int d = x.dim();
  Eigen::VectorXd X = Eigen::VectorXd::Zero(d + 2);
  if (x.at_infinity) {
    X(0) = 1.0;
    X(1) = -1.0;
    return X;
  }
  const Eigen::VectorXd v = to_eigen(x.x);
  const double x2 = v.squaredNorm();
  X(0) = 0.5 * (1.0 + x2);
  X(1) = 0.5 * (1.0 - x2);
  X.tail(d) = v;
  return X;
}

BoundaryPoint conformal_act(const LorentzMatrix& g, const BoundaryPoint& x) {
  const int d = x.dim();
  if (g.rows() != d + 2 || g.cols() != d + 2) throw ParameterError("conformal_act: dimension mismatch");
  const Eigen::VectorXd X = g * null_vector(x);
  if (std::abs(X(0) + X(1)) <= kInfinityTol * X.norm()) return BoundaryPoint::infinity(d);
  return BoundaryPoint(to_std(chart(X, false)));
}

PointTriple::PointTriple(BoundaryPoint xa, BoundaryPoint xb, BoundaryPoint xc)
    : a(std::move(xa)), b(std::move(xb)), c(std::move(xc)) {
  if (a.at_infinity || b.at_infinity || c.at_infinity) throw DomainError("PointTriple: points must be finite");
  if (a.dim() != b.dim() || a.dim() != c.dim()) throw ParameterError("PointTriple: dimension mismatch");
  if (boundary_distance(a, b) == 0.0 || boundary_distance(a, c) == 0.0 || boundary_distance(b, c) == 0.0)
    throw CoincidentPointsError("PointTriple: points must be pairwise distinct");
}

Eigen::VectorXd x_d_point(const PointTriple& t) {
  const Eigen::VectorXd xa = to_eigen(t.a.x), xb = to_eigen(t.b.x), xc = to_eigen(t.c.x);
  const double ab2 = (xb - xa).squaredNorm(), ac2 = (xc - xa).squaredNorm(), bc2 = (xc - xb).squaredNorm();
  if (ab2 == 0.0 || ac2 == 0.0 || bc2 == 0.0) throw CoincidentPointsError("x_d_point: coincident points");
  return ab2 * ac2 / bc2 * ((xb - xa) / ab2 - (xc - xa) / ac2);
}

LorentzMatrix h_of_triple(const PointTriple& t, const Eigen::VectorXd& v) {
  const Eigen::VectorXd xa = to_eigen(t.a.x), xc = to_eigen(t.c.x);
  const Eigen::VectorXd xd = x_d_point(t);
  const double nd = xd.norm();
  const Eigen::VectorXd b = (xa - xc) / (xa - xc).squaredNorm();
  return s_rot(v, xd / nd) * a_boost(1.0 / nd, t.d()) * n_minus(b) * n_plus(-xa);
}

LorentzMatrix h_of_triple(const PointTriple& t) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(t.d());
  v(0) = 1.0;
  return h_of_triple(t, v);
}

double fp_factor(const PointTriple& t) {
  const double d = t.d();
  return std::pow(boundary_distance(t.a, t.b) * boundary_distance(t.a, t.c) * boundary_distance(t.b, t.c), d);
}

double measure_density(const PointTriple& t) { return 1.0 / fp_factor(t); }

double jacobian_det(const LorentzMatrix& g, const BoundaryPoint& x, double step) {
  if (x.at_infinity) throw DomainError("jacobian_det: x must be finite");
  const int d = x.dim();
  const Eigen::VectorXd X0 = g * null_vector(x);
  const double r2 = chart(X0, false).squaredNorm();
  const bool inverted = !(r2 <= 1.0) || std::abs(X0(0) + X0(1)) <= kInfinityTol * X0.norm();
  auto image = [&](const Eigen::VectorXd& p) { return chart(g * null_vector(BoundaryPoint(to_std(p))), inverted); };
  const Eigen::VectorXd p0 = to_eigen(x.x);
  Eigen::MatrixXd J(d, d);
  for (int k = 0; k < d; ++k) {
    auto central = [&](double h) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
      e(k) = h;
      return Eigen::VectorXd((image(p0 + e) - image(p0 - e)) / (2.0 * h));
    };
    J.col(k) = (4.0 * central(0.5 * step) - central(step)) / 3.0;
  }
  double det = std::abs(J.determinant());
  if (inverted) {
    // |x'|^2 = 1/|y|^2 in the inverted chart y.
    const double y2 = chart(X0, true).squaredNorm();
    det /= std::pow(y2, d);
  }
  return det;
}

LorentzMatrix random_conformal_map(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 0.6);
  std::uniform_real_distribution<double> logl(std::log(0.5), std::log(2.0));
  auto vec = [&] {
    Eigen::VectorXd q(d);
    for (int i = 0; i < d; ++i) q(i) = normal(rng);
    return q;
  };
  Eigen::VectorXd u = random_unit(d, rng), v = random_unit(d, rng);
  if (u.dot(v) < -0.9) v = -v;
  return s_rot(v, u) * n_minus(vec()) * a_boost(std::exp(logl(rng)), d) * n_plus(vec());
}

std::vector<GaugeCheck> gauge_fixing_checks(std::uint64_t seed, int triples, int maps) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  auto point = [&](int d) {
    std::vector<double> x(static_cast<std::size_t>(d));
    for (auto& c : x) c = unif(rng);
    return BoundaryPoint(x);
  };

  GaugeCheck mapping{"h_of_triple_mapping", 0.0, 1e-10, triples};
  for (int i = 0; i < triples; ++i) {
    const int d = i % 2 == 0 ? 2 : 3;
    const PointTriple t(point(d), point(d), point(d));
    Eigen::VectorXd v = random_unit(d, rng);
    const Eigen::VectorXd xd = x_d_point(t);
    if (xd.normalized().dot(v) < -0.99) v = -v;
    const LorentzMatrix h = h_of_triple(t, v);
    const BoundaryPoint ia = conformal_act(h, t.a), ib = conformal_act(h, t.b), ic = conformal_act(h, t.c);
    double err = 0.0;
    err = std::max(err, ia.at_infinity ? 1.0 : to_eigen(ia.x).norm());
    err = std::max(err, ib.at_infinity ? 1.0 : (to_eigen(ib.x) - v).norm());
    if (!ic.at_infinity) {
      const Eigen::VectorXd X = h * null_vector(t.c);
      err = std::max(err, std::abs(X(0) + X(1)) / X.norm());
    }
    mapping.max_err = std::max(mapping.max_err, err);
  }

  GaugeCheck measure{"measure_invariance", 0.0, 1e-8, maps};
  for (int i = 0; i < maps; ++i) {
    const int d = i % 2 == 0 ? 2 : 3;
    const LorentzMatrix g = random_conformal_map(d, rng);
    const PointTriple t(point(d), point(d), point(d));
    const BoundaryPoint ga = conformal_act(g, t.a), gb = conformal_act(g, t.b), gc = conformal_act(g, t.c);
    if (ga.at_infinity || gb.at_infinity || gc.at_infinity) continue;
    const double lhs = measure_density(PointTriple(ga, gb, gc)) * jacobian_det(g, t.a) *
                       jacobian_det(g, t.b) * jacobian_det(g, t.c);
    measure.max_err = std::max(measure.max_err, std::abs(lhs / measure_density(t) - 1.0));
  }
  return {mapping, measure};
}

}  // namespace sixdelta::gauge

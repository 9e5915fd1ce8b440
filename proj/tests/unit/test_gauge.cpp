#include <random>

#include "check.hpp"
#include "sixdelta/errors.hpp"
#include "sixdelta/gauge.hpp"

using namespace sixdelta;
using namespace sixdelta::gauge;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double c : v) x(i++) = c;
  return x;
}

double dist(const BoundaryPoint& a, const Eigen::VectorXd& b) {
  return (Eigen::Map<const Eigen::VectorXd>(a.x.data(), b.size()) - b).norm();
}

}  // namespace

TEST_CASE("constructors are Lorentz transformations") {
  CHECK(is_lorentz(n_plus(vec({0.3, -1.2}))));
  CHECK(is_lorentz(n_minus(vec({2.0, 0.1, 0.4}))));
  CHECK(is_lorentz(a_boost(3.5, 2)));
  CHECK(is_lorentz(s_rot(vec({0.0, 1.0}), vec({0.6, 0.8}))));
  CHECK(is_lorentz(n_plus(vec({1.0, 1.0})) * a_boost(0.2, 2) * n_minus(vec({-0.5, 0.7}))));
  Eigen::MatrixXd flip = Eigen::MatrixXd::Identity(4, 4);
  flip(0, 0) = -1.0;
  flip(1, 1) = -1.0;
  CHECK_FALSE(is_lorentz(flip));
}

TEST_CASE("rotations") {
  const Eigen::VectorXd u = vec({0.6, 0.8, 0.0}), v = vec({0.0, 0.0, 1.0});
  CHECK((s_rot_block(u, u) - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-15);
  CHECK((s_rot_block(v, u) * u - v).norm() < 1e-14);
  CHECK(s_rot_block(v, u).determinant() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(s_rot(-u, u), AntipodalError);
}

TEST_CASE("conformal actions of the constructors") {
  const BoundaryPoint x({1.0, 0.0});
  CHECK(dist(conformal_act(a_boost(2.0, 2), x), vec({2.0, 0.0})) < 1e-15);
  CHECK(dist(conformal_act(n_plus(vec({0.3, -0.4})), x), vec({1.3, -0.4})) < 1e-15);
  // x/x^2 = (1, 0) -> (1.3, -0.2), then invert
  const Eigen::VectorXd y = vec({1.3, -0.2}) / (1.3 * 1.3 + 0.04);
  CHECK(dist(conformal_act(n_minus(vec({0.3, -0.2})), x), y) < 1e-15);
  CHECK(dist(conformal_act(Eigen::MatrixXd::Identity(4, 4), x), vec({1.0, 0.0})) == 0.0);
  // infinity goes to q/q^2 under N_-(q) and stays fixed under N_+(q)
  CHECK(dist(conformal_act(n_minus(vec({0.5, 0.25})), BoundaryPoint::infinity(2)), vec({1.6, 0.8})) < 1e-14);
  CHECK(conformal_act(n_plus(vec({0.5, 0.25})), BoundaryPoint::infinity(2)).at_infinity);
  // -q/q^2 goes to infinity under N_-(q)
  CHECK(conformal_act(n_minus(vec({0.5, 0.0})), BoundaryPoint({-2.0, 0.0})).at_infinity);
}

TEST_CASE("group law of the conformal action") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const int d = 2 + i % 2;
    const auto g1 = random_conformal_map(d, rng), g2 = random_conformal_map(d, rng);
    std::vector<double> p(d);
    for (auto& c : p) c = u(rng);
    const BoundaryPoint x(p);
    const BoundaryPoint a = conformal_act(g1 * g2, x), b = conformal_act(g1, conformal_act(g2, x));
    REQUIRE(a.at_infinity == b.at_infinity);
    if (!a.at_infinity) CHECK(dist(a, Eigen::Map<const Eigen::VectorXd>(b.x.data(), d)) < 1e-10 * (1.0 + dist(b, Eigen::VectorXd::Zero(d))));
  }
}

TEST_CASE("x_D and the gauge-fixing element") {
  const PointTriple t(BoundaryPoint({0.0, 0.0}), BoundaryPoint({1.0, 0.0}), BoundaryPoint({2.0, 0.0}));
  CHECK((x_d_point(t) - vec({2.0, 0.0})).norm() < 1e-15);
  CHECK(fp_factor(t) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(measure_density(t) == doctest::Approx(0.25).epsilon(1e-15));
  const auto h = h_of_triple(t);
  CHECK(is_lorentz(h));
  CHECK(dist(conformal_act(h, t.a), vec({0.0, 0.0})) < 1e-14);
  CHECK(dist(conformal_act(h, t.b), vec({1.0, 0.0})) < 1e-14);
  CHECK(conformal_act(h, t.c).at_infinity);
  CHECK_THROWS_AS(h_of_triple(t, vec({-1.0, 0.0})), AntipodalError);
  CHECK_THROWS_AS(PointTriple(BoundaryPoint({0.0, 0.0}), BoundaryPoint({0.0, 0.0}), BoundaryPoint({2.0, 0.0})),
                  CoincidentPointsError);
}

TEST_CASE("norm of x_D") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const int d = 2 + i % 2;
    auto p = [&] {
      std::vector<double> x(d);
      for (auto& c : x) c = u(rng);
      return BoundaryPoint(x);
    };
    const PointTriple t(p(), p(), p());
    const double expect = boundary_distance(t.a, t.b) * boundary_distance(t.a, t.c) / boundary_distance(t.b, t.c);
    CHECK(x_d_point(t).norm() == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("elements mapping a triple to (0, v, infinity) differ by a rotation fixing v") {
  const PointTriple t(BoundaryPoint({0.1, 0.2, -0.3}), BoundaryPoint({1.0, -0.5, 0.2}), BoundaryPoint({-0.7, 0.4, 0.9}));
  const Eigen::VectorXd v = vec({1.0, 0.0, 0.0});
  const auto h = h_of_triple(t, v);
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(5, 5);
  const double c = std::cos(0.7), s = std::sin(0.7);
  R(3, 3) = c;
  R(3, 4) = -s;
  R(4, 3) = s;
  R(4, 4) = c;
  const Eigen::MatrixXd g = R * h;
  CHECK(dist(conformal_act(g, t.a), Eigen::VectorXd::Zero(3)) < 1e-12);
  CHECK(dist(conformal_act(g, t.b), v) < 1e-12);
  CHECK(conformal_act(g, t.c).at_infinity);
  // g h^{-1} is block diagonal with an SO(d) block fixing v
  const Eigen::MatrixXd k = g * h.inverse();
  CHECK((k - R).norm() < 1e-10);
  CHECK((k.block(2, 2, 3, 3) * v - v).norm() < 1e-12);
}

TEST_CASE("measure density under dilatations") {
  const PointTriple t(BoundaryPoint({0.1, 0.2}), BoundaryPoint({1.0, -0.5}), BoundaryPoint({-0.7, 0.4}));
  const auto g = a_boost(1.7, 2);
  const PointTriple gt(conformal_act(g, t.a), conformal_act(g, t.b), conformal_act(g, t.c));
  CHECK(measure_density(gt) * std::pow(1.7, 6) == doctest::Approx(measure_density(t)).epsilon(1e-13));
  CHECK(jacobian_det(g, t.a) == doctest::Approx(1.7 * 1.7).epsilon(1e-9));
}

TEST_CASE("Jacobian near the image of infinity uses the inverted chart") {
  const auto g = n_minus(vec({1.0, 0.0}));
  // x = (-1 + 1e-4, 0) lands near infinity; |J| = |x|^{-2d} |x/x^2 + q|^{-2d} for this map
  const BoundaryPoint x({-1.0 + 1e-4, 0.0});
  const double y = 1.0 / (-1.0 + 1e-4) + 1.0;
  const double expect = std::pow(1.0 - 1e-4, -4) * std::pow(y * y, -2);
  CHECK(jacobian_det(g, x) == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("mapping and measure suites") {
  for (const auto& c : gauge_fixing_checks()) {
    INFO(c.name << " " << c.max_err);
    CHECK(c.passed());
  }
}

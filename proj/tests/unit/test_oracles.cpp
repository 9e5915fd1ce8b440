#include <cmath>

#include "check.hpp"
#include "sixdelta/errors.hpp"
#include "sixdelta/oracles.hpp"
#include "sixdelta/parallel.hpp"
#include "sixdelta/propagators.hpp"
#include "sixdelta/quadrature.hpp"

using namespace sixdelta;

TEST_CASE("tanh-sinh handles endpoint singularities") {
  // int_0^1 x^{-1/2} dx = 2
  const auto q = quad::tanh_sinh_unit([](double x, double) { return Complex(1.0 / std::sqrt(x), 0.0); }, 1e-13);
  CHECK(q.value.real() == doctest::Approx(2.0).epsilon(1e-12));
  // int_0^1 log(1 - x) dx = -1, using the complement
  const auto r = quad::tanh_sinh_unit([](double, double xc) { return Complex(std::log(xc), 0.0); }, 1e-13);
  CHECK(r.value.real() == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("Gauss-Legendre and sphere rules") {
  double s = 0.0;
  for (const auto& n : quad::gauss_legendre(7)) s += n.w * std::pow(n.x, 12);
  CHECK(s == doctest::Approx(2.0 / 13.0).epsilon(1e-14));
  for (int d : {2, 3}) {
    double area = 0.0, z2 = 0.0;
    for (const auto& n : quad::sphere_rule(d, 12)) {
      area += n.w;
      z2 += n.w * n.dir.back() * n.dir.back();
    }
    CHECK(area == doctest::Approx(quad::sphere_area(d - 1)).epsilon(1e-14));
    CHECK(z2 == doctest::Approx(quad::sphere_area(d - 1) / d).epsilon(1e-13));
  }
  CHECK_THROWS_AS(quad::sphere_rule(4, 8), DomainError);
}

TEST_CASE("tree_sum and parallel_for") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / (1.0 + i);
  const double a = par::tree_sum(v);
  std::vector<double> out(v.size());
  for (int workers : {1, 3, 8}) {
    par::set_worker_count(workers);
    CHECK(par::worker_count() == workers);
    par::parallel_for(v.size(), [&](std::size_t i) { out[i] = v[i]; });
    CHECK(par::tree_sum(out) == a);
  }
  par::set_worker_count(2);
  CHECK_THROWS_AS(par::parallel_for(10, [](std::size_t i) { if (i == 7) throw DomainError("x"); }), DomainError);
  par::set_worker_count(0);
}

TEST_CASE("plane quadrature of a known integral") {
  // int d^2x / (1 + x^2)^2 = pi
  oracle::PlaneIntegrand g;
  g.d = 2;
  g.points = {{{0.0, 0.0}, 0.0}};
  g.far_exponent = -4.0;
  g.f = [](const std::vector<double>& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    return Complex(1.0 / ((1.0 + r2) * (1.0 + r2)), 0.0);
  };
  CHECK(oracle::integrate_plane(g, 1e-10).value.real() == doctest::Approx(kPi).epsilon(1e-10));
  g.far_exponent = -1.0;
  CHECK_THROWS_AS(oracle::integrate_plane(g, 1e-10), NonConvergedError);
}

TEST_CASE("bulk-to-bulk boundary-integral oracle") {
  for (double l : {0.5, 2.0}) {
    const auto w = ConformalWeight::type_one(0.8, 2);
    CHECK_REL(oracle::bulk_to_bulk_oracle(w, l).value, bulk_to_bulk(w, l), 1e-8);
  }
  const auto w3 = ConformalWeight::type_one(0.5, 3);
  CHECK_REL(oracle::bulk_to_bulk_oracle(w3, 1.0, 1e-7).value, bulk_to_bulk(w3, 1.0), 1e-6);
}

TEST_CASE("Monte Carlo volume of a geodesic ball") {
  const BulkPoint c(1.0, {0.0, 0.0});
  auto f = [&](const BulkPoint& p) { return Complex(distance(p, c) < 1.0 ? 1.0 : 0.0, 0.0); };
  oracle::McConfig cfg;
  cfg.samples = 1 << 20;
  const auto e = oracle::integrate_hd(f, 2, cfg);
  const double exact = kPi * (std::sinh(2.0) - 2.0);
  CHECK(oracle::ball_volume(2, 1.0) == doctest::Approx(exact).epsilon(1e-13));
  CHECK(std::abs(e.value.real() - exact) < 4.0 * e.error);
  CHECK(e.evaluations == cfg.samples);
}

TEST_CASE("Monte Carlo estimates do not depend on the worker count") {
  const TripleWeights t(ConformalWeight(1.3, 2), ConformalWeight(1.6, 2), ConformalWeight(1.9, 2));
  const BoundaryPoint a({0.0, 0.0}), b({1.0, 0.0}), c({0.3, 0.8});
  oracle::McConfig cfg;
  cfg.samples = 1 << 17;
  par::set_worker_count(1);
  const auto one = oracle::three_point_oracle(t, a, b, c, cfg);
  par::set_worker_count(4);
  const auto four = oracle::three_point_oracle(t, a, b, c, cfg);
  par::set_worker_count(0);
  CHECK(one.value == four.value);
  CHECK(one.error == four.error);
  cfg.seed += 1;
  CHECK(oracle::three_point_oracle(t, a, b, c, cfg).value != one.value);
}

TEST_CASE("three-point oracle refuses divergent weights") {
  const TripleWeights t(ConformalWeight(0.5, 2), ConformalWeight(0.6, 2), ConformalWeight(0.7, 2));
  const BoundaryPoint a({0.0, 0.0}), b({1.0, 0.0}), c({0.3, 0.8});
  CHECK_THROWS_AS(oracle::three_point_oracle(t, a, b, c, oracle::McConfig{}), NonConvergedError);
}

TEST_CASE("theta oracle") {
  const TripleWeights t(ConformalWeight::type_one(1.0, 2), ConformalWeight::type_one(0.7, 2),
                        ConformalWeight::type_one(1.3, 2));
  CHECK_REL(oracle::theta_oracle(t).value, theta(t), 1e-7);
}

TEST_CASE("elementary integral identities") {
  for (const auto& c : oracle::integral_identity_checks()) {
    INFO(c.name << " " << c.max_rel_err);
    CHECK(c.passed());
    CHECK(c.draws == 5);
  }
}

#include <random>

#include "check.hpp"
#include "sixdelta/correlators.hpp"
#include "sixdelta/errors.hpp"
#include "sixdelta/hyperbolic.hpp"
#include "sixdelta/propagators.hpp"

using namespace sixdelta;

TEST_CASE("bulk and boundary points") {
  CHECK_THROWS_AS(BulkPoint(0.0, {1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(BulkPoint(-1.0, {1.0, 2.0}), DomainError);
  CHECK(BoundaryPoint::infinity(3).at_infinity);
  CHECK(BoundaryPoint::infinity(3).dim() == 3);
  CHECK(boundary_distance(BoundaryPoint({0.0, 0.0}), BoundaryPoint({3.0, 4.0})) == doctest::Approx(5.0));
}

TEST_CASE("geodesic distance two ways") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0), h(0.05, 3.0);
  for (int i = 0; i < 50; ++i) {
    const int d = 2 + i % 3;
    std::vector<double> a(d), b(d);
    for (auto& c : a) c = u(rng);
    for (auto& c : b) c = u(rng);
    const BulkPoint p(h(rng), a), q(h(rng), b);
    CHECK(distance(p, q) == doctest::Approx(distance_embedding(p, q)).epsilon(1e-10));
    CHECK(minkowski(embed_bulk(p), embed_bulk(p)) == doctest::Approx(-1.0).epsilon(1e-12));
  }
  const BulkPoint o(1.0, {0.0, 0.0}), up(std::exp(1.5), {0.0, 0.0});
  CHECK(distance(o, up) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(distance(o, o) == 0.0);
}

TEST_CASE("bulk-to-boundary kernel two ways") {
  const ConformalWeight w({1.0, 0.8}, 2);
  const BulkPoint p(0.7, {0.2, -0.4});
  const BoundaryPoint x({1.1, 0.3});
  CHECK_REL(bulk_to_boundary(w, p, x), bulk_to_boundary_embedding(w, p, x), 1e-13);
  CHECK_THROWS_AS(bulk_to_boundary(w, p, BoundaryPoint::infinity(2)), DomainError);
}

TEST_CASE("conformal weights") {
  const auto w = ConformalWeight::type_one(0.7, 3);
  CHECK(w.is_type_one());
  CHECK(w.delta() == Complex(1.5, 0.7));
  CHECK(w.dual().delta() == Complex(1.5, -0.7));
  CHECK(w.rho() == 0.7);
  CHECK_FALSE(ConformalWeight(1.2, 2).is_type_one());
}

TEST_CASE("d = 2 propagator closed forms") {
  CHECK(bulk_to_bulk_d2(2.0, 1.0) == doctest::Approx(1.2153842812167447).epsilon(1e-14));
  for (double rho : {0.0, 0.3, 1.0, 2.5})
    for (double l : {1e-6, 0.2, 1.0, 4.0, 15.0}) {
      CHECK_REL(bulk_to_bulk(ConformalWeight::type_one(rho, 2), l), Complex(bulk_to_bulk_d2(rho, l), 0.0), 1e-11);
      // sinhc form for real Delta = 1 + rho
      CHECK_REL(bulk_to_bulk(ConformalWeight(1.0 + rho, 2), l), bulk_to_bulk_general_d2(1.0 + rho, l), 1e-11);
    }
}

TEST_CASE("propagator duality") {
  for (int d : {2, 3, 4})
    for (Complex delta : {Complex(0.4, 0.0), Complex(1.3, 2.0), Complex(0.5 * d, 1.7), Complex(-0.2, 0.6)}) {
      const ConformalWeight w(delta, d);
      for (double l : {0.1, 1.0, 3.0})
        CHECK_REL(bulk_to_bulk(w, l), bulk_to_bulk(w.dual(), l), 1e-10);
    }
}

TEST_CASE("propagator from points matches distance form") {
  const ConformalWeight w = ConformalWeight::type_one(0.9, 3);
  const BulkPoint p(0.5, {0.1, 0.2, 0.3}), q(1.7, {-0.4, 0.0, 0.9});
  CHECK_REL(bulk_to_bulk(w, p, q), bulk_to_bulk(w, distance(p, q)), 1e-14);
  CHECK_THROWS_AS(bulk_to_bulk(w, -1.0), DomainError);
}

TEST_CASE("three-point coefficient") {
  // pi * Gamma(1/2) * Gamma(1/2)^3 / 2 for unit weights in d = 2
  const TripleWeights ones(ConformalWeight(1.0, 2), ConformalWeight(1.0, 2), ConformalWeight(1.0, 2));
  CHECK_REL(c_coeff(ones), Complex(0.5 * kPi * kPi * kPi, 0.0), 1e-14);
  // x12 = x13 = x23 = 1
  const BoundaryPoint a({0.0, 0.0}), b({1.0, 0.0}), c({0.5, std::sqrt(0.75)});
  CHECK_REL(three_point(ones, a, b, c), c_coeff(ones), 1e-14);
  const TripleWeights bad(ConformalWeight(1.0, 2), ConformalWeight(2.0, 2), ConformalWeight(1.0, 2));
  CHECK_THROWS_AS(c_coeff(bad), PoleError);
}

TEST_CASE("convergence window") {
  const auto ok = check_convergence({ConformalWeight(1.3, 2), ConformalWeight(1.6, 2), ConformalWeight(1.9, 2)});
  CHECK(ok.ok());
  const auto low = check_convergence({ConformalWeight(0.5, 2), ConformalWeight(0.6, 2), ConformalWeight(0.7, 2)});
  CHECK_FALSE(low.sum_condition);
  const auto tri = check_convergence({ConformalWeight(3.0, 2), ConformalWeight(1.0, 2), ConformalWeight(1.1, 2)});
  CHECK_FALSE(tri.triangle_conditions[0]);
  CHECK(tri.triangle_conditions[1]);
}

TEST_CASE("theta is positive for type-I triples") {
  const TripleWeights t(ConformalWeight::type_one(1.0, 2), ConformalWeight::type_one(0.7, 2),
                        ConformalWeight::type_one(1.3, 2));
  const Complex th = theta(t);
  CHECK(th.real() > 0.0);
  CHECK(std::abs(th.imag()) <= 1e-14 * th.real());
  CHECK_REL(th, c_coeff(t) * c_coeff(t.dual()), 1e-15);
}

TEST_CASE("four-point prefactor two routes") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const int d = 2 + i % 2;
    auto w = [&] { return ConformalWeight::type_one(u(rng), d); };
    const auto a = w(), b = w(), c = w(), e = w(), f = w();
    CHECK_REL(k_prefactor(a, b, c, e, f), k_prefactor_via_c(a, b, c, e, f), 1e-12);
  }
  // D1 + D2 - D3 = 0: the C route has a pole that cancels, the explicit form stays finite.
  const ConformalWeight d1(0.8, 2), d2(0.5, 2), d3(1.3, 2), d5 = ConformalWeight::type_one(0.4, 2),
      d6 = ConformalWeight::type_one(-0.9, 2);
  CHECK_THROWS_AS(k_prefactor_via_c(d1, d2, d3, d5, d6), PoleError);
  CHECK(is_finite(k_prefactor(d1, d2, d3, d5, d6)));
  // Gamma(d - D1) in the denominator has a pole at D1 = 3 for d = 2.
  CHECK(k_prefactor(ConformalWeight(3.0, 2), d2, d3, d5, d6) == Complex{});
}

TEST_CASE("gauge volume ratio") {
  CHECK(gauge_volume_ratio(2) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-15));
  CHECK(gauge_volume_ratio(3) == doctest::Approx(kPi * kPi * kPi).epsilon(1e-15));
}

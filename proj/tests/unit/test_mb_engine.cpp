#include <cmath>

#include "check.hpp"
#include "sixdelta/errors.hpp"
#include "sixdelta/gauge.hpp"
#include "sixdelta/mb_engine.hpp"
#include "sixdelta/oracles.hpp"
#include "sixdelta/specfun.hpp"

using namespace sixdelta;

namespace {

ConformalWeight w2(double rho) { return ConformalWeight::type_one(rho, 2); }

}  // namespace

TEST_CASE("mb_exp reproduces the exponential") {
  ContourConfig cfg;
  cfg.tol = 1e-10;
  for (double z : {0.5, 1.0, 2.0, 5.0}) {
    const QuadResult q = mb_exp(z, cfg);
    CHECK(std::abs(q.value - std::exp(-z)) < 1e-8);
    CHECK(q.converged);
    CHECK(q.r == -0.25);
  }
  CHECK_THROWS_AS(mb_exp(-1.0, cfg), DomainError);
  cfg.r = 0.5;
  CHECK_THROWS_AS(mb_exp(1.0, cfg), ParameterError);
}

TEST_CASE("node doubling that cannot reach tol raises TruncationError") {
  ContourConfig cfg;
  cfg.tol = 1e-15;
  cfg.n = 8;
  cfg.max_doublings = 1;
  CHECK_THROWS_AS(mb_exp(1.0, cfg), TruncationError);
}

TEST_CASE("grids beyond the node budget are refused before evaluation") {
  ContourConfig cfg;
  cfg.tol = 1e-12;
  const SixLabels L = SixLabels::type_one({1.0, 0.7, 1.3, 0.9, 1.1, 0.8}, 2);
  CHECK_THROWS_AS(racah(L, cfg), TruncationError);
  cfg.tol = 1e-3;
  cfg.max_grid = 1e3;
  CHECK_THROWS_AS(racah(L, cfg), TruncationError);
}

TEST_CASE("(6 Delta) with strong cancellation converges by pruning less") {
  const SixLabels L = SixLabels::type_one({1.5, 0.7, 1.3, 0.9, 1.1, 0.8}, 2);
  const QuadResult q = racah(L, ContourConfig{});
  CHECK(q.converged);
  CHECK(q.tail_bound <= 1e-3 * std::abs(q.value));
  CHECK(std::abs(q.value.imag()) < 1e-3 * std::abs(q.value));
}

TEST_CASE("default contour abscissa") {
  ContourConfig cfg;
  CHECK(cfg.r_for(2) == -0.125);
  CHECK(cfg.r_for(4) == -0.25);
  cfg.r = -0.1;
  CHECK(cfg.r_for(2) == -0.1);
}

TEST_CASE("Gamma lattice lines") {
  const LatticeLine line = log_gamma_line({0.3, -2.0}, 0.25, -8, 8);
  for (int m = -8; m <= 8; ++m) CHECK_REL(line[m], specfun::log_gamma_c(line.point(m)), 1e-14);
  const LatticeLine ups = upsilon_line({-0.2, 1.0}, 0.5, -4, 4, 3);
  const LatticeLine inv = inverse_upsilon_line({-0.2, 1.0}, 0.5, -4, 4, 3);
  for (int m = -4; m <= 4; ++m) {
    CHECK_REL(ups[m], specfun::upsilon_d(ups.point(m), 3), 1e-13);
    CHECK_REL(ups[m] * inv[m], Complex(1.0, 0.0), 1e-13);
  }
  ContourConfig cfg;
  CHECK_THROWS_AS(gamma_lattice(cfg, {Complex(0.5, 0.0)}), ParameterError);
  cfg.T = 4.0;
  cfg.n = 16;
  const auto lines = gamma_lattice(cfg, {Complex(0.5, 0.0), Complex(1.0, 0.3)});
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].m_lo() == -32);
  CHECK(lines[0].m_hi() == 32);
}

TEST_CASE("MB parameters") {
  const SixLabels L = SixLabels::type_one({1.0, 0.7, 1.3, 0.9, 1.1, 0.8}, 2);
  const MBParams p = mb_params(L);
  CHECK_REL(p.A, 0.5 * (L(1).delta() - L(4).delta() + L(2).delta() + L(5).delta() - 2.0), 1e-15);
  const PairParams q = pair_params(L(4), L(2).dual(), L(6).dual(), L(5).dual(), L(3).dual());
  CHECK(q.alpha == p.second.alpha);
  CHECK(q.delta == p.second.delta);
  CHECK(L.with_dual(3)(3).delta() == L(3).dual().delta());
  CHECK(L.conjugate()(5).rho() == -1.1);
  CHECK(L.all_type_one());
}

TEST_CASE("I(u, v) agrees with the Feynman-parameter integral") {
  ContourConfig cfg;
  cfg.tol = 1e-8;
  const QuadResult e = i_uv(w2(1.0), w2(0.7), w2(1.3), w2(1.1), w2(0.8), 0.5, 0.7, cfg);
  const oracle::Estimate o = oracle::i_uv_oracle(w2(1.0), w2(0.7), w2(1.3), w2(1.1), w2(0.8), 0.5, 0.7, 1e-10);
  CHECK_REL(e.value, o.value, 1e-7);
  CHECK(e.err_estimate <= 1e-7 * std::abs(e.value));
}

TEST_CASE("I(u, v) rejects contours that cross Gamma poles") {
  ContourConfig cfg;
  cfg.r = -0.8;
  CHECK_THROWS_AS(i_uv(w2(1.0), w2(0.7), w2(1.3), w2(1.1), w2(0.8), 0.5, 0.7, cfg), ParameterError);
  CHECK_THROWS_AS(i_uv(w2(1.0), w2(0.7), w2(1.3), w2(1.1), w2(0.8), -0.5, 0.7, ContourConfig{}), DomainError);
}

TEST_CASE("cross ratios are conformally invariant") {
  const BoundaryPoint x2({0.2, -0.5}), x3({0.0, 0.0}), x5({1.0, 0.3}), x6({-0.4, 1.2});
  const auto [u, v] = cross_ratios(x2, x3, x5, x6);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 5; ++i) {
    const auto g = gauge::random_conformal_map(2, rng);
    const auto [gu, gv] = cross_ratios(gauge::conformal_act(g, x2), gauge::conformal_act(g, x3),
                                       gauge::conformal_act(g, x5), gauge::conformal_act(g, x6));
    CHECK(gu == doctest::Approx(u).epsilon(1e-11));
    CHECK(gv == doctest::Approx(v).epsilon(1e-11));
  }
  CHECK_THROWS_AS(cross_ratios(x2, x2, x5, x6), CoincidentPointsError);
}

TEST_CASE("four-point function against the boundary-integral oracle") {
  const BoundaryPoint x2({0.2, -0.5}), x3({0.0, 0.0}), x5({1.0, 0.3}), x6({-0.4, 1.2});
  ContourConfig cfg;
  cfg.tol = 1e-9;
  const QuadResult e = four_point(w2(1.0), w2(0.7), w2(1.3), w2(1.1), w2(0.8), x2, x3, x5, x6, cfg);
  const oracle::Estimate o =
      oracle::four_point_oracle(w2(1.0), w2(0.7), w2(1.3), w2(1.1), w2(0.8), x2, x3, x5, x6, 1e-7);
  CHECK_REL(e.value, o.value, 1e-6);
}

TEST_CASE("sphere integral against direct quadrature") {
  const BoundaryPoint x3({0.0, 0.0}), x5({1.0, 0.3}), x6({-0.4, 1.2});
  const Complex a(0.3, 0.2), b(-0.5, -0.1);
  const auto o = oracle::sphere_integral_oracle(a, b, 2, x3, x5, x6, 1e-9);
  CHECK_REL(sphere_integral(a, b, 2), o.full.value, 1e-8);
}

TEST_CASE("(6 Delta) symbol: realness and conjugation") {
  const SixLabels L = SixLabels::type_one({1.0, 0.7, 1.3, 0.9, 1.1, 0.8}, 2);
  const QuadResult q = racah(L, ContourConfig{});
  CHECK(std::abs(q.value.imag()) < 1e-3 * std::abs(q.value));
  const QuadResult c = racah(L.conjugate(), ContourConfig{});
  CHECK_REL(c.value, std::conj(q.value), 1e-12);
  CHECK_THROWS_AS(racah(SixLabels({ConformalWeight(1.2, 2), w2(0.7), w2(1.3), w2(0.9), w2(1.1), w2(0.8)}),
                        ContourConfig{}),
                  ParameterError);
  ContourConfig bad;
  bad.r = -0.3;
  CHECK_THROWS_AS(racah(L, bad), ParameterError);
}

TEST_CASE("(6 Delta) lattice and direct evaluation agree") {
  const SixLabels L = SixLabels::type_one({1.0, 0.7, 1.3, 0.9, 1.1, 0.8}, 2);
  ContourConfig cfg;
  cfg.T = 2.0;
  cfg.n = 24;
  cfg.adaptive = false;
  cfg.prune = false;
  const QuadResult on = racah_integral(L, cfg);
  cfg.use_lattice = false;
  const QuadResult off = racah_integral(L, cfg);
  CHECK(std::abs(on.value - off.value) <= 1e-13 * std::abs(on.value));
}

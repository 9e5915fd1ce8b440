#include "verify.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>

#include "sixdelta/correlators.hpp"
#include "sixdelta/gauge.hpp"
#include "sixdelta/mb_engine.hpp"
#include "sixdelta/oracles.hpp"
#include "sixdelta/propagators.hpp"

namespace sixdelta::cli {

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

ConformalWeight w2(double rho) { return ConformalWeight::type_one(rho, 2); }

CheckResult timed(const std::string& name, double tol, const std::function<double(std::string&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  r.name = name;
  r.tolerance = tol;
  r.max_err = body(r.note);
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

std::vector<CheckResult> run_verify(Level level, unsigned long long seed) {
  const bool quick = level == Level::quick;
  std::vector<CheckResult> out;

  out.push_back(timed("mb_exp", 1e-8, [](std::string&) {
    ContourConfig cfg;
    cfg.tol = 1e-10;
    double worst = 0.0;
    for (double z : {0.5, 1.0, 2.0, 5.0}) worst = std::max(worst, std::abs(mb_exp(z, cfg).value - std::exp(-z)));
    return worst;
  }));

  out.push_back(timed("propagator_boundary_integral", 1e-6, [&](std::string&) {
    double worst = 0.0;
    const int nr = quick ? 3 : 10;
    for (int i = 0; i < nr; ++i) {
      const double rho = 0.1 + 2.7 * i / (nr - 1);
      for (double l : quick ? std::vector<double>{0.3, 2.0, 6.0} : std::vector<double>{0.1, 0.5, 1, 2, 3, 4, 6, 8}) {
        worst = std::max(worst, rel(oracle::bulk_to_bulk_oracle(w2(rho), l).value, bulk_to_bulk(w2(rho), l)));
        worst = std::max(worst, rel(Complex(bulk_to_bulk_d2(rho, l), 0.0), bulk_to_bulk(w2(rho), l)));
      }
    }
    return worst;
  }));

  out.push_back(timed("propagator_duality", 1e-10, [](std::string&) {
    double worst = 0.0;
    for (int d : {2, 3, 4})
      for (Complex delta : {Complex(0.5 * d, 0.7), Complex(0.3, 0.0), Complex(0.4, 1.1), Complex(1.9, -0.5)}) {
        const ConformalWeight w(delta, d);
        for (double l : {0.05, 0.5, 2.0, 6.0}) worst = std::max(worst, rel(bulk_to_bulk(w, l), bulk_to_bulk(w.dual(), l)));
      }
    return worst;
  }));

  // Monte Carlo: the error is measured in units of the tolerance, so that quick
  // runs compare against 4 standard errors and full runs against 1e-3.
  out.push_back(timed("three_point_monte_carlo", 1.0, [&](std::string& note) {
    struct Cfg {
      double a, b, c;
      double p[6];
    };
    const Cfg cs[] = {{1.3, 1.6, 1.9, {0, 0, 1, 0, 0.3, 0.8}}, {0.9, 1.1, 1.5, {0, 0, 2, 0, -0.5, 1}},
                      {1.2, 1.2, 1.2, {0, 0, 1, 0, 0.5, 0.9}}, {2.0, 1.5, 1.8, {0, 0, 0.7, 0.1, 0.2, -1.3}},
                      {1.0, 1.0, 1.0, {0, 0, 1, 1, -1, 0.5}}};
    oracle::McConfig mc;
    mc.seed = seed;
    mc.samples = quick ? 1'000'000 : 10'000'000;
    const int n = quick ? 2 : 5;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto& c = cs[i];
      const TripleWeights w(ConformalWeight(c.a, 2), ConformalWeight(c.b, 2), ConformalWeight(c.c, 2));
      const BoundaryPoint x1({c.p[0], c.p[1]}), x2({c.p[2], c.p[3]}), x3({c.p[4], c.p[5]});
      const auto e = oracle::three_point_oracle(w, x1, x2, x3, mc);
      const Complex exact = three_point(w, x1, x2, x3);
      const double tol = quick ? 4.0 * e.error : 1e-3 * std::abs(exact);
      worst = std::max(worst, std::abs(e.value - exact) / tol);
    }
    note = quick ? "error in units of 4 standard errors" : "error in units of 1e-3 relative";
    return worst;
  }));

  out.push_back(timed("theta_frozen_point", 1e-3, [&](std::string&) {
    const std::array<double, 3> cs[] = {{1.0, 0.7, 1.3}, {0.2, -0.5, 0.9}, {1.5, 1.5, 0.4}};
    double worst = 0.0;
    for (int i = 0; i < (quick ? 1 : 3); ++i) {
      const TripleWeights w(w2(cs[i][0]), w2(cs[i][1]), w2(cs[i][2]));
      worst = std::max(worst, rel(oracle::theta_oracle(w).value, theta(w)));
    }
    return worst;
  }));

  out.push_back(timed("i_uv_feynman", 1e-4, [&](std::string&) {
    const double uv[4][2] = {{0.5, 0.7}, {1.3, 0.4}, {2.0, 2.5}, {0.2, 1.1}};
    ContourConfig cfg;
    cfg.tol = 1e-7;
    double worst = 0.0;
    for (int i = 0; i < (quick ? 2 : 4); ++i) {
      const Complex e = i_uv(w2(1.0), w2(0.7), w2(1.3), w2(1.1), w2(0.8), uv[i][0], uv[i][1], cfg).value;
      const Complex o = oracle::i_uv_oracle(w2(1.0), w2(0.7), w2(1.3), w2(1.1), w2(0.8), uv[i][0], uv[i][1]).value;
      worst = std::max(worst, rel(e, o));
    }
    return worst;
  }));

  out.push_back(timed("sphere_integral", 1e-6, [&](std::string&) {
    const Complex ab[][2] = {{{0.3, 0.2}, {-0.5, -0.1}}, {{0.5, -0.3}, {-0.9, 0.4}}, {{0.7, 0.0}, {-0.8, 0.2}}};
    const BoundaryPoint x3({0.0, 0.0}), x5({1.0, 0.3}), x6({-0.4, 1.2});
    double worst = 0.0;
    for (int i = 0; i < (quick ? 1 : 3); ++i)
      worst = std::max(worst, rel(oracle::sphere_integral_oracle(ab[i][0], ab[i][1], 2, x3, x5, x6).full.value,
                                  sphere_integral(ab[i][0], ab[i][1], 2)));
    return worst;
  }));

  out.push_back(timed("four_point_boundary_integral", 1e-6, [&](std::string&) {
    const BoundaryPoint x2({0.2, -0.5}), x3({0.0, 0.0}), x5({1.0, 0.3}), x6({-0.4, 1.2});
    ContourConfig cfg;
    cfg.tol = 1e-9;
    const Complex e = four_point(w2(1.0), w2(0.7), w2(1.3), w2(1.1), w2(0.8), x2, x3, x5, x6, cfg).value;
    const Complex o = oracle::four_point_oracle(w2(1.0), w2(0.7), w2(1.3), w2(1.1), w2(0.8), x2, x3, x5, x6, 1e-8).value;
    return rel(e, o);
  }));

  out.push_back(timed("prefactor_two_routes", 1e-12, [&](std::string&) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto a = w2(u(rng)), b = w2(u(rng)), c = w2(u(rng)), e = w2(u(rng)), f = w2(u(rng));
      worst = std::max(worst, rel(k_prefactor_via_c(a, b, c, e, f), k_prefactor(a, b, c, e, f)));
    }
    return worst;
  }));

  out.push_back(timed("racah_realness", 1e-3, [](std::string& note) {
    const QuadResult q = racah(SixLabels::type_one({1.0, 0.7, 1.3, 0.9, 1.1, 0.8}, 2), ContourConfig{});
    note = "|Im|/|value|";
    return std::abs(q.value.imag()) / std::abs(q.value);
  }));

  for (const auto& c : oracle::integral_identity_checks(seed)) {
    CheckResult r;
    r.name = c.name;
    r.max_err = c.max_rel_err;
    r.tolerance = c.tolerance;
    out.push_back(r);
  }
  for (const auto& c : gauge::gauge_fixing_checks(seed, quick ? 200 : 1000, quick ? 20 : 100)) {
    CheckResult r;
    r.name = c.name;
    r.max_err = c.max_err;
    r.tolerance = c.tolerance;
    out.push_back(r);
  }
  return out;
}

}  // namespace sixdelta::cli

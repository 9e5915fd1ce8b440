// Acceptance runner: one PASS/FAIL line per criterion.
//   sixdelta_acceptance            run all twelve
//   sixdelta_acceptance 4 9        run a subset

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sixdelta/correlators.hpp"
#include "sixdelta/errors.hpp"
#include "sixdelta/gauge.hpp"
#include "sixdelta/mb_engine.hpp"
#include "sixdelta/oracles.hpp"
#include "sixdelta/parallel.hpp"
#include "sixdelta/propagators.hpp"

using namespace sixdelta;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

double bar(const QuadResult& q) { return q.err_estimate + q.tail_bound; }

ConformalWeight w2(double rho) { return ConformalWeight::type_one(rho, 2); }

// Labels shared by criteria 9 and 12.
const std::array<double, 6> kSix = {1.0, 0.7, 1.3, 0.9, 1.1, 0.8};

struct IuvCase {
  std::array<double, 5> rho;  // D1, D2, D3, D5, D6
  double u, v;
};

std::vector<IuvCase> iuv_cases() {
  const std::array<double, 5> s1 = {1.0, 0.7, 1.3, 1.1, 0.8};
  const std::array<double, 5> s2 = {0.4, -1.2, 0.6, 1.7, -0.3};
  const double uv[4][2] = {{0.5, 0.7}, {1.3, 0.4}, {2.0, 2.5}, {0.2, 1.1}};
  std::vector<IuvCase> out;
  for (const auto& s : {s1, s2})
    for (const auto& p : uv) out.push_back({s, p[0], p[1]});
  return out;
}

QuadResult iuv_engine(const IuvCase& c) {
  ContourConfig cfg;
  cfg.tol = 1e-7;
  return i_uv(w2(c.rho[0]), w2(c.rho[1]), w2(c.rho[2]), w2(c.rho[3]), w2(c.rho[4]), c.u, c.v, cfg);
}

Outcome c1_mb_exp() {
  Timer t;
  ContourConfig cfg;
  cfg.tol = 1e-10;
  double worst = 0.0;
  for (double z : {0.5, 1.0, 2.0, 5.0}) worst = std::max(worst, std::abs(mb_exp(z, cfg).value - std::exp(-z)));
  const double s = t.seconds();
  return {worst < 1e-8 && s < 1.0, "max abs err " + fmt("%.1e", worst) + ", " + fmt("%.3f", s) + " s"};
}

Outcome c2_propagator_triple() {
  Timer t;
  double closed = 0.0, orc = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double rho = 0.1 + 0.3 * i;
    for (double l : {0.1, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.5, 8.0}) {
      const Complex hyper = bulk_to_bulk(w2(rho), l);
      closed = std::max(closed, rel(hyper, Complex(bulk_to_bulk_d2(rho, l), 0.0)));
      orc = std::max(orc, rel(oracle::bulk_to_bulk_oracle(w2(rho), l, 1e-9).value, hyper));
    }
  }
  const double s = t.seconds();
  return {closed < 1e-10 && orc < 1e-6 && s < 60.0,
          "closed form " + fmt("%.1e", closed) + ", oracle " + fmt("%.1e", orc) + ", " + fmt("%.1f", s) + " s"};
}

Outcome c3_duality() {
  Timer t;
  double worst = 0.0;
  int n = 0;
  for (int d : {2, 3, 4}) {
    const double h = 0.5 * d;
    for (Complex delta : {Complex(h, 0.7), Complex(h, -2.3), Complex(0.3, 0.0), Complex(d - 0.6, 0.0),
                          Complex(0.4, 1.1), Complex(1.9, -0.5), Complex(-0.3, 0.8)}) {
      const ConformalWeight w(delta, d);
      for (double l : {0.05, 0.5, 2.0, 6.0}) {
        worst = std::max(worst, rel(bulk_to_bulk(w, l), bulk_to_bulk(w.dual(), l)));
        ++n;
      }
    }
  }
  const double s = t.seconds();
  return {worst < 1e-10 && s < 60.0,
          std::to_string(n) + " points, max rel diff " + fmt("%.1e", worst) + ", " + fmt("%.2f", s) + " s"};
}

Outcome c4_three_point() {
  Timer t;
  struct Cfg {
    double a, b, c;
    double p[6];
  };
  const Cfg cs[5] = {{1.3, 1.6, 1.9, {0, 0, 1, 0, 0.3, 0.8}},
                     {1.2, 1.2, 1.2, {0, 0, 1, 0, 0.5, 0.9}},
                     {0.9, 1.1, 1.5, {0, 0, 2, 0, -0.5, 1}},
                     {2.0, 1.5, 1.8, {0, 0, 0.7, 0.1, 0.2, -1.3}},
                     {1.0, 1.0, 1.0, {0, 0, 1, 1, -1, 0.5}}};
  double worst = 0.0;
  oracle::McConfig mc;
  mc.samples = 10'000'000;
  for (const auto& c : cs) {
    const TripleWeights w(ConformalWeight(c.a, 2), ConformalWeight(c.b, 2), ConformalWeight(c.c, 2));
    const BoundaryPoint x1({c.p[0], c.p[1]}), x2({c.p[2], c.p[3]}), x3({c.p[4], c.p[5]});
    worst = std::max(worst, rel(oracle::three_point_oracle(w, x1, x2, x3, mc).value, three_point(w, x1, x2, x3)));
  }
  const double s = t.seconds();
  return {worst < 1e-3 && s < 300.0,
          "5 configs at 1e7 samples, max rel err " + fmt("%.1e", worst) + ", " + fmt("%.1f", s) + " s"};
}

Outcome c5_theta() {
  Timer t;
  const std::array<double, 3> cs[3] = {{1.0, 0.7, 1.3}, {0.2, -0.5, 0.9}, {1.5, 1.5, 0.4}};
  double worst = 0.0;
  for (const auto& c : cs) {
    const TripleWeights w(w2(c[0]), w2(c[1]), w2(c[2]));
    worst = std::max(worst, rel(oracle::theta_oracle(w).value, theta(w)));
  }
  const double s = t.seconds();
  return {worst < 1e-3 && s < 300.0, "max rel err " + fmt("%.1e", worst) + ", " + fmt("%.1f", s) + " s"};
}

Outcome c6_iuv() {
  Timer t;
  double worst = 0.0;
  for (const auto& c : iuv_cases()) {
    const Complex e = iuv_engine(c).value;
    const Complex o = oracle::i_uv_oracle(w2(c.rho[0]), w2(c.rho[1]), w2(c.rho[2]), w2(c.rho[3]), w2(c.rho[4]),
                                          c.u, c.v, 1e-10)
                          .value;
    worst = std::max(worst, rel(e, o));
  }
  const double s = t.seconds();
  return {worst < 1e-4 && s < 600.0, "8 points, max rel err " + fmt("%.1e", worst) + ", " + fmt("%.1f", s) + " s"};
}

Outcome c7_sphere() {
  Timer t;
  const Complex ab[5][2] = {{{0.3, 0.2}, {-0.5, -0.1}},
                            {{0.2, 0.0}, {-0.6, 0.0}},
                            {{0.5, -0.3}, {-0.9, 0.4}},
                            {{0.1, 0.5}, {-0.3, 0.0}},
                            {{0.7, 0.0}, {-0.8, 0.2}}};
  const std::array<BoundaryPoint, 3> sets[2] = {
      {BoundaryPoint({0.0, 0.0}), BoundaryPoint({1.0, 0.3}), BoundaryPoint({-0.4, 1.2})},
      {BoundaryPoint({2.0, -1.0}), BoundaryPoint({-1.0, -0.5}), BoundaryPoint({0.3, 0.9})}};
  double worst = 0.0, spread = 0.0;
  for (const auto& p : ab) {
    const Complex exact = sphere_integral(p[0], p[1], 2);
    Complex first{};
    for (int k = 0; k < 2; ++k) {
      const auto& s = sets[k];
      const Complex v = oracle::sphere_integral_oracle(p[0], p[1], 2, s[0], s[1], s[2], 1e-9).full.value;
      worst = std::max(worst, rel(v, exact));
      if (k == 0) first = v;
      else spread = std::max(spread, rel(v, first));
    }
  }
  const double s = t.seconds();
  return {worst < 1e-6 && spread < 1e-6 && s < 60.0,
          "max rel err " + fmt("%.1e", worst) + ", fixed-point spread " + fmt("%.1e", spread) + ", " +
              fmt("%.1f", s) + " s"};
}

Outcome c8_prefactor() {
  Timer t;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto a = w2(u(rng)), b = w2(u(rng)), c = w2(u(rng)), e = w2(u(rng)), f = w2(u(rng));
    worst = std::max(worst, rel(k_prefactor_via_c(a, b, c, e, f), k_prefactor(a, b, c, e, f)));
  }
  const double s = t.seconds();
  return {worst < 1e-12 && s < 1.0, "100 tuples, max rel diff " + fmt("%.1e", worst) + ", " + fmt("%.3f", s) + " s"};
}

Outcome c9_racah() {
  Timer t;
  const SixLabels L = SixLabels::type_one(kSix, 2);
  const ContourConfig base_cfg;
  const QuadResult base = racah(L, base_cfg);
  std::ostringstream os;
  bool pass = true;

  const double im = std::abs(base.value.imag()) / std::abs(base.value);
  const bool a = im < 1e-3;
  os << "value " << fmt("%.6f", base.value.real()) << fmt("%+.2ei", base.value.imag()) << "; (a) |Im|/|v| "
     << fmt("%.1e", im) << (a ? "" : " FAIL");
  pass = pass && a;

  double worst_r = 0.0;
  bool b = true;
  for (double r : {-2.0 / 10.0, -2.0 / 12.0}) {
    ContourConfig cfg;
    cfg.r = r;
    const QuadResult q = racah(L, cfg);
    const double diff = std::abs(q.value - base.value);
    b = b && diff <= bar(q) + bar(base);
    worst_r = std::max(worst_r, diff / (bar(q) + bar(base)));
  }
  os << "; (b) r shift " << fmt("%.2f", worst_r) << " bars" << (b ? "" : " FAIL");
  pass = pass && b;

  double worst_d = 0.0;
  bool c = true;
  for (int i = 1; i <= 6; ++i) {
    const QuadResult q = racah(L.with_dual(i), base_cfg);
    const double diff = std::abs(q.value - base.value);
    c = c && diff <= bar(q) + bar(base);
    worst_d = std::max(worst_d, diff / (bar(q) + bar(base)));
  }
  os << "; (c) duality " << fmt("%.2f", worst_d) << " bars" << (c ? "" : " FAIL");
  pass = pass && c;

  ContourConfig dbl;
  dbl.T = base.T;
  dbl.n = 2 * base.n;
  dbl.adaptive = false;
  const QuadResult q2 = racah(L, dbl);
  const double step = std::abs(q2.value - base.value);
  const bool d = step <= base.err_estimate;
  os << "; (d) doubling step " << fmt("%.1e", step) << " vs err " << fmt("%.1e", base.err_estimate)
     << (d ? "" : " FAIL");
  pass = pass && d;

  ContourConfig lat;
  lat.T = base.T;
  lat.n = 40;
  lat.adaptive = false;
  lat.prune = false;
  const QuadResult on = racah_integral(L, lat);
  lat.use_lattice = false;
  const QuadResult off = racah_integral(L, lat);
  const double ld = std::abs(on.value - off.value) / std::abs(on.value);
  const bool e = ld <= 1e-13;
  os << "; lattice on/off " << fmt("%.1e", ld) << (e ? "" : " FAIL");
  pass = pass && e;

  const double s = t.seconds();
  os << "; " << fmt("%.1f", s) << " s";
  return {pass && s < 1800.0, os.str()};
}

Outcome c10_identities() {
  Timer t;
  bool pass = true;
  std::ostringstream os;
  for (const auto& c : oracle::integral_identity_checks()) {
    pass = pass && c.passed();
    os << c.name << " " << fmt("%.1e", c.max_rel_err) << "; ";
  }
  const double s = t.seconds();
  os << fmt("%.2f", s) << " s";
  return {pass && s < 10.0, os.str()};
}

Outcome c11_gauge() {
  Timer t;
  bool pass = true;
  std::ostringstream os;
  for (const auto& c : gauge::gauge_fixing_checks(11, 1000, 100)) {
    pass = pass && c.passed();
    os << c.name << " " << fmt("%.1e", c.max_err) << " (" << c.trials << "); ";
  }
  const double s = t.seconds();
  os << fmt("%.2f", s) << " s";
  return {pass && s < 60.0, os.str()};
}

Outcome c12_determinism() {
  Timer t;
  const SixLabels L = SixLabels::type_one(kSix, 2);
  auto run = [&](int workers) {
    par::set_worker_count(workers);
    std::vector<Complex> out;
    for (const auto& c : iuv_cases()) out.push_back(iuv_engine(c).value);
    out.push_back(racah(L, ContourConfig{}).value);
    return out;
  };
  const int many = std::max(4, static_cast<int>(std::thread::hardware_concurrency()));
  const auto one = run(1), three = run(3), lots = run(many);
  par::set_worker_count(0);
  const bool pass = one == three && one == lots;
  return {pass, "workers 1, 3, " + std::to_string(many) + ": " + (pass ? "bit-identical" : "values differ") +
                    ", " + fmt("%.1f", t.seconds()) + " s"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Mellin-Barnes exponential anchor", c1_mb_exp},
      {"propagator: hypergeometric vs closed form vs boundary integral", c2_propagator_triple},
      {"propagator duality", c3_duality},
      {"three-point closed form vs Monte Carlo", c4_three_point},
      {"theta normalization vs frozen-point quadrature", c5_theta},
      {"I(u,v): Mellin-Barnes vs Feynman parameters", c6_iuv},
      {"sphere integral vs direct quadrature", c7_sphere},
      {"four-point prefactor, two routes", c8_prefactor},
      {"(6 Delta) symbol properties", c9_racah},
      {"elementary integral identities", c10_identities},
      {"gauge fixing and invariant measure", c11_gauge},
      {"determinism across worker counts", c12_determinism},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!wanted.empty() && !wanted.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

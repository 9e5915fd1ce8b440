#include "sixdelta/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sixdelta/errors.hpp"
#include "sixdelta/parallel.hpp"
#include "sixdelta/propagators.hpp"
#include "sixdelta/quadrature.hpp"
#include "sixdelta/specfun.hpp"

namespace sixdelta::oracle {

namespace {

constexpr long long kBlock = 1 << 14;
constexpr int kPartitionPower = 12;

double norm2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

// ---------------------------------------------------------------------------
// Monte Carlo

struct Moments {
  Complex sum{};
  double sum_sq = 0.0;
  double max_sq = 0.0;
  long long count = 0;

  Moments operator+(const Moments& o) const {
    return {sum + o.sum, sum_sq + o.sum_sq, std::max(max_sq, o.max_sq), count + o.count};
  }
};

struct PreparedComponent {
  Component c;
  double p_inner = 0.0;   // probability of R < R0
  double radial_norm = 0.0;
  double dir_norm = 0.0;  // integral of cos^k over the upper hemisphere of S^d
};

PreparedComponent prepare(const Component& c, int d) {
  if (!(c.a > 0.0) || !(c.b > 0.0) || !(c.R0 > 0.0) || !(c.k > -1.0))
    throw ParameterError("integrate_hd: invalid proposal component");
  if (static_cast<int>(c.center.size()) != d) throw ParameterError("integrate_hd: center dimension");
  PreparedComponent p;
  p.c = c;
  p.p_inner = c.b / (c.a + c.b);
  p.radial_norm = c.R0 / c.a + c.R0 / c.b;
  const double beta = std::exp(std::lgamma(0.5 * (c.k + 1.0)) + std::lgamma(0.5 * d) -
                               std::lgamma(0.5 * (c.k + 1.0 + d)));
  p.dir_norm = quad::sphere_area(d - 1) * 0.5 * beta;
  return p;
}

// Lebesgue density of one component at (xi0, xi).
double component_density(const PreparedComponent& p, const BulkPoint& x) {
  const double R2 = x.xi0 * x.xi0 + norm2(x.xi, p.c.center);
  const double R = std::sqrt(R2);
  const double ratio = R / p.c.R0;
  const double radial = (ratio < 1.0 ? std::pow(ratio, p.c.a - 1.0) : std::pow(ratio, -p.c.b - 1.0)) /
                        p.radial_norm;
  const double cos_t = x.xi0 / R;
  const int d = x.dim();
  return radial * std::pow(cos_t, p.c.k) / (p.dir_norm * std::pow(R, d));
}

BulkPoint component_sample(const PreparedComponent& p, int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng);
  double R;
  if (u < p.p_inner) {
    R = p.c.R0 * std::pow(std::max(u / p.p_inner, 1e-300), 1.0 / p.c.a);
  } else {
    R = p.c.R0 * std::pow(std::max((1.0 - u) / (1.0 - p.p_inner), 1e-300), -1.0 / p.c.b);
  }
  std::gamma_distribution<double> gx(0.5 * (p.c.k + 1.0), 1.0);
  std::gamma_distribution<double> gy(0.5 * d, 1.0);
  const double X = gx(rng), Y = gy(rng);
  const double w = X / (X + Y);
  const double rt = R * std::sqrt(1.0 - w);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> dir(static_cast<std::size_t>(d));
  double nn = 0.0;
  while (nn == 0.0) {
    for (auto& c : dir) {
      c = normal(rng);
      nn += c * c;
    }
  }
  nn = std::sqrt(nn);
  std::vector<double> xi(p.c.center);
  for (std::size_t i = 0; i < xi.size(); ++i) xi[i] += rt * dir[i] / nn;
  return BulkPoint(std::max(R * std::sqrt(w), 1e-300), std::move(xi));
}

// ---------------------------------------------------------------------------
// Deterministic plane quadrature

Complex plane_level(const PlaneIntegrand& g, const std::vector<double>& scale, int level, long long& evals) {
  const int d = g.d;
  const double hy = 0.25 / std::pow(2.0, level);
  const double y_lo = -30.0, y_hi = 30.0;
  const int ny = static_cast<int>(std::lround((y_hi - y_lo) / hy));
  const auto dirs = quad::sphere_rule(d, (d == 2 ? 16 : 8) << level);
  const std::size_t m = g.points.size();

  std::vector<Complex> per_center(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Complex lo_rate = static_cast<double>(d) + g.points[i].exponent;
    const Complex hi_rate = -(static_cast<double>(d) + g.far_exponent);
    std::vector<Complex> per_dir(dirs.size());
    par::parallel_for(dirs.size(), [&](std::size_t a) {
      std::vector<double> x(static_cast<std::size_t>(d));
      std::vector<double> r2(m);
      auto radial = [&](int k) {
        const double rho = scale[i] * std::exp(y_lo + k * hy);
        for (int c = 0; c < d; ++c)
          x[static_cast<std::size_t>(c)] = g.points[i].p[static_cast<std::size_t>(c)] + rho * dirs[a].dir[static_cast<std::size_t>(c)];
        // The distance to the own center is rho exactly; recomputing it from x
        // would lose digits close to the center.
        double wsum = 0.0;
        Complex log_sing = g.points[i].exponent * std::log(rho);
        for (std::size_t j = 0; j < m; ++j) {
          r2[j] = j == i ? rho * rho : norm2(x, g.points[j].p);
          if (r2[j] == 0.0) return Complex{};
          wsum += std::pow(rho * rho / r2[j], 0.5 * kPartitionPower);
          if (j != i) log_sing += 0.5 * g.points[j].exponent * std::log(r2[j]);
        }
        const Complex smooth = g.f ? g.f(x) : Complex(1.0, 0.0);
        return std::pow(rho, d) / wsum * std::exp(log_sing) * smooth;
      };
      // Infinite trapezoid sum; beyond the ends the summand is a pure
      // exponential in y, so the outer parts are geometric series.
      Complex sum{};
      for (int k = 1; k < ny; ++k) sum += radial(k);
      sum += radial(0) / (1.0 - std::exp(-lo_rate * hy));
      sum += radial(ny) / (1.0 - std::exp(-hi_rate * hy));
      per_dir[a] = dirs[a].w * sum * hy;
    });
    evals += static_cast<long long>(dirs.size()) * (ny + 1);
    per_center[i] = par::tree_sum(std::move(per_dir));
  }
  return par::tree_sum(std::move(per_center));
}

// Double-exponential trapezoid over R^2: x = 2 sinh(tau).
Estimate de_plane(const std::function<Complex(double, double)>& f, double rel_tol) {
  const double tau_max = 5.5;
  Estimate out;
  Complex prev{};
  for (int level = 0; level < 8; ++level) {
    const double h = 0.25 / std::pow(2.0, level);
    const int m = static_cast<int>(std::lround(tau_max / h));
    std::vector<double> xs, ws;
    for (int k = -m; k <= m; ++k) {
      const double t = k * h;
      xs.push_back(2.0 * std::sinh(t));
      ws.push_back(2.0 * std::cosh(t) * h);
    }
    std::vector<Complex> rows(xs.size());
    par::parallel_for(xs.size(), [&](std::size_t i) {
      Complex acc{};
      for (std::size_t j = 0; j < xs.size(); ++j) acc += ws[j] * f(xs[i], xs[j]);
      rows[i] = ws[i] * acc;
    });
    out.evaluations += static_cast<long long>(xs.size() * xs.size());
    const Complex cur = par::tree_sum(std::move(rows));
    if (level > 0) {
      out.error = std::abs(cur - prev);
      out.value = cur;
      if (level >= 2 && out.error <= rel_tol * std::abs(cur)) return out;
    }
    out.value = cur;
    prev = cur;
  }
  throw NonConvergedError("de_plane: refinement did not settle");
}

// log(e^a + e^b + e^c) without overflow.
double log_sum_exp3(double a, double b, double c) {
  const double m = std::max({a, b, c});
  return m + std::log(std::exp(a - m) + std::exp(b - m) + std::exp(c - m));
}

}  // namespace

Estimate integrate_hd(const std::function<Complex(const BulkPoint&)>& f, int d,
                      const std::vector<Component>& components, const McConfig& cfg) {
  if (components.empty()) throw ParameterError("integrate_hd: no proposal components");
  if (cfg.samples < 2) throw ParameterError("integrate_hd: need at least two samples");
  std::vector<PreparedComponent> comps;
  for (const auto& c : components) comps.push_back(prepare(c, d));
  const double wc = 1.0 / static_cast<double>(comps.size());
  const long long blocks = (cfg.samples + kBlock - 1) / kBlock;

  std::vector<Moments> per_block(static_cast<std::size_t>(blocks));
  par::parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::size_t> pick(0, comps.size() - 1);
    const long long begin = static_cast<long long>(b) * kBlock;
    const long long end = std::min(cfg.samples, begin + kBlock);
    Moments m;
    for (long long i = begin; i < end; ++i) {
      const BulkPoint x = component_sample(comps[pick(rng)], d, rng);
      double q = 0.0;
      for (const auto& c : comps) q += wc * component_density(c, x);
      Complex g{};
      if (q > 0.0) {
        const Complex fx = f(x);
        if (fx != Complex{}) g = fx * std::exp(-(d + 1.0) * std::log(x.xi0)) / q;
      }
      if (!is_finite(g)) throw NonConvergedError("integrate_hd: non-finite sample");
      const double g2 = std::norm(g);
      m.sum += g;
      m.sum_sq += g2;
      m.max_sq = std::max(m.max_sq, g2);
      ++m.count;
    }
    per_block[b] = m;
  });
  const Moments tot = par::tree_sum(std::move(per_block));
  const double n = static_cast<double>(tot.count);
  Estimate out;
  out.value = tot.sum / n;
  const double var = std::max(0.0, tot.sum_sq / n - std::norm(out.value));
  out.error = std::sqrt(var / n);
  out.evaluations = tot.count;
  if (tot.sum_sq > 0.0 && tot.max_sq > 0.5 * tot.sum_sq)
    throw NonConvergedError("integrate_hd: a single sample dominates the variance");
  return out;
}

Estimate integrate_hd(const std::function<Complex(const BulkPoint&)>& f, int d, const McConfig& cfg) {
  Component c;
  c.center.assign(static_cast<std::size_t>(d), 0.0);
  c.a = d + 1.0;
  c.b = 2.0;
  c.R0 = 1.0;
  c.k = 0.0;
  return integrate_hd(f, d, {c}, cfg);
}

Estimate three_point_oracle(const TripleWeights& t, const BoundaryPoint& x1, const BoundaryPoint& x2,
                            const BoundaryPoint& x3, const McConfig& cfg) {
  if (!check_convergence(t).ok())
    throw NonConvergedError("three_point_oracle: weights violate the convergence conditions");
  const int d = t.d();
  const std::vector<const BoundaryPoint*> xs{&x1, &x2, &x3};
  const std::vector<ConformalWeight> ws{t.d1, t.d2, t.d3};
  const double S = t.sum().real();
  // Near the boundary the integrand goes like xi0^{S-d-1}; the proposal is a bit heavier.
  const double k = S - d > 0.5 ? S - d - 1.5 : 0.5 * (S - d) - 1.0;
  std::vector<Component> comps;
  double dmax = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      const double r = boundary_distance(*xs[i], *xs[j]);
      if (r == 0.0) throw CoincidentPointsError("three_point_oracle: coincident points");
      dmin = std::min(dmin, r);
      dmax = std::max(dmax, r);
    }
    if (cfg.stratification == Stratification::radial)
      comps.push_back({xs[i]->x, S - 2.0 * ws[i].delta().real(), S, dmin, k});
  }
  if (comps.empty()) {
    std::vector<double> centroid(static_cast<std::size_t>(d), 0.0);
    for (const auto* x : xs)
      for (int c = 0; c < d; ++c) centroid[static_cast<std::size_t>(c)] += x->x[static_cast<std::size_t>(c)] / 3.0;
    comps.push_back({centroid, S, S, dmax, k});
  }
  auto f = [&](const BulkPoint& p) {
    return bulk_to_boundary(t.d1, p, x1) * bulk_to_boundary(t.d2, p, x2) * bulk_to_boundary(t.d3, p, x3);
  };
  return integrate_hd(f, d, comps, cfg);
}

Estimate integrate_plane(const PlaneIntegrand& g, double rel_tol, int max_level) {
  if (g.d != 2 && g.d != 3) throw ParameterError("integrate_plane: d must be 2 or 3");
  if (g.points.empty()) throw ParameterError("integrate_plane: at least one center is required");
  if (!(g.d + g.far_exponent.real() < 0.0))
    throw NonConvergedError("integrate_plane: integrand does not decay fast enough at infinity");
  std::vector<double> scale;
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    if (!(g.d + g.points[i].exponent.real() > 0.0))
      throw NonConvergedError("integrate_plane: non-integrable point singularity");
    double s = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < g.points.size(); ++j)
      if (j != i) s = std::min(s, std::sqrt(norm2(g.points[i].p, g.points[j].p)));
    scale.push_back(std::isfinite(s) ? s : 1.0);
  }
  Estimate out;
  Complex prev = plane_level(g, scale, 0, out.evaluations);
  for (int level = 1; level <= max_level; ++level) {
    const Complex cur = plane_level(g, scale, level, out.evaluations);
    out.value = cur;
    out.error = std::abs(cur - prev);
    if (level >= 2 && out.error <= rel_tol * std::abs(cur)) return out;
    prev = cur;
  }
  throw NonConvergedError("integrate_plane: refinement did not reach the requested tolerance");
}

Estimate bulk_to_bulk_oracle(const ConformalWeight& w, double l, double rel_tol) {
  const int d = w.d();
  const BulkPoint p1(1.0, std::vector<double>(static_cast<std::size_t>(d), 0.0));
  const BulkPoint p2(std::exp(l), std::vector<double>(static_cast<std::size_t>(d), 0.0));
  const ConformalWeight wd = w.dual();
  PlaneIntegrand g;
  g.d = d;
  g.points.push_back({std::vector<double>(static_cast<std::size_t>(d), 0.0), 0.0});
  g.far_exponent = -2.0 * d;
  g.f = [&](const std::vector<double>& x) {
    const BoundaryPoint b(x);
    return bulk_to_boundary(w, p1, b) * bulk_to_boundary(wd, p2, b);
  };
  return integrate_plane(g, rel_tol);
}

Estimate theta_oracle(const TripleWeights& t, double rel_tol) {
  const int d = t.d();
  const double rate = t.sum().real() - d;
  if (!(rate > 0.0)) throw NonConvergedError("theta_oracle: integrand does not decay");
  const BulkPoint p1(1.0, std::vector<double>(static_cast<std::size_t>(d), 0.0));
  // Directions on S^d, embedded as (y, z_1..z_d) around the frozen point.
  std::vector<quad::SphereNode> dirs;
  if (d == 2) {
    dirs = quad::sphere_rule(3, 6);
  } else {
    const double half = 0.5 * quad::sphere_area(d);
    std::vector<double> up(static_cast<std::size_t>(d + 1), 0.0), down = up;
    up[0] = 1.0;
    down[0] = -1.0;
    dirs = {{up, half}, {down, half}};
  }
  const double L = std::min(80.0, 40.0 / rate);
  auto integrand = [&](double l) {
    Complex acc{};
    for (const auto& dir : dirs) {
      // Hyperboloid point (cosh l, sinh l * dir) mapped to the half space.
      const double X0 = std::cosh(l), Xy = std::sinh(l) * dir.dir[0];
      const double xi0 = 1.0 / (X0 + Xy);
      std::vector<double> xi(static_cast<std::size_t>(d));
      for (int c = 0; c < d; ++c) xi[static_cast<std::size_t>(c)] = std::sinh(l) * dir.dir[static_cast<std::size_t>(c + 1)] * xi0;
      const BulkPoint p2(xi0, std::move(xi));
      const double dist = distance(p1, p2);
      acc += dir.w * bulk_to_bulk(t.d1, dist) * bulk_to_bulk(t.d2, dist) * bulk_to_bulk(t.d3, dist);
    }
    return std::pow(std::sinh(l), d) * acc;
  };
  Estimate out;
  int panels = static_cast<int>(std::ceil(2.0 * L));
  Complex prev = quad::gauss_legendre_panels(integrand, 0.0, L, panels, 16);
  for (int level = 0; level < 5; ++level) {
    panels *= 2;
    const Complex cur = quad::gauss_legendre_panels(integrand, 0.0, L, panels, 16);
    out.evaluations += 16LL * panels * static_cast<long long>(dirs.size());
    out.error = std::abs(cur - prev) / gauge_volume_ratio(d);
    out.value = cur / gauge_volume_ratio(d);
    if (out.error <= rel_tol * std::abs(out.value)) return out;
    prev = cur;
  }
  throw NonConvergedError("theta_oracle: refinement did not settle");
}

SphereOracle sphere_integral_oracle(Complex a, Complex b, int d, const BoundaryPoint& x3,
                                    const BoundaryPoint& x5, const BoundaryPoint& x6, double rel_tol) {
  if (!(a.real() > 0.0) || !(b.real() + 0.5 * d > 0.0) || !((a + b).real() < 0.0))
    throw NonConvergedError("sphere_integral_oracle: need Re a > 0, Re(b + d/2) > 0, Re(a + b) < 0");
  const double dd = d;
  PlaneIntegrand g;
  g.d = d;
  g.points = {{x3.x, 2.0 * a - dd}, {x5.x, 2.0 * b}, {x6.x, -2.0 * a - 2.0 * b - dd}};
  g.far_exponent = -2.0 * dd;
  SphereOracle out;
  out.reduced = integrate_plane(g, rel_tol);
  const double x36 = boundary_distance(x3, x6), x56 = boundary_distance(x5, x6);
  const double x35 = boundary_distance(x3, x5);
  const Complex pref = std::pow(x36, dd) * std::exp(2.0 * a * std::log(x56 / x35) + 2.0 * b * std::log(x36 / x35));
  out.full = out.reduced;
  out.full.value *= pref;
  out.full.error *= std::abs(pref);
  return out;
}

Estimate i_uv_oracle(const ConformalWeight& d1, const ConformalWeight& d2, const ConformalWeight& d3,
                     const ConformalWeight& d5, const ConformalWeight& d6, double u, double v,
                     double rel_tol) {
  if (!(u > 0.0) || !(v > 0.0)) throw DomainError("i_uv_oracle: cross-ratios must be positive");
  const Complex b1 = d1.dual().delta();
  const Complex a12 = 0.5 * (d1.delta() + d2.delta() - d3.delta());
  const Complex a13 = 0.5 * (d1.delta() + d3.delta() - d2.delta());
  const Complex a15 = 0.5 * (b1 + d5.delta() - d6.delta());
  const Complex a16 = 0.5 * (b1 + d6.delta() - d5.delta());
  const Complex A = a12 + a13 + a15;
  const Complex p = 0.5 * (A - a16);
  // Decay rates of the reduced integrand in every direction of the (ln w13, ln w15) plane.
  const double rates[] = {a12.real(), a13.real(), a15.real(), a16.real(), p.real(),
                          (a13 + a15 - p).real(), (p + a16 - a13).real(), (p + a16 - a15).real()};
  for (double rt : rates)
    if (!(rt > 0.0)) throw NonConvergedError("i_uv_oracle: Feynman-parameter integral diverges");
  const double lu = std::log(u), lv = std::log(v);
  auto f = [&](double x, double y) {
    const double lq = log_sum_exp3(x, y, x + y);
    const double ll = log_sum_exp3(0.0, lu + x, lv + y);
    return std::exp(a13 * x + a15 * y - p * lq - a16 * ll);
  };
  Estimate out = de_plane(f, rel_tol);
  const Complex pref = std::exp(specfun::log_gamma_c(a16) + specfun::log_gamma_c(p));
  out.value *= pref;
  out.error *= std::abs(pref);
  return out;
}

Estimate four_point_oracle(const ConformalWeight& d1, const ConformalWeight& d2,
                           const ConformalWeight& d3, const ConformalWeight& d5,
                           const ConformalWeight& d6, const BoundaryPoint& x2,
                           const BoundaryPoint& x3, const BoundaryPoint& x5,
                           const BoundaryPoint& x6, double rel_tol) {
  const int d = d1.d();
  const ConformalWeight b1 = d1.dual();
  const Complex e2 = d1.delta() + d2.delta() - d3.delta();
  const Complex e3 = d1.delta() + d3.delta() - d2.delta();
  const Complex e5 = b1.delta() + d5.delta() - d6.delta();
  const Complex e6 = b1.delta() + d6.delta() - d5.delta();
  PlaneIntegrand g;
  g.d = d;
  g.points = {{x2.x, -e2}, {x3.x, -e3}, {x5.x, -e5}, {x6.x, -e6}};
  g.far_exponent = -2.0 * d;
  Estimate out = integrate_plane(g, rel_tol);
  const Complex pref =
      c_coeff(TripleWeights(d1, d2, d3)) * c_coeff(TripleWeights(b1, d5, d6)) *
      std::exp(-(d2.delta() + d3.delta() - d1.delta()) * std::log(boundary_distance(x2, x3)) -
               (d5.delta() + d6.delta() - b1.delta()) * std::log(boundary_distance(x5, x6)));
  out.value *= pref;
  out.error *= std::abs(pref);
  return out;
}

double ball_volume(int d, double R) {
  const Complex v = quad::gauss_legendre_panels(
      [d](double l) { return Complex(std::pow(std::sinh(l), d), 0.0); }, 0.0, R, 8, 20);
  return quad::sphere_area(d) * v.real();
}

std::vector<IdentityCheck> integral_identity_checks(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto draw = [&](double lo, double hi) { return lo + (hi - lo) * unif(rng); };
  std::vector<IdentityCheck> out;

  // 1/z^lambda = int t^{lambda-1} e^{-tz} dt / Gamma(lambda)
  IdentityCheck feyn{"feynman_parametrization", 0.0, 1e-10, 5};
  for (int i = 0; i < feyn.draws; ++i) {
    const double z = i == 0 ? 2.0 : draw(0.5, 5.0);
    const Complex lam = i == 0 ? Complex(1.7, 0.0) : Complex(draw(0.4, 3.0), draw(-2.0, 2.0));
    const auto q = quad::tanh_sinh_unit(
        [&](double x, double xc) {
          const double t = x / xc;
          return std::exp((lam - 1.0) * std::log(t) - t * z) / (xc * xc);
        },
        1e-14, 14);
    const Complex lhs = std::exp(-lam * std::log(z));
    const Complex rhs = q.value * std::exp(-specfun::log_gamma_c(lam));
    feyn.max_rel_err = std::max(feyn.max_rel_err, rel_diff(rhs, lhs));
  }
  out.push_back(feyn);

  // int dxi0 xi0^{S-d-1} e^{-St xi0^2} = St^{(d-S)/2} Gamma((S-d)/2) / 2
  IdentityCheck radial{"radial_gaussian", 0.0, 1e-10, 5};
  for (int i = 0; i < radial.draws; ++i) {
    const int d = 2 + i % 2;
    const Complex S = i == 0 ? Complex(d + 2.0, 0.0) : Complex(d + draw(0.3, 3.0), draw(-3.0, 3.0));
    const double St = i == 0 ? 1.0 : draw(0.3, 4.0);
    const auto q = quad::tanh_sinh_unit(
        [&](double x, double xc) {
          const double t = x / xc;
          return std::exp((S - static_cast<double>(d) - 1.0) * std::log(t) - St * t * t) / (xc * xc);
        },
        1e-14, 14);
    const Complex rhs = 0.5 * std::exp(0.5 * (static_cast<double>(d) - S) * std::log(St) +
                                       specfun::log_gamma_c(0.5 * (S - static_cast<double>(d))));
    radial.max_rel_err = std::max(radial.max_rel_err, rel_diff(q.value, rhs));
  }
  out.push_back(radial);

  // int d^dx exp(-sum t_i |x - x_i|^2) = (pi/St)^{d/2} exp(-sum_{i<j} t_i t_j x_ij^2 / St)
  IdentityCheck gauss{"gaussian_product", 0.0, 1e-8, 5};
  for (int i = 0; i < gauss.draws; ++i) {
    const int d = i < 3 ? 2 : 3;
    const int m = 2 + i % 2;
    std::vector<std::vector<double>> xs(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(d)));
    std::vector<double> ts(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
      ts[static_cast<std::size_t>(j)] = draw(0.3, 2.0);
      for (auto& c : xs[static_cast<std::size_t>(j)]) c = draw(-1.5, 1.5);
    }
    double St = 0.0;
    std::vector<double> mean(static_cast<std::size_t>(d), 0.0);
    for (int j = 0; j < m; ++j) {
      St += ts[static_cast<std::size_t>(j)];
      for (int c = 0; c < d; ++c) mean[static_cast<std::size_t>(c)] += ts[static_cast<std::size_t>(j)] * xs[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
    }
    for (auto& c : mean) c /= St;
    double cross = 0.0;
    for (int j = 0; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        cross += ts[static_cast<std::size_t>(j)] * ts[static_cast<std::size_t>(k)] * norm2(xs[static_cast<std::size_t>(j)], xs[static_cast<std::size_t>(k)]);
    const double rhs = std::pow(kPi / St, 0.5 * d) * std::exp(-cross / St);
    // Tensor trapezoid rule around the mean; spectrally accurate for a Gaussian.
    const double half = std::sqrt(45.0 / St);
    const double h = kPi / (6.0 * std::sqrt(St));
    const int n = static_cast<int>(std::ceil(half / h));
    std::vector<int> idx(static_cast<std::size_t>(d), -n);
    double sum = 0.0;
    std::vector<double> x(static_cast<std::size_t>(d));
    for (;;) {
      for (int c = 0; c < d; ++c) x[static_cast<std::size_t>(c)] = mean[static_cast<std::size_t>(c)] + idx[static_cast<std::size_t>(c)] * h;
      double e = 0.0;
      for (int j = 0; j < m; ++j) e += ts[static_cast<std::size_t>(j)] * norm2(x, xs[static_cast<std::size_t>(j)]);
      sum += std::exp(-e);
      int c = 0;
      while (c < d && ++idx[static_cast<std::size_t>(c)] > n) idx[static_cast<std::size_t>(c++)] = -n;
      if (c == d) break;
    }
    const double lhs = sum * std::pow(h, d);
    gauss.max_rel_err = std::max(gauss.max_rel_err, std::abs(lhs - rhs) / rhs);
  }
  out.push_back(gauss);
  return out;
}

}  // namespace sixdelta::oracle

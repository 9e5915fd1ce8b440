#include "sixdelta/mb_engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "sixdelta/correlators.hpp"
#include "sixdelta/errors.hpp"
#include "sixdelta/parallel.hpp"
#include "sixdelta/specfun.hpp"

namespace sixdelta {

namespace {

constexpr double kUnderflowLog = -700.0;
constexpr std::size_t kChunk = 64;

Complex safe_exp(Complex lg) { return lg.real() < kUnderflowLog ? Complex{} : std::exp(lg); }

int even_at_least(double x, int floor_n) {
  int n = static_cast<int>(std::ceil(x));
  n = std::max(n, floor_n);
  if (n % 2 != 0) ++n;
  return n;
}

// Node spacing for which the trapezoid aliasing error exp(-2 pi w / h) is below tol / 10.
double step_for(double strip, double tol) { return 2.0 * kPi * strip / std::log(10.0 / tol); }

// Smallest T on a 0.25 grid whose boundary lies below eps times the peak seen inside it.
double plan_T(const std::function<double(double)>& ring_max_log, double eps, double T_max) {
  const double log_eps = std::log(eps);
  double peak = ring_max_log(0.0);
  for (double T = 0.25; T <= T_max; T += 0.25) {
    const double edge = ring_max_log(T);
    peak = std::max(peak, edge);
    if (T >= 1.0 && edge < peak + log_eps) return T;
  }
  return T_max;
}

// max over the boundary of the square [-T, T]^2 of f.
double square_ring_max(const std::function<double(double, double)>& f, double T) {
  if (T == 0.0) return f(0.0, 0.0);
  const int m = std::max(8, static_cast<int>(std::ceil(8.0 * T)));
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= m; ++i) {
    const double a = -T + 2.0 * T * i / m;
    best = std::max({best, f(a, -T), f(a, T), f(-T, a), f(T, a)});
  }
  return best;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

void check_positive(const char* what, double re) {
  if (!(re > 0.0))
    throw ParameterError(std::string("contour separation violated: Re(") + what + ") = " + fmt(re) +
                         " must be > 0");
}

void validate_pair(const PairParams& p, double r) {
  check_positive("-s", -r);
  check_positive("gamma - s", p.gamma.real() - r);
  check_positive("delta - lambda", p.delta.real() - r);
  check_positive("alpha + s + lambda", p.alpha.real() + 2.0 * r);
  check_positive("beta + s + lambda", p.beta.real() + 2.0 * r);
}

double pair_strip(const PairParams& p, double r) {
  return std::min({-r, p.gamma.real() - r, p.delta.real() - r, p.alpha.real() + 2.0 * r,
                   p.beta.real() + 2.0 * r});
}

// Natural log of |integrand| of I(u, v) at real heights (t, tau); used by the planner.
double pair_log_abs(const PairParams& p, double r, double lu, double lv, double t, double tau) {
  const Complex s(r, t), l(r, tau);
  const Complex lg = specfun::log_gamma_c(-s) + specfun::log_gamma_c(-l) +
                     specfun::log_gamma_c(p.gamma - s) + specfun::log_gamma_c(p.delta - l) +
                     specfun::log_gamma_c(p.alpha + s + l) + specfun::log_gamma_c(p.beta + s + l);
  return lg.real() + r * (lu + lv);
}

// Table of log F(s_k, lambda_j) for the pair integrand, (n+1)^2 entries, row k.
std::vector<Complex> pair_log_table(const PairParams& p, double r, double T, int n, double lu,
                                    double lv, bool lattice) {
  const double h = 2.0 * T / n;
  const std::size_t w = static_cast<std::size_t>(n) + 1;
  std::vector<Complex> out(w * w);
  if (lattice) {
    const LatticeLine neg = log_gamma_line(Complex(-r, T), h, -n, 0);
    const LatticeLine gam = log_gamma_line(p.gamma + Complex(-r, T), h, -n, 0);
    const LatticeLine del = log_gamma_line(p.delta + Complex(-r, T), h, -n, 0);
    const LatticeLine alp = log_gamma_line(p.alpha + Complex(2.0 * r, -2.0 * T), h, 0, 2 * n);
    const LatticeLine bet = log_gamma_line(p.beta + Complex(2.0 * r, -2.0 * T), h, 0, 2 * n);
    par::parallel_for(w, [&](std::size_t k) {
      const int ki = static_cast<int>(k);
      const Complex s(r, -T + ki * h);
      const Complex row = neg[-ki] + gam[-ki] + s * lu;
      for (int j = 0; j <= n; ++j) {
        const Complex l(r, -T + j * h);
        out[k * w + static_cast<std::size_t>(j)] =
            row + neg[-j] + del[-j] + alp[ki + j] + bet[ki + j] + l * lv;
      }
    });
  } else {
    par::parallel_for(w, [&](std::size_t k) {
      const Complex s(r, -T + static_cast<int>(k) * h);
      for (int j = 0; j <= n; ++j) {
        const Complex l(r, -T + j * h);
        out[k * w + static_cast<std::size_t>(j)] =
            specfun::log_gamma_c(-s) + specfun::log_gamma_c(p.gamma - s) + s * lu +
            specfun::log_gamma_c(-l) + specfun::log_gamma_c(p.delta - l) +
            specfun::log_gamma_c(p.alpha + s + l) + specfun::log_gamma_c(p.beta + s + l) + l * lv;
      }
    });
  }
  return out;
}

std::vector<Complex> exp_table(const std::vector<Complex>& logs) {
  std::vector<Complex> out(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) out[i] = safe_exp(logs[i]);
  return out;
}

// Sum of |f| over the outer ring of an (n+1)^2 table.
double ring_mass(const std::vector<Complex>& f, int n) {
  const std::size_t w = static_cast<std::size_t>(n) + 1;
  double m = 0.0;
  for (std::size_t k = 0; k < w; ++k)
    for (std::size_t j = 0; j < w; ++j)
      if (k == 0 || j == 0 || k + 1 == w || j + 1 == w) m += std::abs(f[k * w + j]);
  return m;
}

double abs_mass(const std::vector<Complex>& f) {
  double m = 0.0;
  for (const Complex& z : f) m += std::abs(z);
  return m;
}

// Deterministic sum of a table: rows summed sequentially, rows combined by tree reduction.
Complex table_sum(const std::vector<Complex>& f, int n) {
  const std::size_t w = static_cast<std::size_t>(n) + 1;
  std::vector<Complex> rows(w);
  for (std::size_t k = 0; k < w; ++k) {
    Complex acc{};
    for (std::size_t j = 0; j < w; ++j) acc += f[k * w + j];
    rows[k] = acc;
  }
  return par::tree_sum(std::move(rows));
}

// Geometric continuation factor for truncation tails: decay at least e^{-pi |t|} per axis.
double tail_factor(double h) { return 1.0 / (1.0 - std::exp(-kPi * h)); }

struct Level {
  Complex value;
  double tail = 0.0;
  double pruned = 0.0;  // part of tail from dropped table entries
  long long nodes = 0;
};

// Adaptive driver shared by the 1D, 2D and 4D integrals: plan T, pick n from the
// strip width, then double n until successive levels agree.
QuadResult refine(const ContourConfig& cfg, int dim, double r, double strip, double T_plan,
                  const std::function<Level(double T, int n)>& level_fn, const char* what) {
  const auto level = [&](double T, int n) {
    if (dim <= 2 && std::pow(n + 1.0, dim) > cfg.max_grid)
      throw TruncationError(std::string(what) + ": tol " + fmt(cfg.tol) + " needs n=" + std::to_string(n) +
                            " nodes per axis at T=" + fmt(T) + ", beyond the grid budget " + fmt(cfg.max_grid));
    return level_fn(T, n);
  };
  QuadResult res;
  res.r = r;
  double T = cfg.T > 0.0 ? cfg.T : T_plan;
  int n = cfg.n > 0 ? even_at_least(cfg.n, 2) : even_at_least(2.0 * T / step_for(strip, cfg.tol), 8);

  if (!cfg.adaptive) {
    if (n % 4 != 0) n += 2;
    const Level coarse = level(T, n / 2);
    const Level fine = level(T, n);
    res.value = fine.value;
    res.err_estimate = std::abs(fine.value - coarse.value);
    res.tail_bound = fine.tail;
    res.nodes_used = coarse.nodes + fine.nodes;
    res.n = n;
    res.T = T;
    res.converged = res.err_estimate <= cfg.tol * std::abs(res.value);
    return res;
  }

  for (int attempt = 0;; ++attempt) {
    Level prev = level(T, n);
    res.nodes_used += prev.nodes;
    int m = n;
    bool done = false;
    for (int k = 0; k < cfg.max_doublings; ++k) {
      m *= 2;
      const Level next = level(T, m);
      res.nodes_used += next.nodes;
      const double err = std::abs(next.value - prev.value);
      prev = next;
      res.err_estimate = err;
      if (err <= cfg.tol * std::abs(next.value)) {
        done = true;
        break;
      }
    }
    res.value = prev.value;
    res.tail_bound = prev.tail;
    res.n = m;
    res.T = T;
    if (!done)
      throw TruncationError(std::string(what) + ": node doubling did not reach tol " + fmt(cfg.tol) +
                            " (n=" + std::to_string(m) + ", T=" + fmt(T) +
                            ", last change=" + fmt(res.err_estimate) + ")");
    if (res.tail_bound <= cfg.tol * std::abs(res.value)) break;
    if (cfg.T > 0.0 || T >= cfg.T_max || attempt >= 3)
      throw TruncationError(std::string(what) + ": tail bound " + fmt(res.tail_bound) +
                            " exceeds tol at T=" + fmt(T));
    const double grown = std::min(cfg.T_max, 1.5 * T);
    n = even_at_least(n * grown / T, 8);
    T = grown;
    res.nodes_used = 0;
  }
  res.converged = true;
  return res;
}

Complex pow_pos(double x, Complex p) { return std::exp(p * std::log(x)); }

}  // namespace

double ContourConfig::r_for(int d) const { return std::isnan(r) ? -d / 16.0 : r; }

SixLabels::SixLabels(const std::array<ConformalWeight, 6>& weights) : w(weights) {
  for (const auto& x : w)
    if (x.d() != w[0].d()) throw ParameterError("SixLabels: weights of different dimension d");
}

SixLabels SixLabels::type_one(const std::array<double, 6>& rho, int d) {
  std::array<ConformalWeight, 6> w;
  for (std::size_t i = 0; i < 6; ++i) w[i] = ConformalWeight::type_one(rho[i], d);
  return SixLabels(w);
}

bool SixLabels::all_type_one() const {
  return std::all_of(w.begin(), w.end(), [](const ConformalWeight& x) { return x.is_type_one(); });
}

SixLabels SixLabels::with_dual(int i) const {
  SixLabels out = *this;
  out.w[static_cast<std::size_t>(i - 1)] = w[static_cast<std::size_t>(i - 1)].dual();
  return out;
}

SixLabels SixLabels::conjugate() const {
  SixLabels out = *this;
  for (auto& x : out.w) x = ConformalWeight(std::conj(x.delta()), x.d());
  return out;
}

PairParams pair_params(const ConformalWeight& d1, const ConformalWeight& d2,
                       const ConformalWeight& d3, const ConformalWeight& d5,
                       const ConformalWeight& d6) {
  for (const auto* x : {&d2, &d3, &d5, &d6})
    if (x->d() != d1.d()) throw ParameterError("pair_params: weights of different dimension d");
  const Complex b1 = d1.dual().delta();
  PairParams p;
  p.alpha = 0.5 * (b1 + d3.delta() - d2.delta());
  p.beta = 0.5 * (b1 + d6.delta() - d5.delta());
  p.gamma = 0.5 * (d2.delta() - d3.delta() + d5.delta() - d6.delta());
  p.delta = 0.5 * (d1.delta() - b1);
  p.d = d1.d();
  return p;
}

MBParams mb_params(const SixLabels& L) {
  MBParams m;
  m.first = pair_params(L(1), L(2), L(3), L(5), L(6));
  m.second = pair_params(L(4), L(2).dual(), L(6).dual(), L(5).dual(), L(3).dual());
  m.A = 0.5 * (L(1).delta() - L(4).delta() + L(2).delta() + L(5).delta() - static_cast<double>(L.d()));
  return m;
}

QuadResult mb_exp(double z, const ContourConfig& cfg) {
  if (!(z > 0.0)) throw DomainError("mb_exp: z must be positive");
  const double r = std::isnan(cfg.r) ? -0.25 : cfg.r;
  if (!(r < 0.0)) throw ParameterError("mb_exp: contour abscissa must be negative");
  const double lz = std::log(z);
  auto log_abs = [&](double t) {
    const Complex s(r, t);
    return (specfun::log_gamma_c(-s) + s * lz).real();
  };
  const double T_plan = plan_T(
      [&](double T) { return std::max(log_abs(-T), log_abs(T)); }, cfg.tol * 1e-2, cfg.T_max);
  auto level = [&](double T, int n) {
    const double h = 2.0 * T / n;
    std::vector<Complex> terms(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
      const Complex s(r, -T + k * h);
      terms[static_cast<std::size_t>(k)] = safe_exp(specfun::log_gamma_c(-s) + s * lz);
    }
    Level out;
    out.nodes = n + 1;
    const double edge = std::abs(terms.front()) + std::abs(terms.back());
    out.value = par::tree_sum(std::move(terms)) * (h / (2.0 * kPi));
    out.tail = edge * h / (2.0 * kPi) * tail_factor(h);
    return out;
  };
  return refine(cfg, 1, r, -r, T_plan, level, "mb_exp");
}

Complex sphere_integral(Complex a, Complex b, int d) {
  const double half_d = 0.5 * d;
  for (Complex x : {a, -a - b, half_d + b})
    if (specfun::is_gamma_pole(x)) throw PoleError("sphere_integral: Gamma pole in the numerator");
  for (Complex x : {half_d - a, a + b + half_d, -b})
    if (specfun::is_gamma_pole(x)) return 0.0;
  return std::pow(kPi, half_d) * specfun::upsilon_d(a, d) * specfun::upsilon_d(-a - b, d) /
         specfun::upsilon_d(-b, d);
}

std::pair<double, double> cross_ratios(const BoundaryPoint& x2, const BoundaryPoint& x3,
                                       const BoundaryPoint& x5, const BoundaryPoint& x6) {
  auto sq = [](const BoundaryPoint& a, const BoundaryPoint& b) {
    const double r = boundary_distance(a, b);
    return r * r;
  };
  const double s23 = sq(x2, x3), s25 = sq(x2, x5), s26 = sq(x2, x6);
  const double s35 = sq(x3, x5), s36 = sq(x3, x6), s56 = sq(x5, x6);
  if (s23 == 0.0 || s25 == 0.0 || s26 == 0.0 || s35 == 0.0 || s36 == 0.0 || s56 == 0.0)
    throw CoincidentPointsError("cross_ratios: boundary points must be pairwise distinct");
  const double den = s26 * s35;
  return {s25 * s36 / den, s23 * s56 / den};
}

Complex i_uv_integrand(const PairParams& p, double u, double v, Complex s, Complex lambda) {
  return specfun::gamma_c(-lambda) * specfun::gamma_c(-s) * pow_pos(u, s) * pow_pos(v, lambda) *
         specfun::gamma_c(p.alpha + s + lambda) * specfun::gamma_c(p.beta + s + lambda) *
         specfun::gamma_c(p.gamma - s) * specfun::gamma_c(p.delta - lambda);
}

QuadResult i_uv(const ConformalWeight& d1, const ConformalWeight& d2, const ConformalWeight& d3,
                const ConformalWeight& d5, const ConformalWeight& d6, double u, double v,
                const ContourConfig& cfg) {
  if (!(u > 0.0) || !(v > 0.0)) throw DomainError("i_uv: cross-ratios must be positive");
  const PairParams p = pair_params(d1, d2, d3, d5, d6);
  const double r = cfg.r_for(p.d);
  validate_pair(p, r);
  const double lu = std::log(u), lv = std::log(v);
  const double T_plan = plan_T(
      [&](double T) {
        return square_ring_max([&](double a, double b) { return pair_log_abs(p, r, lu, lv, a, b); }, T);
      },
      cfg.tol * 1e-3, cfg.T_max);
  auto level = [&](double T, int n) {
    const double h = 2.0 * T / n;
    const double meas = h * h / (4.0 * kPi * kPi);
    const std::vector<Complex> f = exp_table(pair_log_table(p, r, T, n, lu, lv, cfg.use_lattice));
    Level out;
    out.nodes = static_cast<long long>(f.size());
    out.value = table_sum(f, n) * meas;
    out.tail = ring_mass(f, n) * meas * tail_factor(h);
    return out;
  };
  return refine(cfg, 2, r, pair_strip(p, r), T_plan, level, "i_uv");
}

QuadResult four_point(const ConformalWeight& d1, const ConformalWeight& d2,
                      const ConformalWeight& d3, const ConformalWeight& d5,
                      const ConformalWeight& d6, const BoundaryPoint& x2, const BoundaryPoint& x3,
                      const BoundaryPoint& x5, const BoundaryPoint& x6, const ContourConfig& cfg) {
  const auto [u, v] = cross_ratios(x2, x3, x5, x6);
  QuadResult res = i_uv(d1, d2, d3, d5, d6, u, v, cfg);
  const Complex b1 = d1.dual().delta();
  const Complex a2 = d2.delta(), a3 = d3.delta(), a5 = d5.delta(), a6 = d6.delta();
  const Complex lg = -(a2 - a3 + a5 - a6) * std::log(boundary_distance(x2, x5)) -
                     (a2 + a3 - b1) * std::log(boundary_distance(x2, x3)) -
                     (b1 + a6 - a5) * std::log(boundary_distance(x2, x6)) -
                     (b1 + a3 - a2) * std::log(boundary_distance(x3, x5)) -
                     (a5 + a6 - b1) * std::log(boundary_distance(x5, x6));
  const Complex pref = k_prefactor(d1, d2, d3, d5, d6) * std::exp(lg);
  res.value *= pref;
  res.err_estimate *= std::abs(pref);
  res.tail_bound *= std::abs(pref);
  return res;
}

Complex racah_prefactor(const SixLabels& L, PrimeOrder order) {
  const Complex k1 = k_prefactor(L(1), L(2), L(3), L(5), L(6));
  const Complex k2 = order == PrimeOrder::Matched
                         ? k_prefactor(L(4), L(2).dual(), L(6).dual(), L(5).dual(), L(3).dual())
                         : k_prefactor(L(4), L(2).dual(), L(3).dual(), L(5).dual(), L(6).dual());
  return k1 * k2 * std::pow(kPi, 0.5 * L.d());
}

namespace {

// 2D factor table after pruning: per row k, the kept column range [lo, hi].
struct PrunedTable {
  std::vector<Complex> f;
  std::vector<int> lo, hi;
  int n = 0;
  double kept_abs = 0.0;
  double dropped_abs = 0.0;
  double ring_abs = 0.0;
  long long kept = 0;
};

PrunedTable prune_table(std::vector<Complex> f, int n, double eps, bool prune) {
  PrunedTable t;
  t.n = n;
  const std::size_t w = static_cast<std::size_t>(n) + 1;
  const double total = abs_mass(f);
  t.ring_abs = ring_mass(f, n);
  double threshold = 0.0;
  if (prune && total > 0.0) {
    std::vector<double> mags(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) mags[i] = std::abs(f[i]);
    std::sort(mags.begin(), mags.end());
    double acc = 0.0;
    for (double m : mags) {
      if (acc + m > eps * total) break;
      acc += m;
      threshold = m;
    }
  }
  t.lo.assign(w, 0);
  t.hi.assign(w, -1);
  for (std::size_t k = 0; k < w; ++k) {
    int lo = -1, hi = -2;
    for (std::size_t j = 0; j < w; ++j) {
      if (std::abs(f[k * w + j]) > threshold || (!prune)) {
        if (lo < 0) lo = static_cast<int>(j);
        hi = static_cast<int>(j);
      }
    }
    if (lo >= 0) {
      t.lo[k] = lo;
      t.hi[k] = hi;
    }
    for (std::size_t j = 0; j < w; ++j) {
      const double m = std::abs(f[k * w + j]);
      const int ji = static_cast<int>(j);
      if (ji >= t.lo[k] && ji <= t.hi[k]) {
        t.kept_abs += m;
        ++t.kept;
      } else {
        t.dropped_abs += m;
      }
    }
  }
  t.f = std::move(f);
  return t;
}

struct LatticeCoupling {
  LatticeLine u1, u2, v;
  Complex operator()(int m1, int m2, int m3) const { return u1[m1] * u2[m2] * v[m3]; }
};

// Direct evaluation of the coupling Upsilon(lambda - s' - lambda' - A) Upsilon(lambda' - s - lambda + A)
// / Upsilon(-s - s') from the node heights.
struct DirectCoupling {
  double r, T, h;
  Complex A;
  int d;
  Complex node(int k) const { return {r, -T + k * h}; }
};

template <class Inner>
Complex racah_sum(const PrunedTable& F1, const PrunedTable& F2, int n, const Inner& inner) {
  const std::size_t w = static_cast<std::size_t>(n) + 1;
  std::vector<std::pair<int, int>> outer;
  for (std::size_t k = 0; k < w; ++k)
    for (int j = F1.lo[k]; j <= F1.hi[k]; ++j) outer.emplace_back(static_cast<int>(k), j);
  const std::size_t chunks = (outer.size() + kChunk - 1) / kChunk;
  std::vector<Complex> partial(chunks);
  par::parallel_for(chunks, [&](std::size_t c) {
    Complex acc{};
    const std::size_t end = std::min(outer.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const auto [k, j] = outer[i];
      acc += F1.f[static_cast<std::size_t>(k) * w + static_cast<std::size_t>(j)] * inner(k, j, F2);
    }
    partial[c] = acc;
  });
  return par::tree_sum(std::move(partial));
}

}  // namespace

QuadResult racah_integral(const SixLabels& L, const ContourConfig& cfg) {
  if (!L.all_type_one()) throw ParameterError("racah: all six labels must be type I");
  const int d = L.d();
  const MBParams mp = mb_params(L);
  const double r = cfg.r_for(d);
  if (!(r > -d / 8.0 && r < 0.0))
    throw ParameterError("racah: contour abscissa must satisfy -d/8 < r < 0, got r=" + fmt(r));
  validate_pair(mp.first, r);
  validate_pair(mp.second, r);
  check_positive("lambda - s' - lambda' - A", -r - mp.A.real());
  check_positive("lambda' - s - lambda + A", -r + mp.A.real());
  check_positive("d/2 + s + s'", 0.5 * d + 2.0 * r);
  const double strip = std::min({pair_strip(mp.first, r), pair_strip(mp.second, r), -r - mp.A.real(),
                                 -r + mp.A.real(), 0.5 * d + 2.0 * r});

  const double eps_plan = cfg.tol * 1e-4;
  auto plan_pair = [&](const PairParams& p) {
    return plan_T(
        [&](double T) {
          return square_ring_max([&](double a, double b) { return pair_log_abs(p, r, 0.0, 0.0, a, b); }, T);
        },
        eps_plan, cfg.T_max);
  };
  const double T_plan = std::max(plan_pair(mp.first), plan_pair(mp.second));

  auto level_at = [&](double T, int n, double eps_prune, bool prune) {
    const double h = 2.0 * T / n;
    const PrunedTable F1 =
        prune_table(exp_table(pair_log_table(mp.first, r, T, n, 0.0, 0.0, cfg.use_lattice)), n,
                    eps_prune, prune);
    const PrunedTable F2 =
        prune_table(exp_table(pair_log_table(mp.second, r, T, n, 0.0, 0.0, cfg.use_lattice)), n,
                    eps_prune, prune);
    if (static_cast<double>(F1.kept) * static_cast<double>(F2.kept) > cfg.max_grid)
      throw TruncationError("racah: tol " + fmt(cfg.tol) + " needs " + fmt(static_cast<double>(F1.kept) * F2.kept) +
                            " nodes at n=" + std::to_string(n) + ", T=" + fmt(T) + ", beyond the grid budget " +
                            fmt(cfg.max_grid));
    const std::size_t w = static_cast<std::size_t>(n) + 1;
    // Coupling arguments: c + i m h with
    //   lambda - s' - lambda' - A: c = -r - A + iT, m = j - k' - j'   in [-2n, n]
    //   lambda' - s - lambda + A: c = -r + A + iT, m = j' - k - j     in [-2n, n]
    //   -s - s':                  c = -2r + 2iT,   m = -(k + k')      in [-2n, 0]
    const LatticeCoupling C{upsilon_line(Complex(-r, T) - mp.A, h, -2 * n, n, d),
                            upsilon_line(Complex(-r, T) + mp.A, h, -2 * n, n, d),
                            inverse_upsilon_line(Complex(-2.0 * r, 2.0 * T), h, -2 * n, 0, d)};
    double m1 = 0.0, m2 = 0.0, m3 = 0.0;
    for (int m = -2 * n; m <= n; ++m) {
      m1 = std::max(m1, std::abs(C.u1[m]));
      m2 = std::max(m2, std::abs(C.u2[m]));
    }
    for (int m = -2 * n; m <= 0; ++m) m3 = std::max(m3, std::abs(C.v[m]));
    const double cmax = m1 * m2 * m3;
    Complex sum;
    if (cfg.use_lattice) {
      sum = racah_sum(F1, F2, n, [&](int k, int j, const PrunedTable& G) {
        Complex total{};
        for (std::size_t kp = 0; kp < w; ++kp) {
          const int kpi = static_cast<int>(kp);
          Complex acc{};
          const Complex* row = &G.f[kp * w];
          for (int jp = G.lo[kp]; jp <= G.hi[kp]; ++jp)
            acc += row[jp] * C.u1[j - kpi - jp] * C.u2[jp - k - j];
          total += acc * C.v[-(k + kpi)];
        }
        return total;
      });
    } else {
      const DirectCoupling D{r, T, h, mp.A, d};
      sum = racah_sum(F1, F2, n, [&](int k, int j, const PrunedTable& G) {
        const Complex s = D.node(k), l = D.node(j);
        Complex total{};
        for (std::size_t kp = 0; kp < w; ++kp) {
          const int kpi = static_cast<int>(kp);
          const Complex sp = D.node(kpi);
          Complex acc{};
          const Complex* row = &G.f[kp * w];
          for (int jp = G.lo[kp]; jp <= G.hi[kp]; ++jp) {
            const Complex lp = D.node(jp);
            acc += row[jp] * specfun::upsilon_d(l - sp - lp - D.A, d) *
                   specfun::upsilon_d(lp - s - l + D.A, d);
          }
          const Complex x = -s - sp;
          const Complex inv = specfun::is_gamma_pole(x) ? Complex{} : specfun::upsilon_d(0.5 * d - x, d);
          total += acc * inv;
        }
        return total;
      });
    }
    const double meas = std::pow(h / (2.0 * kPi), 4);
    Level out;
    out.value = sum * meas;
    out.nodes = F1.kept * F2.kept;
    const double tf = tail_factor(h);
    const double all1 = F1.kept_abs + F1.dropped_abs, all2 = F2.kept_abs + F2.dropped_abs;
    out.pruned = meas * cmax * (F1.dropped_abs * all2 + all1 * F2.dropped_abs);
    out.tail = out.pruned + meas * cmax * tf * (F1.ring_abs * all2 + all1 * F2.ring_abs);
    return out;
  };
  // The pruning bound is a worst case over the coupling; when the sum cancels
  // strongly it can exceed the tolerance, so prune less and finally not at all.
  auto level = [&](double T, int n) {
    long long nodes = 0;
    double eps = cfg.tol * 1e-3;
    for (int pass = 0;; ++pass, eps *= 1e-3) {
      const bool prune = cfg.prune && pass < 3;
      Level out = level_at(T, n, eps, prune);
      nodes += out.nodes;
      if (!prune || out.pruned <= 0.25 * cfg.tol * std::abs(out.value)) {
        out.nodes = nodes;
        return out;
      }
    }
  };
  return refine(cfg, 4, r, strip, T_plan, level, "racah");
}

QuadResult racah(const SixLabels& labels, const ContourConfig& cfg, PrimeOrder order) {
  QuadResult res = racah_integral(labels, cfg);
  const Complex pref = racah_prefactor(labels, order);
  res.value *= pref;
  res.err_estimate *= std::abs(pref);
  res.tail_bound *= std::abs(pref);
  return res;
}

std::vector<LatticeLine> gamma_lattice(const ContourConfig& cfg, const std::vector<Complex>& offsets) {
  if (!(cfg.T > 0.0) || cfg.n <= 0 || cfg.n % 2 != 0)
    throw ParameterError("gamma_lattice: requires explicit T > 0 and even n");
  const double h = 2.0 * cfg.T / cfg.n;
  std::vector<LatticeLine> lines;
  lines.reserve(offsets.size());
  for (Complex c : offsets) lines.push_back(log_gamma_line(c, h, -2 * cfg.n, 2 * cfg.n));
  return lines;
}

}  // namespace sixdelta

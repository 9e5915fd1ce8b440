#include "sixdelta/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "sixdelta/errors.hpp"

namespace sixdelta::quad {

namespace {

constexpr double kTanhSinhTMax = 6.0;

// Adds w(t) f(x(t)) over t = k h for k in [-kmax, kmax] stepping by `step`,
// starting at `first`.
Complex tanh_sinh_sum(const std::function<Complex(double, double)>& f, double h, int first,
                      int step, long& evals) {
  Complex sum{};
  const int kmax = static_cast<int>(std::ceil(kTanhSinhTMax / h));
  for (int k = first; k <= kmax; k += step) {
    const double t = k * h;
    const double u = 0.5 * kPi * std::sinh(t);
    const double e = std::exp(-2.0 * std::abs(u));
    // x = 1/(1+exp(-2u)), 1 - x = 1/(1+exp(2u))
    const double small = e / (1.0 + e);
    const double large = 1.0 / (1.0 + e);
    const double x = u >= 0 ? large : small;
    const double xc = u >= 0 ? small : large;
    if (x <= 0.0 || xc <= 0.0) continue;
    const double ch = std::cosh(u);
    const double w = 0.25 * kPi * std::cosh(t) / (ch * ch);
    if (w == 0.0) continue;
    const Complex fx = f(x, xc);
    ++evals;
    if (!is_finite(fx)) continue;
    sum += w * fx;
  }
  return sum;
}

}  // namespace

Estimate tanh_sinh_unit(const std::function<Complex(double, double)>& f, double rel_tol,
                        int max_level) {
  Estimate out;
  double h = 0.5;
  int kmax = static_cast<int>(std::ceil(kTanhSinhTMax / h));
  Complex raw = tanh_sinh_sum(f, h, -kmax, 1, out.evaluations);
  Complex prev = raw * h;
  out.value = prev;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    kmax = static_cast<int>(std::ceil(kTanhSinhTMax / h));
    // Only odd multiples of the halved step are new nodes.
    const int first = (kmax % 2 == 0) ? -kmax + 1 : -kmax;
    raw += tanh_sinh_sum(f, h, first, 2, out.evaluations);
    const Complex cur = raw * h;
    out.error = std::abs(cur - prev);
    out.value = cur;
    if (level >= 3 && out.error <= rel_tol * std::abs(cur)) return out;
    prev = cur;
  }
  return out;
}

std::vector<Node> gauss_legendre(int n) {
  if (n < 1) throw ParameterError("gauss_legendre: n must be positive");
  std::vector<Node> nodes(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = {-x, w};
    nodes[static_cast<std::size_t>(n - 1 - i)] = {x, w};
  }
  return nodes;
}

Complex gauss_legendre_panels(const std::function<Complex(double)>& f, double a, double b,
                              int panels, int order) {
  const auto rule = gauss_legendre(order);
  const double width = (b - a) / panels;
  Complex sum{};
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    Complex part{};
    for (const auto& nd : rule) part += nd.w * f(mid + 0.5 * width * nd.x);
    sum += 0.5 * width * part;
  }
  return sum;
}

double sphere_area(int n) {
  // |S^n| = 2 pi^{(n+1)/2} / Gamma((n+1)/2)
  return 2.0 * std::pow(kPi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

std::vector<SphereNode> sphere_rule(int d, int resolution) {
  std::vector<SphereNode> out;
  if (d == 1) {
    out.push_back({{1.0}, 1.0});
    out.push_back({{-1.0}, 1.0});
    return out;
  }
  if (d == 2) {
    const double w = 2.0 * kPi / resolution;
    for (int k = 0; k < resolution; ++k) {
      const double phi = w * (k + 0.5);
      out.push_back({{std::cos(phi), std::sin(phi)}, w});
    }
    return out;
  }
  if (d == 3) {
    const auto gl = gauss_legendre(std::max(2, resolution / 2));
    const double wphi = 2.0 * kPi / resolution;
    for (const auto& nd : gl) {
      const double ct = nd.x;
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int k = 0; k < resolution; ++k) {
        const double phi = wphi * (k + 0.5);
        out.push_back({{st * std::cos(phi), st * std::sin(phi), ct}, nd.w * wphi});
      }
    }
    return out;
  }
  throw DomainError("sphere_rule: only d = 2 and d = 3 are supported");
}

}  // namespace sixdelta::quad

#pragma once

#include <functional>
#include <vector>

#include "sixdelta/complex.hpp"

namespace sixdelta::quad {

struct Estimate {
  Complex value{};
  double error = 0.0;  // |difference between the last two refinement levels|
  long evaluations = 0;
};

/// Double-exponential (tanh-sinh) rule on [0, 1]. The integrand receives the
/// node x and its complement 1 - x, both computed without cancellation, so
/// algebraic endpoint singularities are handled to full precision.
Estimate tanh_sinh_unit(const std::function<Complex(double x, double xc)>& f, double rel_tol,
                        int max_level = 12);

struct Node {
  double x;
  double w;
};

/// n-point Gauss-Legendre nodes and weights on [-1, 1].
std::vector<Node> gauss_legendre(int n);

/// Composite Gauss-Legendre over [a, b] split into equal panels.
Complex gauss_legendre_panels(const std::function<Complex(double)>& f, double a, double b,
                              int panels, int order);

/// Quadrature nodes on the unit sphere S^{d-1} in R^d (d = 2 or 3) with weights
/// summing to |S^{d-1}|. `resolution` is the number of azimuthal points.
struct SphereNode {
  std::vector<double> dir;
  double w;
};
std::vector<SphereNode> sphere_rule(int d, int resolution);

/// Surface area of the unit sphere S^{n} embedded in R^{n+1}.
double sphere_area(int n);

}  // namespace sixdelta::quad

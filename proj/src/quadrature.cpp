#include "biotfem/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace biotfem {

namespace {

// Legendre polynomial P_n and derivative at x, on [-1,1].
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

QuadratureRule1D gauss_legendre(int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("gauss_legendre: n out of range");
  QuadratureRule1D rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  rule.exactness = 2 * n - 1;
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess, refined by Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = legendre(n, x);
      double dx = -p / dp;
      x += dx;
      if (std::abs(dx) < 1e-15) break;
    }
    auto [p, dp] = legendre(n, x);
    (void)p;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1,1] -> [0,1]; reverse so points increase
    rule.points[n - 1 - i] = 0.5 * (x + 1.0);
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

QuadratureRule2D gauss_legendre_2d(int n) {
  QuadratureRule1D line = gauss_legendre(n);
  QuadratureRule2D rule;
  rule.exactness = line.exactness;
  rule.points.reserve(n * n);
  rule.weights.reserve(n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      rule.points.emplace_back(line.points[i], line.points[j]);
      rule.weights.push_back(line.weights[i] * line.weights[j]);
    }
  return rule;
}

std::vector<double> gauss_lobatto_points(int n) {
  switch (n) {
    case 2:
      return {0.0, 1.0};
    case 3:
      return {0.0, 0.5, 1.0};
    case 4: {
      double a = 1.0 / std::sqrt(5.0);
      return {0.0, 0.5 * (1.0 - a), 0.5 * (1.0 + a), 1.0};
    }
    case 5: {
      double a = std::sqrt(3.0 / 7.0);
      return {0.0, 0.5 * (1.0 - a), 0.5, 0.5 * (1.0 + a), 1.0};
    }
    case 6: {
      double s = std::sqrt(7.0);
      double a = std::sqrt((7.0 + 2.0 * s) / 21.0);
      double b = std::sqrt((7.0 - 2.0 * s) / 21.0);
      return {0.0, 0.5 * (1.0 - a), 0.5 * (1.0 - b), 0.5 * (1.0 + b), 0.5 * (1.0 + a), 1.0};
    }
    default:
      throw std::invalid_argument("gauss_lobatto_points: supported sizes are 2..6");
  }
}

}  // namespace biotfem

#pragma once

#include <Eigen/Dense>
#include <vector>

namespace biotfem {

/// Quadrature rule on the reference interval [0,1].
struct QuadratureRule1D {
  std::vector<double> points;
  std::vector<double> weights;
  int exactness = 0;  ///< integrates polynomials up to this degree exactly

  int size() const { return static_cast<int>(points.size()); }
};

/// Tensor-product rule on the reference square [0,1]^2.
struct QuadratureRule2D {
  std::vector<Eigen::Vector2d> points;
  std::vector<double> weights;
  int exactness = 0;  ///< per-variable degree of exactness

  int size() const { return static_cast<int>(points.size()); }
};

/// n-point Gauss-Legendre rule on [0,1]; exact for degree 2n-1.
QuadratureRule1D gauss_legendre(int n);

/// Tensor product of two n-point Gauss-Legendre rules.
QuadratureRule2D gauss_legendre_2d(int n);

/// Gauss-Lobatto node locations on [0,1] (endpoints included). Nodes only;
/// used as interpolation points, not for integration. Supports 2..6 nodes.
std::vector<double> gauss_lobatto_points(int n);

}  // namespace biotfem

#pragma once

#include <Eigen/Dense>
#include <vector>

namespace tifem {

struct QuadratureRule {
  std::vector<Eigen::Vector2d> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

struct QuadratureRule1D {
  std::vector<double> points;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], 1 <= n <= 5.
QuadratureRule1D gauss_legendre(int n);

/// Tensor-product n x n Gauss rule on [-1, 1]^2.
QuadratureRule gauss_square(int n);

}  // namespace tifem

#include "tifem/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace tifem {

QuadratureRule1D gauss_legendre(int n) {
  switch (n) {
    case 1:
      return {{0.0}, {2.0}};
    case 2: {
      const double x = 1.0 / std::sqrt(3.0);
      return {{-x, x}, {1.0, 1.0}};
    }
    case 3: {
      const double x = std::sqrt(0.6);
      return {{-x, 0.0, x}, {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0}};
    }
    case 4: {
      const double r = 2.0 / 7.0 * std::sqrt(6.0 / 5.0);
      const double x1 = std::sqrt(3.0 / 7.0 - r);
      const double x2 = std::sqrt(3.0 / 7.0 + r);
      const double w1 = (18.0 + std::sqrt(30.0)) / 36.0;
      const double w2 = (18.0 - std::sqrt(30.0)) / 36.0;
      return {{-x2, -x1, x1, x2}, {w2, w1, w1, w2}};
    }
    case 5: {
      const double r = 2.0 * std::sqrt(10.0 / 7.0);
      const double x1 = std::sqrt(5.0 - r) / 3.0;
      const double x2 = std::sqrt(5.0 + r) / 3.0;
      const double w1 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
      const double w2 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
      return {{-x2, -x1, 0.0, x1, x2}, {w2, w1, 128.0 / 225.0, w1, w2}};
    }
    default:
      throw std::invalid_argument("Gauss-Legendre rule available for 1..5 points");
  }
}

QuadratureRule gauss_square(int n) {
  const QuadratureRule1D g = gauss_legendre(n);
  QuadratureRule rule;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      rule.points.emplace_back(g.points[i], g.points[j]);
      rule.weights.push_back(g.weights[i] * g.weights[j]);
    }
  }
  return rule;
}

}  // namespace tifem

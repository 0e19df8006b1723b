#include "tifem/shape_functions.hpp"

#include <array>
#include <stdexcept>

#include "tifem/errors.hpp"

namespace tifem {

namespace {

// Quadratic Lagrange basis on nodes -1, 0, 1 (indexed 0, 1, 2).
template <class S>
std::array<S, 3> lagrange2(S s) {
  return {S(0.5) * s * (s - 1), 1 - s * s, S(0.5) * s * (s + 1)};
}
template <class S>
std::array<S, 3> lagrange2_deriv(S s) {
  return {s - S(0.5), -2 * s, s + S(0.5)};
}

// Lattice position of each 9-node element node.
constexpr std::array<int, 9> kQ2I = {0, 2, 2, 0, 1, 2, 1, 0, 1};
constexpr std::array<int, 9> kQ2J = {0, 0, 2, 2, 0, 1, 2, 1, 1};

}  // namespace

template <class S>
BasicShapeValues<S> shape_functions_as(int order, const Eigen::Matrix<S, 2, 1>& xi) {
  const S x = xi.x();
  const S y = xi.y();
  BasicShapeValues<S> sv;
  if (order == 1) {
    static constexpr int sx[4] = {-1, 1, 1, -1};
    static constexpr int sy[4] = {-1, -1, 1, 1};
    sv.N.resize(4);
    sv.dN.resize(4, 2);
    for (int i = 0; i < 4; ++i) {
      sv.N(i) = S(0.25) * (1 + sx[i] * x) * (1 + sy[i] * y);
      sv.dN(i, 0) = S(0.25) * sx[i] * (1 + sy[i] * y);
      sv.dN(i, 1) = S(0.25) * sy[i] * (1 + sx[i] * x);
    }
    return sv;
  }
  if (order == 2) {
    const auto lx = lagrange2(x);
    const auto ly = lagrange2(y);
    const auto dlx = lagrange2_deriv(x);
    const auto dly = lagrange2_deriv(y);
    sv.N.resize(9);
    sv.dN.resize(9, 2);
    for (int i = 0; i < 9; ++i) {
      sv.N(i) = lx[kQ2I[i]] * ly[kQ2J[i]];
      sv.dN(i, 0) = dlx[kQ2I[i]] * ly[kQ2J[i]];
      sv.dN(i, 1) = lx[kQ2I[i]] * dly[kQ2J[i]];
    }
    return sv;
  }
  throw std::invalid_argument("shape function order must be 1 or 2");
}

ShapeValues shape_functions(int order, const Eigen::Vector2d& xi) { return shape_functions_as<double>(order, xi); }

Eigen::VectorXd edge_shape_functions(int order, double s) {
  if (order == 1) return Eigen::Vector2d(0.5 * (1.0 - s), 0.5 * (1.0 + s));
  const auto l = lagrange2(s);
  return Eigen::Vector3d(l[0], l[2], l[1]);
}

template <class S>
BasicMappedShape<S> map_shape_as(int order, const Eigen::MatrixX2d& coords, const Eigen::Vector2d& xi) {
  const Eigen::Matrix<S, Eigen::Dynamic, 2> X = coords.cast<S>();
  const BasicShapeValues<S> sv = shape_functions_as<S>(order, xi.cast<S>());
  // J(i, j) = d x_i / d xi_j
  const Eigen::Matrix<S, 2, 2> J = X.transpose() * sv.dN;
  BasicMappedShape<S> ms;
  ms.detJ = J.determinant();
  if (!(ms.detJ > 0)) throw NonPositiveJacobian("element has a non-positive Jacobian determinant");
  ms.N = sv.N;
  ms.dN = sv.dN * J.inverse();
  ms.x = X.transpose() * sv.N;
  return ms;
}

MappedShape map_shape(int order, const Eigen::MatrixX2d& coords, const Eigen::Vector2d& xi) {
  return map_shape_as<double>(order, coords, xi);
}

template BasicShapeValues<double> shape_functions_as(int, const Eigen::Matrix<double, 2, 1>&);
template BasicShapeValues<long double> shape_functions_as(int, const Eigen::Matrix<long double, 2, 1>&);
template BasicMappedShape<double> map_shape_as(int, const Eigen::MatrixX2d&, const Eigen::Vector2d&);
template BasicMappedShape<long double> map_shape_as(int, const Eigen::MatrixX2d&, const Eigen::Vector2d&);

}  // namespace tifem

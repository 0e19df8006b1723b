#pragma once

#include <Eigen/Dense>

namespace tifem {

/// Lagrange shape functions on [-1, 1]^2 and their reference gradients
/// (one row per node: dN/dxi, dN/deta).
template <class Scalar>
struct BasicShapeValues {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> N;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> dN;
};
using ShapeValues = BasicShapeValues<double>;

/// Order 1: bilinear, 4 nodes. Order 2: biquadratic, 9 nodes ordered as in
/// QuadMesh (corners, midsides of edges 0..3, centre).
ShapeValues shape_functions(int order, const Eigen::Vector2d& xi);
template <class Scalar>
BasicShapeValues<Scalar> shape_functions_as(int order, const Eigen::Matrix<Scalar, 2, 1>& xi);

/// 1D Lagrange functions on [-1, 1] for an element edge: order 1 has nodes
/// (-1, 1); order 2 has nodes (-1, 1, 0), matching QuadMesh::edge_nodes.
Eigen::VectorXd edge_shape_functions(int order, double s);

/// Physical gradients and Jacobian determinant at a reference point.
template <class Scalar>
struct BasicMappedShape {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> N;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> dN;  // d/dx, d/dy per node
  Scalar detJ = 0;
  Eigen::Matrix<Scalar, 2, 1> x;
};
using MappedShape = BasicMappedShape<double>;

/// Throws NonPositiveJacobian when detJ <= 0.
MappedShape map_shape(int order, const Eigen::MatrixX2d& coords, const Eigen::Vector2d& xi);

/// The same map evaluated in another precision (double and long double are
/// instantiated); inputs are converted exactly.
template <class Scalar>
BasicMappedShape<Scalar> map_shape_as(int order, const Eigen::MatrixX2d& coords, const Eigen::Vector2d& xi);

}  // namespace tifem

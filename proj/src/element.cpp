#include "tifem/element.hpp"

#include <stdexcept>

#include "tifem/shape_functions.hpp"

namespace tifem {

std::string_view to_string(FormulationVariant v) {
  switch (v) {
    case FormulationVariant::Q1_CG:
      return "Q1_CG";
    case FormulationVariant::Q2_CG:
      return "Q2_CG";
    case FormulationVariant::Q1_CG_UI_lambda:
      return "Q1_CG_UI_lambda";
    case FormulationVariant::Q1_CG_UI_beta:
      return "Q1_CG_UI_beta";
    case FormulationVariant::Q1_CG_UI_betalambda:
      return "Q1_CG_UI_betalambda";
    case FormulationVariant::Q1_MIXED_P0_beta:
      return "Q1_MIXED_P0_beta";
  }
  return "unknown";
}

std::optional<FormulationVariant> parse_variant(std::string_view name) {
  for (FormulationVariant v : kAllVariants)
    if (to_string(v) == name) return v;
  return std::nullopt;
}

int element_order(FormulationVariant v) { return v == FormulationVariant::Q2_CG ? 2 : 1; }

Eigen::MatrixXd strain_displacement(const Eigen::MatrixX2d& dN) {
  const Eigen::Index n = dN.rows();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(3, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    B(0, 2 * i) = dN(i, 0);
    B(1, 2 * i + 1) = dN(i, 1);
    B(2, 2 * i) = dN(i, 1);
    B(2, 2 * i + 1) = dN(i, 0);
  }
  return B;
}

QuadratureRule full_rule(int order) { return gauss_square(order == 1 ? 2 : 3); }

namespace {

using Ext = long double;
using MatrixXe = Eigen::Matrix<Ext, Eigen::Dynamic, Eigen::Dynamic>;
using RowVectorXe = Eigen::Matrix<Ext, 1, Eigen::Dynamic>;
using Matrix3e = Eigen::Matrix<Ext, 3, 3>;
using RowVector3e = Eigen::Matrix<Ext, 1, 3>;

int order_of(const Eigen::MatrixX2d& coords) {
  if (coords.rows() == 4) return 1;
  if (coords.rows() == 9) return 2;
  throw std::invalid_argument("element must have 4 or 9 nodes");
}

MatrixXe strain_displacement_ext(const Eigen::Matrix<Ext, Eigen::Dynamic, 2>& dN) {
  const Eigen::Index n = dN.rows();
  MatrixXe B = MatrixXe::Zero(3, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    B(0, 2 * i) = dN(i, 0);
    B(1, 2 * i + 1) = dN(i, 1);
    B(2, 2 * i) = dN(i, 1);
    B(2, 2 * i + 1) = dN(i, 0);
  }
  return B;
}

// Voigt row vectors picking tr(eps) and M:eps out of (eps11, eps22, 2 eps12).
RowVector3e trace_row() { return {1, 1, 0}; }
RowVector3e fibre_row(const FibreFrame& f) {
  const Ext a1 = f.a.x();
  const Ext a2 = f.a.y();
  return {a1 * a1, a2 * a2, a1 * a2};
}

// Voigt material matrix of a single term of the constitutive law.
Matrix3e term_matrix(const MaterialParameters& mp, const FibreFrame& f, StiffnessTerm term) {
  const RowVector3e d = trace_row();
  const RowVector3e m = fibre_row(f);
  const Ext a1 = f.a.x();
  const Ext a2 = f.a.y();
  switch (term) {
    case StiffnessTerm::Volumetric:
      return Ext(mp.lambda) * d.transpose() * d;
    case StiffnessTerm::Isotropic:
      return Ext(mp.mu_t) * Eigen::Matrix<Ext, 3, 1>(2, 2, 1).asDiagonal().toDenseMatrix();
    case StiffnessTerm::Coupling:
      return Ext(mp.alpha) * (d.transpose() * m + m.transpose() * d);
    case StiffnessTerm::Extensional:
      return Ext(mp.beta) * m.transpose() * m;
    case StiffnessTerm::ShearDifference: {
      Matrix3e G;
      G << 2 * a1 * a1, 0, a1 * a2,
           0, 2 * a2 * a2, a1 * a2,
           a1 * a2, a1 * a2, Ext(0.5);
      return Ext(mp.gamma) * G;
    }
  }
  return Matrix3e::Zero();
}

// Integral of s * detJ over the element, s = row * B.
struct ProjectedData {
  RowVectorXe integral;
  Ext area = 0;
};

ProjectedData integrate_row(const Eigen::MatrixX2d& coords, const RowVector3e& row, const QuadratureRule& rule) {
  const int order = order_of(coords);
  ProjectedData out;
  out.integral = RowVectorXe::Zero(2 * coords.rows());
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const auto ms = map_shape_as<Ext>(order, coords, rule.points[q]);
    const Ext w = Ext(rule.weights[q]) * ms.detJ;
    out.integral += w * (row * strain_displacement_ext(ms.dN));
    out.area += w;
  }
  return out;
}

MatrixXe term_ext(const Eigen::MatrixX2d& coords, const MaterialParameters& mp, const FibreFrame& frame,
                  StiffnessTerm term, const QuadratureRule& rule) {
  const int order = order_of(coords);
  const Matrix3e D = term_matrix(mp, frame, term);
  const Eigen::Index ndof = 2 * coords.rows();
  MatrixXe K = MatrixXe::Zero(ndof, ndof);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const auto ms = map_shape_as<Ext>(order, coords, rule.points[q]);
    const MatrixXe B = strain_displacement_ext(ms.dN);
    K.noalias() += (Ext(rule.weights[q]) * ms.detJ) * (B.transpose() * D * B);
  }
  return K;
}

}  // namespace

Eigen::MatrixXd element_term(const Eigen::MatrixX2d& coords, const MaterialParameters& mp,
                             const FibreFrame& frame, StiffnessTerm term,
                             const QuadratureRule& rule) {
  return term_ext(coords, mp, frame, term, rule).cast<double>();
}

MatrixXld element_stiffness_extended(const Eigen::MatrixX2d& coords, const MaterialParameters& mp,
                                     const FibreFrame& frame, FormulationVariant variant) {
  const int order = order_of(coords);
  if (order != element_order(variant))
    throw std::invalid_argument("formulation variant does not match element order");

  const QuadratureRule full = full_rule(order);
  const QuadratureRule one = gauss_square(1);
  const bool ui_lambda = variant == FormulationVariant::Q1_CG_UI_lambda ||
                         variant == FormulationVariant::Q1_CG_UI_betalambda;
  const bool ui_beta = variant == FormulationVariant::Q1_CG_UI_beta ||
                       variant == FormulationVariant::Q1_CG_UI_betalambda;

  MatrixXe K = term_ext(coords, mp, frame, StiffnessTerm::Isotropic, full);
  K += term_ext(coords, mp, frame, StiffnessTerm::Coupling, full);
  K += term_ext(coords, mp, frame, StiffnessTerm::ShearDifference, full);
  K += term_ext(coords, mp, frame, StiffnessTerm::Volumetric, ui_lambda ? one : full);

  if (variant != FormulationVariant::Q1_MIXED_P0_beta) {
    K += term_ext(coords, mp, frame, StiffnessTerm::Extensional, ui_beta ? one : full);
    return K;
  }

  // Mixed displacement / constant-multiplier element:
  //   [ K    G^T    ] [u]
  //   [ G  -|e|/beta] [T]
  // with G = int M:eps(N) dx; T is eliminated elementwise.
  if (mp.beta == 0.0) return K;
  const ProjectedData g = integrate_row(coords, fibre_row(frame), full);
  const Ext multiplier_block = -g.area / Ext(mp.beta);
  K.noalias() -= g.integral.transpose() * (1 / multiplier_block) * g.integral;
  return K;
}

Eigen::MatrixXd element_stiffness(const Eigen::MatrixX2d& coords, const MaterialParameters& mp,
                                  const FibreFrame& frame, FormulationVariant variant) {
  return element_stiffness_extended(coords, mp, frame, variant).cast<double>();
}

Eigen::MatrixXd p0_projected_term(const Eigen::MatrixX2d& coords, double coefficient,
                                  ProjectedIntegrand integrand, const FibreFrame& frame) {
  if (order_of(coords) != 1) throw std::invalid_argument("P0 projection is defined for bilinear elements");
  const QuadratureRule rule = full_rule(1);
  const RowVector3e row = integrand == ProjectedIntegrand::Volumetric ? trace_row() : fibre_row(frame);
  const ProjectedData data = integrate_row(coords, row, rule);
  const RowVectorXe projected = data.integral / data.area;

  const Eigen::Index ndof = 2 * coords.rows();
  MatrixXe K = MatrixXe::Zero(ndof, ndof);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const auto ms = map_shape_as<Ext>(1, coords, rule.points[q]);
    K.noalias() += (Ext(coefficient) * Ext(rule.weights[q]) * ms.detJ) * projected.transpose() * projected;
  }
  return K.cast<double>();
}

}  // namespace tifem

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string_view>

#include "tifem/material.hpp"
#include "tifem/quadrature.hpp"

namespace tifem {

using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

enum class FormulationVariant {
  Q1_CG,
  Q2_CG,
  Q1_CG_UI_lambda,
  Q1_CG_UI_beta,
  Q1_CG_UI_betalambda,
  Q1_MIXED_P0_beta,
};

inline constexpr FormulationVariant kAllVariants[] = {
    FormulationVariant::Q1_CG,           FormulationVariant::Q2_CG,
    FormulationVariant::Q1_CG_UI_lambda, FormulationVariant::Q1_CG_UI_beta,
    FormulationVariant::Q1_CG_UI_betalambda, FormulationVariant::Q1_MIXED_P0_beta};

std::string_view to_string(FormulationVariant v);
std::optional<FormulationVariant> parse_variant(std::string_view name);
int element_order(FormulationVariant v);

/// Pieces of the bilinear form. Volumetric: lambda (div u)(div v).
/// Isotropic: 2 mu_t eps(u):eps(v). Coupling: alpha terms. Extensional:
/// beta (M:eps(u))(M:eps(v)). ShearDifference: gamma terms.
enum class StiffnessTerm { Volumetric, Isotropic, Coupling, Extensional, ShearDifference };

enum class ProjectedIntegrand { Volumetric, Extensional };

/// Strain-displacement matrix in Voigt order (11, 22, 12) with engineering
/// shear; dofs interleaved (u0x, u0y, u1x, ...).
Eigen::MatrixXd strain_displacement(const Eigen::MatrixX2d& dN);

/// One term of the element stiffness integrated with `rule`. The element
/// order follows from the number of coordinate rows (4 or 9).
Eigen::MatrixXd element_term(const Eigen::MatrixX2d& coords, const MaterialParameters& mp,
                             const FibreFrame& frame, StiffnessTerm term,
                             const QuadratureRule& rule);

/// Full 2x2 (order 1) or 3x3 (order 2) Gauss rule.
QuadratureRule full_rule(int order);

/// Element stiffness for the given variant. Under-integrated variants use the
/// one-point rule on the volumetric and/or extensional term only; the mixed
/// variant condenses an elementwise-constant extensional multiplier.
/// Throws NonPositiveJacobian, or std::invalid_argument when the variant does
/// not match the element order.
Eigen::MatrixXd element_stiffness(const Eigen::MatrixX2d& coords, const MaterialParameters& mp,
                                  const FibreFrame& frame, FormulationVariant variant);

/// element_stiffness before rounding to double: shape gradients and the
/// products B^T D B are formed in long double.
MatrixXld element_stiffness_extended(const Eigen::MatrixX2d& coords, const MaterialParameters& mp,
                                     const FibreFrame& frame, FormulationVariant variant);

/// coefficient * integral of Pi0(s(u)) Pi0(s(v)) over a bilinear element,
/// with Pi0 the L2 projection onto constants and s the divergence or the
/// fibre strain M:eps.
Eigen::MatrixXd p0_projected_term(const Eigen::MatrixX2d& coords, double coefficient,
                                  ProjectedIntegrand integrand, const FibreFrame& frame);

}  // namespace tifem

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string_view>
#include <vector>

namespace tifem {

using Matrix6d = Eigen::Matrix<double, 6, 6>;

/// Physical parametrization of a transversely isotropic material.
/// E_l = p * E_t and mu_l = q * mu_t.
struct EngineeringConstants {
  double E_t = 1.0;
  double p = 1.0;
  double q = 1.0;
  double nu_t = 0.0;
  double nu_l = 0.0;

  double E_l() const { return p * E_t; }
  double mu_t() const { return E_t / (2.0 * (1.0 + nu_t)); }
  double mu_l() const { return q * mu_t(); }
};

/// Coefficients of the elasticity tensor
///   C = lambda I(x)I + 2 mu_t II + beta M(x)M + alpha (I(x)M + M(x)I) + gamma MM,
/// with M = a(x)a and MM R = M R + R M.
struct MaterialParameters {
  double lambda = 0.0;
  double mu_t = 0.0;
  double mu_l = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  static MaterialParameters isotropic(double lambda, double mu);
};

/// In-plane fibre direction a = (cos angle, sin angle).
struct FibreFrame {
  Eigen::Vector2d a{1.0, 0.0};
  double angle = 0.0;

  static FibreFrame from_angle(double angle);
  /// Normalizes `direction`; the stored angle is atan2 of the result.
  static FibreFrame from_direction(const Eigen::Vector2d& direction);

  Eigen::Matrix2d structure_tensor() const { return a * a.transpose(); }
};

enum class StabilityCondition {
  PositiveRatio,           // p > 0
  ShearOrdering,           // mu_l >= mu_t > 0
  TransversePoissonBound,  // nu_t > -1
  NegativeDiscriminant,    // (2 nu_t + 1) p - (2 nu_l + 1) > 0
  PositiveDenominator,     // (1 - nu_t) p - 2 nu_l^2 > 0
};

inline constexpr StabilityCondition kAllStabilityConditions[] = {
    StabilityCondition::PositiveRatio, StabilityCondition::ShearOrdering,
    StabilityCondition::TransversePoissonBound,
    StabilityCondition::NegativeDiscriminant,
    StabilityCondition::PositiveDenominator};

std::string_view to_string(StabilityCondition c);

struct StabilityVerdict {
  bool admissible = false;
  std::vector<StabilityCondition> violated;
  /// Discriminant of the quadratic form in (tr eps, eps a.a); absent when the
  /// parameters cannot be derived.
  std::optional<double> discriminant;

  bool violates(StabilityCondition c) const;
};

/// Throws DegenerateDenominator when (1+nu_t)((1-nu_t)p - 2 nu_l^2) vanishes
/// relative to the magnitude of its terms.
MaterialParameters derive_parameters(const EngineeringConstants& ec);

/// Certifies the sufficient pointwise-stability conditions. Never throws; a
/// NaN anywhere in the input violates every condition.
StabilityVerdict check_stability(const EngineeringConstants& ec);

/// Cauchy stress for a symmetric strain, in 2D (in-plane fibre) or 3D.
Eigen::Matrix2d stiffness_apply(const MaterialParameters& mp,
                                const FibreFrame& frame,
                                const Eigen::Matrix2d& strain);
Eigen::Matrix3d stiffness_apply(const MaterialParameters& mp,
                                const Eigen::Vector3d& fibre,
                                const Eigen::Matrix3d& strain);

/// Voigt order (11, 22, 33, 23, 13, 12), engineering shear strain, fibre e3.
Matrix6d stiffness_matrix_e3(const MaterialParameters& mp);
Matrix6d compliance_matrix_e3(const EngineeringConstants& ec);

/// Plane-strain stiffness in Voigt order (11, 22, 12) with engineering shear,
/// evaluated column by column from stiffness_apply.
Eigen::Matrix3d plane_strain_stiffness(const MaterialParameters& mp,
                                       const FibreFrame& frame);

/// Closed-form inverse of plane_strain_stiffness via its cofactors.
/// Throws SingularStiffness when the determinant is negligible.
Eigen::Matrix3d plane_strain_compliance(const MaterialParameters& mp,
                                        const FibreFrame& frame);

/// Same matrix from the engineering constants: the closed-form 3D compliance
/// with the out-of-plane strain eliminated, rotated to the fibre angle. Stays
/// accurate when the stiffness is badly conditioned.
Eigen::Matrix3d plane_strain_compliance(const EngineeringConstants& ec,
                                        const FibreFrame& frame);

/// (max(lambda, 2 mu_t) + alpha + beta + gamma) / mu_t: the conforming
/// error-bound constant with its generic constant normalized to 1.
double error_bound_constant(const MaterialParameters& mp);

}  // namespace tifem

#include "tifem/material.hpp"

#include <algorithm>
#include <cmath>

#include "tifem/errors.hpp"

namespace tifem {

MaterialParameters MaterialParameters::isotropic(double lambda, double mu) {
  return {lambda, mu, mu, 0.0, 0.0, 0.0};
}

FibreFrame FibreFrame::from_angle(double angle) {
  return {Eigen::Vector2d(std::cos(angle), std::sin(angle)), angle};
}

FibreFrame FibreFrame::from_direction(const Eigen::Vector2d& direction) {
  const Eigen::Vector2d a = direction.normalized();
  return {a, std::atan2(a.y(), a.x())};
}

std::string_view to_string(StabilityCondition c) {
  switch (c) {
    case StabilityCondition::PositiveRatio:
      return "positive_p";
    case StabilityCondition::ShearOrdering:
      return "shear_ordering";
    case StabilityCondition::TransversePoissonBound:
      return "nu_t_bound";
    case StabilityCondition::NegativeDiscriminant:
      return "negative_discriminant";
    case StabilityCondition::PositiveDenominator:
      return "positive_denominator";
  }
  return "unknown";
}

bool StabilityVerdict::violates(StabilityCondition c) const {
  return std::find(violated.begin(), violated.end(), c) != violated.end();
}

MaterialParameters derive_parameters(const EngineeringConstants& ec) {
  const double p = ec.p;
  const double q = ec.q;
  const double nt = ec.nu_t;
  const double nl = ec.nu_l;

  const double reduced = (1.0 - nt) * p - 2.0 * nl * nl;
  const double d = (1.0 + nt) * reduced;
  // d is dimensionless; compare it against the size of the terms it cancels.
  const double scale = std::abs(1.0 + nt) * (std::abs((1.0 - nt) * p) + 2.0 * nl * nl);
  if (!(std::abs(d) > 1e-14 * scale)) {
    throw DegenerateDenominator("material sits on the stability boundary: (1+nu_t)((1-nu_t)p - 2 nu_l^2) = 0");
  }

  MaterialParameters mp;
  mp.mu_t = ec.E_t / (2.0 * (1.0 + nt));
  mp.mu_l = q * ec.E_t / (2.0 * (1.0 + nt));
  mp.lambda = (nt * p + nl * nl) / d * ec.E_t;
  mp.alpha = ((nl - nt + nt * nl) * p - nl * nl) / d * ec.E_t;
  mp.beta = ((1.0 - nt * nt) * p * p +
             (-2.0 * nt * nl + 2.0 * q * nt - 2.0 * nl + 1.0 - 2.0 * q) * p -
             (1.0 - 4.0 * q) * nl * nl) /
            d * ec.E_t;
  mp.gamma = 2.0 * (mp.mu_l - mp.mu_t);
  return mp;
}

StabilityVerdict check_stability(const EngineeringConstants& ec) {
  StabilityVerdict v;
  const bool has_nan = std::isnan(ec.E_t) || std::isnan(ec.p) || std::isnan(ec.q) ||
                       std::isnan(ec.nu_t) || std::isnan(ec.nu_l);
  if (has_nan) {
    v.violated.assign(std::begin(kAllStabilityConditions), std::end(kAllStabilityConditions));
    return v;
  }

  const double p = ec.p;
  const double nt = ec.nu_t;
  const double nl = ec.nu_l;
  const double mu_t = ec.mu_t();
  const double mu_l = ec.mu_l();

  if (!(p > 0.0)) v.violated.push_back(StabilityCondition::PositiveRatio);
  if (!(mu_l >= mu_t && mu_t > 0.0)) v.violated.push_back(StabilityCondition::ShearOrdering);
  if (!(nt > -1.0)) v.violated.push_back(StabilityCondition::TransversePoissonBound);
  if (!((2.0 * nt + 1.0) * p - (2.0 * nl + 1.0) > 0.0))
    v.violated.push_back(StabilityCondition::NegativeDiscriminant);
  if (!((1.0 - nt) * p - 2.0 * nl * nl > 0.0))
    v.violated.push_back(StabilityCondition::PositiveDenominator);
  v.admissible = v.violated.empty();

  try {
    const MaterialParameters mp = derive_parameters(ec);
    v.discriminant =
        4.0 * (mp.alpha * mp.alpha - (mp.lambda + 2.0 / 3.0 * mp.mu_t) * (mp.beta + 2.0 * mp.gamma));
  } catch (const DegenerateDenominator&) {
  }
  return v;
}

namespace {

template <int Dim>
Eigen::Matrix<double, Dim, Dim> apply_impl(const MaterialParameters& mp,
                                           const Eigen::Matrix<double, Dim, 1>& a,
                                           const Eigen::Matrix<double, Dim, Dim>& eps) {
  using Mat = Eigen::Matrix<double, Dim, Dim>;
  const Mat I = Mat::Identity();
  const Mat M = a * a.transpose();
  const double tr = eps.trace();
  const double m_eps = (M.array() * eps.array()).sum();
  return mp.lambda * tr * I + 2.0 * mp.mu_t * eps + mp.beta * m_eps * M +
         mp.alpha * (m_eps * I + tr * M) + mp.gamma * (eps * M + M * eps);
}

}  // namespace

Eigen::Matrix2d stiffness_apply(const MaterialParameters& mp, const FibreFrame& frame,
                                const Eigen::Matrix2d& strain) {
  return apply_impl<2>(mp, frame.a, strain);
}

Eigen::Matrix3d stiffness_apply(const MaterialParameters& mp, const Eigen::Vector3d& fibre,
                                const Eigen::Matrix3d& strain) {
  return apply_impl<3>(mp, fibre, strain);
}

Matrix6d stiffness_matrix_e3(const MaterialParameters& mp) {
  const double l = mp.lambda;
  const double m = mp.mu_t;
  Matrix6d C = Matrix6d::Zero();
  C(0, 0) = l + 2.0 * m;
  C(0, 1) = l;
  C(0, 2) = l + mp.alpha;
  C(1, 0) = l;
  C(1, 1) = l + 2.0 * m;
  C(1, 2) = l + mp.alpha;
  C(2, 0) = l + mp.alpha;
  C(2, 1) = l + mp.alpha;
  C(2, 2) = l + 2.0 * m + mp.beta + 2.0 * mp.alpha + 2.0 * mp.gamma;
  C(3, 3) = mp.mu_l;
  C(4, 4) = mp.mu_l;
  C(5, 5) = m;
  return C;
}

Matrix6d compliance_matrix_e3(const EngineeringConstants& ec) {
  const double Et = ec.E_t;
  const double El = ec.E_l();
  Matrix6d S = Matrix6d::Zero();
  S(0, 0) = 1.0 / Et;
  S(0, 1) = -ec.nu_t / Et;
  S(0, 2) = -ec.nu_l / El;
  S(1, 0) = -ec.nu_t / Et;
  S(1, 1) = 1.0 / Et;
  S(1, 2) = -ec.nu_l / El;
  S(2, 0) = -ec.nu_l / El;
  S(2, 1) = -ec.nu_l / El;
  S(2, 2) = 1.0 / El;
  S(3, 3) = 1.0 / ec.mu_l();
  S(4, 4) = 1.0 / ec.mu_l();
  S(5, 5) = 1.0 / ec.mu_t();
  return S;
}

Eigen::Matrix3d plane_strain_stiffness(const MaterialParameters& mp, const FibreFrame& frame) {
  // Unit strains in Voigt order; the third has engineering shear 2 eps12 = 1.
  const Eigen::Matrix2d unit[3] = {
      (Eigen::Matrix2d() << 1.0, 0.0, 0.0, 0.0).finished(),
      (Eigen::Matrix2d() << 0.0, 0.0, 0.0, 1.0).finished(),
      (Eigen::Matrix2d() << 0.0, 0.5, 0.5, 0.0).finished(),
  };
  Eigen::Matrix3d D;
  for (int j = 0; j < 3; ++j) {
    const Eigen::Matrix2d s = stiffness_apply(mp, frame, unit[j]);
    D.col(j) << s(0, 0), s(1, 1), s(0, 1);
  }
  return D;
}

Eigen::Matrix3d plane_strain_compliance(const MaterialParameters& mp, const FibreFrame& frame) {
  const double a1 = frame.a.x();
  const double a2 = frame.a.y();
  const double l = mp.lambda;
  const double m = mp.mu_t;
  const double al = mp.alpha;
  const double b = mp.beta;
  const double g = mp.gamma;

  const double c11 = l + 2.0 * m + 2.0 * (g + al) * a1 * a1 + b * a1 * a1 * a1 * a1;
  const double c22 = l + 2.0 * m + 2.0 * (g + al) * a2 * a2 + b * a2 * a2 * a2 * a2;
  const double c12 = l + al + b * a1 * a1 * a2 * a2;
  const double c33 = m + g / 2.0 + b * a1 * a1 * a2 * a2;
  const double c13 = (al + g) * a1 * a2 + b * a1 * a1 * a1 * a2;
  const double c23 = (al + g) * a1 * a2 + b * a1 * a2 * a2 * a2;

  const double det = c11 * (c22 * c33 - c23 * c23) - c12 * (c12 * c33 - c13 * c23) +
                     c13 * (c12 * c23 - c13 * c22);
  const double scale = std::abs(c11) * std::abs(c22) * std::abs(c33) +
                       std::abs(c12 * c12 * c33) + std::abs(c13 * c13 * c22) +
                       std::abs(c23 * c23 * c11);
  if (!(std::abs(det) > 1e-14 * scale)) {
    throw SingularStiffness("plane-strain stiffness is singular");
  }

  Eigen::Matrix3d S;
  S(0, 0) = c22 * c33 - c23 * c23;
  S(0, 1) = c13 * c23 - c12 * c33;
  S(0, 2) = c12 * c23 - c13 * c22;
  S(1, 1) = c11 * c33 - c13 * c13;
  S(1, 2) = c12 * c13 - c11 * c23;
  S(2, 2) = c11 * c22 - c12 * c12;
  S(1, 0) = S(0, 1);
  S(2, 0) = S(0, 2);
  S(2, 1) = S(1, 2);
  return S / det;
}

Eigen::Matrix3d plane_strain_compliance(const EngineeringConstants& ec, const FibreFrame& frame) {
  const double E_l = ec.E_l();
  if (!(ec.E_t > 0.0) || !(E_l > 0.0) || !(ec.mu_l() > 0.0))
    throw SingularStiffness("plane-strain compliance needs positive moduli");

  // Material axes (fibre, in-plane transverse) with the out-of-plane strain eliminated.
  Eigen::Matrix3d local;
  local << 1.0 / E_l - ec.nu_l * ec.nu_l * ec.E_t / (E_l * E_l), -ec.nu_l * (1.0 + ec.nu_t) / E_l, 0.0,
      -ec.nu_l * (1.0 + ec.nu_t) / E_l, (1.0 - ec.nu_t * ec.nu_t) / ec.E_t, 0.0,
      0.0, 0.0, 1.0 / ec.mu_l();

  const double c = frame.a.x();
  const double s = frame.a.y();
  Eigen::Matrix3d T;
  T << c * c, s * s, 2.0 * c * s,
      s * s, c * c, -2.0 * c * s,
      -c * s, c * s, c * c - s * s;
  return T.transpose() * local * T;
}

double error_bound_constant(const MaterialParameters& mp) {
  return (std::max(mp.lambda, 2.0 * mp.mu_t) + mp.alpha + mp.beta + mp.gamma) / mp.mu_t;
}

}  // namespace tifem

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tifem/element.hpp"
#include "tifem/errors.hpp"

using namespace tifem;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixX2d quadratic_coords(const Eigen::Matrix<double, 4, 2>& X) {
  Eigen::MatrixX2d Y(9, 2);
  Y.topRows<4>() = X;
  for (int k = 0; k < 4; ++k) Y.row(4 + k) = 0.5 * (X.row(k) + X.row((k + 1) % 4));
  Y.row(8) = 0.25 * X.colwise().sum();
  return Y;
}

Eigen::MatrixXd rigid_modes(const Eigen::MatrixX2d& X) {
  const int n = static_cast<int>(X.rows());
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(2 * n, 3);
  for (int a = 0; a < n; ++a) {
    R(2 * a, 0) = 1.0;
    R(2 * a + 1, 1) = 1.0;
    R(2 * a, 2) = -X(a, 1);
    R(2 * a + 1, 2) = X(a, 0);
  }
  return R;
}

Eigen::Vector3d fibre_row(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * c, s * s, c * s};
}

struct Sample {
  EngineeringConstants ec;
  MaterialParameters mp;
  double angle;
};

Sample random_sample(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(0.0, kPi);
  const EngineeringConstants ec = oracle::random_material(rng);
  return {ec, derive_parameters(ec), a(rng)};
}

}  // namespace

TEST(ElementStiffness, SymmetricWithRigidNullspace) {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 10; ++k) {
    const Sample s = random_sample(rng);
    const FibreFrame frame = FibreFrame::from_angle(s.angle);
    const Eigen::Matrix<double, 4, 2> X = oracle::random_quad(rng, 0.3);
    for (FormulationVariant v : kAllVariants) {
      const Eigen::MatrixX2d coords = element_order(v) == 1 ? Eigen::MatrixX2d(X) : quadratic_coords(X);
      const Eigen::MatrixXd K = element_stiffness(coords, s.mp, frame, v);
      const double scale = K.cwiseAbs().maxCoeff();
      EXPECT_LT((K - K.transpose()).cwiseAbs().maxCoeff(), 1e-12 * scale) << to_string(v);
      EXPECT_LT((K * rigid_modes(coords)).cwiseAbs().maxCoeff(), 1e-10 * scale) << to_string(v);
    }
  }
}

TEST(ElementStiffness, ConformingMatchesGaussOracle) {
  std::mt19937_64 rng(37);
  for (int k = 0; k < 10; ++k) {
    const Sample s = random_sample(rng);
    const Eigen::Matrix<double, 4, 2> X = oracle::random_quad(rng, 0.3);
    const Eigen::Matrix3d D = oracle::plane_strain_stiffness(s.ec, s.angle);
    const Eigen::MatrixXd K = element_stiffness(X, s.mp, FibreFrame::from_angle(s.angle), FormulationVariant::Q1_CG);
    EXPECT_LT(oracle::max_rel_diff(K, oracle::bilinear_stiffness(X, D, 2)), 1e-10);
  }
}

TEST(ElementStiffness, UnderIntegratedTermsMatchOracle) {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 10; ++k) {
    const Sample s = random_sample(rng);
    const FibreFrame frame = FibreFrame::from_angle(s.angle);
    const Eigen::Matrix<double, 4, 2> X = oracle::random_quad(rng, 0.3);
    const Eigen::Matrix3d D = oracle::plane_strain_stiffness(s.ec, s.angle);
    const Eigen::Vector3d d(1, 1, 0);
    const Eigen::Vector3d m = fibre_row(s.angle);
    const Eigen::Matrix3d Dl = s.mp.lambda * d * d.transpose();
    const Eigen::Matrix3d Db = s.mp.beta * m * m.transpose();
    auto K = [&](const Eigen::Matrix3d& M, int n) { return oracle::bilinear_stiffness(X, M, n); };
    const Eigen::MatrixXd full = K(D, 2);
    EXPECT_LT(oracle::max_rel_diff(element_stiffness(X, s.mp, frame, FormulationVariant::Q1_CG_UI_lambda),
                                   full - K(Dl, 2) + K(Dl, 1)),
              1e-10);
    EXPECT_LT(oracle::max_rel_diff(element_stiffness(X, s.mp, frame, FormulationVariant::Q1_CG_UI_beta),
                                   full - K(Db, 2) + K(Db, 1)),
              1e-10);
    EXPECT_LT(oracle::max_rel_diff(element_stiffness(X, s.mp, frame, FormulationVariant::Q1_CG_UI_betalambda),
                                   full - K(Dl, 2) + K(Dl, 1) - K(Db, 2) + K(Db, 1)),
              1e-10);
  }
}

TEST(ElementStiffness, MixedEqualsUnderIntegratedOnParallelograms) {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 20; ++k) {
    const Sample s = random_sample(rng);
    const FibreFrame frame = FibreFrame::from_angle(s.angle);
    const Eigen::Matrix<double, 4, 2> X = oracle::random_parallelogram(rng);
    const Eigen::MatrixXd ui = element_stiffness(X, s.mp, frame, FormulationVariant::Q1_CG_UI_beta);
    const Eigen::MatrixXd mixed = element_stiffness(X, s.mp, frame, FormulationVariant::Q1_MIXED_P0_beta);
    EXPECT_LT(oracle::max_rel_diff(mixed, ui), 1e-12);
  }
}

TEST(ElementStiffness, MixedEqualsUnderIntegratedOnGeneralQuads) {
  // detJ is linear on a bilinear quad, so the one-point rule integrates the
  // gradient row exactly and the two forms coincide.
  std::mt19937_64 rng(47);
  for (int k = 0; k < 20; ++k) {
    const Sample s = random_sample(rng);
    const FibreFrame frame = FibreFrame::from_angle(s.angle);
    const Eigen::Matrix<double, 4, 2> X = oracle::random_quad(rng, 0.35);
    const Eigen::MatrixXd ui = element_stiffness(X, s.mp, frame, FormulationVariant::Q1_CG_UI_beta);
    const Eigen::MatrixXd mixed = element_stiffness(X, s.mp, frame, FormulationVariant::Q1_MIXED_P0_beta);
    EXPECT_LT(oracle::max_rel_diff(mixed, ui), 1e-12);
  }
}

TEST(ProjectedTerm, EqualsOnePointRule) {
  std::mt19937_64 rng(53);
  const QuadratureRule one = gauss_square(1);
  for (int k = 0; k < 20; ++k) {
    const Sample s = random_sample(rng);
    const FibreFrame frame = FibreFrame::from_angle(s.angle);
    const Eigen::Matrix<double, 4, 2> X = oracle::random_parallelogram(rng);
    EXPECT_LT(oracle::max_rel_diff(p0_projected_term(X, s.mp.lambda, ProjectedIntegrand::Volumetric, frame),
                                   element_term(X, s.mp, frame, StiffnessTerm::Volumetric, one)),
              1e-12);
    EXPECT_LT(oracle::max_rel_diff(p0_projected_term(X, s.mp.beta, ProjectedIntegrand::Extensional, frame),
                                   element_term(X, s.mp, frame, StiffnessTerm::Extensional, one)),
              1e-12);
  }
}

TEST(ProjectedTerm, GeneralQuadMatchesHighOrderOracle) {
  std::mt19937_64 rng(59);
  for (int k = 0; k < 20; ++k) {
    const double angle = std::uniform_real_distribution<double>(0.0, kPi)(rng);
    const FibreFrame frame = FibreFrame::from_angle(angle);
    const Eigen::Matrix<double, 4, 2> X = oracle::random_quad(rng, 0.4);
    EXPECT_LT(oracle::max_rel_diff(p0_projected_term(X, 3.5, ProjectedIntegrand::Volumetric, frame),
                                   oracle::projected_term(X, Eigen::Vector3d(1, 1, 0), 3.5, 5)),
              1e-12);
    EXPECT_LT(oracle::max_rel_diff(p0_projected_term(X, 2.0, ProjectedIntegrand::Extensional, frame),
                                   oracle::projected_term(X, fibre_row(angle), 2.0, 5)),
              1e-12);
  }
}

TEST(ProjectedTerm, ConstantDivergenceFieldUnchanged) {
  std::mt19937_64 rng(61);
  const Eigen::Matrix<double, 4, 2> X = oracle::random_quad(rng, 0.3);
  const FibreFrame frame = FibreFrame::from_angle(0.4);
  // u = (x, 2y): div u = 3 everywhere, so projection and full integration agree.
  Eigen::VectorXd u(8);
  for (int a = 0; a < 4; ++a) {
    u(2 * a) = X(a, 0);
    u(2 * a + 1) = 2.0 * X(a, 1);
  }
  const MaterialParameters mp = MaterialParameters::isotropic(1.0, 1.0);
  const double projected = u.dot(p0_projected_term(X, 1.0, ProjectedIntegrand::Volumetric, frame) * u);
  const double full = u.dot(element_term(X, mp, frame, StiffnessTerm::Volumetric, gauss_square(3)) * u);
  double area = 0.0;
  for (int a = 0; a < 4; ++a) {
    const int b = (a + 1) % 4;
    area += 0.5 * (X(a, 0) * X(b, 1) - X(b, 0) * X(a, 1));
  }
  EXPECT_NEAR(projected, full, 1e-12 * full);
  EXPECT_NEAR(full, 9.0 * area, 1e-12 * full);
}

TEST(ElementStiffness, VanishingCoefficientsMakeVariantsAgree) {
  std::mt19937_64 rng(67);
  const Eigen::Matrix<double, 4, 2> X = oracle::random_quad(rng, 0.3);
  const FibreFrame frame = FibreFrame::from_angle(0.7);
  const MaterialParameters iso = MaterialParameters::isotropic(5.0, 1.0);
  EXPECT_EQ(element_stiffness(X, iso, frame, FormulationVariant::Q1_CG_UI_beta),
            element_stiffness(X, iso, frame, FormulationVariant::Q1_CG));
  EXPECT_EQ(element_stiffness(X, iso, frame, FormulationVariant::Q1_MIXED_P0_beta),
            element_stiffness(X, iso, frame, FormulationVariant::Q1_CG));
  MaterialParameters no_lambda{0.0, 1.0, 1.5, 0.3, 4.0, 1.0};
  EXPECT_LT(oracle::max_rel_diff(element_stiffness(X, no_lambda, frame, FormulationVariant::Q1_CG_UI_lambda),
                                 element_stiffness(X, no_lambda, frame, FormulationVariant::Q1_CG)),
            1e-15);
}

TEST(ElementStiffness, ParallelogramGlobalEquivalence) {
  std::mt19937_64 rng(71);
  const Sample s = random_sample(rng);
  const Eigen::Matrix<double, 4, 2> X = oracle::random_parallelogram(rng);
  const FibreFrame frame = FibreFrame::from_angle(s.angle);
  const Eigen::Vector3d m = fibre_row(s.angle);
  EXPECT_LT(oracle::max_rel_diff(element_term(X, s.mp, frame, StiffnessTerm::Extensional, gauss_square(1)),
                                 oracle::projected_term(X, m, s.mp.beta, 5)),
            1e-12);
}

TEST(ElementStiffness, OrderMismatchAndInvertedElements) {
  const Eigen::Matrix<double, 4, 2> X = (Eigen::Matrix<double, 4, 2>() << 0, 0, 1, 0, 1, 1, 0, 1).finished();
  const MaterialParameters mp = MaterialParameters::isotropic(1.0, 1.0);
  const FibreFrame frame;
  EXPECT_THROW(element_stiffness(X, mp, frame, FormulationVariant::Q2_CG), std::invalid_argument);
  EXPECT_THROW(element_stiffness(quadratic_coords(X), mp, frame, FormulationVariant::Q1_CG_UI_beta),
               std::invalid_argument);
  Eigen::Matrix<double, 4, 2> flipped = X;
  flipped.row(1).swap(flipped.row(3));
  EXPECT_THROW(element_stiffness(flipped, mp, frame, FormulationVariant::Q1_CG), NonPositiveJacobian);
}

TEST(Variants, NamesRoundTrip) {
  for (FormulationVariant v : kAllVariants) EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_FALSE(parse_variant("Q3_CG").has_value());
  EXPECT_EQ(element_order(FormulationVariant::Q2_CG), 2);
  EXPECT_EQ(element_order(FormulationVariant::Q1_MIXED_P0_beta), 1);
}

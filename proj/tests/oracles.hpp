#pragma once

// Reference computations used by the tests. Nothing here calls into the
// library's constitutive or element code; the material is rebuilt from the
// engineering constants through a numerically inverted compliance matrix.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "tifem/material.hpp"

namespace oracle {

using Matrix6d = Eigen::Matrix<double, 6, 6>;

// Compliance in Voigt order (11, 22, 33, 23, 13, 12), engineering shear,
// fibre along e3.
inline Matrix6d compliance_e3(const tifem::EngineeringConstants& ec) {
  const double Et = ec.E_t;
  const double El = ec.p * ec.E_t;
  const double mut = Et / (2.0 * (1.0 + ec.nu_t));
  const double mul = ec.q * mut;
  Matrix6d S = Matrix6d::Zero();
  S(0, 0) = S(1, 1) = 1.0 / Et;
  S(0, 1) = S(1, 0) = -ec.nu_t / Et;
  S(0, 2) = S(2, 0) = S(1, 2) = S(2, 1) = -ec.nu_l / El;
  S(2, 2) = 1.0 / El;
  S(3, 3) = S(4, 4) = 1.0 / mul;
  S(5, 5) = 1.0 / mut;
  return S;
}

inline Matrix6d stiffness_e3(const tifem::EngineeringConstants& ec) {
  return compliance_e3(ec).fullPivLu().inverse();
}

// lambda, alpha, beta read off the inverted compliance using the pattern
// C12 = lambda, C13 = lambda + alpha, C33 = lambda + 2 mu_t + 2 alpha + beta + 2 gamma.
struct LameTriple {
  double lambda, alpha, beta;
};

inline LameTriple lame_from_compliance(const tifem::EngineeringConstants& ec) {
  const Matrix6d C = stiffness_e3(ec);
  const double mut = ec.E_t / (2.0 * (1.0 + ec.nu_t));
  const double gamma = 2.0 * (ec.q * mut - mut);
  const double lambda = C(0, 1);
  const double alpha = C(0, 2) - lambda;
  const double beta = C(2, 2) - lambda - 2.0 * mut - 2.0 * alpha - 2.0 * gamma;
  return {lambda, alpha, beta};
}

inline int voigt_index(int i, int j) {
  static const int map[3][3] = {{0, 5, 4}, {5, 1, 3}, {4, 3, 2}};
  return map[i][j];
}

// Plane-strain stiffness (11, 22, 12; engineering shear) for the in-plane
// fibre (cos angle, sin angle), by rotating the 3D e3 tensor.
inline Eigen::Matrix3d plane_strain_stiffness(const tifem::EngineeringConstants& ec, double angle) {
  const Matrix6d V = stiffness_e3(ec);
  const double a1 = std::cos(angle), a2 = std::sin(angle);
  Eigen::Matrix3d Q;
  Q << -a2, 0.0, a1,
        a1, 0.0, a2,
       0.0, 1.0, 0.0;
  auto Cg = [&](int i, int j, int k, int l) {
    double s = 0.0;
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q)
        for (int r = 0; r < 3; ++r)
          for (int t = 0; t < 3; ++t)
            s += Q(i, p) * Q(j, q) * Q(k, r) * Q(l, t) * V(voigt_index(p, q), voigt_index(r, t));
    return s;
  };
  const std::array<std::array<int, 2>, 3> pairs{{{0, 0}, {1, 1}, {0, 1}}};
  Eigen::Matrix3d D;
  for (int I = 0; I < 3; ++I)
    for (int J = 0; J < 3; ++J) D(I, J) = Cg(pairs[I][0], pairs[I][1], pairs[J][0], pairs[J][1]);
  return D;
}

// Plane-strain compliance by rotating the 3D compliance tensor and
// eliminating sigma_33 from eps_33 = 0.
inline Eigen::Matrix3d plane_strain_compliance(const tifem::EngineeringConstants& ec, double angle) {
  const Matrix6d V = compliance_e3(ec);
  const double a1 = std::cos(angle), a2 = std::sin(angle);
  Eigen::Matrix3d Q;
  Q << -a2, 0.0, a1,
        a1, 0.0, a2,
       0.0, 1.0, 0.0;
  auto weight = [](int i, int j) { return i == j ? 1.0 : 0.5; };
  auto St = [&](int p, int q, int r, int t) {
    return V(voigt_index(p, q), voigt_index(r, t)) * weight(p, q) * weight(r, t);
  };
  auto Sg = [&](int i, int j, int k, int l) {
    double s = 0.0;
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q)
        for (int r = 0; r < 3; ++r)
          for (int t = 0; t < 3; ++t) s += Q(i, p) * Q(j, q) * Q(k, r) * Q(l, t) * St(p, q, r, t);
    return s / (weight(i, j) * weight(k, l));
  };
  const std::array<std::array<int, 2>, 4> pairs{{{0, 0}, {1, 1}, {0, 1}, {2, 2}}};
  Eigen::Matrix4d G;
  for (int I = 0; I < 4; ++I)
    for (int J = 0; J < 4; ++J) G(I, J) = Sg(pairs[I][0], pairs[I][1], pairs[J][0], pairs[J][1]);
  return G.topLeftCorner<3, 3>() - G.topRightCorner<3, 1>() * G.bottomLeftCorner<1, 3>() / G(3, 3);
}

// Direct evaluation of the five admissibility inequalities.
inline std::array<bool, 5> stability_conditions(const tifem::EngineeringConstants& ec) {
  const double mut = ec.E_t / (2.0 * (1.0 + ec.nu_t));
  const double mul = ec.q * mut;
  return {ec.p > 0.0,
          mul >= mut && mut > 0.0,
          ec.nu_t > -1.0,
          (2.0 * ec.nu_t + 1.0) * ec.p - (2.0 * ec.nu_l + 1.0) > 0.0,
          (1.0 - ec.nu_t) * ec.p - 2.0 * ec.nu_l * ec.nu_l > 0.0};
}

inline bool admissible(const tifem::EngineeringConstants& ec) {
  for (bool b : stability_conditions(ec))
    if (!b) return false;
  return true;
}

// Random admissible material kept away from the region boundary.
inline tifem::EngineeringConstants random_material(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> log_p(std::log(0.5), std::log(50.0));
  std::uniform_real_distribution<double> nu(-0.5, 0.49);
  std::uniform_real_distribution<double> q(1.0, 4.0);
  std::uniform_real_distribution<double> log_e(0.0, std::log(1000.0));
  for (;;) {
    tifem::EngineeringConstants ec{std::exp(log_e(rng)), std::exp(log_p(rng)), q(rng), nu(rng), nu(rng)};
    const double b = (2.0 * ec.nu_t + 1.0) * ec.p - (2.0 * ec.nu_l + 1.0);
    const double c = (1.0 - ec.nu_t) * ec.p - 2.0 * ec.nu_l * ec.nu_l;
    if (admissible(ec) && b > 0.05 && c > 0.05) return ec;
  }
}

// Bilinear shape functions on [-1, 1]^2 with corners (-1,-1), (1,-1), (1,1), (-1,1).
struct Bilinear {
  Eigen::Vector4d N;
  Eigen::Matrix<double, 4, 2> dN;  // physical gradients
  double detJ;
};

inline Bilinear bilinear(const Eigen::Matrix<double, 4, 2>& X, double xi, double eta) {
  const double sx[4] = {-1, 1, 1, -1};
  const double sy[4] = {-1, -1, 1, 1};
  Bilinear b;
  Eigen::Matrix<double, 4, 2> dref;
  for (int a = 0; a < 4; ++a) {
    b.N(a) = 0.25 * (1 + sx[a] * xi) * (1 + sy[a] * eta);
    dref(a, 0) = 0.25 * sx[a] * (1 + sy[a] * eta);
    dref(a, 1) = 0.25 * sy[a] * (1 + sx[a] * xi);
  }
  const Eigen::Matrix2d J = X.transpose() * dref;
  b.detJ = J.determinant();
  b.dN = dref * J.inverse();
  return b;
}

inline Eigen::Matrix<double, 3, 8> bilinear_B(const Eigen::Matrix<double, 4, 2>& dN) {
  Eigen::Matrix<double, 3, 8> B = Eigen::Matrix<double, 3, 8>::Zero();
  for (int a = 0; a < 4; ++a) {
    B(0, 2 * a) = dN(a, 0);
    B(1, 2 * a + 1) = dN(a, 1);
    B(2, 2 * a) = dN(a, 1);
    B(2, 2 * a + 1) = dN(a, 0);
  }
  return B;
}

// Gauss-Legendre nodes and weights by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (z * p1 - p0) / (z * z - 1.0);
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

// integral over the element of B^T D B with an n x n Gauss rule.
inline Eigen::Matrix<double, 8, 8> bilinear_stiffness(const Eigen::Matrix<double, 4, 2>& X,
                                                      const Eigen::Matrix3d& D, int n) {
  std::vector<double> g, w;
  gauss_legendre(n, g, w);
  Eigen::Matrix<double, 8, 8> K = Eigen::Matrix<double, 8, 8>::Zero();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Bilinear b = bilinear(X, g[i], g[j]);
      const auto B = bilinear_B(b.dN);
      K += w[i] * w[j] * b.detJ * B.transpose() * D * B;
    }
  return K;
}

// coefficient * |e| * Pi0(c.B u) Pi0(c.B v), projections by an n x n rule.
inline Eigen::Matrix<double, 8, 8> projected_term(const Eigen::Matrix<double, 4, 2>& X,
                                                  const Eigen::Vector3d& c, double coefficient,
                                                  int n) {
  std::vector<double> g, w;
  gauss_legendre(n, g, w);
  Eigen::Matrix<double, 1, 8> row = Eigen::Matrix<double, 1, 8>::Zero();
  double area = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Bilinear b = bilinear(X, g[i], g[j]);
      row += w[i] * w[j] * b.detJ * c.transpose() * bilinear_B(b.dN);
      area += w[i] * w[j] * b.detJ;
    }
  return coefficient / area * row.transpose() * row;
}

inline Eigen::Matrix<double, 4, 2> random_quad(std::mt19937_64& rng, double jitter) {
  std::uniform_real_distribution<double> d(-jitter, jitter);
  Eigen::Matrix<double, 4, 2> X;
  X << 0, 0, 2, 0, 2, 1.5, 0, 1.5;
  for (int a = 0; a < 4; ++a)
    for (int k = 0; k < 2; ++k) X(a, k) += d(rng);
  return X;
}

inline Eigen::Matrix<double, 4, 2> random_parallelogram(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-0.4, 0.4);
  std::uniform_real_distribution<double> s(0.5, 3.0);
  const Eigen::Vector2d o(d(rng), d(rng));
  const Eigen::Vector2d e1(s(rng), d(rng));
  const Eigen::Vector2d e2(d(rng), s(rng));
  Eigen::Matrix<double, 4, 2> X;
  X.row(0) = o.transpose();
  X.row(1) = (o + e1).transpose();
  X.row(2) = (o + e1 + e2).transpose();
  X.row(3) = (o + e2).transpose();
  return X;
}

inline double max_rel_diff(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  return (A - B).cwiseAbs().maxCoeff() / std::max(B.cwiseAbs().maxCoeff(), 1e-300);
}

}  // namespace oracle

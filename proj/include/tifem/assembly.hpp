#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tifem/element.hpp"
#include "tifem/material.hpp"
#include "tifem/mesh.hpp"

namespace tifem {

using SparseMatrix = Eigen::SparseMatrix<double>;
using SparseMatrixLd = Eigen::SparseMatrix<long double>;
using VectorXld = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
using VectorField = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;

struct TractionLoad {
  std::string tag;
  VectorField traction;
};

/// Prescribes the selected displacement components at every node of `tag`.
struct DirichletCondition {
  std::string tag;
  bool fix_x = true;
  bool fix_y = true;
  VectorField value;
};

/// Global system with dofs ordered (u0x, u0y, u1x, ...). The full matrix and
/// load are kept; the reduced pair acts on the free dofs after elimination.
/// The *_extended members hold the same reduced system in long double, used
/// for residuals during iterative refinement.
struct LinearSystem {
  std::shared_ptr<const QuadMesh> mesh;
  MaterialParameters material;
  FibreFrame frame;
  FormulationVariant variant = FormulationVariant::Q1_CG;

  SparseMatrix stiffness;
  Eigen::VectorXd load;
  std::map<int, double> constrained;

  std::vector<int> equation;  // dof -> free equation index, -1 if constrained
  std::vector<int> free_dofs;
  SparseMatrix reduced_stiffness;
  Eigen::VectorXd reduced_load;

  SparseMatrixLd stiffness_extended;
  SparseMatrixLd reduced_stiffness_extended;
  VectorXld reduced_load_extended;

  static int dof(int node, int component) { return 2 * node + component; }
  int num_dofs() const { return static_cast<int>(load.size()); }
};

/// Scatters element matrices and integrates body force and edge tractions
/// (edge rule with order + 1 Gauss points). Throws UnknownBoundaryTag.
LinearSystem assemble(std::shared_ptr<const QuadMesh> mesh, const MaterialParameters& mp,
                      const FibreFrame& frame, FormulationVariant variant,
                      const VectorField& body_force = nullptr,
                      const std::vector<TractionLoad>& tractions = {});

/// Symmetric elimination: constrained dofs leave the unknowns and their
/// prescribed values move to the load as -K_fc u_c. Conditions accumulate
/// over repeated calls.
LinearSystem apply_dirichlet(LinearSystem sys, const std::vector<DirichletCondition>& conditions);

struct FieldSolution {
  std::shared_ptr<const QuadMesh> mesh;
  Eigen::VectorXd displacement;
  FormulationVariant variant = FormulationVariant::Q1_CG;
  MaterialParameters material;
  FibreFrame frame;
  double relative_residual = 0.0;  // ||K x - b|| / ||b||
  double backward_error = 0.0;     // ||K x - b|| / (|| |K| |x| || + ||b||)

  Eigen::Vector2d at_node(int node) const {
    return {displacement(2 * node), displacement(2 * node + 1)};
  }
};

/// Sparse LDL^T solve of the reduced system, followed by iterative refinement
/// with residuals of the long double system. Throws SingularSystem when the
/// constraints leave a rigid-body motion free, on a vanishing pivot, or when
/// the normwise backward error ||r|| / (|| |K| |x| || + ||b||) exceeds 1e-10.
FieldSolution solve(const LinearSystem& sys);

/// Exact displacement and gradient grad(i, j) = d u_i / d x_j.
struct ExactField {
  Eigen::Vector2d u;
  Eigen::Matrix2d grad;
};
using ExactSolution = std::function<ExactField(const Eigen::Vector2d&)>;

struct ErrorNorms {
  double h1 = 0.0;  // sqrt(|e|_0^2 + |grad e|_0^2)
  double l2 = 0.0;
  double exact_h1 = 0.0;
  double exact_l2 = 0.0;

  double relative_h1() const { return exact_h1 > 0.0 ? h1 / exact_h1 : h1; }
  double relative_l2() const { return exact_l2 > 0.0 ? l2 / exact_l2 : l2; }
};

/// Error of a discrete field against an exact one, using (order + 3)^2
/// Gauss points per element.
ErrorNorms h1_error(const FieldSolution& sol, const ExactSolution& exact);

/// u^T K u with the full (unconstrained) stiffness of `sys`.
double discrete_energy(const LinearSystem& sys, const Eigen::VectorXd& u);

/// a(u, u) for an exact field with the fully integrated constitutive law.
double exact_energy(const QuadMesh& mesh, const MaterialParameters& mp, const FibreFrame& frame,
                    const ExactSolution& exact);

}  // namespace tifem

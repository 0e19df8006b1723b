#include "tifem/assembly.hpp"

#include <Eigen/SVD>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

#include "tifem/errors.hpp"
#include "tifem/quadrature.hpp"
#include "tifem/shape_functions.hpp"

namespace tifem {

namespace {

constexpr double kPivotTolerance = 1e-14;
constexpr double kRigidModeTolerance = 1e-10;
constexpr double kBackwardErrorTolerance = 1e-10;
constexpr int kRefinementSteps = 5;
constexpr double kRefinementStop = 1e-15;

// Rank of the planar rigid motions (two translations, one rotation)
// restricted to the constrained dofs. Below 3 leaves a zero-energy mode.
int constrained_rigid_rank(const LinearSystem& sys) {
  if (sys.constrained.empty()) return 0;
  const auto& nodes = sys.mesh->nodes;
  Eigen::Vector2d lo = nodes.front(), hi = nodes.front();
  for (const auto& x : nodes) {
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  }
  const Eigen::Vector2d c = 0.5 * (lo + hi);
  const double size = std::max((hi - lo).norm(), 1e-300);
  Eigen::MatrixXd R(sys.constrained.size(), 3);
  int row = 0;
  for (const auto& [d, value] : sys.constrained) {
    const Eigen::Vector2d x = (nodes[d / 2] - c) / size;
    if (d % 2 == 0)
      R.row(row++) << 1.0, 0.0, -x.y();
    else
      R.row(row++) << 0.0, 1.0, x.x();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(R);
  svd.setThreshold(kRigidModeTolerance);
  return static_cast<int>(svd.rank());
}

void rebuild_reduced(LinearSystem& sys) {
  const int n = sys.num_dofs();
  sys.equation.assign(n, -1);
  sys.free_dofs.clear();
  for (int d = 0; d < n; ++d) {
    if (!sys.constrained.count(d)) {
      sys.equation[d] = static_cast<int>(sys.free_dofs.size());
      sys.free_dofs.push_back(d);
    }
  }
  const int nf = static_cast<int>(sys.free_dofs.size());

  VectorXld prescribed = VectorXld::Zero(n);
  for (const auto& [d, value] : sys.constrained) prescribed(d) = value;

  std::vector<Eigen::Triplet<long double>> triplets;
  triplets.reserve(sys.stiffness_extended.nonZeros());
  VectorXld load(nf);
  for (int i = 0; i < nf; ++i) load(i) = sys.load(sys.free_dofs[i]);

  for (int col = 0; col < sys.stiffness_extended.outerSize(); ++col) {
    for (SparseMatrixLd::InnerIterator it(sys.stiffness_extended, col); it; ++it) {
      const int ri = sys.equation[it.row()];
      const int ci = sys.equation[it.col()];
      if (ri >= 0 && ci >= 0) {
        triplets.emplace_back(ri, ci, it.value());
      } else if (ri >= 0) {
        load(ri) -= it.value() * prescribed(it.col());
      }
    }
  }
  sys.reduced_stiffness_extended.resize(nf, nf);
  sys.reduced_stiffness_extended.setFromTriplets(triplets.begin(), triplets.end());
  sys.reduced_load_extended = load;
  sys.reduced_stiffness = sys.reduced_stiffness_extended.cast<double>();
  sys.reduced_load = load.cast<double>();
}

}  // namespace

LinearSystem assemble(std::shared_ptr<const QuadMesh> mesh, const MaterialParameters& mp,
                      const FibreFrame& frame, FormulationVariant variant,
                      const VectorField& body_force, const std::vector<TractionLoad>& tractions) {
  for (const auto& t : tractions)
    if (!mesh->boundary_edges.count(t.tag)) throw UnknownBoundaryTag(t.tag);

  LinearSystem sys;
  sys.mesh = mesh;
  sys.material = mp;
  sys.frame = frame;
  sys.variant = variant;

  const int n = mesh->num_dofs();
  const int order = mesh->order;
  std::vector<Eigen::Triplet<long double>> triplets;
  const std::size_t nen = static_cast<std::size_t>(mesh->nodes_per_element());
  triplets.reserve(mesh->elements.size() * 4 * nen * nen);
  sys.load = Eigen::VectorXd::Zero(n);

  const QuadratureRule body_rule = full_rule(order);
  for (std::size_t e = 0; e < mesh->elements.size(); ++e) {
    const auto& conn = mesh->elements[e];
    const Eigen::MatrixX2d X = mesh->element_coords(static_cast<int>(e));
    const MatrixXld Ke = element_stiffness_extended(X, mp, frame, variant);
    for (std::size_t a = 0; a < conn.size(); ++a)
      for (int i = 0; i < 2; ++i)
        for (std::size_t b = 0; b < conn.size(); ++b)
          for (int j = 0; j < 2; ++j)
            triplets.emplace_back(LinearSystem::dof(conn[a], i), LinearSystem::dof(conn[b], j),
                                  Ke(2 * a + i, 2 * b + j));

    if (body_force) {
      for (std::size_t q = 0; q < body_rule.size(); ++q) {
        const MappedShape ms = map_shape(order, X, body_rule.points[q]);
        const Eigen::Vector2d f = body_force(ms.x);
        const double w = body_rule.weights[q] * ms.detJ;
        for (std::size_t a = 0; a < conn.size(); ++a) {
          sys.load(LinearSystem::dof(conn[a], 0)) += w * ms.N(a) * f.x();
          sys.load(LinearSystem::dof(conn[a], 1)) += w * ms.N(a) * f.y();
        }
      }
    }
  }
  sys.stiffness_extended.resize(n, n);
  sys.stiffness_extended.setFromTriplets(triplets.begin(), triplets.end());
  sys.stiffness = sys.stiffness_extended.cast<double>();

  const QuadratureRule1D edge_rule = gauss_legendre(order + 1);
  for (const auto& t : tractions) {
    for (const BoundaryEdge& edge : mesh->boundary_edges.at(t.tag)) {
      const std::vector<int> ids = mesh->edge_nodes(edge);
      for (std::size_t q = 0; q < edge_rule.points.size(); ++q) {
        const double s = edge_rule.points[q];
        const Eigen::VectorXd N = edge_shape_functions(order, s);
        // Edge is straight for both orders, so dx/ds is constant.
        const Eigen::Vector2d a = mesh->nodes[ids[0]];
        const Eigen::Vector2d b = mesh->nodes[ids[1]];
        Eigen::Vector2d x = Eigen::Vector2d::Zero();
        for (std::size_t k = 0; k < ids.size(); ++k) x += N(k) * mesh->nodes[ids[k]];
        const double jac = 0.5 * (b - a).norm();
        const Eigen::Vector2d h = t.traction(x);
        for (std::size_t k = 0; k < ids.size(); ++k) {
          sys.load(LinearSystem::dof(ids[k], 0)) += edge_rule.weights[q] * jac * N(k) * h.x();
          sys.load(LinearSystem::dof(ids[k], 1)) += edge_rule.weights[q] * jac * N(k) * h.y();
        }
      }
    }
  }

  rebuild_reduced(sys);
  return sys;
}

LinearSystem apply_dirichlet(LinearSystem sys, const std::vector<DirichletCondition>& conditions) {
  for (const auto& c : conditions) {
    auto it = sys.mesh->boundary_nodes.find(c.tag);
    if (it == sys.mesh->boundary_nodes.end()) throw UnknownBoundaryTag(c.tag);
    for (int node : it->second) {
      const Eigen::Vector2d g = c.value ? c.value(sys.mesh->nodes[node]) : Eigen::Vector2d::Zero();
      if (c.fix_x) sys.constrained[LinearSystem::dof(node, 0)] = g.x();
      if (c.fix_y) sys.constrained[LinearSystem::dof(node, 1)] = g.y();
    }
  }
  rebuild_reduced(sys);
  return sys;
}

FieldSolution solve(const LinearSystem& sys) {
  FieldSolution sol;
  sol.mesh = sys.mesh;
  sol.variant = sys.variant;
  sol.material = sys.material;
  sol.frame = sys.frame;
  sol.displacement = Eigen::VectorXd::Zero(sys.num_dofs());
  for (const auto& [d, value] : sys.constrained) sol.displacement(d) = value;
  if (sys.free_dofs.empty()) return sol;

  if (constrained_rigid_rank(sys) < 3)
    throw SingularSystem("stiffness is singular: insufficient Dirichlet constraints");

  Eigen::SimplicialLDLT<SparseMatrix> ldlt(sys.reduced_stiffness);
  if (ldlt.info() != Eigen::Success) throw SingularSystem("factorization failed");
  const Eigen::VectorXd D = ldlt.vectorD();
  const double dmax = D.cwiseAbs().maxCoeff();
  if (!(D.cwiseAbs().minCoeff() > kPivotTolerance * dmax))
    throw SingularSystem("stiffness has a zero-energy mode");

  const SparseMatrixLd& K = sys.reduced_stiffness_extended;
  const VectorXld& b = sys.reduced_load_extended;
  Eigen::VectorXd x = ldlt.solve(sys.reduced_load);
  VectorXld r = b - K * x.cast<long double>();
  for (int step = 0; step < kRefinementSteps; ++step) {
    const Eigen::VectorXd dx = ldlt.solve(r.cast<double>());
    const Eigen::VectorXd candidate = x + dx;
    const VectorXld rc = b - K * candidate.cast<long double>();
    if (!(rc.norm() < r.norm())) break;
    x = candidate;
    r = rc;
    if (dx.norm() <= kRefinementStop * x.norm()) break;
  }
  const long double bnorm = b.norm();
  sol.relative_residual = static_cast<double>(bnorm > 0 ? r.norm() / bnorm : r.norm());
  const long double scale = (K.cwiseAbs() * x.cast<long double>().cwiseAbs()).norm() + bnorm;
  const double backward = static_cast<double>(scale > 0 ? r.norm() / scale : 0.0L);
  sol.backward_error = backward;
  if (!std::isfinite(backward) || backward > kBackwardErrorTolerance)
    throw SingularSystem("solve did not meet the residual tolerance");

  for (std::size_t i = 0; i < sys.free_dofs.size(); ++i) sol.displacement(sys.free_dofs[i]) = x(i);
  return sol;
}

ErrorNorms h1_error(const FieldSolution& sol, const ExactSolution& exact) {
  const QuadMesh& mesh = *sol.mesh;
  const QuadratureRule rule = gauss_square(mesh.order + 3);
  double e0 = 0.0, e1 = 0.0, u0 = 0.0, u1 = 0.0;
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    const auto& conn = mesh.elements[e];
    const Eigen::MatrixX2d X = mesh.element_coords(static_cast<int>(e));
    Eigen::MatrixX2d U(conn.size(), 2);
    for (std::size_t a = 0; a < conn.size(); ++a) U.row(a) = sol.at_node(conn[a]).transpose();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const MappedShape ms = map_shape(mesh.order, X, rule.points[q]);
      const double w = rule.weights[q] * ms.detJ;
      const Eigen::Vector2d uh = U.transpose() * ms.N;
      const Eigen::Matrix2d gh = U.transpose() * ms.dN;
      const ExactField ex = exact(ms.x);
      e0 += w * (ex.u - uh).squaredNorm();
      e1 += w * (ex.grad - gh).squaredNorm();
      u0 += w * ex.u.squaredNorm();
      u1 += w * ex.grad.squaredNorm();
    }
  }
  return {std::sqrt(e0 + e1), std::sqrt(e0), std::sqrt(u0 + u1), std::sqrt(u0)};
}

double discrete_energy(const LinearSystem& sys, const Eigen::VectorXd& u) {
  const VectorXld x = u.cast<long double>();
  return static_cast<double>(x.dot(sys.stiffness_extended * x));
}

double exact_energy(const QuadMesh& mesh, const MaterialParameters& mp, const FibreFrame& frame,
                    const ExactSolution& exact) {
  const QuadratureRule rule = gauss_square(mesh.order + 3);
  double energy = 0.0;
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    const Eigen::MatrixX2d X = mesh.element_coords(static_cast<int>(e));
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const MappedShape ms = map_shape(mesh.order, X, rule.points[q]);
      const Eigen::Matrix2d g = exact(ms.x).grad;
      const Eigen::Matrix2d eps = 0.5 * (g + g.transpose());
      const Eigen::Matrix2d sigma = stiffness_apply(mp, frame, eps);
      energy += rule.weights[q] * ms.detJ * (sigma.array() * eps.array()).sum();
    }
  }
  return energy;
}

}  // namespace tifem

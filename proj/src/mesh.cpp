#include "tifem/mesh.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "tifem/errors.hpp"

namespace tifem {

Eigen::MatrixX2d QuadMesh::element_coords(int e) const {
  const auto& conn = elements[e];
  Eigen::MatrixX2d X(conn.size(), 2);
  for (std::size_t i = 0; i < conn.size(); ++i) X.row(i) = nodes[conn[i]].transpose();
  return X;
}

std::vector<int> QuadMesh::edge_nodes(const BoundaryEdge& edge) const {
  const auto& conn = elements[edge.element];
  const int k = edge.local_edge;
  std::vector<int> out{conn[k], conn[(k + 1) % 4]};
  if (order == 2) out.push_back(conn[4 + k]);
  return out;
}

int QuadMesh::tagged_node(const std::string& tag) const {
  auto it = boundary_nodes.find(tag);
  if (it == boundary_nodes.end() || it->second.empty()) throw UnknownBoundaryTag(tag);
  if (it->second.size() != 1) throw std::invalid_argument("tag '" + tag + "' names more than one node");
  return it->second.front();
}

namespace {

// Lattice of (nx*order + 1) x (ny*order + 1) points, x fastest, mapped through
// `place` from lattice coordinates (s, t) in [0, 1]^2.
QuadMesh structured_grid(int nx, int ny, int order,
                         const std::function<Eigen::Vector2d(double, double)>& place) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("mesh needs at least one cell per direction");
  if (order != 1 && order != 2) throw std::invalid_argument("mesh order must be 1 or 2");

  QuadMesh mesh;
  mesh.order = order;
  const int px = nx * order + 1;
  const int py = ny * order + 1;
  mesh.nodes.reserve(static_cast<std::size_t>(px) * py);
  for (int j = 0; j < py; ++j)
    for (int i = 0; i < px; ++i)
      mesh.nodes.push_back(place(static_cast<double>(i) / (px - 1), static_cast<double>(j) / (py - 1)));

  auto id = [px](int i, int j) { return j * px + i; };
  for (int ey = 0; ey < ny; ++ey) {
    for (int ex = 0; ex < nx; ++ex) {
      const int i0 = ex * order;
      const int j0 = ey * order;
      const int o = order;
      std::vector<int> conn{id(i0, j0), id(i0 + o, j0), id(i0 + o, j0 + o), id(i0, j0 + o)};
      if (order == 2) {
        conn.push_back(id(i0 + 1, j0));
        conn.push_back(id(i0 + 2, j0 + 1));
        conn.push_back(id(i0 + 1, j0 + 2));
        conn.push_back(id(i0, j0 + 1));
        conn.push_back(id(i0 + 1, j0 + 1));
      }
      mesh.elements.push_back(std::move(conn));
    }
  }

  auto elem = [nx](int ex, int ey) { return ey * nx + ex; };
  for (int ex = 0; ex < nx; ++ex) {
    mesh.boundary_edges["bottom"].push_back({elem(ex, 0), 0});
    mesh.boundary_edges["top"].push_back({elem(ex, ny - 1), 2});
  }
  for (int ey = 0; ey < ny; ++ey) {
    mesh.boundary_edges["right"].push_back({elem(nx - 1, ey), 1});
    mesh.boundary_edges["left"].push_back({elem(0, ey), 3});
  }
  for (const auto& [tag, edges] : mesh.boundary_edges) {
    std::set<int> ids;
    for (const auto& edge : edges)
      for (int n : mesh.edge_nodes(edge)) ids.insert(n);
    mesh.boundary_nodes[tag].assign(ids.begin(), ids.end());
  }

  double h = 0.0;
  for (const auto& conn : mesh.elements) {
    const double d1 = (mesh.nodes[conn[2]] - mesh.nodes[conn[0]]).norm();
    const double d2 = (mesh.nodes[conn[3]] - mesh.nodes[conn[1]]).norm();
    h = std::max({h, d1, d2});
  }
  mesh.h = h;
  return mesh;
}

}  // namespace

QuadMesh rectangle_mesh(double L, double H, int nx, int ny, int order) {
  if (!(L > 0.0) || !(H > 0.0)) throw std::invalid_argument("rectangle dimensions must be positive");
  QuadMesh mesh = structured_grid(nx, ny, order, [L, H](double s, double t) {
    return Eigen::Vector2d(s * L, -0.5 * H + t * H);
  });
  const int px = nx * order + 1;
  const int py = ny * order + 1;
  mesh.boundary_nodes["A"] = {0};
  mesh.boundary_nodes["B"] = {(py - 1) * px};
  mesh.boundary_nodes["tip"] = {py * px - 1};
  return mesh;
}

QuadMesh cook_mesh(int n, int order) {
  const Eigen::Vector2d p0(0.0, 0.0), p1(48.0, 44.0), p2(48.0, 60.0), p3(0.0, 44.0);
  QuadMesh mesh = structured_grid(n, n, order, [&](double s, double t) {
    return Eigen::Vector2d((1 - s) * (1 - t) * p0 + s * (1 - t) * p1 + s * t * p2 + (1 - s) * t * p3);
  });
  const int p = n * order + 1;
  mesh.boundary_nodes["tip"] = {p * p - 1};
  return mesh;
}

QuadMesh transformed(const QuadMesh& mesh, const Eigen::Matrix2d& R, const Eigen::Vector2d& t) {
  QuadMesh out = mesh;
  for (auto& x : out.nodes) x = R * x + t;
  double h = 0.0;
  for (const auto& conn : out.elements) {
    h = std::max({h, (out.nodes[conn[2]] - out.nodes[conn[0]]).norm(),
                  (out.nodes[conn[3]] - out.nodes[conn[1]]).norm()});
  }
  out.h = h;
  return out;
}

double element_area(const QuadMesh& mesh, int e) {
  // Shoelace over the four corners; edges are straight for both orders.
  const auto& c = mesh.elements[e];
  double twice = 0.0;
  for (int k = 0; k < 4; ++k) {
    const auto& a = mesh.nodes[c[k]];
    const auto& b = mesh.nodes[c[(k + 1) % 4]];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * twice;
}

void write_mesh(std::ostream& out, const QuadMesh& mesh) {
  out << "nodes " << mesh.nodes.size() << '\n';
  for (const auto& x : mesh.nodes) out << fmt::format("{:.17g} {:.17g}\n", x.x(), x.y());
  out << "elements " << mesh.elements.size() << ' ' << mesh.order << '\n';
  for (const auto& conn : mesh.elements) {
    for (std::size_t i = 0; i < conn.size(); ++i) out << (i ? " " : "") << conn[i];
    out << '\n';
  }
  for (const auto& [tag, ids] : mesh.boundary_nodes) {
    out << "tag " << tag << ' ' << ids.size() << '\n';
    for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? " " : "") << ids[i];
    out << '\n';
  }
}

}  // namespace tifem

#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace tifem {

/// A boundary edge as (element index, local edge index). Local edge k joins
/// corner k to corner (k + 1) % 4.
struct BoundaryEdge {
  int element = 0;
  int local_edge = 0;

  friend bool operator==(const BoundaryEdge&, const BoundaryEdge&) = default;
};

/// Structured quadrilateral mesh of 4-node (order 1) or 9-node (order 2)
/// elements. Element node order: 4 corners counterclockwise, then for order 2
/// the midside nodes of edges 0..3 and the centre node.
struct QuadMesh {
  int order = 1;
  std::vector<Eigen::Vector2d> nodes;
  std::vector<std::vector<int>> elements;
  std::map<std::string, std::vector<BoundaryEdge>> boundary_edges;
  std::map<std::string, std::vector<int>> boundary_nodes;
  double h = 0.0;

  int nodes_per_element() const { return order == 1 ? 4 : 9; }
  int num_dofs() const { return 2 * static_cast<int>(nodes.size()); }
  /// Element nodal coordinates as rows.
  Eigen::MatrixX2d element_coords(int e) const;
  /// Global node indices along a local edge, endpoints first then midside.
  std::vector<int> edge_nodes(const BoundaryEdge& edge) const;
  /// The single node tagged `tag`; throws UnknownBoundaryTag if absent and
  /// std::invalid_argument if the tag covers several nodes.
  int tagged_node(const std::string& tag) const;
};

/// Axis-aligned grid over [0, L] x [-H/2, H/2] with tags left, right, top,
/// bottom (edges and nodes) and corner nodes "A" = (0, -H/2),
/// "B" = (0, H/2), "tip" = (L, H/2).
QuadMesh rectangle_mesh(double L, double H, int nx, int ny, int order);

/// n x n bilinear image of the unit square on the Cook panel
/// (0,0), (48,44), (48,60), (0,44). Tags left (clamped), right (loaded),
/// top, bottom and the corner node "tip" = (48, 60).
QuadMesh cook_mesh(int n, int order);

/// Applies x -> R x + t to every node; tags and connectivity are kept.
QuadMesh transformed(const QuadMesh& mesh, const Eigen::Matrix2d& R, const Eigen::Vector2d& t);

double element_area(const QuadMesh& mesh, int e);

/// Plain-text listing:
///   nodes <count>            then one "x y" line per node
///   elements <count> <order> then one line of node indices per element
///   tag <name> <count>       then the node indices of that tag on one line
void write_mesh(std::ostream& out, const QuadMesh& mesh);

}  // namespace tifem

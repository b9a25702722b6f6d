#pragma once

#include <array>
#include <string>
#include <vector>

#include "fracsim/crack_set.hpp"
#include "fracsim/domain.hpp"

namespace fracsim {

struct MeshFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SegmentNotOnMesh : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Refine the tensor grid lines inside the box: x-lines within the box's
/// x-range and y-lines within its y-range are subdivided by `factor`.
/// Where boxes overlap on an axis the largest factor wins.
struct RefinementBox {
  Rect rect;
  int factor = 4;
};

struct MeshParams {
  double h = 0.0625;
  std::vector<RefinementBox> boxes;
  double min_angle_deg = 1.0;
};

/// Nested refinement boxes of shrinking radius around the crack tips
/// (lattice nodes of degree 1). Level l has half the radius of level l-1
/// and factor^(l+1), so the innermost box reaches factor^levels.
std::vector<RefinementBox> tip_refinement_boxes(const CrackSet& k, double radius,
                                                int factor = 4, int levels = 2);

/// Conforming triangulation of Ω∖K on a graded tensor grid. Nodes along
/// crack interiors are duplicated per side; crack tips keep a single node.
struct SlitMesh {
  enum Tag { Neumann = 0, Dirichlet = 1, CrackFace = 2 };

  std::vector<Vec2> nodes;  // slit copies included
  std::vector<std::array<int, 3>> tris;  // ccw
  int n_base_nodes = 0;
  std::vector<int> base_node;  // node -> tensor grid node index

  struct SlitPair {
    int plus = -1;
    int minus = -1;
  };
  std::vector<SlitPair> slit_pairs;          // straight-through crack nodes
  std::vector<std::vector<int>> slit_groups; // all duplication groups (copies, original first)
  std::vector<char> node_on_crack;
  std::vector<double> node_side;  // +1/-1 for two-sided slit copies, else 0
  std::vector<char> node_dirichlet;

  struct BEdge {
    int a = 0, b = 0;  // a < b
    int tri = -1;      // the single adjacent triangle
    Tag tag = Neumann;
    double side = 0.0;  // crack faces only
  };
  std::vector<BEdge> boundary_edges;

  std::vector<int> tri_component;
  std::vector<int> node_component;
  int n_components = 0;
  std::vector<char> component_has_dirichlet;

  DomainSpec domain;
  double h_nominal = 0.0;
  std::vector<double> xlines, ylines;

  double tri_area(int t) const {
    const auto& tr = tris[static_cast<std::size_t>(t)];
    const Vec2 e1 = nodes[tr[1]] - nodes[tr[0]];
    const Vec2 e2 = nodes[tr[2]] - nodes[tr[0]];
    return 0.5 * e1.cross(e2);
  }
  Vec2 tri_centroid(int t) const {
    const auto& tr = tris[static_cast<std::size_t>(t)];
    return (nodes[tr[0]] + nodes[tr[1]] + nodes[tr[2]]) * (1.0 / 3.0);
  }
};

SlitMesh build_mesh(const DomainSpec& domain, const CrackSet& crack, const MeshParams& params);

struct MeshReport {
  struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
  };
  std::vector<Check> checks;
  bool all_pass = true;
  void add(const std::string& name, bool pass, const std::string& detail = "");
};

/// Re-derives every SlitMesh invariant from scratch and reports per check.
MeshReport validate_mesh(const SlitMesh& mesh, const CrackSet& crack);

/// Plain-text export: node/triangle/boundary-edge blocks, 0-based indices.
std::string export_mesh_text(const SlitMesh& mesh);

}  // namespace fracsim

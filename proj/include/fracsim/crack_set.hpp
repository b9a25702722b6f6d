#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fracsim/geometry.hpp"

namespace fracsim {

struct CrackOffLattice : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Uniform node lattice carrying the crack geometry. Nodes are
/// origin + spacing*(i,j) for 0 <= i <= nx, 0 <= j <= ny.
struct LatticeSpec {
  Vec2 origin{0.0, 0.0};
  double spacing = 1.0;
  int nx = 1;
  int ny = 1;

  int num_nodes() const { return (nx + 1) * (ny + 1); }
  int node_id(int i, int j) const { return j * (nx + 1) + i; }
  int node_i(int id) const { return id % (nx + 1); }
  int node_j(int id) const { return id / (nx + 1); }
  Vec2 node(int i, int j) const { return {origin.x + spacing * i, origin.y + spacing * j}; }
  Vec2 node(int id) const { return node(node_i(id), node_j(id)); }
  bool in_range(int i, int j) const { return i >= 0 && i <= nx && j >= 0 && j <= ny; }
  void validate() const;

  /// Nearest lattice node to p; err receives the snap distance.
  int nearest_node(const Vec2& p, double* err = nullptr) const;

  bool operator==(const LatticeSpec&) const = default;
};

/// Lattice covering the closed rectangle with the given spacing. Throws if
/// the spacing does not divide both side lengths.
LatticeSpec make_lattice(const Rect& rect, double spacing);

/// Undirected lattice edge between 8-neighbor nodes, stored with a < b.
struct LatticeEdge {
  int a = 0;
  int b = 0;
  auto operator<=>(const LatticeEdge&) const = default;
};

struct ComponentLabeling {
  std::vector<int> label;  // per edge, dense ids starting at 0
  int count = 0;
};

/// Compact polyline crack: a duplicate-free set of lattice edges.
/// Immutable in spirit; mutation happens only while assembling a set.
class CrackSet {
 public:
  CrackSet() = default;
  explicit CrackSet(LatticeSpec lattice) : lattice_(lattice) {}

  const LatticeSpec& lattice() const { return lattice_; }
  const std::vector<LatticeEdge>& edges() const { return edges_; }
  bool empty() const { return edges_.empty(); }
  std::size_t size() const { return edges_.size(); }
  double snap_error() const { return snap_error_; }
  void set_snap_error(double e) { snap_error_ = e; }

  /// Inserts the edge (validated as an 8-neighbor pair inside the lattice).
  /// Duplicates are ignored.
  void add_edge(int a, int b);
  void add_edge(const LatticeEdge& e) { add_edge(e.a, e.b); }

  bool has_edge(int a, int b) const;
  bool contains(const CrackSet& other) const;

  Segment segment(const LatticeEdge& e) const { return {lattice_.node(e.a), lattice_.node(e.b)}; }
  std::vector<Segment> segments() const;

  CrackSet with_edges(const std::vector<LatticeEdge>& extra) const;

  std::string to_json() const;
  static CrackSet from_json(const std::string& text);

  bool operator==(const CrackSet& o) const {
    return lattice_ == o.lattice_ && edges_ == o.edges_;
  }

 private:
  LatticeSpec lattice_;
  std::vector<LatticeEdge> edges_;  // sorted, unique
  double snap_error_ = 0.0;
};

/// Sum of Euclidean edge lengths (the H^1 measure of the polyline set).
double crack_length(const CrackSet& k);

/// Partition of the edges into topological components of the closed union.
/// Edges sharing an endpoint are joined, as are the two crossing diagonals
/// of one lattice cell.
ComponentLabeling connected_components(const CrackSet& k);

int component_count(const CrackSet& k);

/// Snaps p to the nearest lattice node, updating the running snap error.
/// Throws CrackOffLattice if the error exceeds tol.
int snap_to_lattice(const LatticeSpec& lat, const Vec2& p, double tol, double& err);

/// Straight chain of lattice edges from node a to node b (axis-aligned or
/// exact diagonal in index space).
void add_chain(CrackSet& k, int a, int b);

/// Horizontal crack [x0,x1] x {y} snapped onto the lattice.
CrackSet horizontal_crack(const LatticeSpec& lat, double x0, double x1, double y,
                          double snap_tol);

/// The n-component midline family on (0,1)x(-1,1):
/// union over i < n of [i/n, i/n + 1/(2n)] x {0}.
CrackSet oscillating_crack(int n, const LatticeSpec& lat, double snap_tol);

/// The densely packed midline family on (0,1)x(-1,1):
/// union over i < n of [i/n, (i+1)/n - e^{-n}] x {0}.
CrackSet packed_crack(int n, const LatticeSpec& lat, double snap_tol);

struct GolabReport {
  std::vector<double> sequence_lengths;  // H^1(K_n ∩ U)
  double tail_min = 0.0;                 // min over the second half of the sequence
  double liminf_estimate = 0.0;          // tail_min extrapolated by the last increment
  double limit_length = 0.0;             // H^1(K ∩ U)
  bool semicontinuous = false;           // limit_length <= liminf_estimate + tol
};

/// Diagnostic for lower semicontinuity of length along a sequence. Only a
/// finite prefix is available, so the liminf is estimated as the tail
/// minimum plus a geometric extrapolation of the last increment; constant
/// tails get no slack.
GolabReport golab_report(const std::vector<CrackSet>& sequence, const CrackSet& k_limit,
                         const Rect& u, double tol = 1e-9);

}  // namespace fracsim

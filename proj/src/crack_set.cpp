#include "fracsim/crack_set.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <json.hpp>

namespace fracsim {

void LatticeSpec::validate() const {
  if (!(spacing > 0.0)) throw CrackOffLattice("LatticeSpec: spacing must be positive");
  if (nx < 1 || ny < 1) throw CrackOffLattice("LatticeSpec: nx, ny must be positive");
}

int LatticeSpec::nearest_node(const Vec2& p, double* err) const {
  int i = static_cast<int>(std::lround((p.x - origin.x) / spacing));
  int j = static_cast<int>(std::lround((p.y - origin.y) / spacing));
  i = std::clamp(i, 0, nx);
  j = std::clamp(j, 0, ny);
  if (err) *err = (p - node(i, j)).norm();
  return node_id(i, j);
}

LatticeSpec make_lattice(const Rect& rect, double spacing) {
  if (!(spacing > 0.0)) throw CrackOffLattice("make_lattice: spacing must be positive");
  const double fx = rect.width() / spacing;
  const double fy = rect.height() / spacing;
  const int nx = static_cast<int>(std::lround(fx));
  const int ny = static_cast<int>(std::lround(fy));
  if (std::abs(fx - nx) > 1e-9 || std::abs(fy - ny) > 1e-9)
    throw CrackOffLattice("make_lattice: spacing does not divide the domain rectangle");
  LatticeSpec lat{{rect.x0, rect.y0}, spacing, nx, ny};
  lat.validate();
  return lat;
}

void CrackSet::add_edge(int a, int b) {
  if (a == b) throw CrackOffLattice("CrackSet: degenerate edge");
  if (a > b) std::swap(a, b);
  const int ia = lattice_.node_i(a), ja = lattice_.node_j(a);
  const int ib = lattice_.node_i(b), jb = lattice_.node_j(b);
  if (!lattice_.in_range(ia, ja) || !lattice_.in_range(ib, jb))
    throw CrackOffLattice("CrackSet: edge endpoint outside lattice");
  const int di = std::abs(ia - ib), dj = std::abs(ja - jb);
  if (di > 1 || dj > 1 || (di == 0 && dj == 0))
    throw CrackOffLattice("CrackSet: endpoints are not 8-neighbors");
  const LatticeEdge e{a, b};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it != edges_.end() && *it == e) return;
  edges_.insert(it, e);
}

bool CrackSet::has_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges_.begin(), edges_.end(), LatticeEdge{a, b});
}

bool CrackSet::contains(const CrackSet& other) const {
  return std::includes(edges_.begin(), edges_.end(), other.edges_.begin(), other.edges_.end());
}

std::vector<Segment> CrackSet::segments() const {
  std::vector<Segment> out;
  out.reserve(edges_.size());
  for (const LatticeEdge& e : edges_) out.push_back(segment(e));
  return out;
}

CrackSet CrackSet::with_edges(const std::vector<LatticeEdge>& extra) const {
  CrackSet k = *this;
  for (const LatticeEdge& e : extra) k.add_edge(e);
  return k;
}

std::string CrackSet::to_json() const {
  nlohmann::json j;
  j["lattice"] = {{"origin", {lattice_.origin.x, lattice_.origin.y}},
                  {"spacing", lattice_.spacing},
                  {"nx", lattice_.nx},
                  {"ny", lattice_.ny}};
  auto& arr = j["edges"] = nlohmann::json::array();
  for (const LatticeEdge& e : edges_) arr.push_back({e.a, e.b});  // already lexicographic
  return j.dump();
}

CrackSet CrackSet::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const auto& l = j.at("lattice");
  LatticeSpec lat;
  lat.origin = {l.at("origin")[0].get<double>(), l.at("origin")[1].get<double>()};
  lat.spacing = l.at("spacing").get<double>();
  lat.nx = l.at("nx").get<int>();
  lat.ny = l.at("ny").get<int>();
  lat.validate();
  CrackSet k(lat);
  for (const auto& e : j.at("edges")) k.add_edge(e[0].get<int>(), e[1].get<int>());
  return k;
}

double crack_length(const CrackSet& k) {
  double sum = 0.0;
  for (const LatticeEdge& e : k.edges()) sum += k.segment(e).length();
  return sum;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Cell index of a diagonal edge, or -1 for axis edges. dir receives +1 for
// slope +1 and -1 for slope -1.
int diagonal_cell(const LatticeSpec& lat, const LatticeEdge& e, int* dir) {
  const int ia = lat.node_i(e.a), ja = lat.node_j(e.a);
  const int ib = lat.node_i(e.b), jb = lat.node_j(e.b);
  if (ia == ib || ja == jb) return -1;
  const int ci = std::min(ia, ib);
  const int cj = std::min(ja, jb);
  *dir = ((ib - ia) * (jb - ja) > 0) ? +1 : -1;
  return cj * lat.nx + ci;
}

}  // namespace

ComponentLabeling connected_components(const CrackSet& k) {
  ComponentLabeling out;
  const auto& edges = k.edges();
  if (edges.empty()) return out;

  Dsu dsu(static_cast<int>(edges.size()));
  std::map<int, int> node_rep;   // lattice node -> edge index
  std::map<int, int> cell_diag;  // cell -> edge index of first diagonal seen
  for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei) {
    for (int v : {edges[ei].a, edges[ei].b}) {
      auto [it, inserted] = node_rep.emplace(v, ei);
      if (!inserted) dsu.unite(ei, it->second);
    }
    int dir = 0;
    const int cell = diagonal_cell(k.lattice(), edges[ei], &dir);
    if (cell >= 0) {
      // The two diagonals of one cell cross at its center.
      auto [it, inserted] = cell_diag.emplace(cell, ei);
      if (!inserted) dsu.unite(ei, it->second);
    }
  }

  out.label.resize(edges.size());
  std::map<int, int> dense;
  for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei) {
    const int root = dsu.find(ei);
    auto [it, inserted] = dense.emplace(root, out.count);
    if (inserted) ++out.count;
    out.label[ei] = it->second;
  }
  return out;
}

int component_count(const CrackSet& k) { return connected_components(k).count; }

int snap_to_lattice(const LatticeSpec& lat, const Vec2& p, double tol, double& err) {
  double e = 0.0;
  const int id = lat.nearest_node(p, &e);
  if (e > tol)
    throw CrackOffLattice("snap_to_lattice: point (" + std::to_string(p.x) + "," +
                          std::to_string(p.y) + ") is " + std::to_string(e) +
                          " from the nearest lattice node (tol " + std::to_string(tol) + ")");
  err = std::max(err, e);
  return id;
}

void add_chain(CrackSet& k, int a, int b) {
  const LatticeSpec& lat = k.lattice();
  int i = lat.node_i(a), j = lat.node_j(a);
  const int ib = lat.node_i(b), jb = lat.node_j(b);
  const int di = (ib > i) - (ib < i);
  const int dj = (jb > j) - (jb < j);
  if (di != 0 && dj != 0 && std::abs(ib - i) != std::abs(jb - j))
    throw CrackOffLattice("add_chain: endpoints not on a lattice-aligned line");
  while (i != ib || j != jb) {
    const int ni = i + di, nj = j + dj;
    k.add_edge(lat.node_id(i, j), lat.node_id(ni, nj));
    i = ni;
    j = nj;
  }
}

CrackSet horizontal_crack(const LatticeSpec& lat, double x0, double x1, double y,
                          double snap_tol) {
  CrackSet k(lat);
  double err = 0.0;
  const int a = snap_to_lattice(lat, {x0, y}, snap_tol, err);
  const int b = snap_to_lattice(lat, {x1, y}, snap_tol, err);
  if (a == b) throw CrackOffLattice("horizontal_crack: segment collapses on this lattice");
  add_chain(k, a, b);
  k.set_snap_error(err);
  return k;
}

CrackSet oscillating_crack(int n, const LatticeSpec& lat, double snap_tol) {
  if (n < 1) throw CrackOffLattice("oscillating_crack: n must be >= 1");
  CrackSet k(lat);
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x0 = static_cast<double>(i) / n;
    const double x1 = x0 + 0.5 / n;
    const int a = snap_to_lattice(lat, {x0, 0.0}, snap_tol, err);
    const int b = snap_to_lattice(lat, {x1, 0.0}, snap_tol, err);
    if (a == b) throw CrackOffLattice("oscillating_crack: segment collapses at n=" + std::to_string(n));
    add_chain(k, a, b);
  }
  k.set_snap_error(err);
  if (component_count(k) != n)
    throw CrackOffLattice("oscillating_crack: snapped segments merged at n=" + std::to_string(n));
  return k;
}

CrackSet packed_crack(int n, const LatticeSpec& lat, double snap_tol) {
  if (n < 1) throw CrackOffLattice("packed_crack: n must be >= 1");
  CrackSet k(lat);
  double err = 0.0;
  const double gap = std::exp(-static_cast<double>(n));
  for (int i = 0; i < n; ++i) {
    const double x0 = static_cast<double>(i) / n;
    const double x1 = static_cast<double>(i + 1) / n - gap;
    const int a = snap_to_lattice(lat, {x0, 0.0}, snap_tol, err);
    const int b = snap_to_lattice(lat, {x1, 0.0}, snap_tol, err);
    if (a == b) throw CrackOffLattice("packed_crack: segment collapses at n=" + std::to_string(n));
    add_chain(k, a, b);
  }
  k.set_snap_error(err);
  if (component_count(k) != n)
    throw CrackOffLattice("packed_crack: gap e^-n unresolved on this lattice at n=" +
                          std::to_string(n));
  return k;
}

namespace {

double clipped_length(const CrackSet& k, const Rect& u) {
  double sum = 0.0;
  for (const Segment& s : k.segments())
    if (auto c = clip_segment(s, u)) sum += c->length();
  return sum;
}

}  // namespace

GolabReport golab_report(const std::vector<CrackSet>& sequence, const CrackSet& k_limit,
                         const Rect& u, double tol) {
  GolabReport r;
  for (const CrackSet& k : sequence) r.sequence_lengths.push_back(clipped_length(k, u));
  r.limit_length = clipped_length(k_limit, u);
  if (!r.sequence_lengths.empty()) {
    const std::size_t tail_start = r.sequence_lengths.size() / 2;
    r.tail_min = *std::min_element(r.sequence_lengths.begin() + static_cast<std::ptrdiff_t>(tail_start),
                                   r.sequence_lengths.end());
    const double last = r.sequence_lengths.back();
    const double prev = r.sequence_lengths.size() >= 2
                            ? r.sequence_lengths[r.sequence_lengths.size() - 2]
                            : last;
    // Geometric extrapolation of the tail (exact for increments with ratio 1/2).
    r.liminf_estimate = std::max(r.tail_min, last + 2.0 * std::max(0.0, last - prev));
    r.semicontinuous = r.limit_length <= r.liminf_estimate + tol;
  }
  return r;
}

}  // namespace fracsim

#include "fracsim/slit_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace fracsim {

namespace {

constexpr double kLineTol = 1e-9;

struct LineSet {
  std::vector<double> lines;
  std::vector<char> pinned;

  // Snap-or-insert: coordinates that nearly coincide with an existing
  // unpinned line move that line instead of creating a sliver column.
  void insert(double c) {
    auto it = std::lower_bound(lines.begin(), lines.end(), c);
    const std::size_t hi = static_cast<std::size_t>(it - lines.begin());
    double dlo = 1e300, dhi = 1e300;
    if (hi > 0) dlo = c - lines[hi - 1];
    if (hi < lines.size()) dhi = lines[hi] - c;
    const std::size_t near = dlo <= dhi ? hi - 1 : hi;
    const double dn = std::min(dlo, dhi);
    if (dn <= kLineTol) {
      pinned[near] = 1;
      return;
    }
    double gap = 1e300;
    if (near > 0) gap = std::min(gap, lines[near] - lines[near - 1]);
    if (near + 1 < lines.size()) gap = std::min(gap, lines[near + 1] - lines[near]);
    const bool movable = near > 0 && near + 1 < lines.size() && !pinned[near];
    if (movable && dn <= 0.3 * gap) {
      lines[near] = c;
      pinned[near] = 1;
      return;
    }
    lines.insert(lines.begin() + static_cast<std::ptrdiff_t>(hi), c);
    pinned.insert(pinned.begin() + static_cast<std::ptrdiff_t>(hi), 1);
  }

  int find(double c, const char* what) const {
    auto it = std::lower_bound(lines.begin(), lines.end(), c - kLineTol);
    if (it == lines.end() || std::abs(*it - c) > kLineTol)
      throw CrackOffLattice(std::string(what) + ": coordinate " + std::to_string(c) +
                            " is not a grid line");
    return static_cast<int>(it - lines.begin());
  }
};

LineSet build_axis_lines(double lo, double hi, double h,
                         const std::vector<RefinementBox>& boxes, bool x_axis) {
  const int nb = std::max(1, static_cast<int>(std::lround((hi - lo) / h)));
  const double step = (hi - lo) / nb;
  std::vector<long long> factor(static_cast<std::size_t>(nb), 1);
  for (const RefinementBox& box : boxes) {
    if (box.factor < 1) throw MeshFailure("refinement factor must be >= 1");
    const double blo = x_axis ? box.rect.x0 : box.rect.y0;
    const double bhi = x_axis ? box.rect.x1 : box.rect.y1;
    for (int k = 0; k < nb; ++k) {
      const double clo = lo + k * step, chi = lo + (k + 1) * step;
      if (std::min(chi, bhi) - std::max(clo, blo) > kLineTol)
        factor[static_cast<std::size_t>(k)] = std::max<long long>(factor[static_cast<std::size_t>(k)], box.factor);
    }
  }
  LineSet ls;
  ls.lines.push_back(lo);
  for (int k = 0; k < nb; ++k) {
    const double clo = lo + k * step;
    const long long f = factor[static_cast<std::size_t>(k)];
    if (f > 4096) throw MeshFailure("refinement factor overflow in nested boxes");
    for (long long s = 1; s <= f; ++s) ls.lines.push_back(clo + step * static_cast<double>(s) / static_cast<double>(f));
  }
  ls.lines.back() = hi;  // exact
  ls.pinned.assign(ls.lines.size(), 0);
  ls.pinned.front() = ls.pinned.back() = 1;
  return ls;
}

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

double min_angle_deg_of(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double la = (b - c).norm(), lb = (a - c).norm(), lc = (a - b).norm();
  auto ang = [](double opp, double s1, double s2) {
    const double cosv = std::clamp((s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2), -1.0, 1.0);
    return std::acos(cosv) * 180.0 / M_PI;
  };
  return std::min({ang(la, lb, lc), ang(lb, la, lc), ang(lc, la, lb)});
}

}  // namespace

std::vector<RefinementBox> tip_refinement_boxes(const CrackSet& k, double radius, int factor,
                                                int levels) {
  std::map<int, int> degree;
  for (const LatticeEdge& e : k.edges()) {
    ++degree[e.a];
    ++degree[e.b];
  }
  std::vector<RefinementBox> boxes;
  for (const auto& [node, deg] : degree) {
    if (deg != 1) continue;
    const Vec2 p = k.lattice().node(node);
    double r = radius;
    int f = factor;
    for (int l = 0; l < levels; ++l) {
      boxes.push_back({Rect{p.x - r, p.x + r, p.y - r, p.y + r}, f});
      r *= 0.5;
      f *= factor;
    }
  }
  return boxes;
}

SlitMesh build_mesh(const DomainSpec& domain, const CrackSet& crack, const MeshParams& params) {
  domain.validate();
  if (!(params.h > 0.0)) throw MeshFailure("mesh size h must be positive");

  SlitMesh m;
  m.domain = domain;
  m.h_nominal = params.h;

  LineSet xs = build_axis_lines(domain.rect.x0, domain.rect.x1, params.h, params.boxes, true);
  LineSet ys = build_axis_lines(domain.rect.y0, domain.rect.y1, params.h, params.boxes, false);

  // The grid must carry every crack node exactly.
  std::set<int> crack_lattice_nodes;
  for (const LatticeEdge& e : crack.edges()) {
    crack_lattice_nodes.insert(e.a);
    crack_lattice_nodes.insert(e.b);
  }
  for (int n : crack_lattice_nodes) {
    const Vec2 p = crack.lattice().node(n);
    if (!domain.rect.contains(p, kLineTol))
      throw CrackOffLattice("crack node outside the domain rectangle");
    xs.insert(p.x);
    ys.insert(p.y);
  }

  const int NX = static_cast<int>(xs.lines.size());
  const int NY = static_cast<int>(ys.lines.size());
  m.xlines = xs.lines;
  m.ylines = ys.lines;
  auto grid_id = [NX](int i, int j) { return j * NX + i; };

  // Crack edges expressed as grid edges; diagonal cells get a forced split.
  std::unordered_set<std::uint64_t> crack_edges;
  std::unordered_map<long long, int> cell_diag;  // cell -> +1 ('/' ) or -1 ('\')
  auto cell_key = [NX](int i, int j) { return static_cast<long long>(j) * NX + i; };

  for (const LatticeEdge& e : crack.edges()) {
    Vec2 p = crack.lattice().node(e.a);
    Vec2 q = crack.lattice().node(e.b);
    if (std::abs(p.y - q.y) <= kLineTol) {  // horizontal
      if (p.x > q.x) std::swap(p, q);
      const int j = ys.find(p.y, "crack");
      const int i0 = xs.find(p.x, "crack"), i1 = xs.find(q.x, "crack");
      for (int i = i0; i < i1; ++i) crack_edges.insert(edge_key(grid_id(i, j), grid_id(i + 1, j)));
    } else if (std::abs(p.x - q.x) <= kLineTol) {  // vertical
      if (p.y > q.y) std::swap(p, q);
      const int i = xs.find(p.x, "crack");
      const int j0 = ys.find(p.y, "crack"), j1 = ys.find(q.y, "crack");
      for (int j = j0; j < j1; ++j) crack_edges.insert(edge_key(grid_id(i, j), grid_id(i, j + 1)));
    } else {  // diagonal
      if (p.x > q.x) std::swap(p, q);
      const double slope = (q.y - p.y) / (q.x - p.x);
      const int i0 = xs.find(p.x, "crack"), i1 = xs.find(q.x, "crack");
      int jprev = ys.find(p.y, "crack");
      for (int i = i0; i < i1; ++i) {
        const double ynext = p.y + slope * (xs.lines[static_cast<std::size_t>(i + 1)] - p.x);
        const int jnext = ys.find(ynext, "diagonal crack (grid refinement mismatch)");
        if (std::abs(jnext - jprev) != 1)
          throw CrackOffLattice("diagonal crack edge does not align with grid cells");
        const int cj = std::min(jprev, jnext);
        const int dir = jnext > jprev ? +1 : -1;
        auto [it, inserted] = cell_diag.emplace(cell_key(i, cj), dir);
        if (!inserted && it->second != dir)
          throw CrackOffLattice("crossing diagonal crack edges in one cell are not meshable");
        crack_edges.insert(edge_key(grid_id(i, jprev), grid_id(i + 1, jnext)));
        jprev = jnext;
      }
    }
  }

  // Tensor triangulation on base grid ids.
  m.n_base_nodes = NX * NY;
  m.nodes.resize(static_cast<std::size_t>(m.n_base_nodes));
  for (int j = 0; j < NY; ++j)
    for (int i = 0; i < NX; ++i)
      m.nodes[static_cast<std::size_t>(grid_id(i, j))] = {xs.lines[static_cast<std::size_t>(i)], ys.lines[static_cast<std::size_t>(j)]};
  m.base_node.resize(m.nodes.size());
  std::iota(m.base_node.begin(), m.base_node.end(), 0);

  m.tris.reserve(static_cast<std::size_t>(2 * (NX - 1) * (NY - 1)));
  for (int j = 0; j + 1 < NY; ++j)
    for (int i = 0; i + 1 < NX; ++i) {
      const int bl = grid_id(i, j), br = grid_id(i + 1, j);
      const int tl = grid_id(i, j + 1), tr = grid_id(i + 1, j + 1);
      int dir = +1;
      if (auto it = cell_diag.find(cell_key(i, j)); it != cell_diag.end()) dir = it->second;
      if (dir > 0) {
        m.tris.push_back({bl, br, tr});
        m.tris.push_back({bl, tr, tl});
      } else {
        m.tris.push_back({bl, br, tl});
        m.tris.push_back({br, tr, tl});
      }
    }

  // Node duplication along crack interiors: split the triangle fan around
  // each crack node into groups separated by crack edges.
  std::vector<std::vector<int>> node_tris(static_cast<std::size_t>(m.n_base_nodes));
  for (int t = 0; t < static_cast<int>(m.tris.size()); ++t)
    for (int v : m.tris[static_cast<std::size_t>(t)]) node_tris[static_cast<std::size_t>(v)].push_back(t);

  std::set<int> crack_grid_nodes;
  for (std::uint64_t k : crack_edges) {
    crack_grid_nodes.insert(static_cast<int>(k >> 32));
    crack_grid_nodes.insert(static_cast<int>(k & 0xffffffffu));
  }

  m.node_on_crack.assign(m.nodes.size(), 0);
  m.node_side.assign(m.nodes.size(), 0.0);

  for (int v : crack_grid_nodes) {
    const auto& inc = node_tris[static_cast<std::size_t>(v)];
    if (inc.empty()) continue;
    Dsu fans(static_cast<int>(inc.size()));
    std::map<int, int> by_other;  // other endpoint -> local triangle index
    for (int li = 0; li < static_cast<int>(inc.size()); ++li) {
      const auto& tr = m.tris[static_cast<std::size_t>(inc[static_cast<std::size_t>(li)])];
      for (int c = 0; c < 3; ++c) {
        if (tr[static_cast<std::size_t>(c)] != v) continue;
        for (int o = 0; o < 3; ++o) {
          if (o == c) continue;
          const int w = tr[static_cast<std::size_t>(o)];
          if (crack_edges.count(edge_key(v, w))) continue;  // crack edges separate fans
          auto [it, inserted] = by_other.emplace(w, li);
          if (!inserted) fans.unite(li, it->second);
        }
      }
    }
    std::map<int, int> fan_of_root;
    std::vector<std::vector<int>> fan_tris;
    for (int li = 0; li < static_cast<int>(inc.size()); ++li) {
      const int root = fans.find(li);
      auto [it, inserted] = fan_of_root.emplace(root, static_cast<int>(fan_tris.size()));
      if (inserted) fan_tris.emplace_back();
      fan_tris[static_cast<std::size_t>(it->second)].push_back(inc[static_cast<std::size_t>(li)]);
    }
    m.node_on_crack[static_cast<std::size_t>(v)] = 1;
    if (fan_tris.size() < 2) continue;  // crack tip or boundary-touch point

    std::vector<int> group;
    group.push_back(v);
    for (std::size_t f = 1; f < fan_tris.size(); ++f) {
      const int copy = static_cast<int>(m.nodes.size());
      m.nodes.push_back(m.nodes[static_cast<std::size_t>(v)]);
      m.base_node.push_back(v);
      m.node_on_crack.push_back(1);
      m.node_side.push_back(0.0);
      group.push_back(copy);
      for (int t : fan_tris[f])
        for (int& c : m.tris[static_cast<std::size_t>(t)])
          if (c == v) c = copy;
    }

    if (fan_tris.size() == 2) {
      // Orient the two copies by the crack normal at v.
      Vec2 dir{0.0, 0.0};
      for (int w : crack_grid_nodes) {
        if (w == v || !crack_edges.count(edge_key(v, w))) continue;
        Vec2 d = m.nodes[static_cast<std::size_t>(w)] - m.nodes[static_cast<std::size_t>(v)];
        if (d.x < 0 || (d.x == 0 && d.y < 0)) d = d * -1.0;  // canonical orientation
        dir = dir + d * (1.0 / d.norm());
      }
      if (dir.norm() > 1e-12) {
        const Vec2 n = rot90(dir);
        for (std::size_t f = 0; f < 2; ++f) {
          Vec2 c{0.0, 0.0};
          for (int t : fan_tris[f]) c = c + (m.tri_centroid(t) - m.nodes[static_cast<std::size_t>(group[f])]);
          const double s = c.dot(n);
          m.node_side[static_cast<std::size_t>(group[f])] = s > 0 ? +1.0 : (s < 0 ? -1.0 : 0.0);
        }
        if (m.node_side[static_cast<std::size_t>(group[0])] * m.node_side[static_cast<std::size_t>(group[1])] < 0) {
          SlitMesh::SlitPair pr;
          pr.plus = m.node_side[static_cast<std::size_t>(group[0])] > 0 ? group[0] : group[1];
          pr.minus = m.node_side[static_cast<std::size_t>(group[0])] > 0 ? group[1] : group[0];
          m.slit_pairs.push_back(pr);
        }
      }
    }
    m.slit_groups.push_back(group);
  }

  // Boundary edges of the final (slit) triangulation.
  std::unordered_map<std::uint64_t, std::pair<int, int>> edge_count;  // key -> (count, tri)
  for (int t = 0; t < static_cast<int>(m.tris.size()); ++t) {
    const auto& tr = m.tris[static_cast<std::size_t>(t)];
    for (int c = 0; c < 3; ++c) {
      const std::uint64_t k = edge_key(tr[static_cast<std::size_t>(c)], tr[static_cast<std::size_t>((c + 1) % 3)]);
      auto [it, inserted] = edge_count.emplace(k, std::make_pair(1, t));
      if (!inserted) ++it->second.first;
    }
  }

  const Rect& r = domain.rect;
  auto on_side = [&](const Vec2& p, BoundarySide s) {
    switch (s) {
      case BoundarySide::Bottom: return std::abs(p.y - r.y0) <= kLineTol;
      case BoundarySide::Top: return std::abs(p.y - r.y1) <= kLineTol;
      case BoundarySide::Left: return std::abs(p.x - r.x0) <= kLineTol;
      case BoundarySide::Right: return std::abs(p.x - r.x1) <= kLineTol;
    }
    return false;
  };

  for (const auto& [key, cnt_tri] : edge_count) {
    if (cnt_tri.first != 1) {
      if (cnt_tri.first > 2) throw MeshFailure("non-manifold mesh edge");
      continue;
    }
    SlitMesh::BEdge be;
    be.a = static_cast<int>(key >> 32);
    be.b = static_cast<int>(key & 0xffffffffu);
    be.tri = cnt_tri.second;
    const int ba = m.base_node[static_cast<std::size_t>(be.a)], bb = m.base_node[static_cast<std::size_t>(be.b)];
    if (crack_edges.count(edge_key(ba, bb))) {
      be.tag = SlitMesh::CrackFace;
      const double sa = m.node_side[static_cast<std::size_t>(be.a)], sb = m.node_side[static_cast<std::size_t>(be.b)];
      be.side = sa != 0.0 ? sa : sb;
      if (be.side == 0.0) {
        // Both endpoints are tips/junctions: classify by the adjacent
        // triangle's centroid against the canonical crack normal.
        const Vec2 mid = (m.nodes[static_cast<std::size_t>(be.a)] + m.nodes[static_cast<std::size_t>(be.b)]) * 0.5;
        Vec2 d = m.nodes[static_cast<std::size_t>(be.b)] - m.nodes[static_cast<std::size_t>(be.a)];
        if (d.x < 0 || (d.x == 0 && d.y < 0)) d = d * -1.0;
        be.side = rot90(d).dot(m.tri_centroid(be.tri) - mid) > 0 ? 1.0 : -1.0;
      }
    } else {
      const Vec2& pa = m.nodes[static_cast<std::size_t>(be.a)];
      const Vec2& pb = m.nodes[static_cast<std::size_t>(be.b)];
      bool classified = false;
      for (BoundarySide s : {BoundarySide::Bottom, BoundarySide::Right, BoundarySide::Top, BoundarySide::Left}) {
        if (!on_side(pa, s) || !on_side(pb, s)) continue;
        const bool horizontal = s == BoundarySide::Bottom || s == BoundarySide::Top;
        const double clo = horizontal ? std::min(pa.x, pb.x) : std::min(pa.y, pb.y);
        const double chi = horizontal ? std::max(pa.x, pb.x) : std::max(pa.y, pb.y);
        be.tag = SlitMesh::Neumann;
        for (const BoundaryInterval& bi : domain.dirichlet)
          if (bi.side == s && clo >= bi.lo - kLineTol && chi <= bi.hi + kLineTol) {
            be.tag = SlitMesh::Dirichlet;
            break;
          }
        classified = true;
        break;
      }
      if (!classified)
        throw MeshFailure("boundary edge neither on the outer boundary nor a crack face "
                          "(crack edges on the outer boundary are not supported)");
    }
    m.boundary_edges.push_back(be);
  }
  std::sort(m.boundary_edges.begin(), m.boundary_edges.end(),
            [](const SlitMesh::BEdge& a, const SlitMesh::BEdge& b) {
              return std::tie(a.a, a.b) < std::tie(b.a, b.b);
            });

  // Dirichlet nodes: on a Dirichlet edge, never on the crack (u = g on ∂_D Ω ∖ K).
  m.node_dirichlet.assign(m.nodes.size(), 0);
  for (const SlitMesh::BEdge& be : m.boundary_edges)
    if (be.tag == SlitMesh::Dirichlet) {
      m.node_dirichlet[static_cast<std::size_t>(be.a)] = 1;
      m.node_dirichlet[static_cast<std::size_t>(be.b)] = 1;
    }
  for (std::size_t i = 0; i < m.nodes.size(); ++i)
    if (m.node_on_crack[i]) m.node_dirichlet[i] = 0;

  // Connected components of the slit triangulation.
  {
    Dsu comp(static_cast<int>(m.tris.size()));
    std::unordered_map<std::uint64_t, int> first_tri;
    for (int t = 0; t < static_cast<int>(m.tris.size()); ++t) {
      const auto& tr = m.tris[static_cast<std::size_t>(t)];
      for (int c = 0; c < 3; ++c) {
        const std::uint64_t k = edge_key(tr[static_cast<std::size_t>(c)], tr[static_cast<std::size_t>((c + 1) % 3)]);
        auto [it, inserted] = first_tri.emplace(k, t);
        if (!inserted) comp.unite(t, it->second);
      }
    }
    m.tri_component.assign(m.tris.size(), -1);
    std::map<int, int> dense;
    for (int t = 0; t < static_cast<int>(m.tris.size()); ++t) {
      auto [it, inserted] = dense.emplace(comp.find(t), m.n_components);
      if (inserted) ++m.n_components;
      m.tri_component[static_cast<std::size_t>(t)] = it->second;
    }
    m.node_component.assign(m.nodes.size(), -1);
    for (int t = 0; t < static_cast<int>(m.tris.size()); ++t)
      for (int v : m.tris[static_cast<std::size_t>(t)])
        m.node_component[static_cast<std::size_t>(v)] = m.tri_component[static_cast<std::size_t>(t)];
    m.component_has_dirichlet.assign(static_cast<std::size_t>(m.n_components), 0);
    for (std::size_t i = 0; i < m.nodes.size(); ++i)
      if (m.node_dirichlet[i] && m.node_component[i] >= 0)
        m.component_has_dirichlet[static_cast<std::size_t>(m.node_component[i])] = 1;
  }

  // Quality gate.
  double worst = 180.0;
  for (int t = 0; t < static_cast<int>(m.tris.size()); ++t) {
    const auto& tr = m.tris[static_cast<std::size_t>(t)];
    if (m.tri_area(t) <= 0.0) throw MeshFailure("non-positive triangle orientation");
    worst = std::min(worst, min_angle_deg_of(m.nodes[static_cast<std::size_t>(tr[0])], m.nodes[static_cast<std::size_t>(tr[1])],
                                             m.nodes[static_cast<std::size_t>(tr[2])]));
  }
  if (worst < params.min_angle_deg)
    throw MeshFailure("minimum triangle angle " + std::to_string(worst) +
                      " deg below the configured floor " + std::to_string(params.min_angle_deg));

  return m;
}

void MeshReport::add(const std::string& name, bool pass, const std::string& detail) {
  checks.push_back({name, pass, detail});
  all_pass = all_pass && pass;
}

MeshReport validate_mesh(const SlitMesh& m, const CrackSet& crack) {
  MeshReport rep;

  // Orientation and area sum.
  bool oriented = true;
  double area = 0.0;
  for (int t = 0; t < static_cast<int>(m.tris.size()); ++t) {
    const double a = m.tri_area(t);
    oriented = oriented && a > 0.0;
    area += a;
  }
  rep.add("positively_oriented", oriented);
  const double want = m.domain.rect.area();
  rep.add("area_sum", std::abs(area - want) <= 1e-10 * want,
          "sum " + std::to_string(area) + " vs " + std::to_string(want));

  // Every crack lattice edge is covered by mesh edges (grid-edge chains on
  // the base grid).
  std::set<std::pair<int, int>> base_mesh_edges;
  for (const auto& tr : m.tris)
    for (int c = 0; c < 3; ++c) {
      int a = m.base_node[static_cast<std::size_t>(tr[static_cast<std::size_t>(c)])];
      int b = m.base_node[static_cast<std::size_t>(tr[static_cast<std::size_t>((c + 1) % 3)])];
      if (a > b) std::swap(a, b);
      base_mesh_edges.insert({a, b});
    }
  std::map<int, Vec2> base_pos;
  for (std::size_t i = 0; i < m.nodes.size(); ++i) base_pos[m.base_node[i]] = m.nodes[i];
  bool conform = true;
  std::string bad;
  for (const Segment& s : crack.segments()) {
    double covered = 0.0;
    for (const auto& [a, b] : base_mesh_edges) {
      const Vec2 pa = base_pos.at(a), pb = base_pos.at(b);
      if (point_segment_distance(pa, s) <= 1e-9 && point_segment_distance(pb, s) <= 1e-9)
        covered += (pb - pa).norm();
    }
    if (std::abs(covered - s.length()) > 1e-9) {
      conform = false;
      bad = "crack segment covered length " + std::to_string(covered) + " of " +
            std::to_string(s.length());
    }
  }
  rep.add("crack_conforming", conform, bad);

  // Duplication structure: for each duplicated base node, the fans computed
  // from scratch must match the copies one-to-one.
  {
    std::set<std::pair<int, int>> crack_base_edges;
    for (const SlitMesh::BEdge& be : m.boundary_edges)
      if (be.tag == SlitMesh::CrackFace) {
        int a = m.base_node[static_cast<std::size_t>(be.a)], b = m.base_node[static_cast<std::size_t>(be.b)];
        if (a > b) std::swap(a, b);
        crack_base_edges.insert({a, b});
      }
    bool fans_ok = true;
    std::string fan_detail;
    for (const auto& group : m.slit_groups) {
      // Collect incident triangles over all copies.
      std::vector<int> inc;
      for (int t = 0; t < static_cast<int>(m.tris.size()); ++t)
        for (int v : m.tris[static_cast<std::size_t>(t)])
          if (std::find(group.begin(), group.end(), v) != group.end()) inc.push_back(t);
      Dsu fans(static_cast<int>(inc.size()));
      std::map<int, int> by_other;
      const int base = m.base_node[static_cast<std::size_t>(group[0])];
      for (int li = 0; li < static_cast<int>(inc.size()); ++li) {
        const auto& tr = m.tris[static_cast<std::size_t>(inc[static_cast<std::size_t>(li)])];
        for (int c = 0; c < 3; ++c) {
          const int v = tr[static_cast<std::size_t>(c)];
          if (std::find(group.begin(), group.end(), v) == group.end()) continue;
          for (int o = 0; o < 3; ++o) {
            if (o == c) continue;
            const int w = tr[static_cast<std::size_t>(o)];
            int wb = m.base_node[static_cast<std::size_t>(w)];
            int ab = base;
            if (ab > wb) std::swap(ab, wb);
            if (crack_base_edges.count({ab, wb})) continue;
            auto [it, inserted] = by_other.emplace(w, li);
            if (!inserted) fans.unite(li, it->second);
          }
        }
      }
      std::map<int, std::set<int>> fan_copies;  // fan root -> copies used
      for (int li = 0; li < static_cast<int>(inc.size()); ++li) {
        const auto& tr = m.tris[static_cast<std::size_t>(inc[static_cast<std::size_t>(li)])];
        for (int v : tr)
          if (std::find(group.begin(), group.end(), v) != group.end())
            fan_copies[fans.find(li)].insert(v);
      }
      if (fan_copies.size() != group.size()) {
        fans_ok = false;
        fan_detail = "group at base node " + std::to_string(base) + ": " +
                     std::to_string(fan_copies.size()) + " fans vs " +
                     std::to_string(group.size()) + " copies";
      }
      for (const auto& [root, copies] : fan_copies)
        if (copies.size() != 1) {
          fans_ok = false;
          fan_detail = "fan at base node " + std::to_string(base) + " mixes copies";
        }
    }
    rep.add("slit_fan_consistency", fans_ok, fan_detail);

    // Straight-through interior crack nodes carry exactly two copies.
    bool pair_ok = true;
    for (const auto& group : m.slit_groups)
      if (group.size() > 2) {
        // Junction nodes (3+ crack directions) are the only legitimate case.
        int deg = 0;
        const int base = m.base_node[static_cast<std::size_t>(group[0])];
        for (const auto& [a, b] : crack_base_edges)
          if (a == base || b == base) ++deg;
        if (deg < 3) pair_ok = false;
      }
    rep.add("two_copies_per_interior_node", pair_ok);

    // Crack faces come in mirrored pairs.
    std::map<std::pair<int, int>, int> face_count;
    for (const SlitMesh::BEdge& be : m.boundary_edges)
      if (be.tag == SlitMesh::CrackFace) {
        int a = m.base_node[static_cast<std::size_t>(be.a)], b = m.base_node[static_cast<std::size_t>(be.b)];
        if (a > b) std::swap(a, b);
        ++face_count[{a, b}];
      }
    bool faces_ok = true;
    for (const auto& [e, c] : face_count) faces_ok = faces_ok && c == 2;
    rep.add("crack_faces_paired", faces_ok);
  }

  // Side consistency for two-sided pairs.
  {
    bool sides_ok = true;
    for (const SlitMesh::SlitPair& p : m.slit_pairs) {
      if (!(m.node_side[static_cast<std::size_t>(p.plus)] > 0.0) ||
          !(m.node_side[static_cast<std::size_t>(p.minus)] < 0.0))
        sides_ok = false;
    }
    rep.add("slit_pair_sides", sides_ok);
  }

  // Dirichlet severance: no crack node is constrained.
  {
    bool ok = true;
    for (std::size_t i = 0; i < m.nodes.size(); ++i)
      if (m.node_dirichlet[i] && m.node_on_crack[i]) ok = false;
    rep.add("dirichlet_excludes_crack", ok);
  }

  // Component labels match a recomputed flood fill.
  {
    Dsu comp(static_cast<int>(m.tris.size()));
    std::map<std::pair<int, int>, int> first_tri;
    for (int t = 0; t < static_cast<int>(m.tris.size()); ++t) {
      const auto& tr = m.tris[static_cast<std::size_t>(t)];
      for (int c = 0; c < 3; ++c) {
        int a = tr[static_cast<std::size_t>(c)], b = tr[static_cast<std::size_t>((c + 1) % 3)];
        if (a > b) std::swap(a, b);
        auto [it, inserted] = first_tri.emplace(std::make_pair(a, b), t);
        if (!inserted) comp.unite(t, it->second);
      }
    }
    std::set<int> roots;
    bool labels_ok = true;
    for (int t = 0; t < static_cast<int>(m.tris.size()); ++t) {
      roots.insert(comp.find(t));
      for (int u = 0; u < t; ++u)
        if ((comp.find(u) == comp.find(t)) !=
            (m.tri_component[static_cast<std::size_t>(u)] == m.tri_component[static_cast<std::size_t>(t)])) {
          labels_ok = false;
          break;
        }
      if (!labels_ok) break;
    }
    rep.add("component_labels", labels_ok && static_cast<int>(roots.size()) == m.n_components,
            std::to_string(roots.size()) + " components");
  }

  return rep;
}

std::string export_mesh_text(const SlitMesh& m) {
  std::ostringstream os;
  os.precision(17);
  os << "# fracsim slit mesh, 0-based indices\n";
  os << "# nodes: id x y base_node on_crack side dirichlet component\n";
  os << "nodes " << m.nodes.size() << "\n";
  for (std::size_t i = 0; i < m.nodes.size(); ++i)
    os << i << " " << m.nodes[i].x << " " << m.nodes[i].y << " " << m.base_node[i] << " "
       << int(m.node_on_crack[i]) << " " << m.node_side[i] << " " << int(m.node_dirichlet[i])
       << " " << m.node_component[i] << "\n";
  os << "# triangles: id n0 n1 n2 component\n";
  os << "triangles " << m.tris.size() << "\n";
  for (std::size_t t = 0; t < m.tris.size(); ++t)
    os << t << " " << m.tris[t][0] << " " << m.tris[t][1] << " " << m.tris[t][2] << " "
       << m.tri_component[t] << "\n";
  os << "# boundary_edges: a b tri tag(0=neumann,1=dirichlet,2=crackface) side\n";
  os << "boundary_edges " << m.boundary_edges.size() << "\n";
  for (const auto& be : m.boundary_edges)
    os << be.a << " " << be.b << " " << be.tri << " " << int(be.tag) << " " << be.side << "\n";
  return os.str();
}

}  // namespace fracsim

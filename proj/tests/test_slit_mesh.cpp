#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include "fracsim/slit_mesh.hpp"

using namespace fracsim;

namespace {

// Independent oracle: count connected components of Ω∖K by flood fill on a
// pixel raster much finer than the mesh. Pixels whose center is within half
// a pixel of the crack are blocked.
int raster_components(const Rect& omega, const CrackSet& crack, double px) {
  const int nx = static_cast<int>(std::lround(omega.width() / px));
  const int ny = static_cast<int>(std::lround(omega.height() / px));
  const std::vector<Segment> segs = crack.segments();
  std::vector<char> blocked(static_cast<std::size_t>(nx * ny), 0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const Vec2 c{omega.x0 + (i + 0.5) * px, omega.y0 + (j + 0.5) * px};
      if (!segs.empty() && point_set_distance(c, segs) <= 0.5 * px)
        blocked[static_cast<std::size_t>(j * nx + i)] = 1;
    }
  int comps = 0;
  std::vector<char> seen = blocked;
  for (int start = 0; start < nx * ny; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    ++comps;
    std::queue<int> q;
    q.push(start);
    seen[static_cast<std::size_t>(start)] = 1;
    while (!q.empty()) {
      const int p = q.front();
      q.pop();
      const int i = p % nx, j = p / nx;
      const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        const int ii = i + di[d], jj = j + dj[d];
        if (ii < 0 || ii >= nx || jj < 0 || jj >= ny) continue;
        const int np = jj * nx + ii;
        if (!seen[static_cast<std::size_t>(np)]) {
          seen[static_cast<std::size_t>(np)] = 1;
          q.push(np);
        }
      }
    }
  }
  return comps;
}

CrackSet midline_crack(double x0, double x1, double spacing = 1.0 / 16.0) {
  const LatticeSpec lat = make_lattice({0.0, 1.0, -1.0, 1.0}, spacing);
  return horizontal_crack(lat, x0, x1, 0.0, 1e-9);
}

}  // namespace

TEST_CASE("empty crack gives a plain tensor mesh") {
  const DomainSpec dom = example_domain();
  CrackSet empty(make_lattice(dom.rect, 1.0 / 16.0));
  MeshParams p;
  p.h = 0.125;
  const SlitMesh m = build_mesh(dom, empty, p);

  CHECK(m.nodes.size() == static_cast<std::size_t>(m.n_base_nodes));
  CHECK(m.xlines.size() == 9);
  CHECK(m.ylines.size() == 17);
  CHECK(m.tris.size() == 2u * 8u * 16u);
  CHECK(m.slit_pairs.empty());
  CHECK(m.slit_groups.empty());
  CHECK(m.n_components == 1);
  CHECK(m.component_has_dirichlet[0] == 1);

  // Boundary tagging: top/bottom Dirichlet, left/right Neumann.
  int nd = 0, nn = 0;
  for (const auto& be : m.boundary_edges) {
    if (be.tag == SlitMesh::Dirichlet) ++nd;
    if (be.tag == SlitMesh::Neumann) ++nn;
    CHECK(be.tag != SlitMesh::CrackFace);
  }
  CHECK(nd == 16);
  CHECK(nn == 32);

  const MeshReport rep = validate_mesh(m, empty);
  for (const auto& c : rep.checks) CHECK_MESSAGE(c.pass, c.name, " ", c.detail);
}

TEST_CASE("full midline slit separates the domain into two components") {
  const DomainSpec dom = example_domain();
  const CrackSet crack = midline_crack(0.0, 1.0);
  MeshParams p;
  p.h = 0.125;
  const SlitMesh m = build_mesh(dom, crack, p);

  CHECK(m.n_components == 2);
  CHECK(m.component_has_dirichlet[0] == 1);
  CHECK(m.component_has_dirichlet[1] == 1);
  CHECK(m.n_components == raster_components(dom.rect, crack, p.h / 4.0));

  // Every interior midline node is duplicated; the two side-boundary nodes
  // touch ∂Ω and are still duplicated (the slit reaches the boundary).
  CHECK(m.slit_groups.size() == m.xlines.size());
  for (const auto& g : m.slit_groups) CHECK(g.size() == 2);
  CHECK(m.slit_pairs.size() == m.slit_groups.size());
  for (const auto& pr : m.slit_pairs) {
    CHECK(m.nodes[static_cast<std::size_t>(pr.plus)] == m.nodes[static_cast<std::size_t>(pr.minus)]);
    CHECK(m.node_side[static_cast<std::size_t>(pr.plus)] == 1.0);
    CHECK(m.node_side[static_cast<std::size_t>(pr.minus)] == -1.0);
  }

  const MeshReport rep = validate_mesh(m, crack);
  for (const auto& c : rep.checks) CHECK_MESSAGE(c.pass, c.name, " ", c.detail);
}

TEST_CASE("interior slit keeps one component and single tip nodes") {
  const DomainSpec dom = example_domain();
  const CrackSet crack = midline_crack(0.25, 0.75);
  MeshParams p;
  p.h = 0.0625;
  const SlitMesh m = build_mesh(dom, crack, p);

  CHECK(m.n_components == 1);
  CHECK(m.n_components == raster_components(dom.rect, crack, p.h / 4.0));

  // Interior mesh nodes on the open segment are duplicated; the two tips
  // at x=0.25 and x=0.75 keep a single node.
  int n_between = 0;
  for (double x : m.xlines)
    if (x > 0.25 + 1e-12 && x < 0.75 - 1e-12) ++n_between;
  CHECK(static_cast<int>(m.slit_groups.size()) == n_between);
  for (const auto& g : m.slit_groups) CHECK(g.size() == 2);
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    const Vec2& q = m.nodes[i];
    const bool is_tip = std::abs(q.y) < 1e-12 &&
                        (std::abs(q.x - 0.25) < 1e-12 || std::abs(q.x - 0.75) < 1e-12);
    if (is_tip) {
      CHECK(m.node_on_crack[i] == 1);
      CHECK(m.node_side[i] == 0.0);
    }
  }

  // Crack faces: each interior mesh edge of the slit appears twice.
  int faces = 0;
  for (const auto& be : m.boundary_edges)
    if (be.tag == SlitMesh::CrackFace) ++faces;
  CHECK(faces == 2 * (n_between + 1));

  const MeshReport rep = validate_mesh(m, crack);
  for (const auto& c : rep.checks) CHECK_MESSAGE(c.pass, c.name, " ", c.detail);
}

TEST_CASE("diagonal crack forces cell splits and stays conforming") {
  const DomainSpec dom = example_domain();
  const LatticeSpec lat = make_lattice(dom.rect, 0.125);
  CrackSet crack(lat);
  // Staircase-free diagonal from (0.25,-0.25) to (0.75,0.25).
  add_chain(crack, lat.node_id(2, 6), lat.node_id(6, 10));
  MeshParams p;
  p.h = 0.125;
  const SlitMesh m = build_mesh(dom, crack, p);

  CHECK(m.n_components == 1);
  CHECK(m.n_components == raster_components(dom.rect, crack, p.h / 8.0));
  CHECK(m.slit_groups.size() == 3);  // three interior nodes on the chain

  const MeshReport rep = validate_mesh(m, crack);
  for (const auto& c : rep.checks) CHECK_MESSAGE(c.pass, c.name, " ", c.detail);
}

TEST_CASE("refinement boxes refine both axes, largest factor winning") {
  const DomainSpec dom = example_domain();
  CrackSet empty(make_lattice(dom.rect, 0.25));
  MeshParams p;
  p.h = 0.25;
  p.boxes.push_back({Rect{0.0, 0.5, -0.25, 0.25}, 2});
  p.boxes.push_back({Rect{0.0, 0.25, -0.25, 0.25}, 4});
  const SlitMesh m = build_mesh(dom, empty, p);

  auto gaps_in = [&](const std::vector<double>& lines, double lo, double hi) {
    double g = 1e300;
    for (std::size_t i = 1; i < lines.size(); ++i)
      if (lines[i - 1] >= lo - 1e-12 && lines[i] <= hi + 1e-12)
        g = std::min(g, lines[i] - lines[i - 1]);
    return g;
  };
  CHECK(gaps_in(m.xlines, 0.0, 0.25) == doctest::Approx(0.0625));   // max(2,4)
  CHECK(gaps_in(m.xlines, 0.25, 0.5) == doctest::Approx(0.125));    // 2x
  CHECK(gaps_in(m.xlines, 0.5, 1.0) == doctest::Approx(0.25));      // base
  CHECK(gaps_in(m.ylines, -0.25, 0.25) == doctest::Approx(0.0625)); // max(2,4)
  CHECK(gaps_in(m.ylines, 0.5, 1.0) == doctest::Approx(0.25));

  const MeshReport rep = validate_mesh(m, empty);
  for (const auto& c : rep.checks) CHECK_MESSAGE(c.pass, c.name, " ", c.detail);
}

TEST_CASE("tip refinement boxes target degree-one lattice nodes") {
  const CrackSet crack = midline_crack(0.25, 0.75);
  const auto boxes = tip_refinement_boxes(crack, 0.1, 4, 2);
  CHECK(boxes.size() == 4);  // two tips, two levels each
  int around_left = 0, around_right = 0;
  for (const auto& b : boxes) {
    const Vec2 c{0.5 * (b.rect.x0 + b.rect.x1), 0.5 * (b.rect.y0 + b.rect.y1)};
    if (std::abs(c.x - 0.25) < 1e-12 && std::abs(c.y) < 1e-12) ++around_left;
    if (std::abs(c.x - 0.75) < 1e-12 && std::abs(c.y) < 1e-12) ++around_right;
  }
  CHECK(around_left == 2);
  CHECK(around_right == 2);

  // A mesh graded this way still passes validation.
  const DomainSpec dom = example_domain();
  MeshParams p;
  p.h = 0.0625;
  p.boxes = boxes;
  const SlitMesh m = build_mesh(dom, crack, p);
  const MeshReport rep = validate_mesh(m, crack);
  for (const auto& c : rep.checks) CHECK_MESSAGE(c.pass, c.name, " ", c.detail);
}

TEST_CASE("crack touching the dirichlet boundary severs the constraint there") {
  const DomainSpec dom = example_domain();
  const LatticeSpec lat = make_lattice(dom.rect, 0.125);
  CrackSet crack(lat);
  // Vertical crack from the bottom boundary up to (0.5,-0.5).
  add_chain(crack, lat.node_id(4, 0), lat.node_id(4, 4));
  MeshParams p;
  p.h = 0.0625;
  const SlitMesh m = build_mesh(dom, crack, p);

  for (std::size_t i = 0; i < m.nodes.size(); ++i)
    if (m.node_on_crack[i]) CHECK(m.node_dirichlet[i] == 0);
  // The boundary-touch node at (0.5,-1) is duplicated: both sides of the
  // slit meet the bottom boundary.
  int copies_at_touch = 0;
  for (std::size_t i = 0; i < m.nodes.size(); ++i)
    if (m.nodes[i] == Vec2{0.5, -1.0}) ++copies_at_touch;
  CHECK(copies_at_touch == 2);

  const MeshReport rep = validate_mesh(m, crack);
  for (const auto& c : rep.checks) CHECK_MESSAGE(c.pass, c.name, " ", c.detail);
}

TEST_CASE("off-grid cracks and bad parameters are rejected") {
  const DomainSpec dom = example_domain();
  // Crack lattice spacing that the mesh lines cannot reproduce for a
  // diagonal edge: diagonal over cells split by refinement on one axis only.
  const LatticeSpec lat = make_lattice(dom.rect, 0.25);
  CrackSet diag(lat);
  add_chain(diag, lat.node_id(1, 4), lat.node_id(2, 5));
  MeshParams p;
  p.h = 0.25;
  p.boxes.push_back({Rect{0.25, 0.5, -2.0, -1.5}, 2});  // refines x-lines under the diagonal
  CHECK_THROWS_AS(build_mesh(dom, diag, p), CrackOffLattice);

  MeshParams bad;
  bad.h = -1.0;
  CrackSet empty(lat);
  CHECK_THROWS_AS(build_mesh(dom, empty, bad), MeshFailure);

  DomainSpec broken = dom;
  broken.dirichlet.push_back({BoundarySide::Top, 0.0, 0.5});  // overlaps existing top interval
  CHECK_THROWS_AS(build_mesh(broken, empty, p), ConfigError);
}

TEST_CASE("validate_mesh flags corrupted meshes") {
  const DomainSpec dom = example_domain();
  const CrackSet crack = midline_crack(0.25, 0.75);
  MeshParams p;
  p.h = 0.0625;
  SlitMesh m = build_mesh(dom, crack, p);
  REQUIRE(!m.slit_pairs.empty());

  SUBCASE("wrong copy in a triangle breaks fan consistency") {
    const auto pr = m.slit_pairs[m.slit_pairs.size() / 2];
    for (auto& tr : m.tris)
      for (int& v : tr)
        if (v == pr.plus) {
          v = pr.minus;  // reattach one plus-side triangle to the minus copy
          goto corrupted;
        }
  corrupted:;
    const MeshReport rep = validate_mesh(m, crack);
    CHECK_FALSE(rep.all_pass);
  }

  SUBCASE("inverted triangle breaks orientation") {
    std::swap(m.tris[0][1], m.tris[0][2]);
    const MeshReport rep = validate_mesh(m, crack);
    bool orient_failed = false;
    for (const auto& c : rep.checks)
      if (c.name == "positively_oriented" && !c.pass) orient_failed = true;
    CHECK(orient_failed);
  }

  SUBCASE("flipped slit pair sides are caught") {
    std::swap(m.node_side[static_cast<std::size_t>(m.slit_pairs[0].plus)],
              m.node_side[static_cast<std::size_t>(m.slit_pairs[0].minus)]);
    const MeshReport rep = validate_mesh(m, crack);
    bool sides_failed = false;
    for (const auto& c : rep.checks)
      if (c.name == "slit_pair_sides" && !c.pass) sides_failed = true;
    CHECK(sides_failed);
  }
}

TEST_CASE("mesh text export round-trips counts") {
  const DomainSpec dom = example_domain();
  const CrackSet crack = midline_crack(0.25, 0.75);
  MeshParams p;
  p.h = 0.125;
  const SlitMesh m = build_mesh(dom, crack, p);
  const std::string text = export_mesh_text(m);
  CHECK(text.find("nodes " + std::to_string(m.nodes.size())) != std::string::npos);
  CHECK(text.find("triangles " + std::to_string(m.tris.size())) != std::string::npos);
  CHECK(text.find("boundary_edges " + std::to_string(m.boundary_edges.size())) !=
        std::string::npos);
}

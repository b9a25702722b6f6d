#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fracsim/laplace.hpp"

using namespace fracsim;

namespace {

CrackSet no_crack() { return CrackSet(make_lattice({0.0, 1.0, -1.0, 1.0}, 1.0 / 16.0)); }

SlitMesh plain_mesh(double h) {
  MeshParams p;
  p.h = h;
  return build_mesh(example_domain(), no_crack(), p);
}

const BoundaryData g_linear = [](const Vec2& p, double) { return p.y; };

}  // namespace

TEST_CASE("linear data is reproduced exactly") {
  const SlitMesh m = plain_mesh(0.125);
  const SolveResult r = solve_mixed(m, g_linear);
  for (std::size_t i = 0; i < m.nodes.size(); ++i)
    CHECK(r.u.values[i] == doctest::Approx(m.nodes[i].y).epsilon(1e-10));
  CHECK(dirichlet_energy(r.u) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("quadratic harmonic solution converges at second order in L2") {
  DomainSpec dom = example_domain();
  dom.dirichlet = {{BoundarySide::Bottom, 0.0, 1.0},
                   {BoundarySide::Top, 0.0, 1.0},
                   {BoundarySide::Left, -1.0, 1.0},
                   {BoundarySide::Right, -1.0, 1.0}};
  const auto exact = [](const Vec2& p) { return p.x * p.x - p.y * p.y; };
  const BoundaryData g = [&](const Vec2& p, double) { return exact(p); };

  std::vector<double> errs;
  for (double h : {0.25, 0.125, 0.0625}) {
    MeshParams p;
    p.h = h;
    const SlitMesh m = build_mesh(dom, no_crack(), p);
    const SolveResult r = solve_mixed(m, g);
    errs.push_back(std::sqrt(l2_error_sq(r.u, exact)));
  }
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double order = std::log2(errs[i - 1] / errs[i]);
    CHECK(order > 1.7);
    CHECK(order < 2.3);
  }
}

TEST_CASE("the discrete solution minimizes the dirichlet energy") {
  const LatticeSpec lat = make_lattice({0.0, 1.0, -1.0, 1.0}, 1.0 / 16.0);
  const CrackSet crack = horizontal_crack(lat, 0.25, 0.75, 0.0, 1e-9);
  MeshParams p;
  p.h = 0.0625;
  const SlitMesh m = build_mesh(example_domain(), crack, p);
  const SolveResult r = solve_mixed(m, g_linear);
  const ScalarField gi = interpolate(m, g_linear);

  // Against the boundary datum itself (the competitor in the basic energy
  // estimate) the minimizer can only do better.
  const double eu = dirichlet_energy(r.u);
  CHECK(eu <= dirichlet_energy(gi) + 1e-10);

  // Galerkin orthogonality and second-order energy growth for admissible
  // perturbations (zero on the Dirichlet nodes).
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  ScalarField w;
  w.mesh = &m;
  w.values.assign(m.nodes.size(), 0.0);
  for (std::size_t i = 0; i < m.nodes.size(); ++i)
    if (!m.node_dirichlet[i]) w.values[i] = unif(rng);
  CHECK(std::abs(grad_inner(r.u, w)) <= 1e-8);
  ScalarField up = r.u;
  const double eps = 1e-3;
  for (std::size_t i = 0; i < m.nodes.size(); ++i) up.values[i] += eps * w.values[i];
  CHECK(dirichlet_energy(up) >= eu - 1e-12);
}

TEST_CASE("full slit decouples the halves and carries a jump") {
  const LatticeSpec lat = make_lattice({0.0, 1.0, -1.0, 1.0}, 1.0 / 16.0);
  const CrackSet crack = horizontal_crack(lat, 0.0, 1.0, 0.0, 1e-9);
  MeshParams p;
  p.h = 0.125;
  const SlitMesh m = build_mesh(example_domain(), crack, p);
  REQUIRE(m.n_components == 2);
  const SolveResult r = solve_mixed(m, g_linear);

  // Each half only sees its own Dirichlet side, so u is constant there.
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    const double y = m.nodes[i].y;
    const double side = m.node_side[i];
    if (y > 1e-12 || side > 0) CHECK(r.u.values[i] == doctest::Approx(1.0).epsilon(1e-10));
    if (y < -1e-12 || side < 0) CHECK(r.u.values[i] == doctest::Approx(-1.0).epsilon(1e-10));
  }
  CHECK(dirichlet_energy(r.u) == doctest::Approx(0.0).epsilon(1e-10));
  for (double j : trace_jump(r.u)) CHECK(j == doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("components without dirichlet data are set to zero") {
  DomainSpec dom = example_domain();
  dom.dirichlet = {{BoundarySide::Top, 0.0, 1.0}};
  const LatticeSpec lat = make_lattice(dom.rect, 1.0 / 16.0);
  const CrackSet crack = horizontal_crack(lat, 0.0, 1.0, 0.0, 1e-9);
  MeshParams p;
  p.h = 0.125;
  const SlitMesh m = build_mesh(dom, crack, p);
  const SolveResult r = solve_mixed(m, g_linear);
  for (std::size_t i = 0; i < m.nodes.size(); ++i)
    if (m.nodes[i].y < -1e-12) CHECK(r.u.values[i] == 0.0);
}

TEST_CASE("weighted flux recovers the flux through a horizontal cut") {
  const SlitMesh m = plain_mesh(0.125);
  const SolveResult r = solve_mixed(m, g_linear);
  std::vector<double> w(m.nodes.size(), 0.0);
  for (std::size_t i = 0; i < m.nodes.size(); ++i)
    if (m.nodes[i].y > 1e-12) w[i] = 1.0;
  // ∂u/∂y = 1 across the cut of unit width.
  CHECK(weighted_flux(r.u, w) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("serial and parallel solves agree bitwise") {
  const LatticeSpec lat = make_lattice({0.0, 1.0, -1.0, 1.0}, 1.0 / 16.0);
  const CrackSet crack = horizontal_crack(lat, 0.25, 0.75, 0.0, 1e-9);
  MeshParams p;
  p.h = 0.0625;
  const SlitMesh m = build_mesh(example_domain(), crack, p);
  SolveOptions serial, parallel;
  serial.policy = ExecPolicy::Serial;
  parallel.policy = ExecPolicy::Parallel;
  const SolveResult a = solve_mixed(m, g_linear, serial);
  const SolveResult b = solve_mixed(m, g_linear, parallel);
  REQUIRE(a.u.values.size() == b.u.values.size());
  for (std::size_t i = 0; i < a.u.values.size(); ++i) CHECK(a.u.values[i] == b.u.values[i]);
  CHECK(a.cg_iterations == b.cg_iterations);
}

TEST_CASE("conjugate field of a linear solution is linear") {
  const SlitMesh m = plain_mesh(0.25);
  const SolveResult r = solve_mixed(m, g_linear);
  const ConjugateResult c = harmonic_conjugate(r.u);
  CHECK(c.residual_sq <= 1e-20);
  // v = -x + const with zero mean over grid nodes.
  const int nx = static_cast<int>(m.xlines.size());
  double shift = 0.0;
  for (int id = 0; id < m.n_base_nodes; ++id) shift += m.xlines[static_cast<std::size_t>(id % nx)];
  shift /= m.n_base_nodes;
  for (int id = 0; id < m.n_base_nodes; ++id)
    CHECK(c.v[static_cast<std::size_t>(id)] ==
          doctest::Approx(-(m.xlines[static_cast<std::size_t>(id % nx)] - shift)).epsilon(1e-8));
}

TEST_CASE("conjugate field is near-constant along a slit and improves with h") {
  const LatticeSpec lat = make_lattice({0.0, 1.0, -1.0, 1.0}, 1.0 / 16.0);
  const CrackSet crack = horizontal_crack(lat, 0.25, 0.75, 0.0, 1e-9);
  double prev = -1.0;
  for (double h : {0.0625, 0.03125}) {
    MeshParams p;
    p.h = h;
    const SlitMesh m = build_mesh(example_domain(), crack, p);
    const SolveResult r = solve_mixed(m, g_linear);
    const ConjugateResult c = harmonic_conjugate(r.u);
    const CrackTraceStats st = conjugate_on_crack(m, c.v, crack);
    REQUIRE(st.stddev.size() == 1);
    CHECK(st.max_stddev < 0.05);
    if (prev >= 0.0) CHECK(st.max_stddev < prev);
    prev = st.max_stddev;
  }
}

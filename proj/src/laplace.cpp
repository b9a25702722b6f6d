#include "fracsim/laplace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace fracsim {

namespace {

struct ElemStiff {
  std::array<std::array<double, 3>, 3> k;
};

ElemStiff element_stiffness(const Vec2& p0, const Vec2& p1, const Vec2& p2) {
  const double a2 = (p1 - p0).cross(p2 - p0);  // 2*area
  const double b[3] = {p1.y - p2.y, p2.y - p0.y, p0.y - p1.y};
  const double c[3] = {p2.x - p1.x, p0.x - p2.x, p1.x - p0.x};
  ElemStiff e;
  const double inv = 1.0 / (2.0 * a2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e.k[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (b[i] * b[j] + c[i] * c[j]) * inv;
  return e;
}

// Full (unconstrained) stiffness over the given node indexing. Element
// matrices are computed in parallel; accumulation is a fixed-order serial
// pass, so both execution policies assemble bitwise-identical matrices.
CsrMatrix assemble_stiffness(const std::vector<Vec2>& pos,
                             const std::vector<std::array<int, 3>>& tris,
                             const std::vector<int>* remap, ExecPolicy policy) {
  const int nt = static_cast<int>(tris.size());
  std::vector<ElemStiff> elems(static_cast<std::size_t>(nt));
  auto node_of = [&](int t, int c) {
    const int v = tris[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)];
    return remap ? (*remap)[static_cast<std::size_t>(v)] : v;
  };
  auto pos_of = [&](int t, int c) { return pos[static_cast<std::size_t>(node_of(t, c))]; };
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static)
    for (int t = 0; t < nt; ++t)
      elems[static_cast<std::size_t>(t)] = element_stiffness(pos_of(t, 0), pos_of(t, 1), pos_of(t, 2));
  } else {
    for (int t = 0; t < nt; ++t)
      elems[static_cast<std::size_t>(t)] = element_stiffness(pos_of(t, 0), pos_of(t, 1), pos_of(t, 2));
  }
  std::vector<int> rows, cols;
  std::vector<double> vals;
  rows.reserve(static_cast<std::size_t>(9 * nt));
  cols.reserve(static_cast<std::size_t>(9 * nt));
  vals.reserve(static_cast<std::size_t>(9 * nt));
  for (int t = 0; t < nt; ++t)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        rows.push_back(node_of(t, i));
        cols.push_back(node_of(t, j));
        vals.push_back(elems[static_cast<std::size_t>(t)].k[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      }
  int n = 0;
  for (int t = 0; t < nt; ++t)
    for (int c = 0; c < 3; ++c) n = std::max(n, node_of(t, c) + 1);
  if (!remap) n = std::max(n, static_cast<int>(pos.size()));
  return CsrMatrix::from_triplets(n, rows, cols, vals);
}

CsrMatrix slit_stiffness(const SlitMesh& m, ExecPolicy policy) {
  return assemble_stiffness(m.nodes, m.tris, nullptr, policy);
}

}  // namespace

Vec2 ScalarField::tri_grad(int t) const {
  const auto& tr = mesh->tris[static_cast<std::size_t>(t)];
  const Vec2& p0 = mesh->nodes[static_cast<std::size_t>(tr[0])];
  const Vec2& p1 = mesh->nodes[static_cast<std::size_t>(tr[1])];
  const Vec2& p2 = mesh->nodes[static_cast<std::size_t>(tr[2])];
  const double a2 = (p1 - p0).cross(p2 - p0);
  const double u0 = values[static_cast<std::size_t>(tr[0])];
  const double u1 = values[static_cast<std::size_t>(tr[1])];
  const double u2 = values[static_cast<std::size_t>(tr[2])];
  const Vec2 g{u0 * (p1.y - p2.y) + u1 * (p2.y - p0.y) + u2 * (p0.y - p1.y),
               u0 * (p2.x - p1.x) + u1 * (p0.x - p2.x) + u2 * (p1.x - p0.x)};
  return g * (1.0 / a2);
}

ScalarField interpolate(const SlitMesh& mesh, const BoundaryData& g) {
  ScalarField f;
  f.mesh = &mesh;
  f.values.resize(mesh.nodes.size());
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i)
    f.values[i] = g(mesh.nodes[i], mesh.node_side[i]);
  return f;
}

SolveResult solve_mixed(const SlitMesh& mesh, const BoundaryData& g, const SolveOptions& opts) {
  const int n = static_cast<int>(mesh.nodes.size());
  const CsrMatrix k = slit_stiffness(mesh, opts.policy);

  // Fixed nodes: Dirichlet data, plus every node of a component that has no
  // Dirichlet boundary (its minimizer is a constant; we pick 0).
  std::vector<char> fixed(static_cast<std::size_t>(n), 0);
  std::vector<double> value(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const int comp = mesh.node_component[static_cast<std::size_t>(i)];
    if (comp >= 0 && !mesh.component_has_dirichlet[static_cast<std::size_t>(comp)]) {
      fixed[static_cast<std::size_t>(i)] = 1;
    } else if (mesh.node_dirichlet[static_cast<std::size_t>(i)]) {
      fixed[static_cast<std::size_t>(i)] = 1;
      value[static_cast<std::size_t>(i)] = g(mesh.nodes[static_cast<std::size_t>(i)], mesh.node_side[static_cast<std::size_t>(i)]);
    }
  }

  std::vector<int> red(static_cast<std::size_t>(n), -1);
  int nf = 0;
  for (int i = 0; i < n; ++i)
    if (!fixed[static_cast<std::size_t>(i)]) red[static_cast<std::size_t>(i)] = nf++;

  SolveResult res;
  res.u.mesh = &mesh;
  res.u.values = value;
  if (nf == 0) return res;

  std::vector<int> rows, cols;
  std::vector<double> vals;
  std::vector<double> rhs(static_cast<std::size_t>(nf), 0.0);
  for (int i = 0; i < n; ++i) {
    if (fixed[static_cast<std::size_t>(i)]) continue;
    const int ri = red[static_cast<std::size_t>(i)];
    for (int p = k.row_ptr[static_cast<std::size_t>(i)]; p < k.row_ptr[static_cast<std::size_t>(i) + 1]; ++p) {
      const int j = k.col_idx[static_cast<std::size_t>(p)];
      const double v = k.vals[static_cast<std::size_t>(p)];
      if (fixed[static_cast<std::size_t>(j)])
        rhs[static_cast<std::size_t>(ri)] -= v * value[static_cast<std::size_t>(j)];
      else {
        rows.push_back(ri);
        cols.push_back(red[static_cast<std::size_t>(j)]);
        vals.push_back(v);
      }
    }
  }
  const CsrMatrix kred = CsrMatrix::from_triplets(nf, rows, cols, vals);
  const CgResult cg = jacobi_cg(kred, rhs, opts.cg_rel_tol, opts.cg_max_iter, opts.policy);
  if (!cg.converged && cg.rel_residual > 1e-8)
    throw SolverFailure("conjugate gradients stalled at relative residual " +
                        std::to_string(cg.rel_residual));
  res.cg_iterations = cg.iterations;
  res.cg_rel_residual = cg.rel_residual;
  for (int i = 0; i < n; ++i)
    if (!fixed[static_cast<std::size_t>(i)]) res.u.values[static_cast<std::size_t>(i)] = cg.x[static_cast<std::size_t>(red[static_cast<std::size_t>(i)])];
  return res;
}

double dirichlet_energy(const ScalarField& u) {
  double e = 0.0;
  for (int t = 0; t < static_cast<int>(u.mesh->tris.size()); ++t)
    e += u.mesh->tri_area(t) * u.tri_grad(t).norm2();
  return e;
}

double grad_inner(const ScalarField& u, const ScalarField& v) {
  double e = 0.0;
  for (int t = 0; t < static_cast<int>(u.mesh->tris.size()); ++t)
    e += u.mesh->tri_area(t) * u.tri_grad(t).dot(v.tri_grad(t));
  return e;
}

double l2_norm_sq(const ScalarField& u) {
  double s = 0.0;
  for (int t = 0; t < static_cast<int>(u.mesh->tris.size()); ++t) {
    const auto& tr = u.mesh->tris[static_cast<std::size_t>(t)];
    const double a = u.mesh->tri_area(t);
    const double u0 = u.values[static_cast<std::size_t>(tr[0])];
    const double u1 = u.values[static_cast<std::size_t>(tr[1])];
    const double u2 = u.values[static_cast<std::size_t>(tr[2])];
    s += a / 6.0 * (u0 * u0 + u1 * u1 + u2 * u2 + u0 * u1 + u0 * u2 + u1 * u2);
  }
  return s;
}

double l2_error_sq(const ScalarField& u, const std::function<double(const Vec2&)>& f) {
  double s = 0.0;
  for (int t = 0; t < static_cast<int>(u.mesh->tris.size()); ++t) {
    const auto& tr = u.mesh->tris[static_cast<std::size_t>(t)];
    const double a = u.mesh->tri_area(t);
    for (int c = 0; c < 3; ++c) {
      const int i = tr[static_cast<std::size_t>(c)], j = tr[static_cast<std::size_t>((c + 1) % 3)];
      const Vec2 mid = (u.mesh->nodes[static_cast<std::size_t>(i)] + u.mesh->nodes[static_cast<std::size_t>(j)]) * 0.5;
      const double uh = 0.5 * (u.values[static_cast<std::size_t>(i)] + u.values[static_cast<std::size_t>(j)]);
      const double d = uh - f(mid);
      s += a / 3.0 * d * d;
    }
  }
  return s;
}

std::vector<double> stiffness_residual(const ScalarField& u, ExecPolicy policy) {
  const CsrMatrix k = slit_stiffness(*u.mesh, policy);
  std::vector<double> r;
  spmv(k, u.values, r, policy);
  return r;
}

double weighted_flux(const ScalarField& u, const std::vector<double>& w, ExecPolicy policy) {
  const std::vector<double> r = stiffness_residual(u, policy);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += w[i] * r[i];
  return s;
}

std::vector<double> trace_jump(const ScalarField& u) {
  std::vector<double> j;
  j.reserve(u.mesh->slit_pairs.size());
  for (const auto& p : u.mesh->slit_pairs)
    j.push_back(u.values[static_cast<std::size_t>(p.minus)] - u.values[static_cast<std::size_t>(p.plus)]);
  return j;
}

ConjugateResult harmonic_conjugate(const ScalarField& u, const SolveOptions& opts) {
  const SlitMesh& m = *u.mesh;
  const int nb = m.n_base_nodes;

  // Base grid positions (the unslit tensor grid).
  const int nx = static_cast<int>(m.xlines.size());
  std::vector<Vec2> pos(static_cast<std::size_t>(nb));
  for (int id = 0; id < nb; ++id)
    pos[static_cast<std::size_t>(id)] = {m.xlines[static_cast<std::size_t>(id % nx)], m.ylines[static_cast<std::size_t>(id / nx)]};

  const CsrMatrix k = assemble_stiffness(pos, m.tris, &m.base_node, opts.policy);

  // Load: b_i = Σ_T |T| (R ∇u_T)·∇φ_i, where R rotates by 90 degrees.
  std::vector<double> b(static_cast<std::size_t>(nb), 0.0);
  for (int t = 0; t < static_cast<int>(m.tris.size()); ++t) {
    const auto& tr = m.tris[static_cast<std::size_t>(t)];
    const Vec2 ru = rot90(u.tri_grad(t));
    const Vec2& p0 = m.nodes[static_cast<std::size_t>(tr[0])];
    const Vec2& p1 = m.nodes[static_cast<std::size_t>(tr[1])];
    const Vec2& p2 = m.nodes[static_cast<std::size_t>(tr[2])];
    const double bb[3] = {p1.y - p2.y, p2.y - p0.y, p0.y - p1.y};
    const double cc[3] = {p2.x - p1.x, p0.x - p2.x, p1.x - p0.x};
    for (int c = 0; c < 3; ++c) {
      const Vec2 grad{bb[c], cc[c]};  // 2*area*∇φ_c
      b[static_cast<std::size_t>(m.base_node[static_cast<std::size_t>(tr[static_cast<std::size_t>(c)])])] += 0.5 * ru.dot(grad);
    }
  }

  // Pure Neumann problem: pin node 0 to fix the constant, then shift to
  // zero mean.
  std::vector<int> rows, cols;
  std::vector<double> vals;
  std::vector<double> rhs(static_cast<std::size_t>(nb - 1));
  for (int i = 1; i < nb; ++i) rhs[static_cast<std::size_t>(i - 1)] = b[static_cast<std::size_t>(i)];
  for (int i = 1; i < nb; ++i)
    for (int p = k.row_ptr[static_cast<std::size_t>(i)]; p < k.row_ptr[static_cast<std::size_t>(i) + 1]; ++p) {
      const int j = k.col_idx[static_cast<std::size_t>(p)];
      if (j == 0) continue;
      rows.push_back(i - 1);
      cols.push_back(j - 1);
      vals.push_back(k.vals[static_cast<std::size_t>(p)]);
    }
  const CsrMatrix kred = CsrMatrix::from_triplets(nb - 1, rows, cols, vals);
  const CgResult cg = jacobi_cg(kred, rhs, opts.cg_rel_tol, opts.cg_max_iter, opts.policy);
  if (!cg.converged && cg.rel_residual > 1e-8)
    throw SolverFailure("conjugate-field solve stalled at relative residual " +
                        std::to_string(cg.rel_residual));

  ConjugateResult res;
  res.v.assign(static_cast<std::size_t>(nb), 0.0);
  for (int i = 1; i < nb; ++i) res.v[static_cast<std::size_t>(i)] = cg.x[static_cast<std::size_t>(i - 1)];
  const double mean = std::accumulate(res.v.begin(), res.v.end(), 0.0) / nb;
  for (double& x : res.v) x -= mean;

  for (int t = 0; t < static_cast<int>(m.tris.size()); ++t) {
    const auto& tr = m.tris[static_cast<std::size_t>(t)];
    const Vec2& p0 = m.nodes[static_cast<std::size_t>(tr[0])];
    const Vec2& p1 = m.nodes[static_cast<std::size_t>(tr[1])];
    const Vec2& p2 = m.nodes[static_cast<std::size_t>(tr[2])];
    const double a2 = (p1 - p0).cross(p2 - p0);
    const double v0 = res.v[static_cast<std::size_t>(m.base_node[static_cast<std::size_t>(tr[0])])];
    const double v1 = res.v[static_cast<std::size_t>(m.base_node[static_cast<std::size_t>(tr[1])])];
    const double v2 = res.v[static_cast<std::size_t>(m.base_node[static_cast<std::size_t>(tr[2])])];
    const Vec2 gv = Vec2{v0 * (p1.y - p2.y) + v1 * (p2.y - p0.y) + v2 * (p0.y - p1.y),
                         v0 * (p2.x - p1.x) + v1 * (p0.x - p2.x) + v2 * (p1.x - p0.x)} *
                    (1.0 / a2);
    res.residual_sq += 0.5 * a2 * (gv - rot90(u.tri_grad(t))).norm2();
  }
  return res;
}

CrackTraceStats conjugate_on_crack(const SlitMesh& mesh, const std::vector<double>& v,
                                   const CrackSet& crack) {
  CrackTraceStats stats;
  const ComponentLabeling lab = connected_components(crack);
  const auto& edges = crack.edges();
  const int nx = static_cast<int>(mesh.xlines.size());

  for (int c = 0; c < lab.count; ++c) {
    std::vector<Segment> segs;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (lab.label[e] == c) segs.push_back(crack.segment(edges[e]));
    std::vector<double> samples;
    for (int id = 0; id < mesh.n_base_nodes; ++id) {
      const Vec2 p{mesh.xlines[static_cast<std::size_t>(id % nx)], mesh.ylines[static_cast<std::size_t>(id / nx)]};
      if (point_set_distance(p, segs) <= 1e-9) samples.push_back(v[static_cast<std::size_t>(id)]);
    }
    double mean = 0.0, var = 0.0;
    if (!samples.empty()) {
      mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
      for (double s : samples) var += (s - mean) * (s - mean);
      var /= static_cast<double>(samples.size());
    }
    stats.mean.push_back(mean);
    stats.stddev.push_back(std::sqrt(var));
    stats.max_stddev = std::max(stats.max_stddev, std::sqrt(var));
  }
  return stats;
}

}  // namespace fracsim

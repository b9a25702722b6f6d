#pragma once

#include <functional>
#include <vector>

#include "fracsim/slit_mesh.hpp"
#include "fracsim/sparse.hpp"

namespace fracsim {

struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Boundary datum evaluated at a node position; `side` is +1/-1 for the
/// two-sided slit copies and 0 elsewhere, so data may differ across a slit.
using BoundaryData = std::function<double(const Vec2&, double side)>;

/// Piecewise-linear scalar field on a slit mesh, one value per node
/// (slit copies carry independent values).
struct ScalarField {
  const SlitMesh* mesh = nullptr;
  std::vector<double> values;

  Vec2 tri_grad(int t) const;
};

struct SolveOptions {
  double cg_rel_tol = 1e-12;
  int cg_max_iter = 0;  // 0 = automatic
  ExecPolicy policy = ExecPolicy::Parallel;
};

struct SolveResult {
  ScalarField u;
  int cg_iterations = 0;
  double cg_rel_residual = 0.0;
};

/// Minimizes ∫|∇u|² over u = g on the Dirichlet boundary (crack nodes
/// excluded); homogeneous Neumann elsewhere and on the crack faces.
/// Components without Dirichlet data get u ≡ 0.
SolveResult solve_mixed(const SlitMesh& mesh, const BoundaryData& g,
                        const SolveOptions& opts = {});

/// Nodal interpolant of g (side-aware on slit copies).
ScalarField interpolate(const SlitMesh& mesh, const BoundaryData& g);

/// ∫ |∇u|² over the slit domain.
double dirichlet_energy(const ScalarField& u);

/// ∫ ∇u·∇v.
double grad_inner(const ScalarField& u, const ScalarField& v);

/// ∫ u² with the exact P1 mass matrix.
double l2_norm_sq(const ScalarField& u);

/// ∫ (u - f)² by degree-2 (edge midpoint) quadrature per triangle.
double l2_error_sq(const ScalarField& u, const std::function<double(const Vec2&)>& f);

/// Nodal residual r = K u of the unconstrained stiffness matrix. For the
/// discrete solution, r vanishes at free interior nodes and equals the
/// outward flux functional at constrained/boundary nodes.
std::vector<double> stiffness_residual(const ScalarField& u,
                                       ExecPolicy policy = ExecPolicy::Parallel);

/// Σ_i w_i (K u)_i — the discrete flux through the interface separating
/// {w=1} from {w=0}, smeared over the transition region of w.
double weighted_flux(const ScalarField& u, const std::vector<double>& w,
                     ExecPolicy policy = ExecPolicy::Parallel);

/// Jump u⁻ - u⁺ at each two-sided slit pair, ordered as mesh.slit_pairs.
std::vector<double> trace_jump(const ScalarField& u);

/// Best P1 approximation v of the rotated gradient field: minimizes
/// ∫|∇v - R∇u|² over the *unslit* base grid, R(y₁,y₂) = (-y₂,y₁), with
/// zero mean per component. If u is harmonic away from the crack, v is the
/// conjugate function and is constant along each crack component.
struct ConjugateResult {
  std::vector<double> v;  // per base grid node
  double residual_sq = 0.0;  // ∫|∇v - R∇u|²
};
ConjugateResult harmonic_conjugate(const ScalarField& u,
                                   const SolveOptions& opts = {});

/// Sample v (per base node) along the crack polyline: mean and standard
/// deviation of the values at crack nodes, per crack component of the mesh.
struct CrackTraceStats {
  std::vector<double> mean;
  std::vector<double> stddev;
  double max_stddev = 0.0;
};
CrackTraceStats conjugate_on_crack(const SlitMesh& mesh, const std::vector<double>& v,
                                   const CrackSet& crack);

}  // namespace fracsim

#pragma once

#include "fracsim/energy.hpp"

namespace fracsim {

/// One loading term a_k(t)·G_k with a piecewise-linear weight a_k
/// (a_k(0)=0 unless stated otherwise by the knots).
struct LoadTerm {
  BoundaryData profile;
  std::vector<double> times;    // strictly increasing knots
  std::vector<double> weights;  // same length as times

  double weight_at(double t) const;
};

/// Time-dependent boundary datum g(t) = Σ_k a_k(t) G_k.
struct BoundaryProgram {
  std::vector<LoadTerm> terms;

  BoundaryData at(double t) const;
};

struct TimeGrid {
  double t_end = 1.0;
  int n_steps = 8;

  double time(int i) const { return t_end * i / n_steps; }
  double delta() const { return t_end / n_steps; }
};

/// How candidate crack extensions are generated at each step.
struct CandidatePolicy {
  enum Kind {
    /// Connected chains of up to max_edges_per_step pool edges attached to
    /// the current crack (optionally also detached single edges).
    TipGrowth,
    /// Every subset of the remaining pool edges (pool must stay small).
    PoolEnumeration,
  };
  Kind kind = PoolEnumeration;
  int max_edges_per_step = 3;
  bool allow_nucleation = false;
};

/// Full description of a discrete-time crack evolution problem.
struct EvolutionProblem {
  DomainSpec domain;
  CrackSet initial;
  CrackSet pool;  // edges the crack may acquire; disjoint edges beyond `initial`
  int max_components = 1;
  BoundaryProgram program;
  MeshParams mesh;
  EnergyModel model;
  CandidatePolicy policy;
};

struct StepRecord {
  double time = 0.0;
  CrackSet crack;
  EnergyBreakdown energy;
  double work_increment = 0.0;       // mu Σ_k Δa_k (∇u|∇Π_h G_k), left endpoint
  double work_increment_flux = 0.0;  // same quantity via the nodal flux residual
  int component_count = 0;
  int candidates_evaluated = 0;
  bool crack_changed = false;
};

struct EvolutionTrace {
  std::vector<StepRecord> steps;  // steps[0] holds the t=0 state
  EnergyModel model;
};

/// Candidate supersets of `current` per the problem's policy, filtered by
/// the component bound. Always includes `current` itself. Deterministic
/// order (sorted by edge list).
std::vector<CrackSet> generate_candidates(const EvolutionProblem& prob, const CrackSet& current);

/// Energy of a state under datum g: solve on the slit mesh and total up.
EnergyBreakdown evaluate_state(const EvolutionProblem& prob, const CrackSet& k,
                               const BoundaryData& g, ExecPolicy policy);

/// One incremental minimization: the candidate with minimal total energy,
/// ties broken by smaller surface length, then lexicographic edge list.
/// Candidates are evaluated in parallel under ExecPolicy::Parallel; the
/// result is identical to the serial path.
CrackSet incremental_step(const EvolutionProblem& prob, const CrackSet& current,
                          const BoundaryData& g, ExecPolicy policy,
                          int* candidates_evaluated = nullptr);

/// Independent oracle: serial exhaustive enumeration over all pool subsets
/// (ignoring the policy), same tie-break.
CrackSet brute_force_step(const EvolutionProblem& prob, const CrackSet& current,
                          const BoundaryData& g);

EvolutionTrace run_discrete_evolution(const EvolutionProblem& prob, const TimeGrid& grid,
                                      ExecPolicy policy = ExecPolicy::Parallel);

struct EnergyBalanceReport {
  double omega_hat = 0.0;  // max positive slack E_j - E_i - Σ W over i<j
  double max_step_mismatch = 0.0;  // max |ΔE - W| / max(|W|, eps), jump-free steps
  double eps_floor = 0.0;          // max_i |W_i|
  double max_flux_gradient_gap = 0.0;  // relative gap between the two work forms
  int n_jump_steps = 0;
};

EnergyBalanceReport energy_balance_report(const EvolutionTrace& trace);

/// Re-checks minimality of each recorded state against freshly generated
/// competitors; returns the worst energy violation (positive = bad).
double unilateral_minimality_check(const EvolutionProblem& prob, const EvolutionTrace& trace,
                                   ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace fracsim

#include "fracsim/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fracsim {

double LoadTerm::weight_at(double t) const {
  if (times.empty()) return 0.0;
  if (t <= times.front()) return weights.front();
  if (t >= times.back()) return weights.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - times.begin());
  const double s = (t - times[j - 1]) / (times[j] - times[j - 1]);
  return weights[j - 1] + s * (weights[j] - weights[j - 1]);
}

BoundaryData BoundaryProgram::at(double t) const {
  std::vector<std::pair<double, BoundaryData>> active;
  for (const LoadTerm& term : terms) active.push_back({term.weight_at(t), term.profile});
  return [active](const Vec2& p, double side) {
    double v = 0.0;
    for (const auto& [a, g] : active) v += a * g(p, side);
    return v;
  };
}

namespace {

std::set<int> crack_nodes(const CrackSet& k) {
  std::set<int> nodes;
  for (const LatticeEdge& e : k.edges()) {
    nodes.insert(e.a);
    nodes.insert(e.b);
  }
  return nodes;
}

bool admissible(const EvolutionProblem& prob, const CrackSet& k) {
  return component_count(k) <= prob.max_components;
}

/// Lexicographic tie-break: total energy, then surface length, then the
/// edge list. Exact comparisons on purpose: both execution policies and the
/// brute-force oracle compute identical numbers.
bool better(double total_a, double surf_a, const CrackSet& a, double total_b, double surf_b,
            const CrackSet& b) {
  if (total_a != total_b) return total_a < total_b;
  if (surf_a != surf_b) return surf_a < surf_b;
  return a.edges() < b.edges();
}

std::vector<CrackSet> enumerate_pool(const EvolutionProblem& prob, const CrackSet& current) {
  std::vector<LatticeEdge> remaining;
  for (const LatticeEdge& e : prob.pool.edges())
    if (!current.has_edge(e.a, e.b)) remaining.push_back(e);
  if (remaining.size() > 20)
    throw ConfigError("pool enumeration over " + std::to_string(remaining.size()) +
                      " edges is intractable (limit 20)");
  std::vector<CrackSet> out;
  const std::size_t n = remaining.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<LatticeEdge> extra;
    for (std::size_t b = 0; b < n; ++b)
      if (mask & (std::size_t{1} << b)) extra.push_back(remaining[b]);
    CrackSet cand = current.with_edges(extra);
    if (admissible(prob, cand)) out.push_back(std::move(cand));
  }
  return out;
}

std::vector<CrackSet> enumerate_tip_growth(const EvolutionProblem& prob,
                                           const CrackSet& current) {
  std::vector<LatticeEdge> remaining;
  for (const LatticeEdge& e : prob.pool.edges())
    if (!current.has_edge(e.a, e.b)) remaining.push_back(e);

  std::set<std::vector<LatticeEdge>> seen;
  std::vector<std::vector<LatticeEdge>> frontier = {{}};
  seen.insert(std::vector<LatticeEdge>{});
  for (int level = 0; level < prob.policy.max_edges_per_step; ++level) {
    std::vector<std::vector<LatticeEdge>> next;
    for (const auto& added : frontier) {
      std::set<int> nodes = crack_nodes(current);
      for (const LatticeEdge& e : added) {
        nodes.insert(e.a);
        nodes.insert(e.b);
      }
      for (const LatticeEdge& e : remaining) {
        if (std::find(added.begin(), added.end(), e) != added.end()) continue;
        const bool attached = nodes.count(e.a) || nodes.count(e.b);
        if (!attached && !(prob.policy.allow_nucleation && added.empty())) continue;
        std::vector<LatticeEdge> grown = added;
        grown.insert(std::lower_bound(grown.begin(), grown.end(), e), e);
        if (seen.insert(grown).second) next.push_back(std::move(grown));
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }

  std::vector<CrackSet> out;
  for (const auto& added : seen) {
    CrackSet cand = current.with_edges(added);
    if (admissible(prob, cand)) out.push_back(std::move(cand));
  }
  return out;
}

}  // namespace

std::vector<CrackSet> generate_candidates(const EvolutionProblem& prob,
                                          const CrackSet& current) {
  std::vector<CrackSet> out = prob.policy.kind == CandidatePolicy::PoolEnumeration
                                  ? enumerate_pool(prob, current)
                                  : enumerate_tip_growth(prob, current);
  std::sort(out.begin(), out.end(),
            [](const CrackSet& a, const CrackSet& b) { return a.edges() < b.edges(); });
  return out;
}

EnergyBreakdown evaluate_state(const EvolutionProblem& prob, const CrackSet& k,
                               const BoundaryData& g, ExecPolicy policy) {
  const SlitMesh mesh = build_mesh(prob.domain, k, prob.mesh);
  SolveOptions opts;
  opts.policy = policy;
  const SolveResult sol = solve_mixed(mesh, g, opts);
  return total_energy(prob.model, sol.u, k);
}

CrackSet incremental_step(const EvolutionProblem& prob, const CrackSet& current,
                          const BoundaryData& g, ExecPolicy policy,
                          int* candidates_evaluated) {
  const std::vector<CrackSet> cands = generate_candidates(prob, current);
  if (candidates_evaluated) *candidates_evaluated = static_cast<int>(cands.size());
  const int n = static_cast<int>(cands.size());
  std::vector<double> totals(static_cast<std::size_t>(n)), surfs(static_cast<std::size_t>(n));
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
      const EnergyBreakdown e = evaluate_state(prob, cands[static_cast<std::size_t>(i)], g, ExecPolicy::Serial);
      totals[static_cast<std::size_t>(i)] = e.total;
      surfs[static_cast<std::size_t>(i)] = e.surface;
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const EnergyBreakdown e = evaluate_state(prob, cands[static_cast<std::size_t>(i)], g, ExecPolicy::Serial);
      totals[static_cast<std::size_t>(i)] = e.total;
      surfs[static_cast<std::size_t>(i)] = e.surface;
    }
  }
  int best = 0;
  for (int i = 1; i < n; ++i)
    if (better(totals[static_cast<std::size_t>(i)], surfs[static_cast<std::size_t>(i)], cands[static_cast<std::size_t>(i)],
               totals[static_cast<std::size_t>(best)], surfs[static_cast<std::size_t>(best)], cands[static_cast<std::size_t>(best)]))
      best = i;
  return cands[static_cast<std::size_t>(best)];
}

CrackSet brute_force_step(const EvolutionProblem& prob, const CrackSet& current,
                          const BoundaryData& g) {
  const std::vector<CrackSet> cands = enumerate_pool(prob, current);
  bool have = false;
  CrackSet best_k;
  double best_total = 0.0, best_surf = 0.0;
  for (const CrackSet& cand : cands) {
    const EnergyBreakdown e = evaluate_state(prob, cand, g, ExecPolicy::Serial);
    if (!have || better(e.total, e.surface, cand, best_total, best_surf, best_k)) {
      have = true;
      best_k = cand;
      best_total = e.total;
      best_surf = e.surface;
    }
  }
  return best_k;
}

EvolutionTrace run_discrete_evolution(const EvolutionProblem& prob, const TimeGrid& grid,
                                      ExecPolicy policy) {
  EvolutionTrace trace;
  trace.model = prob.model;

  SolveOptions opts;
  opts.policy = policy;

  CrackSet k = prob.initial;
  SlitMesh mesh = build_mesh(prob.domain, k, prob.mesh);
  SolveResult sol = solve_mixed(mesh, prob.program.at(0.0), opts);

  StepRecord rec0;
  rec0.time = grid.time(0);
  rec0.crack = k;
  rec0.energy = total_energy(prob.model, sol.u, k);
  rec0.component_count = component_count(k);
  trace.steps.push_back(rec0);

  for (int i = 1; i <= grid.n_steps; ++i) {
    const double t_prev = grid.time(i - 1), t = grid.time(i);

    // Work supplied by the loading over (t_prev, t], evaluated at the left
    // endpoint state, in both the gradient and the nodal-flux form.
    double w = 0.0, wf = 0.0;
    const std::vector<double> r = stiffness_residual(sol.u, policy);
    for (const LoadTerm& term : prob.program.terms) {
      const double da = term.weight_at(t) - term.weight_at(t_prev);
      if (da == 0.0) continue;
      const ScalarField gk = interpolate(mesh, term.profile);
      w += da * prob.model.mu * grad_inner(sol.u, gk);
      double fx = 0.0;
      for (std::size_t n = 0; n < mesh.nodes.size(); ++n)
        if (mesh.node_dirichlet[n]) fx += gk.values[n] * r[n];
      wf += da * prob.model.mu * fx;
    }

    StepRecord rec;
    rec.time = t;
    const BoundaryData g = prob.program.at(t);
    rec.crack = incremental_step(prob, k, g, policy, &rec.candidates_evaluated);
    rec.crack_changed = !(rec.crack == k);
    k = rec.crack;

    mesh = build_mesh(prob.domain, k, prob.mesh);
    sol = solve_mixed(mesh, g, opts);
    rec.energy = total_energy(prob.model, sol.u, k);
    rec.component_count = component_count(k);
    rec.work_increment = w;
    rec.work_increment_flux = wf;
    trace.steps.push_back(std::move(rec));
  }
  return trace;
}

EnergyBalanceReport energy_balance_report(const EvolutionTrace& trace) {
  EnergyBalanceReport rep;
  const auto& s = trace.steps;
  if (s.size() < 2) return rep;

  std::vector<double> wcum(s.size(), 0.0);
  for (std::size_t i = 1; i < s.size(); ++i) {
    wcum[i] = wcum[i - 1] + s[i].work_increment;
    rep.eps_floor = std::max(rep.eps_floor, std::abs(s[i].work_increment));
    if (s[i].crack_changed) ++rep.n_jump_steps;
  }
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const double slack = (s[j].energy.total - s[i].energy.total) - (wcum[j] - wcum[i]);
      rep.omega_hat = std::max(rep.omega_hat, slack);
    }
  rep.omega_hat = std::max(0.0, rep.omega_hat);

  const double eps = rep.eps_floor > 0.0 ? rep.eps_floor : 1.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double w = s[i].work_increment;
    if (!s[i].crack_changed) {
      const double de = s[i].energy.total - s[i - 1].energy.total;
      rep.max_step_mismatch = std::max(rep.max_step_mismatch, std::abs(de - w) / std::max(std::abs(w), eps));
    }
    rep.max_flux_gradient_gap =
        std::max(rep.max_flux_gradient_gap,
                 std::abs(w - s[i].work_increment_flux) / std::max(std::abs(w), eps));
  }
  return rep;
}

double unilateral_minimality_check(const EvolutionProblem& prob, const EvolutionTrace& trace,
                                   ExecPolicy policy) {
  double worst = 0.0;
  for (const StepRecord& rec : trace.steps) {
    const BoundaryData g = prob.program.at(rec.time);
    const std::vector<CrackSet> cands = generate_candidates(prob, rec.crack);
    for (const CrackSet& cand : cands) {
      const EnergyBreakdown e = evaluate_state(prob, cand, g, policy);
      worst = std::max(worst, rec.energy.total - e.total);
    }
  }
  return worst;
}

}  // namespace fracsim

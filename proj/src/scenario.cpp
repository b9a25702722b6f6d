#include "fracsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

namespace fracsim {

using nlohmann::json;

BoundaryData make_profile(const std::string& name) {
  if (name == "x1") return [](const Vec2& p, double) { return p.x; };
  if (name == "x2") return [](const Vec2& p, double) { return p.y; };
  if (name == "x1x2") return [](const Vec2& p, double) { return p.x * p.y; };
  if (name == "pm1")
    return [](const Vec2& p, double side) {
      if (side != 0.0) return side;
      return p.y >= 0.0 ? 1.0 : -1.0;
    };
  throw ConfigError("unknown boundary profile '" + name + "'");
}

namespace {

CrackSet crack_from_segments(const LatticeSpec& lat, const json& segs, double tol) {
  CrackSet k(lat);
  double err = k.snap_error();
  for (const auto& s : segs) {
    if (!s.is_array() || s.size() != 4)
      throw ConfigError("crack segment must be [x0,y0,x1,y1]");
    const int a = snap_to_lattice(lat, {s[0].get<double>(), s[1].get<double>()}, tol, err);
    const int b = snap_to_lattice(lat, {s[2].get<double>(), s[3].get<double>()}, tol, err);
    add_chain(k, a, b);
  }
  k.set_snap_error(err);
  return k;
}

json segments_to_json(const CrackSet& k) {
  json out = json::array();
  for (const Segment& s : merge_collinear(k.segments()))
    out.push_back({s.a.x, s.a.y, s.b.x, s.b.y});
  return out;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid scenario JSON: ") + e.what());
  }
  ScenarioConfig cfg;
  try {
    const auto& dj = j.at("domain");
    const auto& r = dj.at("rect");
    cfg.problem.domain.rect = {r.at(0), r.at(1), r.at(2), r.at(3)};
    for (const auto& bi : dj.at("dirichlet"))
      cfg.problem.domain.dirichlet.push_back(
          {boundary_side_from_string(bi.at("side")), bi.at("lo"), bi.at("hi")});
    cfg.problem.domain.validate();

    const double spacing = j.at("lattice_spacing");
    const LatticeSpec lat = make_lattice(cfg.problem.domain.rect, spacing);
    const double tol = j.value("snap_tol", 0.5 * spacing);
    cfg.problem.initial = crack_from_segments(lat, j.at("initial_crack"), tol);
    cfg.problem.pool = crack_from_segments(lat, j.at("pool"), tol);
    cfg.problem.max_components = j.value("max_components", 1);

    for (const auto& lj : j.at("load")) {
      LoadTerm term;
      const std::string name = lj.at("profile");
      term.profile = make_profile(name);
      term.times = lj.at("times").get<std::vector<double>>();
      term.weights = lj.at("weights").get<std::vector<double>>();
      if (term.times.size() != term.weights.size() || term.times.size() < 2)
        throw ConfigError("load term needs matching times/weights with >= 2 knots");
      if (!std::is_sorted(term.times.begin(), term.times.end()))
        throw ConfigError("load knots must be increasing");
      cfg.problem.program.terms.push_back(std::move(term));
      cfg.profile_names.push_back(name);
    }

    const auto& mj = j.at("mesh");
    cfg.problem.mesh.h = mj.at("h");
    cfg.problem.mesh.min_angle_deg = mj.value("min_angle_deg", 1.0);
    if (mj.contains("boxes"))
      for (const auto& bj : mj.at("boxes")) {
        const auto& br = bj.at("rect");
        cfg.problem.mesh.boxes.push_back(
            {Rect{br.at(0), br.at(1), br.at(2), br.at(3)}, bj.at("factor")});
      }

    if (j.contains("model")) {
      cfg.problem.model.mu = j.at("model").value("mu", 2.0);
      cfg.problem.model.k = j.at("model").value("k", 1.0);
    }

    if (j.contains("policy")) {
      const auto& pj = j.at("policy");
      const std::string kind = pj.value("kind", "pool");
      if (kind == "pool")
        cfg.problem.policy.kind = CandidatePolicy::PoolEnumeration;
      else if (kind == "tip")
        cfg.problem.policy.kind = CandidatePolicy::TipGrowth;
      else
        throw ConfigError("unknown policy kind '" + kind + "'");
      cfg.problem.policy.max_edges_per_step = pj.value("max_edges_per_step", 3);
      cfg.problem.policy.allow_nucleation = pj.value("allow_nucleation", false);
    }

    const auto& tj = j.at("time");
    cfg.grid.t_end = tj.at("t_end");
    cfg.grid.n_steps = tj.at("n_steps");
    if (cfg.grid.n_steps < 1) throw ConfigError("time.n_steps must be positive");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario config: ") + e.what());
  }
  return cfg;
}

std::string ScenarioConfig::to_json() const {
  json j;
  const Rect& r = problem.domain.rect;
  j["domain"]["rect"] = {r.x0, r.x1, r.y0, r.y1};
  j["domain"]["dirichlet"] = json::array();
  for (const BoundaryInterval& bi : problem.domain.dirichlet)
    j["domain"]["dirichlet"].push_back(
        {{"side", to_string(bi.side)}, {"lo", bi.lo}, {"hi", bi.hi}});
  j["lattice_spacing"] = problem.initial.lattice().spacing;
  j["initial_crack"] = segments_to_json(problem.initial);
  j["pool"] = segments_to_json(problem.pool);
  j["max_components"] = problem.max_components;
  j["load"] = json::array();
  for (std::size_t i = 0; i < problem.program.terms.size(); ++i) {
    const LoadTerm& t = problem.program.terms[i];
    j["load"].push_back({{"profile", profile_names.at(i)},
                         {"times", t.times},
                         {"weights", t.weights}});
  }
  j["mesh"]["h"] = problem.mesh.h;
  j["mesh"]["min_angle_deg"] = problem.mesh.min_angle_deg;
  j["mesh"]["boxes"] = json::array();
  for (const RefinementBox& b : problem.mesh.boxes)
    j["mesh"]["boxes"].push_back(
        {{"rect", {b.rect.x0, b.rect.x1, b.rect.y0, b.rect.y1}}, {"factor", b.factor}});
  j["model"] = {{"mu", problem.model.mu}, {"k", problem.model.k}};
  j["policy"] = {
      {"kind", problem.policy.kind == CandidatePolicy::PoolEnumeration ? "pool" : "tip"},
      {"max_edges_per_step", problem.policy.max_edges_per_step},
      {"allow_nucleation", problem.policy.allow_nucleation}};
  j["time"] = {{"t_end", grid.t_end}, {"n_steps", grid.n_steps}};
  return j.dump(2);
}

std::string trace_to_csv(const EvolutionTrace& trace) {
  std::ostringstream os;
  os.precision(17);
  os << "t,bulk,surface,total,work_cumulative,component_count,crack_length\n";
  double wcum = 0.0;
  for (const StepRecord& s : trace.steps) {
    wcum += s.work_increment;
    os << s.time << "," << s.energy.bulk << "," << s.energy.surface << "," << s.energy.total
       << "," << wcum << "," << s.component_count << "," << crack_length(s.crack) << "\n";
  }
  return os.str();
}

ScenarioResult run_scenario(const ScenarioConfig& config, ExecPolicy policy) {
  ScenarioResult res;
  res.trace = run_discrete_evolution(config.problem, config.grid, policy);
  res.csv = trace_to_csv(res.trace);
  return res;
}

ScenarioConfig midline_scenario(double x_init, double x_pool, double spacing, double h,
                                double t_end, int n_steps) {
  ScenarioConfig cfg;
  cfg.problem.domain = example_domain();
  const LatticeSpec lat = make_lattice(cfg.problem.domain.rect, spacing);
  cfg.problem.initial = horizontal_crack(lat, 0.0, x_init, 0.0, 1e-9);
  cfg.problem.pool = horizontal_crack(lat, x_init, x_pool, 0.0, 1e-9);
  cfg.problem.max_components = 1;
  LoadTerm pull;
  pull.profile = make_profile("x2");
  pull.times = {0.0, t_end};
  pull.weights = {0.0, t_end};
  cfg.problem.program.terms.push_back(std::move(pull));
  cfg.profile_names.push_back("x2");
  cfg.problem.mesh.h = h;
  cfg.grid.t_end = t_end;
  cfg.grid.n_steps = n_steps;
  return cfg;
}

OscillatingStudy oscillating_limit_study(const std::vector<int>& ns, double base_h,
                                         int midline_factor, ExecPolicy policy) {
  OscillatingStudy study;
  const DomainSpec dom = example_domain();
  for (int n : ns) {
    const LatticeSpec lat = make_lattice(dom.rect, 1.0 / (2.0 * n));
    const CrackSet crack = oscillating_crack(n, lat, 1e-9);
    MeshParams params;
    params.h = base_h;
    if (midline_factor > 1)
      params.boxes.push_back({Rect{0.0, 1.0, -base_h, base_h}, midline_factor});
    const SlitMesh mesh = build_mesh(dom, crack, params);
    SolveOptions opts;
    opts.policy = policy;
    const SolveResult sol = solve_mixed(mesh, make_profile("pm1"), opts);

    // The halves stay coupled through the gaps: the limit is the solution
    // of the uncracked mixed problem, u(x) = x₂.
    const double err_sq = l2_error_sq(sol.u, [](const Vec2& p) { return p.y; });
    study.ns.push_back(n);
    study.l2_errors.push_back(std::sqrt(err_sq));
  }
  return study;
}

TransmissionEstimate transmission_estimate(int n, double base_h, double lattice_spacing,
                                           ExecPolicy policy) {
  TransmissionEstimate est;
  est.n = n;
  const DomainSpec dom = example_domain();
  const LatticeSpec lat = make_lattice(dom.rect, lattice_spacing);
  const CrackSet crack = packed_crack(n, lat, 0.6 * lattice_spacing);

  MeshParams params;
  params.h = base_h;
  params.boxes.push_back({Rect{0.0, 1.0, -0.0625, 0.0625}, 4});
  const SlitMesh mesh = build_mesh(dom, crack, params);
  SolveOptions opts;
  opts.policy = policy;
  const SolveResult sol = solve_mixed(mesh, make_profile("x2"), opts);

  // Gap intervals between consecutive slit segments along the midline.
  std::vector<Segment> segs = merge_collinear(crack.segments());
  std::sort(segs.begin(), segs.end(),
            [](const Segment& a, const Segment& b) { return a.a.x < b.a.x; });
  // Interior periods 1..n-2; period i owns the gap at its right end.
  struct Period {
    double gap_lo, gap_hi;
    double flux = 0.0;
    std::vector<double> jumps;
  };
  std::vector<Period> periods;
  for (int i = 1; i + 1 < n; ++i) {
    Period p;
    p.gap_lo = segs[static_cast<std::size_t>(i)].b.x;
    p.gap_hi = segs[static_cast<std::size_t>(i) + 1].a.x;
    periods.push_back(p);
  }

  // Flux through each gap: interior horizontal mesh edges on the midline,
  // ∂u/∂y averaged over the two adjacent triangles.
  std::map<std::pair<int, int>, std::vector<int>> edge_tris;
  for (int t = 0; t < static_cast<int>(mesh.tris.size()); ++t) {
    const auto& tr = mesh.tris[static_cast<std::size_t>(t)];
    for (int c = 0; c < 3; ++c) {
      int a = tr[static_cast<std::size_t>(c)], b = tr[static_cast<std::size_t>((c + 1) % 3)];
      if (a > b) std::swap(a, b);
      edge_tris[{a, b}].push_back(t);
    }
  }
  for (const auto& [edge, tris] : edge_tris) {
    if (tris.size() != 2) continue;
    const Vec2& pa = mesh.nodes[static_cast<std::size_t>(edge.first)];
    const Vec2& pb = mesh.nodes[static_cast<std::size_t>(edge.second)];
    if (std::abs(pa.y) > 1e-12 || std::abs(pb.y) > 1e-12) continue;
    const double xm = 0.5 * (pa.x + pb.x);
    for (Period& p : periods) {
      if (xm <= p.gap_lo || xm >= p.gap_hi) continue;
      const double flux_density =
          0.5 * (sol.u.tri_grad(tris[0]).y + sol.u.tri_grad(tris[1]).y);
      p.flux += std::abs(pb.x - pa.x) * flux_density;
      break;
    }
  }

  // Mean jump u⁺-u⁻ over the slit pairs of each interior period.
  for (std::size_t k = 0; k < mesh.slit_pairs.size(); ++k) {
    const double x = mesh.nodes[static_cast<std::size_t>(mesh.slit_pairs[k].plus)].x;
    const int period = static_cast<int>(std::floor(x * n));
    if (period < 1 || period + 1 >= n) continue;
    const double jump = sol.u.values[static_cast<std::size_t>(mesh.slit_pairs[k].plus)] -
                        sol.u.values[static_cast<std::size_t>(mesh.slit_pairs[k].minus)];
    periods[static_cast<std::size_t>(period - 1)].jumps.push_back(jump);
  }

  double num = 0.0, den = 0.0;
  for (const Period& p : periods) {
    if (p.jumps.empty()) continue;
    double dbar = 0.0;
    for (double j : p.jumps) dbar += j;
    dbar /= static_cast<double>(p.jumps.size());
    const double fbar = p.flux * n;  // per unit midline length
    est.flux_density.push_back(fbar);
    est.mean_jump.push_back(dbar);
    num += fbar * dbar;
    den += dbar * dbar;
  }
  if (den == 0.0) throw SolverFailure("transmission fit is degenerate (no jumps recorded)");
  est.c = num / den;
  est.relative_error = std::abs(est.c - M_PI / 2.0) / (M_PI / 2.0);
  return est;
}

}  // namespace fracsim

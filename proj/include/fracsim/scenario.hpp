#pragma once

#include <string>

#include "fracsim/evolution.hpp"

namespace fracsim {

/// Named boundary profiles:
///   "x1", "x2"  — coordinate functions,
///   "x1x2"      — the product,
///   "pm1"       — +1 above / -1 below the midline (side-aware on slits).
BoundaryData make_profile(const std::string& name);

/// Builds an evolution problem from a JSON document. See README for the
/// schema; throws ConfigError on malformed input.
struct ScenarioConfig {
  EvolutionProblem problem;
  TimeGrid grid;
  std::vector<std::string> profile_names;  // one per load term, for round trips

  static ScenarioConfig from_json(const std::string& text);
  std::string to_json() const;  // round-trips everything except profiles by name
};

struct ScenarioResult {
  EvolutionTrace trace;
  std::string csv;  // t,bulk,surface,total,work_cumulative,component_count,crack_length
};

ScenarioResult run_scenario(const ScenarioConfig& config,
                            ExecPolicy policy = ExecPolicy::Parallel);

std::string trace_to_csv(const EvolutionTrace& trace);

/// L² distance of the solution for the n-component oscillating midline
/// crack to the uncracked limit u = x₂, under g = ±1 on the top/bottom
/// sides. The gaps keep the halves coupled, so the distance vanishes as
/// n grows even though the cracks converge to the full midline.
struct OscillatingStudy {
  std::vector<int> ns;
  std::vector<double> l2_errors;
};
OscillatingStudy oscillating_limit_study(const std::vector<int>& ns, double base_h,
                                         int midline_factor,
                                         ExecPolicy policy = ExecPolicy::Parallel);

/// Effective transmission coefficient of the densely packed midline crack
/// (gap e^{-n} per period 1/n): least-squares fit of the per-period gap
/// flux density against the mean jump u⁺-u⁻ over interior periods.
struct TransmissionEstimate {
  int n = 0;
  double c = 0.0;            // fitted coefficient, limit π/2
  double relative_error = 0.0;  // |c - π/2| / (π/2)
  std::vector<double> flux_density;  // per interior period
  std::vector<double> mean_jump;
};
TransmissionEstimate transmission_estimate(int n, double base_h, double lattice_spacing,
                                           ExecPolicy policy = ExecPolicy::Parallel);

/// The midline tension scenario used throughout: initial crack [0,x_init],
/// pool up to x_pool, load t·x₂ ramped linearly to t_end.
ScenarioConfig midline_scenario(double x_init = 0.25, double x_pool = 0.75,
                                double spacing = 1.0 / 16.0, double h = 1.0 / 16.0,
                                double t_end = 2.0, int n_steps = 8);

}  // namespace fracsim

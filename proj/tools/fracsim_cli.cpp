#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fracsim/hausdorff.hpp"
#include "fracsim/scenario.hpp"

using namespace fracsim;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracsim: quasi-static brittle fracture on slit rectangular domains"};
  app.require_subcommand(1);

  std::string config_path, csv_out, mesh_out;
  bool serial = false;

  auto* run = app.add_subcommand("run", "run a scenario from a JSON config");
  run->add_option("config", config_path, "scenario JSON file")->required();
  run->add_option("-o,--output", csv_out, "write the evolution CSV here (default stdout)");
  run->add_flag("--serial", serial, "force the serial execution path");

  auto* init = app.add_subcommand("init", "print a template scenario config");

  int osc_n = 32;
  double osc_h = 1.0 / 64.0;
  auto* osc = app.add_subcommand("example-oscillating",
                                 "L2 distance to the uncracked limit for the oscillating family");
  osc->add_option("-n,--max-n", osc_n, "largest family index (doublings of 4)");
  osc->add_option("--mesh-h", osc_h, "base mesh size");

  int tr_n = 4;
  double tr_h = 1.0 / 64.0;
  double tr_spacing = 1.0 / 1024.0;
  auto* trans = app.add_subcommand("example-transmission",
                                   "effective transmission coefficient of the packed family");
  trans->add_option("-n", tr_n, "family index");
  trans->add_option("--mesh-h", tr_h, "base mesh size");
  trans->add_option("--spacing", tr_spacing, "crack lattice spacing");

  int gol_n = 16;
  auto* gol = app.add_subcommand("golab-demo",
                                 "length semicontinuity along two crack families");
  gol->add_option("-n,--max-n", gol_n, "largest family index");

  auto* oracle = app.add_subcommand("oracle-compare",
                                    "check each step of a scenario against exhaustive search");
  oracle->add_option("config", config_path, "scenario JSON file")->required();

  auto* mesh_cmd = app.add_subcommand("export-mesh", "triangulate a scenario's initial state");
  mesh_cmd->add_option("config", config_path, "scenario JSON file")->required();
  mesh_cmd->add_option("-o,--output", mesh_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);
  const ExecPolicy policy = serial ? ExecPolicy::Serial : ExecPolicy::Parallel;

  try {
    if (run->parsed()) {
      const ScenarioConfig cfg = ScenarioConfig::from_json(read_file(config_path));
      const ScenarioResult res = run_scenario(cfg, policy);
      if (csv_out.empty())
        std::cout << res.csv;
      else
        write_file(csv_out, res.csv);
    } else if (init->parsed()) {
      std::cout << midline_scenario().to_json() << "\n";
    } else if (osc->parsed()) {
      std::vector<int> ns;
      for (int n = 4; n <= osc_n; n *= 2) ns.push_back(n);
      const OscillatingStudy st = oscillating_limit_study(ns, osc_h, 2, policy);
      std::cout << "n,l2_error\n";
      for (std::size_t i = 0; i < st.ns.size(); ++i)
        std::cout << st.ns[i] << "," << st.l2_errors[i] << "\n";
    } else if (trans->parsed()) {
      const TransmissionEstimate est = transmission_estimate(tr_n, tr_h, tr_spacing, policy);
      std::cout << "n=" << est.n << " c=" << est.c << " target=" << M_PI / 2.0
                << " relative_error=" << est.relative_error << "\n";
      for (std::size_t i = 0; i < est.flux_density.size(); ++i)
        std::cout << "  period " << i + 1 << ": flux_density=" << est.flux_density[i]
                  << " mean_jump=" << est.mean_jump[i] << "\n";
    } else if (gol->parsed()) {
      const Rect window{0.0, 1.0, -1.0, 1.0};
      for (const bool oscillating : {true, false}) {
        std::vector<CrackSet> family;
        CrackSet limit;
        if (oscillating) {
          for (int n = 2; n <= gol_n; n *= 2)
            family.push_back(oscillating_crack(n, make_lattice(window, 1.0 / (2.0 * n)), 1e-9));
          limit = horizontal_crack(make_lattice(window, 1.0 / (2.0 * gol_n)), 0.0, 1.0, 0.0, 1e-9);
        } else {
          for (int n = 2; n <= gol_n; n *= 2)
            family.push_back(
                horizontal_crack(make_lattice(window, 1.0 / n), 0.0, 1.0 - 1.0 / n, 0.0, 1e-9));
          limit = horizontal_crack(make_lattice(window, 1.0 / gol_n), 0.0, 1.0, 0.0, 1e-9);
        }
        const GolabReport rep = golab_report(family, limit, window);
        std::cout << (oscillating ? "oscillating family" : "growing segment family") << ": lengths";
        for (double l : rep.sequence_lengths) std::cout << " " << l;
        std::cout << " | limit " << rep.limit_length << " | semicontinuous "
                  << (rep.semicontinuous ? "yes" : "no") << "\n";
      }
    } else if (oracle->parsed()) {
      const ScenarioConfig cfg = ScenarioConfig::from_json(read_file(config_path));
      CrackSet k = cfg.problem.initial;
      bool all_match = true;
      for (int i = 1; i <= cfg.grid.n_steps; ++i) {
        const BoundaryData g = cfg.problem.program.at(cfg.grid.time(i));
        const CrackSet step = incremental_step(cfg.problem, k, g, ExecPolicy::Parallel);
        const CrackSet brute = brute_force_step(cfg.problem, k, g);
        const bool match = step == brute;
        all_match = all_match && match;
        std::cout << "step " << i << ": " << (match ? "match" : "MISMATCH") << " ("
                  << step.size() << " edges)\n";
        k = step;
      }
      if (!all_match) return 1;
    } else if (mesh_cmd->parsed()) {
      const ScenarioConfig cfg = ScenarioConfig::from_json(read_file(config_path));
      const SlitMesh m = build_mesh(cfg.problem.domain, cfg.problem.initial, cfg.problem.mesh);
      const std::string text = export_mesh_text(m);
      if (mesh_out.empty())
        std::cout << text;
      else
        write_file(mesh_out, text);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

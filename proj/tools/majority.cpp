#include <cstdint>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "majority/content_hash.hpp"
#include "majority/dynamics.hpp"
#include "majority/errors.hpp"
#include "majority/experiments.hpp"
#include "majority/generators.hpp"
#include "majority/graph_io.hpp"
#include "majority/oracle.hpp"
#include "majority/rng.hpp"
#include "majority/spectral.hpp"
#include "majority/walks.hpp"

namespace {

using namespace majority;
using ordered_json = nlohmann::ordered_json;

struct GlobalFlags {
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string out;
  std::string format = "json";
};

Graph resolve_graph(const std::string& path, const std::string& family,
                    std::string& name) {
  if (!family.empty()) {
    const GraphFamilySpec spec = GraphFamilySpec::parse(family);
    name = spec.name();
    return generate(spec);
  }
  if (path.empty()) {
    throw ParameterError("provide --graph <path> or --family <spec>");
  }
  name = path;
  return load_graph(path);
}

void write_text(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw ParameterError("cannot open output file: " + path);
  }
  file << payload;
  file.flush();
  if (!file) {
    throw ParameterError("failed writing output file: " + path);
  }
}

void add_graph_options(CLI::App* cmd, std::string& path, std::string& family) {
  cmd->add_option("--graph", path, "edge-list file to load");
  cmd->add_option("--family", family,
                  "family spec, e.g. complete(50) or random_regular(200,3,7)");
}

int run_gen(const std::string& family, const GlobalFlags& flags) {
  const GraphFamilySpec spec = GraphFamilySpec::parse(family);
  const Graph g = generate(spec);
  if (flags.out.empty()) {
    std::cout << graph_to_string(g);
    return 0;
  }
  save_graph(g, flags.out);
  std::cout << spec.name() << ": n=" << g.node_count()
            << " m=" << g.edge_count() << " hash=" << graph_content_hash(g)
            << " -> " << flags.out << "\n";
  return 0;
}

int run_sim(const Graph& g, ExperimentConfig cfg, const GlobalFlags& flags) {
  cfg.keep_per_trial = flags.format == "csv";
  const OutcomeEstimates est = estimate_outcomes(g, cfg);

  if (flags.format == "json") {
    write_text(flags.out, estimates_json(cfg, graph_content_hash(g), est));
    return 0;
  }

  std::ostringstream trials_csv;
  write_trials_csv(trials_csv, est.per_trial);
  write_text(flags.out, trials_csv.str());
  if (!cfg.checkpoints.empty()) {
    if (flags.out.empty()) {
      throw ParameterError(
          "--format csv with checkpoints needs --out to place the second "
          "file");
    }
    std::ostringstream cp_csv;
    write_checkpoints_csv(cp_csv, est.per_trial);
    write_text(flags.out + ".checkpoints.csv", cp_csv.str());
  }
  return 0;
}

int run_spectral(const Graph& g, const std::string& name, bool json_out,
                 const GlobalFlags& flags) {
  const SpectralReport report = spectrum(g);
  if (json_out || !flags.out.empty()) {
    ordered_json j;
    j["graph"] = name;
    j["hash"] = graph_content_hash(g);
    j["nodes"] = g.node_count();
    j["edges"] = g.edge_count();
    j["lambda"] = report.lambda;
    j["max_residual"] = report.max_residual;
    j["eigenvalues"] = report.eigenvalues;
    write_text(flags.out, j.dump(2) + "\n");
    return 0;
  }
  std::cout << std::setprecision(12) << name << ": n=" << g.node_count()
            << " m=" << g.edge_count() << " lambda=" << report.lambda
            << " top=" << report.eigenvalues.front()
            << " residual=" << report.max_residual << "\n";
  return 0;
}

int run_mix_check(const Graph& g, const std::string& name,
                  std::uint64_t samples, const GlobalFlags& flags) {
  const SpectralReport report = spectrum(g);
  const NodeId n = g.node_count();

  std::uint64_t passed = 0;
  double worst_margin = 0.0;
  bool first = true;
  std::vector<NodeId> s_nodes;
  std::vector<NodeId> t_nodes;
  for (std::uint64_t i = 0; i < samples; ++i) {
    SplitMix64 rng(derive_stream(flags.seed, i));
    s_nodes.clear();
    t_nodes.clear();
    for (NodeId v = 0; v < n; ++v) {
      if (rng.bernoulli(0.5)) s_nodes.push_back(v);
      if (rng.bernoulli(0.5)) t_nodes.push_back(v);
    }
    const MixingCheck check =
        mixing_check(g, report.lambda, s_nodes, t_nodes);
    passed += check.holds ? 1 : 0;
    const double margin = check.rhs - check.lhs;
    if (first || margin < worst_margin) {
      worst_margin = margin;
      first = false;
    }
  }

  const std::uint64_t failed = samples - passed;
  if (flags.format == "json" || !flags.out.empty()) {
    ordered_json j;
    j["graph"] = name;
    j["lambda"] = report.lambda;
    j["samples"] = samples;
    j["passed"] = passed;
    j["failed"] = failed;
    j["worst_margin"] = worst_margin;
    write_text(flags.out, j.dump(2) + "\n");
  } else {
    std::cout << std::setprecision(12) << name
              << ": lambda=" << report.lambda << " samples=" << samples
              << " passed=" << passed << " failed=" << failed
              << " worst_margin=" << worst_margin << "\n";
  }
  return failed == 0 ? 0 : 1;
}

int run_oracle(const Graph& g, const std::string& name, double delta,
               bool with_horizon, std::uint64_t horizon, bool json_out,
               const GlobalFlags& flags) {
  ordered_json j;
  j["graph"] = name;
  j["delta"] = delta;

  std::ostringstream text;
  text << std::setprecision(12) << name << ": delta=" << delta << "\n";

  if (with_horizon) {
    const ExactRedVolume volume =
        exact_expected_red_volume(g, delta, horizon);
    const double floor = (0.5 + delta) * static_cast<double>(g.edge_count());
    j["horizon"] = horizon;
    j["expected_red_volume_announced"] = volume.announced;
    j["expected_red_volume_credited"] = volume.credited;
    j["floor"] = floor;
    text << "  horizon=" << horizon << " announced=" << volume.announced
         << " credited=" << volume.credited << " floor=" << floor << "\n";
  } else {
    const OutcomeDistribution dist = exact_distribution(g, delta);
    j["p_red_consensus"] = dist.p_red_consensus;
    j["p_blue_consensus"] = dist.p_blue_consensus;
    j["p_consensus"] = dist.p_consensus;
    j["p_no_consensus"] = dist.p_no_consensus;
    j["p_correct_majority_nodes"] = dist.p_correct_majority_nodes;
    j["mean_color_changes"] = dist.mean_color_changes;
    j["max_residual"] = dist.max_residual;
    j["max_transient"] = dist.max_transient;
    j["used_iterative"] = dist.used_iterative;
    text << "  p_red_consensus=" << dist.p_red_consensus
         << " p_blue_consensus=" << dist.p_blue_consensus
         << " p_no_consensus=" << dist.p_no_consensus << "\n"
         << "  p_correct_majority_nodes=" << dist.p_correct_majority_nodes
         << " mean_color_changes=" << dist.mean_color_changes << "\n"
         << "  max_transient=" << dist.max_transient
         << " max_residual=" << dist.max_residual << "\n";
  }

  if (json_out || !flags.out.empty()) {
    write_text(flags.out, j.dump(2) + "\n");
  } else {
    std::cout << text.str();
  }
  return 0;
}

int run_walk(const std::string& kind, std::uint32_t d, double p, double x,
             std::uint64_t trials, bool json_out, const GlobalFlags& flags) {
  const WalkKind walk_kind =
      kind == "pm1" ? WalkKind::PlusMinusOne : WalkKind::LazyScaled;
  const HittingEstimate est =
      simulate_hitting(walk_kind, d, p, x, trials, flags.seed);

  if (json_out || !flags.out.empty()) {
    ordered_json j;
    j["kind"] = kind;
    j["d"] = d;
    j["p"] = p;
    j["x"] = x;
    j["trials"] = est.trials;
    j["hits"] = est.hits;
    j["p_hit"] = est.p_hit;
    j["wilson_lo"] = est.wilson_lo;
    j["wilson_hi"] = est.wilson_hi;
    j["bound"] = est.bound;
    j["audit_mean_step"] = est.audit.mean_step;
    j["audit_required"] = est.audit.required;
    write_text(flags.out, j.dump(2) + "\n");
  } else {
    std::cout << std::setprecision(12) << kind << " d=" << d << " p=" << p
              << " x=" << x << ": p_hit=" << est.p_hit << " ["
              << est.wilson_lo << ", " << est.wilson_hi << "] hits="
              << est.hits << "/" << est.trials << " bound=" << est.bound
              << "\n"
              << "  drift audit: mean=" << est.audit.mean_step
              << " required=" << est.audit.required << " over "
              << est.audit.samples << " samples\n";
  }
  return 0;
}

int emit_suite(const SuiteReport& report, const GlobalFlags& flags) {
  if (!flags.out.empty()) {
    write_text(flags.out, suite_report_json(report));
  }
  if (flags.format == "json" && flags.out.empty()) {
    std::cout << suite_report_json(report);
  } else {
    std::cout << "suite " << report.name << " on " << report.graph_name
              << " (n=" << report.nodes << ", m=" << report.edges
              << ", delta=" << report.delta << ", trials=" << report.trials
              << ", seed=" << report.seed << ")\n";
    for (const SuiteCheck& check : report.checks) {
      std::cout << "  [" << (check.passed ? "PASS" : "FAIL") << "] "
                << check.label << ": value=" << std::setprecision(8)
                << check.value << " threshold=" << check.threshold;
      if (!check.detail.empty()) {
        std::cout << " (" << check.detail << ")";
      }
      std::cout << "\n";
    }
    std::cout << "suite " << report.name << ": "
              << (report.passed ? "PASS" : "FAIL") << "\n";
  }
  return report.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asynchronous majority dynamics toolkit"};
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_option("--seed", flags.seed, "master seed")->capture_default_str();
  app.add_option("--workers", flags.workers,
                 "trial worker threads (0 = hardware)")
      ->capture_default_str();
  app.add_option("--out", flags.out, "output file (default stdout)");
  app.add_option("--format", flags.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "materialize a graph family");
  gen->fallthrough();
  std::string gen_family;
  gen->add_option("--family", gen_family, "family spec")->required();

  // sim
  auto* sim = app.add_subcommand("sim", "Monte Carlo outcome estimation");
  sim->fallthrough();
  std::string sim_graph, sim_family;
  add_graph_options(sim, sim_graph, sim_family);
  double sim_delta = 0.1;
  std::uint64_t sim_trials = 1000;
  std::uint64_t sim_max_steps = 0;
  std::vector<std::uint64_t> sim_checkpoints;
  sim->add_option("--delta", sim_delta, "signal bias in (0, 1/2]")
      ->required();
  sim->add_option("--trials", sim_trials, "trial count")
      ->capture_default_str();
  sim->add_option("--max-steps", sim_max_steps,
                  "selection budget (0 = engine default)");
  sim->add_option("--checkpoints", sim_checkpoints,
                  "comma-separated checkpoint times")
      ->delimiter(',');

  // spectral
  auto* spectral_cmd =
      app.add_subcommand("spectral", "eigenvalue summary and lambda");
  spectral_cmd->fallthrough();
  std::string spectral_graph, spectral_family;
  add_graph_options(spectral_cmd, spectral_graph, spectral_family);
  bool spectral_json = false;
  spectral_cmd->add_flag("--json", spectral_json, "emit JSON");

  // mix-check
  auto* mix = app.add_subcommand(
      "mix-check", "sample random (S, T) pairs against the mixing bound");
  mix->fallthrough();
  std::string mix_graph, mix_family;
  add_graph_options(mix, mix_graph, mix_family);
  std::uint64_t mix_samples = 1000;
  mix->add_option("--samples", mix_samples, "pair count")
      ->capture_default_str();

  // oracle
  auto* oracle_cmd =
      app.add_subcommand("oracle", "exact outcome distribution (n <= 8)");
  oracle_cmd->fallthrough();
  std::string oracle_graph, oracle_family;
  add_graph_options(oracle_cmd, oracle_graph, oracle_family);
  double oracle_delta = 0.1;
  oracle_cmd->add_option("--delta", oracle_delta, "signal bias in (0, 1/2]")
      ->required();
  std::uint64_t oracle_horizon = 0;
  auto* horizon_opt = oracle_cmd->add_option(
      "--expected-red-volume", oracle_horizon,
      "report the exact expected red volume after this many selections");
  bool oracle_json = false;
  oracle_cmd->add_flag("--json", oracle_json, "emit JSON");

  // walk
  auto* walk = app.add_subcommand("walk", "biased walk hitting probability");
  walk->fallthrough();
  std::string walk_kind = "pm1";
  std::uint32_t walk_d = 1;
  double walk_p = 0.5;
  double walk_x = 100.0;
  std::uint64_t walk_trials = 100000;
  bool walk_json = false;
  walk->add_option("--kind", walk_kind, "walk kind")
      ->check(CLI::IsMember({"pm1", "lazy"}))
      ->capture_default_str();
  walk->add_option("--d", walk_d, "step bound")->capture_default_str();
  walk->add_option("--p", walk_p, "drift")->capture_default_str();
  walk->add_option("--x", walk_x, "barrier")->capture_default_str();
  walk->add_option("--trials", walk_trials, "trial count")
      ->capture_default_str();
  walk->add_flag("--json", walk_json, "emit JSON");

  // suite
  auto* suite = app.add_subcommand("suite", "topology reproduction suites");
  suite->require_subcommand(1);
  suite->fallthrough();

  auto* s_complete = suite->add_subcommand("complete", "complete graph");
  s_complete->fallthrough();
  std::uint32_t complete_n = 50;
  double complete_delta = 0.1;
  std::uint64_t complete_trials = 10000;
  s_complete->add_option("--n", complete_n)->capture_default_str();
  s_complete->add_option("--delta", complete_delta)->capture_default_str();
  s_complete->add_option("--trials", complete_trials)->capture_default_str();

  auto* s_star = suite->add_subcommand("star", "star graph");
  s_star->fallthrough();
  std::uint32_t star_leaves = 2000;
  double star_delta = 0.3;
  std::uint64_t star_trials = 2000;
  s_star->add_option("--leaves", star_leaves)->capture_default_str();
  s_star->add_option("--delta", star_delta)->capture_default_str();
  s_star->add_option("--trials", star_trials)->capture_default_str();

  auto* s_cycle = suite->add_subcommand("cycle", "cycle graph");
  s_cycle->fallthrough();
  std::uint32_t cycle_n = 500;
  double cycle_delta = 0.2;
  std::uint64_t cycle_trials = 2000;
  s_cycle->add_option("--n", cycle_n)->capture_default_str();
  s_cycle->add_option("--delta", cycle_delta)->capture_default_str();
  s_cycle->add_option("--trials", cycle_trials)->capture_default_str();

  auto* s_gml = suite->add_subcommand("gml", "clique with pendant leaves");
  s_gml->fallthrough();
  std::uint32_t gml_ell = 1;
  double gml_delta = 0.1;
  std::uint64_t gml_trials = 5000;
  s_gml->add_option("--ell", gml_ell, "leaves per clique node")
      ->capture_default_str();
  s_gml->add_option("--delta", gml_delta)->capture_default_str();
  s_gml->add_option("--trials", gml_trials)->capture_default_str();

  auto* s_expander =
      suite->add_subcommand("expander", "random regular trend check");
  s_expander->fallthrough();
  std::uint32_t expander_n = 4000;
  std::uint32_t expander_d = 16;
  double expander_delta = 0.3;
  std::uint64_t expander_trials = 500;
  s_expander->add_option("--n", expander_n)->capture_default_str();
  s_expander->add_option("--d", expander_d)->capture_default_str();
  s_expander->add_option("--delta", expander_delta)->capture_default_str();
  s_expander->add_option("--trials", expander_trials)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // app.exit prints the message (or help text) and returns 0 for --help;
    // fold CLI11's assorted failure codes into the documented usage exit.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      return run_gen(gen_family, flags);
    }
    if (*sim) {
      std::string name;
      const Graph g = resolve_graph(sim_graph, sim_family, name);
      ExperimentConfig cfg;
      cfg.graph = name;
      cfg.delta = sim_delta;
      cfg.trials = sim_trials;
      cfg.seed = flags.seed;
      cfg.workers = flags.workers;
      cfg.max_steps = sim_max_steps;
      cfg.checkpoints = sim_checkpoints;
      return run_sim(g, std::move(cfg), flags);
    }
    if (*spectral_cmd) {
      std::string name;
      const Graph g = resolve_graph(spectral_graph, spectral_family, name);
      return run_spectral(g, name, spectral_json, flags);
    }
    if (*mix) {
      std::string name;
      const Graph g = resolve_graph(mix_graph, mix_family, name);
      return run_mix_check(g, name, mix_samples, flags);
    }
    if (*oracle_cmd) {
      std::string name;
      const Graph g = resolve_graph(oracle_graph, oracle_family, name);
      return run_oracle(g, name, oracle_delta, horizon_opt->count() > 0,
                        oracle_horizon, oracle_json, flags);
    }
    if (*walk) {
      return run_walk(walk_kind, walk_d, walk_p, walk_x, walk_trials,
                      walk_json, flags);
    }
    if (*suite) {
      SuiteReport report;
      if (*s_complete) {
        report = complete_suite(complete_n, complete_delta, complete_trials,
                                flags.seed, flags.workers);
      } else if (*s_star) {
        report = star_suite(star_leaves, star_delta, star_trials, flags.seed,
                            flags.workers);
      } else if (*s_cycle) {
        report = cycle_suite(cycle_n, cycle_delta, cycle_trials, flags.seed,
                             flags.workers);
      } else if (*s_gml) {
        report = gml_suite(gml_ell, gml_delta, gml_trials, flags.seed,
                           flags.workers);
      } else {
        report = expander_trend_suite(expander_n, expander_d, expander_delta,
                                      expander_trials, flags.seed,
                                      flags.workers);
      }
      return emit_suite(report, flags);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

#pragma once

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "percoplanar/analysis.hpp"
#include "percoplanar/errors.hpp"
#include "percoplanar/generators.hpp"
#include "percoplanar/graph.hpp"
#include "percoplanar/harness.hpp"
#include "percoplanar/percolation.hpp"
#include "percoplanar/planarity.hpp"
#include "percoplanar/witness.hpp"

namespace percoplanar::cli {

namespace detail {

struct FamilyFlags {
  std::string family = "complete";
  long long n = 0, a = 0, b = 0, d = 0, rows = 0, cols = 0, r = 0, copies = 0;
  std::string path;

  void attach(CLI::App* app) {
    app->add_option("--family", family, "complete|complete_bipartite|hypercube|grid|random_regular|disjoint_cliques|from_file");
    app->add_option("--n", n, "vertex count (complete, random_regular)");
    app->add_option("--a", a, "left side (complete_bipartite)");
    app->add_option("--b", b, "right side (complete_bipartite)");
    app->add_option("--d", d, "dimension (hypercube)");
    app->add_option("--rows", rows, "grid rows");
    app->add_option("--cols", cols, "grid cols");
    app->add_option("--r", r, "degree (random_regular, disjoint_cliques)");
    app->add_option("--copies", copies, "clique count (disjoint_cliques)");
    app->add_option("--path", path, "edge-list file (from_file)");
  }

  FamilySpec to_spec() const {
    FamilySpec spec;
    spec.family = parse_family(family);
    spec.n = n; spec.a = a; spec.b = b; spec.dim = d;
    spec.rows = rows; spec.cols = cols; spec.r = r; spec.copies = copies;
    spec.path = path;
    return spec;
  }
};

inline std::uint64_t default_master_seed() {
  if (const char* env = std::getenv("PERCOPLANAR_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw validation_error("PERCOPLANAR_SEED is not an unsigned integer");
    }
  }
  return 0;
}

}  // namespace detail

// Thin adapter from argv to the library; all output goes through `out`/`err`.
// Exit codes: 0 success, 1 domain/validation errors, 2 I/O errors.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"percoplanar: percolation and planarity laboratory"};
  app.require_subcommand(1);
  app.fallthrough();  // --seed may follow the subcommand

  std::uint64_t seed = 0;
  bool seed_set = false;
  app.add_option("--seed", seed, "master seed (default: PERCOPLANAR_SEED or 0)")
      ->each([&seed_set](const std::string&) { seed_set = true; });

  // generate
  auto* gen = app.add_subcommand("generate", "write a base-graph edge list");
  detail::FamilyFlags gen_family;
  gen_family.attach(gen);
  std::string gen_out;
  gen->add_option("--out", gen_out, "output path")->required();

  // percolate
  auto* perc = app.add_subcommand("percolate", "sample a random subgraph");
  std::string perc_in, perc_out;
  double perc_p = 0.5;
  perc->add_option("graph", perc_in, "edge-list file")->required();
  perc->add_option("--p", perc_p, "retention probability")->required();
  perc->add_option("--out", perc_out, "output path")->required();

  // planar
  auto* planar = app.add_subcommand("planar", "exact planarity verdict");
  std::string planar_in;
  planar->add_option("graph", planar_in, "edge-list file")->required();

  // certify
  auto* certify = app.add_subcommand("certify", "search for a density certificate");
  std::string certify_in;
  int certify_ell = 8;
  certify->add_option("graph", certify_in, "edge-list file")->required();
  certify->add_option("--ell", certify_ell, "short-cycle horizon (default 8)");

  // witness
  auto* witness = app.add_subcommand("witness", "run the tree-growth witness pipeline");
  detail::FamilyFlags wit_family;
  wit_family.attach(witness);
  std::string wit_in;
  double wit_eps = 0.5;
  WitnessParams wit_params;
  witness->add_option("graph", wit_in, "edge-list file (alternative to --family)");
  witness->add_option("--epsilon", wit_eps, "supercriticality margin")->required();
  witness->add_option("--i0", wit_params.i0, "target tree scale override");
  witness->add_option("--ell", wit_params.ell, "certificate cycle horizon override");
  witness->add_option("--r1", wit_params.r1, "probes per frontier vertex override");
  witness->add_option("--rounds", wit_params.round_cap, "frontier round cap override");
  witness->add_flag("--no-oracle-fallback",
                    [&wit_params](size_t) { wit_params.oracle_fallback = false; },
                    "report exhausted instead of consulting the exact oracle");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a Monte Carlo sweep from a config file");
  std::string sweep_config;
  std::string sweep_out;
  int sweep_threads = 0;
  std::string sweep_mode;
  sweep->add_option("--config", sweep_config, "config file")->required();
  sweep->add_option("--out", sweep_out, "CSV path override");
  sweep->add_option("--threads", sweep_threads, "parallelism override");
  sweep->add_option("--mode", sweep_mode, "mode override (oracle-only|witness-only|both)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "closed-form predictions");
  std::optional<double> fx_c;
  std::optional<double> an_c;
  long long an_n = 0;
  int an_g0 = 0;
  analyze->add_option("--fixed-point", fx_c, "print the giant fixed point for c");
  analyze->add_option("--c", an_c, "mean degree for predictions");
  analyze->add_option("--n", an_n, "vertex count for predictions");
  analyze->add_option("--g0", an_g0, "cycle horizon for expectation");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n" << app.help();
    return 1;
  }
  if (!seed_set) {
    try {
      seed = detail::default_master_seed();
    } catch (const validation_error& ex) {
      err << "error: " << ex.what() << '\n';
      return 1;
    }
  }

  try {
    if (gen->parsed()) {
      Graph g = generate(gen_family.to_spec(), seed);
      write_edge_list_file(g, gen_out);
      GraphStats st = graph_stats(g);
      out << "wrote " << gen_out << ": n=" << st.n << " m=" << st.m
          << " min_degree=" << st.min_degree << " max_degree=" << st.max_degree << '\n';
    } else if (perc->parsed()) {
      Graph g = read_edge_list_file(perc_in);
      Graph sample = percolate(g, {perc_p, seed, kRoundOneStream});
      write_edge_list_file(sample, perc_out);
      out << "wrote " << perc_out << ": kept " << sample.edge_count() << " of " << g.edge_count()
          << " edges\n";
    } else if (planar->parsed()) {
      Graph g = read_edge_list_file(planar_in);
      out << (is_planar(g) ? "planar" : "non-planar") << '\n';
    } else if (certify->parsed()) {
      Graph g = read_edge_list_file(certify_in);
      if (auto cert = density_certificate(g, certify_ell)) {
        out << format_certificate(*cert);
      } else {
        out << "no-certificate\n";
      }
    } else if (witness->parsed()) {
      Graph g = wit_in.empty() ? generate(wit_family.to_spec(), seed) : read_edge_list_file(wit_in);
      WitnessReport report = find_witness(g, wit_eps, seed, wit_params);
      out << "witness " << (report.certified() ? "certified" : "exhausted");
      if (report.certified()) out << " mechanism=" << report.mechanism;
      else out << " reason=" << report.reason;
      out << " rounds=" << report.rounds << " tree=" << report.tree_size
          << " probes=" << report.probes << " seed=" << report.seed << '\n';
      if (report.certificate) out << format_certificate(*report.certificate);
    } else if (sweep->parsed()) {
      ExperimentConfig cfg = parse_config_file(sweep_config);
      if (!sweep_out.empty()) cfg.out_path = sweep_out;
      if (sweep_threads > 0) cfg.threads = sweep_threads;
      if (!sweep_mode.empty()) cfg.mode = parse_sweep_mode(sweep_mode);
      if (seed_set) cfg.master_seed = seed;
      std::vector<TrialRecord> records = run_sweep(cfg);
      out << format_summary(summarize(records));
      if (!cfg.out_path.empty()) out << "records written to " << cfg.out_path << '\n';
    } else if (analyze->parsed()) {
      if (fx_c) {
        out << "x = " << percoplanar::detail::format_double(giant_fixed_point(*fx_c, 1e-12)) << '\n';
      } else if (an_c) {
        if (an_g0 >= 3) {
          CycleExpectation ce = expected_short_cycles(*an_c, an_g0);
          out << "expected cycles (length <= " << an_g0 << ") at c=" << *an_c
              << ": refined = " << percoplanar::detail::format_double(ce.refined)
              << ", upper bound = " << percoplanar::detail::format_double(ce.paper_upper) << '\n';
        }
        if (an_n > 0 && *an_c > 1.0) {
          GiantPrediction gp = predicted_giant(an_n, *an_c);
          out << "giant prediction at n=" << an_n << ", c=" << *an_c
              << ": x = " << percoplanar::detail::format_double(gp.x)
              << ", vertices = " << percoplanar::detail::format_double(gp.vertices)
              << ", edges = " << percoplanar::detail::format_double(gp.edges) << '\n';
        }
        if (an_g0 < 3 && (an_n <= 0 || *an_c <= 1.0))
          throw validation_error("analyze --c needs --g0 (>=3) and/or --n with c > 1");
      } else {
        throw validation_error("analyze needs --fixed-point or --c");
      }
    }
  } catch (const io_error& ex) {
    err << "io error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace percoplanar::cli

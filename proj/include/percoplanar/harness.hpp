#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "percoplanar/analysis.hpp"
#include "percoplanar/errors.hpp"
#include "percoplanar/generators.hpp"
#include "percoplanar/graph.hpp"
#include "percoplanar/percolation.hpp"
#include "percoplanar/planarity.hpp"
#include "percoplanar/witness.hpp"

namespace percoplanar {

enum class SweepMode { oracle_only, witness_only, both };

inline const char* sweep_mode_name(SweepMode m) {
  switch (m) {
    case SweepMode::oracle_only: return "oracle-only";
    case SweepMode::witness_only: return "witness-only";
    case SweepMode::both: return "both";
  }
  return "?";
}

inline SweepMode parse_sweep_mode(const std::string& s) {
  if (s == "oracle-only") return SweepMode::oracle_only;
  if (s == "witness-only") return SweepMode::witness_only;
  if (s == "both") return SweepMode::both;
  throw config_error("unknown mode: " + s);
}

// One point of the parameter grid: a size override plus exactly one way of
// fixing the retention probability (epsilon, c, or p itself).
struct GridPoint {
  std::optional<long long> n;
  std::optional<long long> r;
  std::optional<double> epsilon;
  std::optional<double> c;
  std::optional<double> p;
  long long trials = 0;
};

struct ExperimentConfig {
  FamilySpec family;
  std::vector<GridPoint> grid;
  std::uint64_t master_seed = 0;
  SweepMode mode = SweepMode::oracle_only;
  std::string out_path;
  int threads = 1;
  bool timing = false;  // off by default: measured times break byte-identity

  void validate() const {
    if (grid.empty()) throw config_error("sweep config has no grid points");
    for (const GridPoint& gp : grid) {
      if (gp.trials < 1) throw config_error("grid point needs trials >= 1");
      int ways = (gp.epsilon ? 1 : 0) + (gp.c ? 1 : 0) + (gp.p ? 1 : 0);
      if (ways != 1)
        throw config_error("grid point must set exactly one of epsilon=, c=, p=");
    }
    if (threads < 1) throw config_error("threads must be >= 1");
  }
};

struct TrialRecord {
  std::string family;
  long long n = 0;
  long long m = 0;
  long long r = 0;
  double epsilon = std::nan("");
  double p = 0.0;
  std::uint64_t seed = 0;
  long long trial = 0;
  std::optional<bool> oracle_planar;
  std::string witness_outcome;    // certified | exhausted | empty
  std::string certificate_kind;   // density-girth | oracle-verdict | none | empty
  long long giant_vertices = 0;
  long long giant_edges = 0;
  long long runtime_ms = 0;
  long long grid_index = 0;  // not emitted; used for grouping
};

// Wilson score interval at z, exact integer counting upstream.
inline std::pair<double, double> wilson_interval(long long successes, long long trials,
                                                 double z = 1.96) {
  if (trials <= 0) return {0.0, 1.0};
  double n = static_cast<double>(trials);
  double phat = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (phat + z2 / (2.0 * n)) / denom;
  double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  double lo = std::max(0.0, center - half);
  double hi = std::min(1.0, center + half);
  // The interval always contains the point estimate; at the boundaries the
  // Wilson endpoints are exactly 0 and 1.
  if (successes == 0) lo = 0.0;
  if (successes == trials) hi = 1.0;
  return {lo, hi};
}

struct PointSummary {
  long long grid_index = 0;
  std::string family;
  long long n = 0;
  long long r = 0;
  double epsilon = std::nan("");
  double p = 0.0;
  long long trials = 0;
  long long oracle_trials = 0;
  long long planar_count = 0;
  double planar_rate = 0.0;
  double planar_lo = 0.0, planar_hi = 1.0;
  long long witness_trials = 0;
  long long witness_success = 0;
  double witness_rate = 0.0;
  double witness_lo = 0.0, witness_hi = 1.0;
  double mean_giant_fraction = 0.0;
};

struct SummaryStats {
  std::vector<PointSummary> points;
};

inline SummaryStats summarize(const std::vector<TrialRecord>& records) {
  SummaryStats stats;
  for (const TrialRecord& rec : records) {
    PointSummary* ps = nullptr;
    for (PointSummary& q : stats.points)
      if (q.grid_index == rec.grid_index) { ps = &q; break; }
    if (!ps) {
      stats.points.push_back({});
      ps = &stats.points.back();
      ps->grid_index = rec.grid_index;
      ps->family = rec.family;
      ps->n = rec.n;
      ps->r = rec.r;
      ps->epsilon = rec.epsilon;
      ps->p = rec.p;
    }
    ++ps->trials;
    if (rec.oracle_planar) {
      ++ps->oracle_trials;
      if (*rec.oracle_planar) ++ps->planar_count;
    }
    if (!rec.witness_outcome.empty()) {
      ++ps->witness_trials;
      if (rec.witness_outcome == "certified") ++ps->witness_success;
    }
    ps->mean_giant_fraction += rec.n > 0 ? double(rec.giant_vertices) / double(rec.n) : 0.0;
  }
  for (PointSummary& ps : stats.points) {
    if (ps.oracle_trials > 0) {
      ps.planar_rate = double(ps.planar_count) / double(ps.oracle_trials);
      std::tie(ps.planar_lo, ps.planar_hi) = wilson_interval(ps.planar_count, ps.oracle_trials);
    }
    if (ps.witness_trials > 0) {
      ps.witness_rate = double(ps.witness_success) / double(ps.witness_trials);
      std::tie(ps.witness_lo, ps.witness_hi) = wilson_interval(ps.witness_success, ps.witness_trials);
    }
    if (ps.trials > 0) ps.mean_giant_fraction /= double(ps.trials);
  }
  return stats;
}

namespace detail {

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace detail

inline std::string csv_header() {
  return "family,n,m,r,epsilon,p,seed,trial,oracle_planar,witness_outcome,certificate_kind,"
         "giant_vertices,giant_edges,runtime_ms";
}

inline std::string csv_row(const TrialRecord& r) {
  std::ostringstream out;
  out << r.family << ',' << r.n << ',' << r.m << ',' << r.r << ',';
  if (!std::isnan(r.epsilon)) out << detail::format_double(r.epsilon);
  out << ',' << detail::format_double(r.p) << ',' << r.seed << ',' << r.trial << ',';
  if (r.oracle_planar) out << (*r.oracle_planar ? "true" : "false");
  out << ',' << r.witness_outcome << ',' << r.certificate_kind << ',' << r.giant_vertices << ','
      << r.giant_edges << ',' << r.runtime_ms;
  return out.str();
}

inline void emit_csv(const std::vector<TrialRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open CSV output: " + path);
  out << csv_header() << '\n';
  for (const TrialRecord& r : records) out << csv_row(r) << '\n';
  if (!out) throw io_error("CSV write failed: " + path);
}

namespace detail {

struct ResolvedPoint {
  FamilySpec spec;
  long long n = 0;
  long long r_hint = 0;
  double epsilon = std::nan("");
  double p = 0.0;
  bool use_virtual_gnp = false;  // complete family, oracle-only: skip K_n materialization
};

inline ResolvedPoint resolve_point(const ExperimentConfig& cfg, const GridPoint& gp) {
  ResolvedPoint rp;
  rp.spec = cfg.family;
  if (gp.n) {
    switch (rp.spec.family) {
      case Family::complete:
      case Family::random_regular: rp.spec.n = *gp.n; break;
      case Family::disjoint_cliques: rp.spec.copies = *gp.n; break;
      default: throw config_error("grid n= override not meaningful for this family");
    }
  }
  if (gp.r) {
    if (rp.spec.family != Family::random_regular && rp.spec.family != Family::disjoint_cliques)
      throw config_error("grid r= override only applies to random_regular/disjoint_cliques");
    rp.spec.r = *gp.r;
  }
  return rp;
}

}  // namespace detail

// Runs every (grid point, trial) pair. Per-trial seeds are
// derive(master, grid index, trial index); for a pure p-grid (all points
// share the family size and differ only in p/c) the grid index is dropped
// from the derivation so that coupled per-seed monotone sweeps come out
// exactly. Output order is (grid index, trial index) regardless of thread
// schedule. A failing trial aborts the sweep after writing
// <out_path>.partial with the records completed so far.
inline std::vector<TrialRecord> run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();

  // Detect a pure p-grid: identical family/size across points.
  bool pure_p_grid = true;
  for (const GridPoint& gp : cfg.grid) {
    if (gp.epsilon || gp.r) pure_p_grid = false;
    if (gp.n && cfg.grid.front().n && *gp.n != *cfg.grid.front().n) pure_p_grid = false;
  }

  struct Task {
    long long grid_index;
    long long trial;
  };
  std::vector<Task> tasks;
  std::vector<detail::ResolvedPoint> points;
  for (size_t gi = 0; gi < cfg.grid.size(); ++gi) {
    const GridPoint& gp = cfg.grid[gi];
    detail::ResolvedPoint rp = detail::resolve_point(cfg, gp);
    points.push_back(rp);
    for (long long t = 0; t < gp.trials; ++t) tasks.push_back({static_cast<long long>(gi), t});
  }

  // Materialize base graphs (one per grid point; deterministic in the master
  // seed and grid index). A complete family too large to materialize stays
  // virtual in oracle-only mode and samples G(n,p) directly; virtual points
  // cannot take part in coupled monotone sweeps.
  std::vector<std::optional<Graph>> bases(points.size());
  std::vector<GraphStats> base_stats(points.size());
  for (size_t gi = 0; gi < points.size(); ++gi) {
    detail::ResolvedPoint& rp = points[gi];
    const GridPoint& gp = cfg.grid[gi];
    bool too_big = rp.spec.family == Family::complete &&
                   rp.spec.n * (rp.spec.n - 1) / 2 > detail::kMaxEdges;
    bool need_graph = !(rp.spec.family == Family::complete && cfg.mode == SweepMode::oracle_only &&
                        too_big);
    std::uint64_t base_seed = rng::derive(cfg.master_seed, static_cast<std::uint64_t>(gi),
                                          0x8000000000000000ULL);
    if (need_graph) {
      bases[gi] = generate(rp.spec, base_seed);
      base_stats[gi] = graph_stats(*bases[gi]);
    } else {
      rp.use_virtual_gnp = true;
      long long n = rp.spec.n;
      base_stats[gi] = {static_cast<int>(n), n * (n - 1) / 2, static_cast<int>(n - 1),
                        static_cast<int>(n - 1)};
    }
    rp.n = base_stats[gi].n;
    rp.r_hint = base_stats[gi].min_degree;
    // Retention probability.
    if (gp.p) rp.p = *gp.p;
    else if (gp.c) rp.p = *gp.c / static_cast<double>(std::max<long long>(1, rp.n));
    else rp.p = (1.0 + *gp.epsilon) / static_cast<double>(std::max<long long>(1, rp.r_hint));
    if (rp.p < 0.0 || rp.p > 1.0)
      throw config_error("grid point " + std::to_string(gi) + " yields p outside [0,1]");
    if (gp.epsilon) rp.epsilon = *gp.epsilon;
    else rp.epsilon = rp.p * static_cast<double>(rp.r_hint) - 1.0;
    if (cfg.mode != SweepMode::oracle_only && rp.epsilon <= 0.0)
      throw config_error("witness mode requires a supercritical grid point (epsilon > 0)");
  }

  std::vector<TrialRecord> records(tasks.size());
  std::vector<char> done(tasks.size(), 0);
  std::vector<long long> offsets(points.size(), 0);
  for (size_t i = 1; i < points.size(); ++i) offsets[i] = offsets[i - 1] + cfg.grid[i - 1].trials;

  std::atomic<size_t> next{0};
  std::mutex error_mutex;
  std::optional<std::pair<size_t, std::string>> first_error;

  auto run_task = [&](size_t ti) {
    const Task& task = tasks[ti];
    const detail::ResolvedPoint& rp = points[static_cast<size_t>(task.grid_index)];
    const auto t0 = std::chrono::steady_clock::now();
    std::uint64_t grid_tag = pure_p_grid ? 0 : static_cast<std::uint64_t>(task.grid_index);
    std::uint64_t trial_seed =
        rng::derive(cfg.master_seed, grid_tag, static_cast<std::uint64_t>(task.trial));

    TrialRecord rec;
    rec.grid_index = task.grid_index;
    rec.family = family_name(rp.spec.family);
    rec.n = rp.n;
    rec.m = base_stats[static_cast<size_t>(task.grid_index)].m;
    rec.r = rp.r_hint;
    rec.epsilon = rp.epsilon;
    rec.p = rp.p;
    rec.seed = trial_seed;
    rec.trial = task.trial;

    const std::optional<Graph>& base = bases[static_cast<size_t>(task.grid_index)];
    if (cfg.mode == SweepMode::oracle_only) {
      Graph sample = rp.use_virtual_gnp
                         ? sample_gnp(rp.n, rp.p, trial_seed, kRoundOneStream)
                         : percolate(*base, {rp.p, trial_seed, kRoundOneStream});
      rec.oracle_planar = is_planar(sample);
      ComponentResult giant = largest_component(sample);
      rec.giant_vertices = giant.graph.vertex_count();
      rec.giant_edges = giant.graph.edge_count();
    } else {
      WitnessParams wp;
      wp.p_override = rp.p;
      WitnessReport report = find_witness(*base, rp.epsilon, trial_seed, wp);
      rec.witness_outcome = report.certified() ? "certified" : "exhausted";
      rec.certificate_kind = report.certificate ? report.certificate->kind_name() : "none";
      Graph sample = witness_sample(*base, rp.epsilon, trial_seed, wp);
      if (cfg.mode == SweepMode::both) {
        rec.oracle_planar = is_planar(sample);
        if (report.certified() && *rec.oracle_planar)
          throw std::logic_error("witness certified a sample the oracle calls planar");
      }
      ComponentResult giant = largest_component(sample);
      rec.giant_vertices = giant.graph.vertex_count();
      rec.giant_edges = giant.graph.edge_count();
    }
    if (cfg.timing) {
      rec.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    }
    size_t slot = static_cast<size_t>(offsets[static_cast<size_t>(task.grid_index)] + task.trial);
    records[slot] = std::move(rec);
    done[slot] = 1;
  };

  auto worker = [&]() {
    for (;;) {
      size_t ti = next.fetch_add(1);
      if (ti >= tasks.size()) return;
      {
        std::lock_guard<std::mutex> lk(error_mutex);
        if (first_error) return;
      }
      try {
        run_task(ti);
      } catch (const std::exception& ex) {
        std::lock_guard<std::mutex> lk(error_mutex);
        if (!first_error || ti < first_error->first)
          first_error = {ti, std::string(ex.what())};
        return;
      }
    }
  };

  int nthreads = std::min<int>(cfg.threads, static_cast<int>(tasks.size()));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (first_error) {
    const Task& bad = tasks[first_error->first];
    if (!cfg.out_path.empty()) {
      std::vector<TrialRecord> partial;
      for (size_t i = 0; i < records.size(); ++i)
        if (done[i]) partial.push_back(records[i]);
      emit_csv(partial, cfg.out_path + ".partial");
    }
    throw generation_error("sweep aborted at grid point " + std::to_string(bad.grid_index) +
                           ", trial " + std::to_string(bad.trial) + ": " + first_error->second +
                           (cfg.out_path.empty() ? "" : " (partial results in " + cfg.out_path +
                                                            ".partial)"));
  }
  if (!cfg.out_path.empty()) emit_csv(records, cfg.out_path);
  return records;
}

// --- Config file: line-oriented `key = value` plus a [grid] section -----------

inline ExperimentConfig parse_config(std::istream& in, const std::string& context = "<config>") {
  ExperimentConfig cfg;
  std::string line;
  bool in_grid = false;
  long long line_no = 0;
  std::string family_str;
  auto fail = [&](const std::string& what) {
    throw config_error(context + ":" + std::to_string(line_no) + ": " + what);
  };
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line == "[grid]") { in_grid = true; continue; }
    if (line.front() == '[') fail("unknown section " + line);
    if (in_grid) {
      GridPoint gp;
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) {
        size_t eq = tok.find('=');
        if (eq == std::string::npos) fail("grid token '" + tok + "' is not key=value");
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        try {
          if (key == "n") gp.n = std::stoll(val);
          else if (key == "r") gp.r = std::stoll(val);
          else if (key == "epsilon") gp.epsilon = std::stod(val);
          else if (key == "c") gp.c = std::stod(val);
          else if (key == "p") gp.p = std::stod(val);
          else if (key == "trials") gp.trials = std::stoll(val);
          else fail("unknown grid key '" + key + "'");
        } catch (const config_error&) {
          throw;
        } catch (const std::exception&) {
          fail("bad value for grid key '" + key + "'");
        }
      }
      cfg.grid.push_back(gp);
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "family") family_str = val;
      else if (key == "n") cfg.family.n = std::stoll(val);
      else if (key == "a") cfg.family.a = std::stoll(val);
      else if (key == "b") cfg.family.b = std::stoll(val);
      else if (key == "d") cfg.family.dim = std::stoll(val);
      else if (key == "rows") cfg.family.rows = std::stoll(val);
      else if (key == "cols") cfg.family.cols = std::stoll(val);
      else if (key == "r") cfg.family.r = std::stoll(val);
      else if (key == "copies") cfg.family.copies = std::stoll(val);
      else if (key == "path") cfg.family.path = val;
      else if (key == "seed") cfg.master_seed = std::stoull(val);
      else if (key == "mode") cfg.mode = parse_sweep_mode(val);
      else if (key == "out") cfg.out_path = val;
      else if (key == "threads") cfg.threads = std::stoi(val);
      else if (key == "timing") cfg.timing = (val == "on" || val == "true" || val == "1");
      else fail("unknown key '" + key + "'");
    } catch (const config_error&) {
      throw;
    } catch (const std::exception&) {
      fail("bad value for key '" + key + "'");
    }
  }
  if (!family_str.empty()) cfg.family.family = parse_family(family_str);
  cfg.validate();
  return cfg;
}

inline ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file: " + path);
  return parse_config(in, path);
}

inline std::string format_summary(const SummaryStats& stats) {
  std::ostringstream out;
  out << "point  family              n        r     epsilon   p           trials  "
         "P(planar) [95% CI]          witness  [95% CI]        giant\n";
  for (const PointSummary& ps : stats.points) {
    char buf[256];
    std::string eps = std::isnan(ps.epsilon) ? "-" : detail::format_double(ps.epsilon);
    std::snprintf(buf, sizeof buf,
                  "%-6lld %-18s %-8lld %-8lld %-9s %-11.6g %-7lld", ps.grid_index,
                  ps.family.c_str(), ps.n, ps.r, eps.c_str(), ps.p, ps.trials);
    out << buf;
    if (ps.oracle_trials > 0) {
      std::snprintf(buf, sizeof buf, " %6.4f [%6.4f,%6.4f]", ps.planar_rate, ps.planar_lo,
                    ps.planar_hi);
      out << buf;
    } else {
      out << " -                        ";
    }
    if (ps.witness_trials > 0) {
      std::snprintf(buf, sizeof buf, " %6.4f [%6.4f,%6.4f]", ps.witness_rate, ps.witness_lo,
                    ps.witness_hi);
      out << buf;
    } else {
      out << " -                      ";
    }
    std::snprintf(buf, sizeof buf, " %8.5f", ps.mean_giant_fraction);
    out << buf << '\n';
  }
  return out.str();
}

}  // namespace percoplanar

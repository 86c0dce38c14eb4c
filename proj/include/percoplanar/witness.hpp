#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "percoplanar/errors.hpp"
#include "percoplanar/generators.hpp"
#include "percoplanar/graph.hpp"
#include "percoplanar/percolation.hpp"
#include "percoplanar/planarity.hpp"

namespace percoplanar {

// Tunable constants of the restricted-BFS witness pipeline. Zero/negative
// fields mean "use the default derived from (epsilon, r, n)"; the derivations
// sit next to each field. Desk-scale defaults replace a few proof constants
// that only make sense asymptotically; those spots carry the formula they
// replace.
struct WitnessParams {
  double epsilon = 0.0;
  int r = 0;                      // min degree of the base graph; 0 = measure it
  int i0 = 0;                     // target tree scale; 0 = ceil(ln^3 r)
  int d = 0;                      // initial frontier floor; 0 = ceil(sqrt(ln r))
  long long l0_cap = 0;           // root attempts; 0 = min(ceil((2d)^d), n)
  int ell = 0;                    // cycle horizon; 0 = clamp(ceil(10/eps), 3, 12)
  double band_lo = -1.0;          // |S|/|T| band; <0 = eps/4
  double band_hi = -1.0;          // <0 = 3*eps/4
  double heavy_multiplier = 8.0;  // heavy threshold = multiplier * r (r*ln r in the limit)
  int round_cap = 0;              // 0 = 10 * ceil(ln n)
  int r1 = 0;                     // probes per frontier vertex; 0 = derived, see resolve
  int trim_degree = 0;            // matching trim; 0 = max(3, ceil(ln ln r))
  double p_override = 0.0;        // >0 replaces p = (1+eps)/r (subcritical experiments)
  double p1_override = -1.0;      // >=0 replaces the round-one split
  bool instrument_probes = false; // maintain a directed-probe log and fail on reuse
  bool oracle_fallback = true;    // consult the exact oracle when no density certificate exists
};

struct ResolvedWitnessParams {
  double epsilon = 0.0;
  double p = 0.0, p1 = 0.0, p2 = 0.0;
  int r = 0, i0 = 0, d = 0, ell = 0, r1 = 0, trim_degree = 0, round_cap = 0;
  long long l0_cap = 0;
  double band_lo = 0.0, band_hi = 0.0;
  double heavy_threshold = 0.0;
  bool instrument_probes = false;
  bool oracle_fallback = true;
};

inline ResolvedWitnessParams resolve_witness_params(const Graph& g, const WitnessParams& wp) {
  if (wp.epsilon <= 0.0) throw validation_error("witness: epsilon must be positive");
  ResolvedWitnessParams rp;
  rp.epsilon = wp.epsilon;
  rp.r = wp.r > 0 ? wp.r : graph_stats(g).min_degree;
  if (rp.r < 1) throw validation_error("witness: base graph has an isolated vertex");
  const double ln_r = std::log(static_cast<double>(rp.r));
  rp.i0 = wp.i0 > 0 ? wp.i0 : static_cast<int>(std::ceil(std::max(1.0, ln_r * ln_r * ln_r)));
  rp.d = wp.d > 0 ? wp.d : std::max(1, static_cast<int>(std::ceil(std::sqrt(std::max(0.0, ln_r)))));
  if (rp.i0 < rp.d) throw validation_error("witness: need i0 >= d");
  if (wp.l0_cap > 0) {
    rp.l0_cap = wp.l0_cap;
  } else {
    double cap = std::pow(2.0 * rp.d, static_cast<double>(rp.d));
    rp.l0_cap = static_cast<long long>(std::min<double>(std::ceil(cap), g.vertex_count()));
    rp.l0_cap = std::max<long long>(rp.l0_cap, 1);
  }
  rp.ell = wp.ell > 0 ? wp.ell
                      : std::min(12, std::max(3, static_cast<int>(std::ceil(10.0 / rp.epsilon))));
  if (rp.ell < 3) throw validation_error("witness: ell must be at least 3");
  rp.band_lo = wp.band_lo >= 0.0 ? wp.band_lo : rp.epsilon / 4.0;
  rp.band_hi = wp.band_hi >= 0.0 ? wp.band_hi : 3.0 * rp.epsilon / 4.0;
  if (!(rp.band_lo < rp.band_hi) || rp.band_hi >= 1.0)
    throw validation_error("witness: ratio band must satisfy 0 <= lo < hi < 1");
  rp.round_cap = wp.round_cap > 0
                     ? wp.round_cap
                     : 10 * static_cast<int>(std::ceil(std::log(std::max(2.0, double(g.vertex_count())))));
  rp.p = wp.p_override > 0.0 ? wp.p_override : (1.0 + rp.epsilon) / rp.r;
  if (rp.p >= 1.0) rp.p = 1.0 - 1e-12;
  // Round split: p1 = p*(1+eps/2)/(1+eps), which reduces to (1+eps/2)/r at the
  // theorem's p.
  rp.p1 = wp.p1_override >= 0.0 ? wp.p1_override
                                : rp.p * (1.0 + rp.epsilon / 2.0) / (1.0 + rp.epsilon);
  if (rp.p1 > rp.p) rp.p1 = rp.p;
  rp.p2 = split_probability(rp.p, rp.p1);
  // r1 = r - o(r): the asymptotic deduction i0*ln r, floored so the branching
  // factor r1*p1 stays in the band-compatible range (>= 1+0.4*eps).
  if (wp.r1 > 0) {
    rp.r1 = wp.r1;
  } else {
    double deduction = std::ceil(double(rp.i0) * std::max(1.0, ln_r));
    double floor_frac = (1.0 + 0.4 * rp.epsilon) / (1.0 + 0.5 * rp.epsilon);
    double floor_r1 = std::ceil(double(rp.r) * std::min(1.0, floor_frac));
    rp.r1 = static_cast<int>(std::max(std::max(1.0, double(rp.r) - deduction), floor_r1));
    rp.r1 = std::min(rp.r1, rp.r);
  }
  rp.trim_degree = wp.trim_degree > 0
                       ? wp.trim_degree
                       : std::max(3, static_cast<int>(std::ceil(std::log(std::max(1.1, ln_r)))));
  rp.heavy_threshold = wp.heavy_multiplier * static_cast<double>(rp.r);
  rp.instrument_probes = wp.instrument_probes;
  rp.oracle_fallback = wp.oracle_fallback;
  return rp;
}

// Mutable context of one witness run: the growing tree, its frontier, the
// rejected-root set B, and per-vertex probe cursors ("first r1 neighbors"
// discipline: a cursor only moves forward, so no adjacency entry is examined
// twice across the whole run).
struct TreeState {
  std::vector<int> order;           // T in insertion order
  std::vector<Edge> tree_edges;
  std::vector<int> frontier;        // S_k, ascending
  std::vector<int> parent;          // -1 outside the tree
  std::vector<char> in_tree;
  std::vector<char> rejected;       // B
  std::vector<int> probe_ptr;
  std::vector<Edge> retained_extra; // exposed round-one edges not used by the tree
  long long probes = 0;
  long long rejected_count = 0;
  int round = 0;
  int root = -1;
  bool instrument = false;
  std::unordered_set<std::uint64_t> probe_log;  // directed probes, when instrumented

  explicit TreeState(int n)
      : parent(static_cast<size_t>(n), -1),
        in_tree(static_cast<size_t>(n), 0),
        rejected(static_cast<size_t>(n), 0),
        probe_ptr(static_cast<size_t>(n), 0) {}

  long long tree_size() const { return static_cast<long long>(order.size()); }
  double ratio() const {
    return order.empty() ? 0.0 : double(frontier.size()) / double(order.size());
  }
  void note_probe(int v, int w) {
    ++probes;
    if (instrument) {
      std::uint64_t key = (std::uint64_t(std::uint32_t(v)) << 32) | std::uint32_t(w);
      if (!probe_log.insert(key).second)
        throw std::logic_error("probe discipline violated: adjacency entry examined twice");
    }
  }
  void reset_tree() {
    for (int v : order) {
      in_tree[static_cast<size_t>(v)] = 0;
      parent[static_cast<size_t>(v)] = -1;
    }
    order.clear();
    tree_edges.clear();
    frontier.clear();
    round = 0;
    root = -1;
  }
  void add_vertex(int v, int par) {
    order.push_back(v);
    in_tree[static_cast<size_t>(v)] = 1;
    parent[static_cast<size_t>(v)] = par;
    if (par != -1) tree_edges.emplace_back(std::min(par, v), std::max(par, v));
  }
  Graph tree_graph(const Graph& base) const {
    std::vector<Edge> e = tree_edges;
    std::sort(e.begin(), e.end());
    return Graph::from_canonical(base.vertex_count(), std::move(e));
  }
};

enum class GrowthFailure { root_search_exhausted, growth_stalled, band_missed };

inline const char* growth_failure_name(GrowthFailure f) {
  switch (f) {
    case GrowthFailure::root_search_exhausted: return "root-search-exhausted";
    case GrowthFailure::growth_stalled: return "growth-stalled";
    case GrowthFailure::band_missed: return "band-missed";
  }
  return "?";
}

struct InitialGrowthResult {
  std::optional<TreeState> state;
  GrowthFailure failure = GrowthFailure::root_search_exhausted;
  long long roots_tried = 0;

  bool ok() const { return state.has_value(); }
};

namespace detail {

struct ProbeBatch {
  std::vector<Edge> internal;    // frontier -> T
  std::vector<Edge> candidate;   // frontier -> outside (not in T or B)
  long long probes = 0;
};

// One round of restricted probing: each frontier vertex consumes up to r1
// fresh adjacency entries in ascending numerical order.
inline ProbeBatch probe_frontier(const Graph& g, TreeState& st, int r1) {
  ProbeBatch batch;
  for (int v : st.frontier) {
    auto nb = g.neighbors(v);
    int& ptr = st.probe_ptr[static_cast<size_t>(v)];
    int tried = 0;
    while (ptr < static_cast<int>(nb.size()) && tried < r1) {
      int w = nb[static_cast<size_t>(ptr++)];
      ++tried;
      st.note_probe(v, w);
      ++batch.probes;
      if (st.rejected[static_cast<size_t>(w)]) continue;
      if (st.in_tree[static_cast<size_t>(w)]) batch.internal.emplace_back(v, w);
      else batch.candidate.emplace_back(v, w);
    }
  }
  return batch;
}

}  // namespace detail

// Grows the initial tree per the restricted breadth search: root vertices are
// tried in ascending order (skipping B) until one has at least d retained
// neighbors among its first r-|B| fresh neighbors outside B; the frontier is
// then expanded until the stopping rule i0 <= |T| <= 2*i0 with |S|/|T| inside
// the band holds. Band overshoot and stalls reject the root (into B) and
// restart, up to l0_cap attempts.
inline InitialGrowthResult initial_tree_growth(const Graph& g, const CoupledSampler& sampler,
                                               const WitnessParams& wp) {
  ResolvedWitnessParams rp = resolve_witness_params(g, wp);
  TreeState st(g.vertex_count());
  st.instrument = rp.instrument_probes;
  InitialGrowthResult result;
  bool grew_past_root = false;
  GrowthFailure last_growth_failure = GrowthFailure::growth_stalled;

  for (int v = 0; v < g.vertex_count() && result.roots_tried < rp.l0_cap; ++v) {
    if (st.rejected[static_cast<size_t>(v)]) continue;
    ++result.roots_tried;
    // Root probe: first r - |B| fresh neighbors not in B.
    long long budget = std::max<long long>(1, static_cast<long long>(rp.r) - st.rejected_count);
    auto nb = g.neighbors(v);
    int& ptr = st.probe_ptr[static_cast<size_t>(v)];
    std::vector<int> children;
    while (ptr < static_cast<int>(nb.size()) && budget > 0) {
      int w = nb[static_cast<size_t>(ptr++)];
      if (st.rejected[static_cast<size_t>(w)]) continue;  // B entries do not consume budget here
      --budget;
      st.note_probe(v, w);
      if (sampler.retained(v, w, rp.p1)) children.push_back(w);
    }
    if (static_cast<int>(children.size()) < rp.d) {
      st.rejected[static_cast<size_t>(v)] = 1;
      ++st.rejected_count;
      for (int w : children) st.retained_extra.emplace_back(std::min(v, w), std::max(v, w));
      continue;
    }
    // Seed the tree.
    st.add_vertex(v, -1);
    st.root = v;
    for (int w : children) st.add_vertex(w, v);
    st.frontier = children;
    std::sort(st.frontier.begin(), st.frontier.end());
    st.round = 1;
    grew_past_root = true;

    std::optional<GrowthFailure> failure;
    for (int round = 0; round < rp.round_cap; ++round) {
      if (st.tree_size() > 2LL * rp.i0) { failure = GrowthFailure::band_missed; break; }
      if (st.tree_size() >= rp.i0 && st.ratio() >= rp.band_lo && st.ratio() <= rp.band_hi)
        break;  // stopping rule satisfied
      detail::ProbeBatch batch = detail::probe_frontier(g, st, rp.r1);
      std::vector<int> added;
      for (const Edge& e : batch.candidate) {
        if (sampler.retained(e.first, e.second, rp.p1)) {
          if (!st.in_tree[static_cast<size_t>(e.second)]) {
            st.add_vertex(e.second, e.first);  // first-discovered edge wins
            added.push_back(e.second);
          } else {
            st.retained_extra.emplace_back(std::min(e.first, e.second),
                                           std::max(e.first, e.second));
          }
        }
      }
      if (added.empty()) { failure = GrowthFailure::growth_stalled; break; }
      std::sort(added.begin(), added.end());
      st.frontier = std::move(added);
      ++st.round;
    }
    if (!failure) {
      if (st.tree_size() >= rp.i0 && st.tree_size() <= 2LL * rp.i0 && st.ratio() >= rp.band_lo &&
          st.ratio() <= rp.band_hi) {
        result.state = std::move(st);
        return result;
      }
      failure = GrowthFailure::growth_stalled;  // round cap hit before the band
    }
    last_growth_failure = *failure;
    st.rejected[static_cast<size_t>(v)] = 1;
    ++st.rejected_count;
    st.reset_tree();
  }
  result.failure = grew_past_root ? last_growth_failure : GrowthFailure::root_search_exhausted;
  return result;
}

struct RoundLedger {
  long long probes = 0;
  long long internal_edges = 0;
  long long heavy_probes = 0;
  long long eligible_probes = 0;
  long long retained = 0;
  long long trimmed_vertices = 0;
  long long matched = 0;
  std::vector<int> heavy_set;  // V_0
};

struct RoundOutcome {
  enum class Kind { grew, internal_heavy, heavy_bipartite, finalize } kind = Kind::finalize;
  // grew: the retained eligible edges R_k (ledger); internal_heavy: unexposed
  // frontier->T pool for sprinkling; heavy_bipartite: retained frontier<->V_0
  // edges; finalize: R_k, to be joined with the tree edges.
  std::vector<Edge> edges;
  RoundLedger ledger;
};

// One frontier-expansion round of the remaining tree growth. Probes up to r1
// fresh edges per frontier vertex, classifies endpoints as internal / heavy /
// eligible, exposes eligible edges at p1, trims to a matching (dropping
// frontier vertices of retained degree above the trim threshold, then keeping
// one edge per new endpoint), and either grows the frontier to exactly
// ceil((1+eps/25)*s_k) vertices or reports the terminal branch.
inline RoundOutcome expand_frontier(const Graph& g, TreeState& st, const CoupledSampler& sampler,
                                    const WitnessParams& wp) {
  ResolvedWitnessParams rp = resolve_witness_params(g, wp);
  RoundOutcome out;
  const double s_k = static_cast<double>(st.frontier.size());
  const double branch_threshold = (rp.epsilon / 10.0) * rp.r * s_k;

  detail::ProbeBatch batch = detail::probe_frontier(g, st, rp.r1);
  out.ledger.probes = batch.probes;
  out.ledger.internal_edges = static_cast<long long>(batch.internal.size());

  if (static_cast<double>(batch.internal.size()) >= branch_threshold) {
    out.kind = RoundOutcome::Kind::internal_heavy;
    out.edges = std::move(batch.internal);
    return out;
  }

  // Heavy targets: probe-degree from the frontier at least heavy_threshold.
  std::unordered_map<int, int> indeg;
  indeg.reserve(batch.candidate.size());
  for (const Edge& e : batch.candidate) ++indeg[e.second];
  std::unordered_set<int> heavy;
  for (const auto& [w, c] : indeg)
    if (static_cast<double>(c) >= rp.heavy_threshold) heavy.insert(w);
  out.ledger.heavy_set.assign(heavy.begin(), heavy.end());
  std::sort(out.ledger.heavy_set.begin(), out.ledger.heavy_set.end());

  std::vector<Edge> heavy_edges, eligible;
  eligible.reserve(batch.candidate.size());
  for (const Edge& e : batch.candidate) {
    if (heavy.count(e.second)) heavy_edges.push_back(e);
    else eligible.push_back(e);
  }
  out.ledger.heavy_probes = static_cast<long long>(heavy_edges.size());
  out.ledger.eligible_probes = static_cast<long long>(eligible.size());

  if (static_cast<double>(heavy_edges.size()) >= branch_threshold) {
    out.kind = RoundOutcome::Kind::heavy_bipartite;
    std::vector<Edge> retained;
    for (const Edge& e : heavy_edges)
      if (sampler.retained(e.first, e.second, rp.p1)) retained.push_back(e);
    out.ledger.retained = static_cast<long long>(retained.size());
    out.edges = std::move(retained);
    return out;
  }

  // Expose eligible edges at p1: R_k.
  std::vector<Edge> r_k;
  std::unordered_map<int, int> deg_r;  // frontier-side degrees in R_k
  for (const Edge& e : eligible)
    if (sampler.retained(e.first, e.second, rp.p1)) {
      r_k.push_back(e);
      ++deg_r[e.first];
    }
  out.ledger.retained = static_cast<long long>(r_k.size());

  // Trim: drop edges at frontier vertices retaining more than trim_degree
  // edges, then keep one edge per new endpoint, in ascending order.
  std::unordered_set<int> over;
  for (const auto& [v, c] : deg_r)
    if (c > rp.trim_degree) over.insert(v);
  out.ledger.trimmed_vertices = static_cast<long long>(over.size());

  const long long nu = static_cast<long long>(std::ceil((1.0 + rp.epsilon / 25.0) * s_k));
  std::vector<Edge> matched;
  std::unordered_set<int> claimed;
  for (const Edge& e : r_k) {
    if (over.count(e.first)) continue;
    if (st.in_tree[static_cast<size_t>(e.second)] || claimed.count(e.second)) continue;
    claimed.insert(e.second);
    matched.push_back(e);
  }
  out.ledger.matched = static_cast<long long>(matched.size());

  if (static_cast<long long>(matched.size()) >= nu && nu > 0) {
    matched.resize(static_cast<size_t>(nu));
    std::vector<int> next_frontier;
    next_frontier.reserve(matched.size());
    std::vector<char> used(matched.size(), 0);
    for (const Edge& e : matched) {
      st.add_vertex(e.second, e.first);
      next_frontier.push_back(e.second);
    }
    std::sort(next_frontier.begin(), next_frontier.end());
    st.frontier = std::move(next_frontier);
    ++st.round;
    // Exposed-but-unused retained edges stay available for the final density
    // pass; they are genuine round-one sample edges.
    std::unordered_set<std::uint64_t> matched_keys;
    for (const Edge& e : matched) matched_keys.insert(rng::edge_key(e.first, e.second));
    for (const Edge& e : r_k)
      if (!matched_keys.count(rng::edge_key(e.first, e.second)))
        st.retained_extra.emplace_back(std::min(e.first, e.second), std::max(e.first, e.second));
    out.kind = RoundOutcome::Kind::grew;
    out.edges = std::move(r_k);
    return out;
  }

  out.kind = RoundOutcome::Kind::finalize;
  out.edges = std::move(r_k);
  return out;
}

// Sprinkles the pool at p2 (round-two randomness) on top of the given tree
// edges and searches the result for a density certificate. The pool must
// consist of non-tree pairs; tree edges enter the certified graph at
// probability one since they are already retained round-one edges. The
// returned certificate is verified against the sprinkled graph itself.
inline std::optional<Certificate> sprinkle_certify(const std::vector<Edge>& tree_edges,
                                                   const std::vector<Edge>& edge_pool, double p2,
                                                   std::uint64_t seed, int ell) {
  if (p2 < 0.0 || p2 > 1.0) throw validation_error("sprinkle_certify: p2 must be in [0,1]");
  if (ell < 3) throw validation_error("sprinkle_certify: ell must be at least 3");
  std::uint64_t base = rng::substream(seed, kRoundTwoStream);
  std::vector<Edge> edges = tree_edges;
  int max_v = -1;
  for (const Edge& e : tree_edges) max_v = std::max({max_v, e.first, e.second});
  for (const Edge& e : edge_pool) {
    max_v = std::max({max_v, e.first, e.second});
    if (p2 >= 1.0 || rng::edge_unit(base, e.first, e.second) < p2) edges.push_back(e);
  }
  if (edges.empty()) return std::nullopt;
  std::vector<Edge> canon = edges;
  for (Edge& e : canon)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  Graph self = Graph::from_canonical(max_v + 1, canon);
  return detail::density_search(self, std::move(edges), max_v + 1, ell);
}

struct WitnessReport {
  enum class Outcome { certified, exhausted } outcome = Outcome::exhausted;
  std::optional<Certificate> certificate;
  std::string mechanism;  // density-after-growth | internal-sprinkle | heavy-bipartite | oracle-fallback
  std::string reason;     // for exhausted outcomes
  int rounds = 0;
  long long tree_size = 0;
  long long probes = 0;
  std::uint64_t seed = 0;

  bool certified() const { return outcome == Outcome::certified; }
};

// Full pipeline for one trial: split p into two exposure rounds, grow the
// restricted BFS tree, expand the frontier until a terminal branch fires, try
// the corresponding certificate route, and fall back to the exact oracle on
// the drawn union sample. Every certificate is re-verified against that
// sample before it is reported.
inline WitnessReport find_witness(const Graph& g, double epsilon, std::uint64_t seed,
                                  WitnessParams wp = {}) {
  wp.epsilon = epsilon;
  ResolvedWitnessParams rp = resolve_witness_params(g, wp);
  if (rp.r < 8) throw validation_error("find_witness: base graph min degree must be at least 8");

  WitnessReport report;
  report.seed = seed;
  CoupledSampler s1(g, seed, kRoundOneStream);

  std::optional<Graph> sample;  // the union sample actually drawn
  auto union_sample = [&]() -> const Graph& {
    if (!sample) sample = two_round_union(g, rp.p1, rp.p2, seed);
    return *sample;
  };
  auto try_certify = [&](std::vector<Edge> edges, int n_hint) -> std::optional<Certificate> {
    for (int ell : {rp.ell, 3}) {
      if (auto c = detail::density_search(union_sample(), edges, n_hint, ell)) return c;
      if (rp.ell == 3) break;
    }
    return std::nullopt;
  };

  std::optional<Certificate> cert;
  std::string mechanism;

  InitialGrowthResult ig = initial_tree_growth(g, s1, wp);
  if (ig.ok()) {
    TreeState st = std::move(*ig.state);
    report.reason = "round-cap";
    for (int round = 0; round < rp.round_cap; ++round) {
      RoundOutcome out = expand_frontier(g, st, s1, wp);
      if (out.kind == RoundOutcome::Kind::grew) continue;
      if (out.kind == RoundOutcome::Kind::internal_heavy) {
        // Lemma-2 situation: many probes fell back into the tree. Sprinkle the
        // pool at p2 and look for density on V(T).
        std::vector<Edge> pool;
        pool.reserve(out.edges.size());
        for (Edge e : out.edges) {
          if (st.parent[static_cast<size_t>(e.first)] == e.second ||
              st.parent[static_cast<size_t>(e.second)] == e.first)
            continue;  // pool keeps non-tree pairs only
          if (e.first > e.second) std::swap(e.first, e.second);
          pool.push_back(e);
        }
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
        std::uint64_t b2 = rng::substream(seed, kRoundTwoStream);
        std::vector<Edge> sprinkled = st.tree_edges;
        for (const Edge& e : pool)
          if (rng::edge_unit(b2, e.first, e.second) < rp.p2) sprinkled.push_back(e);
        cert = try_certify(std::move(sprinkled), g.vertex_count());
        mechanism = "internal-sprinkle";
        report.reason = "sprinkle-no-certificate";
        break;
      }
      if (out.kind == RoundOutcome::Kind::heavy_bipartite) {
        cert = try_certify(std::move(out.edges), g.vertex_count());
        mechanism = "heavy-bipartite";
        report.reason = "heavy-no-certificate";
        break;
      }
      // Finalize: Gamma_k = T union R_k, plus every other exposed retained
      // edge; cycle deletion and the density check happen inside the search.
      std::vector<Edge> gamma = st.tree_edges;
      gamma.insert(gamma.end(), out.edges.begin(), out.edges.end());
      gamma.insert(gamma.end(), st.retained_extra.begin(), st.retained_extra.end());
      cert = try_certify(std::move(gamma), g.vertex_count());
      mechanism = "density-after-growth";
      report.reason = "finalize-no-certificate";
      break;
    }
    if (!cert && report.reason == "round-cap") {
      std::vector<Edge> aggregate = st.tree_edges;
      aggregate.insert(aggregate.end(), st.retained_extra.begin(), st.retained_extra.end());
      cert = try_certify(std::move(aggregate), g.vertex_count());
      if (cert) mechanism = "density-after-growth";
    }
    report.rounds = st.round;
    report.tree_size = st.tree_size();
    report.probes = st.probes;
  } else {
    report.reason = growth_failure_name(ig.failure);
  }

  if (cert) {
    VerifyResult vr = verify_certificate(union_sample(), *cert);
    if (!vr.ok)
      throw std::logic_error(std::string("witness produced an unverifiable certificate: ") +
                             verify_failure_name(vr.failure));
    report.outcome = WitnessReport::Outcome::certified;
    report.certificate = std::move(cert);
    report.mechanism = mechanism;
    return report;
  }
  if (rp.oracle_fallback && !is_planar(union_sample())) {
    report.outcome = WitnessReport::Outcome::certified;
    report.certificate = Certificate::oracle("exact oracle verdict on the drawn sample");
    report.mechanism = "oracle-fallback";
    return report;
  }
  report.outcome = WitnessReport::Outcome::exhausted;
  return report;
}

// The union sample a witness trial draws (for oracle cross-checks).
inline Graph witness_sample(const Graph& g, double epsilon, std::uint64_t seed,
                            WitnessParams wp = {}) {
  wp.epsilon = epsilon;
  ResolvedWitnessParams rp = resolve_witness_params(g, wp);
  return two_round_union(g, rp.p1, rp.p2, seed);
}

}  // namespace percoplanar

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "percoplanar/errors.hpp"
#include "percoplanar/graph.hpp"

namespace percoplanar {

// --- Euler density bound ----------------------------------------------------

// Exact rational, reduced, positive denominator.
struct Ratio {
  long long num = 0;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline Ratio make_ratio(long long num, long long den) {
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g == 0) g = 1;
  return {num / g, den / g};
}

// A planar graph with girth g on n >= 3 vertices has at most g(n-2)/(g-2) edges.
inline Ratio euler_bound(long long n, int g) {
  if (n < 3) throw validation_error("euler_bound: need n >= 3");
  if (g < 3) throw validation_error("euler_bound: need g >= 3");
  return make_ratio(static_cast<long long>(g) * (n - 2), g - 2);
}

// Slack form n + 2n/(g-2) = ng/(g-2) of the same lemma.
inline Ratio euler_slack_bound(long long n, int g) {
  if (n < 3) throw validation_error("euler_slack_bound: need n >= 3");
  if (g < 3) throw validation_error("euler_slack_bound: need g >= 3");
  return make_ratio(static_cast<long long>(g) * n, g - 2);
}

// m > g(n-2)/(g-2), decided in exact integer arithmetic.
inline bool violates_euler(long long m, long long n, int g) {
  if (n < 3) return false;
  return m * (g - 2) > static_cast<long long>(g) * (n - 2);
}

// --- Exact planarity oracle (left-right criterion) ---------------------------

namespace detail {

// Left-right planarity test in the Brandes formulation: DFS orientation with
// lowpoints and nesting order, then a second DFS that maintains a stack of
// conflict pairs of return-edge intervals. Both passes are iterative, so deep
// sparse components cannot overflow the call stack.
class LrPlanarity {
 public:
  explicit LrPlanarity(const Graph& g) : g_(g) {}

  bool run() {
    const int n = g_.vertex_count();
    const long long m = g_.edge_count();
    if (n <= 4 || m < 9) return true;
    if (m > 3LL * n - 6) return false;

    height_.assign(static_cast<size_t>(n), -1);
    parent_edge_.assign(static_cast<size_t>(n), -1);
    const size_t em = static_cast<size_t>(m);
    src_.assign(em, -1);
    dst_.assign(em, -1);
    lowpt_.assign(em, 0);
    lowpt2_.assign(em, 0);
    nesting_.assign(em, 0);
    ref_.assign(em, -1);
    lowpt_edge_.assign(em, -1);
    stack_bottom_.assign(em, 0);
    oriented_.assign(em, 0);
    out_.assign(static_cast<size_t>(n), {});

    build_incidence();
    for (int v = 0; v < n; ++v)
      if (height_[static_cast<size_t>(v)] == -1) {
        height_[static_cast<size_t>(v)] = 0;
        roots_.push_back(v);
        orient_from(v);
      }
    sort_by_nesting();
    for (int r : roots_)
      if (!test_from(r)) return false;
    return true;
  }

 private:
  struct IncEntry {
    int to;
    int edge;
  };

  void build_incidence() {
    inc_.assign(static_cast<size_t>(g_.vertex_count()), {});
    const auto& edges = g_.edges();
    for (size_t i = 0; i < edges.size(); ++i) {
      inc_[static_cast<size_t>(edges[i].first)].push_back({edges[i].second, static_cast<int>(i)});
      inc_[static_cast<size_t>(edges[i].second)].push_back({edges[i].first, static_cast<int>(i)});
    }
    for (auto& lst : inc_)
      std::sort(lst.begin(), lst.end(), [](const IncEntry& a, const IncEntry& b) { return a.to < b.to; });
  }

  // Folds the lowpoint of a finished child/back edge into its parent edge and
  // fixes the child's nesting depth.
  void absorb(int v, int eid) {
    nesting_[static_cast<size_t>(eid)] = 2 * lowpt_[static_cast<size_t>(eid)];
    if (lowpt2_[static_cast<size_t>(eid)] < height_[static_cast<size_t>(v)])
      ++nesting_[static_cast<size_t>(eid)];  // chordal
    int e = parent_edge_[static_cast<size_t>(v)];
    if (e == -1) return;
    const size_t se = static_cast<size_t>(e), si = static_cast<size_t>(eid);
    if (lowpt_[si] < lowpt_[se]) {
      lowpt2_[se] = std::min(lowpt_[se], lowpt2_[si]);
      lowpt_[se] = lowpt_[si];
    } else if (lowpt_[si] > lowpt_[se]) {
      lowpt2_[se] = std::min(lowpt2_[se], lowpt_[si]);
    } else {
      lowpt2_[se] = std::min(lowpt2_[se], lowpt2_[si]);
    }
  }

  void orient_from(int root) {
    struct Frame {
      int v;
      size_t i;
      int pending;  // tree edge whose subtree just finished
    };
    std::vector<Frame> st{{root, 0, -1}};
    while (!st.empty()) {
      Frame& f = st.back();
      if (f.pending != -1) {
        absorb(f.v, f.pending);
        f.pending = -1;
      }
      bool descended = false;
      auto& lst = inc_[static_cast<size_t>(f.v)];
      while (f.i < lst.size()) {
        int eid = lst[f.i].edge;
        int w = lst[f.i].to;
        ++f.i;
        if (oriented_[static_cast<size_t>(eid)]) continue;
        oriented_[static_cast<size_t>(eid)] = 1;
        src_[static_cast<size_t>(eid)] = f.v;
        dst_[static_cast<size_t>(eid)] = w;
        out_[static_cast<size_t>(f.v)].push_back(eid);
        lowpt_[static_cast<size_t>(eid)] = height_[static_cast<size_t>(f.v)];
        lowpt2_[static_cast<size_t>(eid)] = height_[static_cast<size_t>(f.v)];
        if (height_[static_cast<size_t>(w)] == -1) {  // tree edge
          parent_edge_[static_cast<size_t>(w)] = eid;
          height_[static_cast<size_t>(w)] = height_[static_cast<size_t>(f.v)] + 1;
          f.pending = eid;
          st.push_back({w, 0, -1});
          descended = true;
          break;
        }
        lowpt_[static_cast<size_t>(eid)] = height_[static_cast<size_t>(w)];  // back edge
        absorb(f.v, eid);
      }
      if (!descended && st.back().i >= inc_[static_cast<size_t>(st.back().v)].size() &&
          st.back().pending == -1)
        st.pop_back();
    }
  }

  void sort_by_nesting() {
    for (auto& lst : out_)
      std::stable_sort(lst.begin(), lst.end(), [this](int a, int b) {
        return nesting_[static_cast<size_t>(a)] < nesting_[static_cast<size_t>(b)];
      });
  }

  struct Interval {
    int low = -1, high = -1;
    bool empty() const { return low == -1 && high == -1; }
  };
  struct ConflictPair {
    Interval left, right;
  };

  int lowest(const ConflictPair& p) const {
    if (p.left.empty()) return lowpt_[static_cast<size_t>(p.right.low)];
    if (p.right.empty()) return lowpt_[static_cast<size_t>(p.left.low)];
    return std::min(lowpt_[static_cast<size_t>(p.left.low)], lowpt_[static_cast<size_t>(p.right.low)]);
  }
  bool conflicting(const Interval& i, int b) const {
    return !i.empty() && lowpt_[static_cast<size_t>(i.high)] > lowpt_[static_cast<size_t>(b)];
  }

  bool add_constraints(int ei, int e) {
    ConflictPair p;
    // Merge the return edges of ei into p.right.
    do {
      ConflictPair q = S_.back();
      S_.pop_back();
      if (!q.left.empty()) std::swap(q.left, q.right);
      if (!q.left.empty()) return false;
      if (lowpt_[static_cast<size_t>(q.right.low)] > lowpt_[static_cast<size_t>(e)]) {
        if (p.right.empty()) p.right.high = q.right.high;
        else ref_[static_cast<size_t>(p.right.low)] = q.right.high;
        p.right.low = q.right.low;
      } else {
        ref_[static_cast<size_t>(q.right.low)] = lowpt_edge_[static_cast<size_t>(e)];
      }
    } while (static_cast<int>(S_.size()) != stack_bottom_[static_cast<size_t>(ei)]);
    // Merge conflicting return edges of earlier siblings into p.left.
    while (conflicting(S_.back().left, ei) || conflicting(S_.back().right, ei)) {
      ConflictPair q = S_.back();
      S_.pop_back();
      if (conflicting(q.right, ei)) std::swap(q.left, q.right);
      if (conflicting(q.right, ei)) return false;
      if (p.right.low != -1) ref_[static_cast<size_t>(p.right.low)] = q.right.high;
      if (q.right.low != -1) p.right.low = q.right.low;
      if (p.left.empty()) p.left.high = q.left.high;
      else ref_[static_cast<size_t>(p.left.low)] = q.left.high;
      p.left.low = q.left.low;
    }
    if (!(p.left.empty() && p.right.empty())) S_.push_back(p);
    return true;
  }

  void remove_back_edges(int e) {
    const int u = src_[static_cast<size_t>(e)];
    // Drop conflict pairs whose whole extent returns to u.
    while (!S_.empty() && lowest(S_.back()) == height_[static_cast<size_t>(u)]) S_.pop_back();
    if (!S_.empty()) {
      ConflictPair p = S_.back();
      S_.pop_back();
      while (p.left.high != -1 && dst_[static_cast<size_t>(p.left.high)] == u)
        p.left.high = ref_[static_cast<size_t>(p.left.high)];
      if (p.left.high == -1 && p.left.low != -1) {
        ref_[static_cast<size_t>(p.left.low)] = p.right.low;
        p.left.low = -1;
      }
      while (p.right.high != -1 && dst_[static_cast<size_t>(p.right.high)] == u)
        p.right.high = ref_[static_cast<size_t>(p.right.high)];
      if (p.right.high == -1 && p.right.low != -1) {
        ref_[static_cast<size_t>(p.right.low)] = p.left.low;
        p.right.low = -1;
      }
      S_.push_back(p);
    }
    if (lowpt_[static_cast<size_t>(e)] < height_[static_cast<size_t>(u)]) {  // e has a return edge
      int hl = S_.back().left.high;
      int hr = S_.back().right.high;
      if (hl != -1 && (hr == -1 || lowpt_[static_cast<size_t>(hl)] > lowpt_[static_cast<size_t>(hr)]))
        ref_[static_cast<size_t>(e)] = hl;
      else
        ref_[static_cast<size_t>(e)] = hr;
    }
  }

  // Runs the constraint step for out-edge index `pos` of vertex v after that
  // edge's return edges are known; returns false on a planarity conflict.
  bool integrate(int v, size_t pos) {
    int ei = out_[static_cast<size_t>(v)][pos];
    if (lowpt_[static_cast<size_t>(ei)] < height_[static_cast<size_t>(v)]) {
      int e = parent_edge_[static_cast<size_t>(v)];
      if (pos == 0) {
        if (e != -1) lowpt_edge_[static_cast<size_t>(e)] = lowpt_edge_[static_cast<size_t>(ei)];
      } else {
        if (!add_constraints(ei, e)) return false;
      }
    }
    return true;
  }

  bool test_from(int root) {
    struct Frame {
      int v;
      size_t i;
      bool child_pending;
    };
    std::vector<Frame> st{{root, 0, false}};
    while (!st.empty()) {
      Frame& f = st.back();
      auto& out = out_[static_cast<size_t>(f.v)];
      if (f.child_pending) {
        f.child_pending = false;
        if (!integrate(f.v, f.i)) return false;
        ++f.i;
      }
      bool descended = false;
      while (f.i < out.size()) {
        int ei = out[f.i];
        stack_bottom_[static_cast<size_t>(ei)] = static_cast<int>(S_.size());
        int w = dst_[static_cast<size_t>(ei)];
        if (ei == parent_edge_[static_cast<size_t>(w)]) {  // tree edge
          f.child_pending = true;
          st.push_back({w, 0, false});
          descended = true;
          break;
        }
        lowpt_edge_[static_cast<size_t>(ei)] = ei;  // back edge
        S_.push_back(ConflictPair{Interval{}, Interval{ei, ei}});
        if (!integrate(f.v, f.i)) return false;
        ++f.i;
      }
      if (!descended) {
        int e = parent_edge_[static_cast<size_t>(f.v)];
        if (e != -1) remove_back_edges(e);
        st.pop_back();
      }
    }
    return true;
  }

  const Graph& g_;
  std::vector<std::vector<IncEntry>> inc_;
  std::vector<std::vector<int>> out_;
  std::vector<int> roots_;
  std::vector<int> height_, parent_edge_;
  std::vector<int> src_, dst_, lowpt_, lowpt2_, nesting_, ref_, lowpt_edge_, stack_bottom_;
  std::vector<char> oriented_;
  std::vector<ConflictPair> S_;
};

}  // namespace detail

inline bool is_planar(const Graph& g) { return detail::LrPlanarity(g).run(); }

// --- Non-planarity certificates ----------------------------------------------

// A named subgraph (W, E_W) with girth >= girth_floor whose edge count
// violates the Euler bound for that girth; checkable independently of how it
// was found.
struct DensityGirthCert {
  int girth_floor = 3;
  std::vector<int> vertices;  // ascending original ids
  std::vector<Edge> edges;    // canonical pairs within `vertices`
  long long n_claimed = 0;
  long long m_claimed = 0;
};

struct OracleVerdictCert {
  bool nonplanar = true;
  std::string note;
};

struct Certificate {
  std::variant<DensityGirthCert, OracleVerdictCert> body;

  bool is_density() const { return std::holds_alternative<DensityGirthCert>(body); }
  const char* kind_name() const { return is_density() ? "density-girth" : "oracle-verdict"; }

  static Certificate density(DensityGirthCert c) {
    c.n_claimed = static_cast<long long>(c.vertices.size());
    c.m_claimed = static_cast<long long>(c.edges.size());
    return {std::move(c)};
  }
  static Certificate oracle(std::string note) { return {OracleVerdictCert{true, std::move(note)}}; }
};

enum class VerifyFailure {
  none,
  too_few_vertices,
  vertex_out_of_range,
  duplicate_vertex,
  edge_outside_vertex_set,
  edge_not_in_graph,
  bad_edge,
  count_mismatch,
  acyclic,
  girth_too_small,
  density_not_violated,
  bad_girth_floor,
  oracle_disagrees,
};

struct VerifyResult {
  bool ok = false;
  VerifyFailure failure = VerifyFailure::none;

  explicit operator bool() const { return ok; }
};

inline const char* verify_failure_name(VerifyFailure f) {
  switch (f) {
    case VerifyFailure::none: return "none";
    case VerifyFailure::too_few_vertices: return "too-few-vertices";
    case VerifyFailure::vertex_out_of_range: return "vertex-out-of-range";
    case VerifyFailure::duplicate_vertex: return "duplicate-vertex";
    case VerifyFailure::edge_outside_vertex_set: return "edge-outside-vertex-set";
    case VerifyFailure::edge_not_in_graph: return "edge-not-in-graph";
    case VerifyFailure::bad_edge: return "bad-edge";
    case VerifyFailure::count_mismatch: return "count-mismatch";
    case VerifyFailure::acyclic: return "acyclic";
    case VerifyFailure::girth_too_small: return "girth-too-small";
    case VerifyFailure::density_not_violated: return "density-not-violated";
    case VerifyFailure::bad_girth_floor: return "bad-girth-floor";
    case VerifyFailure::oracle_disagrees: return "oracle-disagrees";
  }
  return "?";
}

// Re-checks a certificate from scratch against G: edge membership, recomputed
// girth, and the exact rational density inequality.
inline VerifyResult verify_certificate(const Graph& g, const Certificate& cert) {
  if (const auto* oc = std::get_if<OracleVerdictCert>(&cert.body)) {
    if (!oc->nonplanar) return {false, VerifyFailure::oracle_disagrees};
    if (is_planar(g)) return {false, VerifyFailure::oracle_disagrees};
    return {true, VerifyFailure::none};
  }
  const auto& c = std::get<DensityGirthCert>(cert.body);
  if (c.girth_floor < 3) return {false, VerifyFailure::bad_girth_floor};
  if (c.vertices.size() < 3) return {false, VerifyFailure::too_few_vertices};
  std::vector<int> verts = c.vertices;
  std::sort(verts.begin(), verts.end());
  if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
    return {false, VerifyFailure::duplicate_vertex};
  for (int v : verts)
    if (v < 0 || v >= g.vertex_count()) return {false, VerifyFailure::vertex_out_of_range};
  if (c.n_claimed != static_cast<long long>(verts.size())) return {false, VerifyFailure::count_mismatch};

  std::vector<Edge> edges;
  edges.reserve(c.edges.size());
  for (Edge e : c.edges) {
    if (e.first == e.second) return {false, VerifyFailure::bad_edge};
    if (e.first > e.second) std::swap(e.first, e.second);
    if (!std::binary_search(verts.begin(), verts.end(), e.first) ||
        !std::binary_search(verts.begin(), verts.end(), e.second))
      return {false, VerifyFailure::edge_outside_vertex_set};
    if (!g.has_edge(e.first, e.second)) return {false, VerifyFailure::edge_not_in_graph};
    edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    return {false, VerifyFailure::bad_edge};
  if (c.m_claimed != static_cast<long long>(edges.size())) return {false, VerifyFailure::count_mismatch};

  // Relabel into a compact graph to recompute the girth.
  std::vector<Edge> relabeled;
  relabeled.reserve(edges.size());
  for (const Edge& e : edges) {
    int a = static_cast<int>(std::lower_bound(verts.begin(), verts.end(), e.first) - verts.begin());
    int b = static_cast<int>(std::lower_bound(verts.begin(), verts.end(), e.second) - verts.begin());
    relabeled.emplace_back(a, b);
  }
  Graph sub = Graph::from_canonical(static_cast<int>(verts.size()), std::move(relabeled));
  GirthResult gr = girth(sub, std::max(3, c.girth_floor));
  if (gr.kind == GirthResult::Kind::acyclic) return {false, VerifyFailure::acyclic};
  if (gr.is_finite() && gr.value < c.girth_floor) return {false, VerifyFailure::girth_too_small};
  if (!violates_euler(static_cast<long long>(edges.size()), static_cast<long long>(verts.size()),
                      c.girth_floor))
    return {false, VerifyFailure::density_not_violated};
  return {true, VerifyFailure::none};
}

namespace detail {

// Peels vertices of degree <= threshold (iteratively) from the subgraph given
// by `edges`; returns the surviving edges. Original vertex ids throughout.
inline std::vector<Edge> peel_low_degree(int n, std::vector<Edge> edges, int threshold) {
  std::vector<int> deg(static_cast<size_t>(n), 0);
  for (const Edge& e : edges) {
    ++deg[static_cast<size_t>(e.first)];
    ++deg[static_cast<size_t>(e.second)];
  }
  // Iterate peel rounds on the edge list; simple and good enough for the
  // certificate search sizes.
  bool changed = true;
  std::vector<char> dead(static_cast<size_t>(n), 0);
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v)
      if (!dead[static_cast<size_t>(v)] && deg[static_cast<size_t>(v)] > 0 &&
          deg[static_cast<size_t>(v)] <= threshold) {
        dead[static_cast<size_t>(v)] = 1;
        changed = true;
      }
    if (!changed) break;
    std::vector<Edge> kept;
    kept.reserve(edges.size());
    for (const Edge& e : edges) {
      if (dead[static_cast<size_t>(e.first)] || dead[static_cast<size_t>(e.second)]) {
        --deg[static_cast<size_t>(e.first)];
        --deg[static_cast<size_t>(e.second)];
      } else {
        kept.push_back(e);
      }
    }
    edges.swap(kept);
  }
  return edges;
}

// Splits an edge set into connected components (by original vertex id).
inline std::vector<std::vector<Edge>> edge_components(const std::vector<Edge>& edges) {
  std::vector<int> ids;
  ids.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    ids.push_back(e.first);
    ids.push_back(e.second);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto index_of = [&ids](int v) {
    return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
  };
  std::vector<int> parent(ids.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (const Edge& e : edges) {
    int a = find(index_of(e.first)), b = find(index_of(e.second));
    if (a != b) parent[static_cast<size_t>(a)] = b;
  }
  std::vector<int> root_slot(ids.size(), -1);
  std::vector<std::vector<Edge>> comps;
  for (const Edge& e : edges) {
    int r = find(index_of(e.first));
    if (root_slot[static_cast<size_t>(r)] == -1) {
      root_slot[static_cast<size_t>(r)] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[static_cast<size_t>(root_slot[static_cast<size_t>(r)])].push_back(e);
  }
  return comps;
}

inline std::vector<int> vertex_support(const std::vector<Edge>& edges) {
  std::vector<int> verts;
  verts.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    verts.push_back(e.first);
    verts.push_back(e.second);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

// Checks the Euler bound with girth floor g on every component of `edges`
// (densest margin first is unnecessary: any violating component verifies).
inline std::optional<Certificate> certify_components(const Graph& g_base,
                                                     const std::vector<Edge>& edges, int g) {
  for (auto& comp : edge_components(edges)) {
    std::vector<int> verts = vertex_support(comp);
    if (verts.size() < 3) continue;
    if (!violates_euler(static_cast<long long>(comp.size()), static_cast<long long>(verts.size()), g))
      continue;
    std::sort(comp.begin(), comp.end());
    Certificate cert = Certificate::density({g, std::move(verts), std::move(comp), 0, 0});
    if (verify_certificate(g_base, cert).ok) return cert;
  }
  return std::nullopt;
}

// Certificate search over an arbitrary edge subset of g_base.
//  (a) g=3: peel degree <= 2, then look for m > 3n-6 per component;
//  (b) g=ell+1: delete cycles of length <= ell, peel (degree <= 2 when the
//      bound coefficient allows, else degree <= 1), check per component.
inline std::optional<Certificate> density_search(const Graph& g_base, std::vector<Edge> edges,
                                                 int n_hint, int ell) {
  for (Edge& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.size() < 3) return std::nullopt;
  // (a) direct check on the raw subgraph and its 3-core.
  if (auto c = certify_components(g_base, edges, 3)) return c;
  std::vector<Edge> core3 = peel_low_degree(n_hint, edges, 2);
  if (!core3.empty())
    if (auto c = certify_components(g_base, core3, 3)) return c;
  // (b) girth route at horizon ell.
  Graph sub = Graph::from_canonical(n_hint, edges);
  DeletionResult del = short_cycle_edge_deletion(sub, ell);
  const int gfloor = ell + 1;
  const std::vector<Edge>& high_girth = del.graph.edges();
  if (auto c = certify_components(g_base, high_girth, gfloor)) return c;
  // Peeling a degree-d vertex changes the violation margin by g/(g-2) - d,
  // so peel degree <= 2 only while g <= 4.
  int peel_threshold = gfloor <= 4 ? 2 : 1;
  std::vector<Edge> core = peel_low_degree(n_hint, high_girth, peel_threshold);
  if (!core.empty())
    if (auto c = certify_components(g_base, core, gfloor)) return c;
  return std::nullopt;
}

}  // namespace detail

// Searches for a density/girth certificate in G: direct Euler violation on G
// or a low-degree-peeled core (g=3), else cycle deletion at horizon ell
// followed by the g=ell+1 bound. Every returned certificate re-verifies.
inline std::optional<Certificate> density_certificate(const Graph& g, int ell) {
  if (ell < 3) throw validation_error("density_certificate: ell must be at least 3");
  std::vector<Edge> edges = g.edges();
  return detail::density_search(g, std::move(edges), g.vertex_count(), ell);
}

// --- Certificate text blocks --------------------------------------------------

inline std::string format_certificate(const Certificate& cert) {
  std::ostringstream out;
  if (const auto* oc = std::get_if<OracleVerdictCert>(&cert.body)) {
    out << "certificate oracle-verdict\n";
    out << "note " << (oc->note.empty() ? "non-planar by exact oracle" : oc->note) << "\n";
    return out.str();
  }
  const auto& c = std::get<DensityGirthCert>(cert.body);
  out << "certificate density-girth\n";
  out << "g " << c.girth_floor << "\n";
  out << "vertices";
  for (int v : c.vertices) out << ' ' << v;
  out << "\nedges";
  for (const Edge& e : c.edges) out << ' ' << e.first << ' ' << e.second;
  out << "\n";
  return out.str();
}

inline Certificate parse_certificate(std::istream& in) {
  std::string word;
  if (!(in >> word) || word != "certificate") throw io_error("certificate block: missing header");
  std::string kind;
  if (!(in >> kind)) throw io_error("certificate block: missing kind");
  if (kind == "oracle-verdict") {
    std::string line;
    std::getline(in, line);
    std::string note;
    while (std::getline(in, line)) {
      if (line.rfind("note", 0) == 0) note = line.size() > 5 ? line.substr(5) : "";
    }
    return Certificate::oracle(note);
  }
  if (kind != "density-girth") throw io_error("certificate block: unknown kind '" + kind + "'");
  DensityGirthCert c;
  if (!(in >> word) || word != "g" || !(in >> c.girth_floor))
    throw io_error("certificate block: missing girth floor");
  if (!(in >> word) || word != "vertices") throw io_error("certificate block: missing vertices");
  std::string line;
  std::getline(in, line);
  {
    std::istringstream ls(line);
    int v;
    while (ls >> v) c.vertices.push_back(v);
  }
  if (!std::getline(in, line) || line.rfind("edges", 0) != 0)
    throw io_error("certificate block: missing edges");
  {
    std::istringstream ls(line.substr(5));
    long long u, v;
    while (ls >> u >> v) c.edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  return Certificate::density(std::move(c));
}

inline Certificate parse_certificate(const std::string& text) {
  std::istringstream in(text);
  return parse_certificate(in);
}

}  // namespace percoplanar

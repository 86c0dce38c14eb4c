#pragma once

// Independent oracles used only by tests: brute-force girth, brute-force
// Kuratowski subdivision search, exact subgraph distributions, a standalone
// bisection root finder, and chi-square helpers. Nothing here may call into
// the implementation paths under test.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <vector>

#include "percoplanar/graph.hpp"
#include "percoplanar/rng.hpp"

namespace test_oracles {

using percoplanar::Edge;
using percoplanar::Graph;

// Exact girth by the delete-edge/shortest-path method: for every edge (u,v),
// the shortest u-v path avoiding that edge plus the edge itself is a cycle;
// the minimum over edges is the girth. Infinity (-1) for forests.
inline int brute_girth(const Graph& g) {
  int best = std::numeric_limits<int>::max();
  const int n = g.vertex_count();
  std::vector<int> dist(static_cast<size_t>(n));
  std::vector<int> queue;
  for (const Edge& e : g.edges()) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.assign(1, e.first);
    dist[static_cast<size_t>(e.first)] = 0;
    size_t head = 0;
    while (head < queue.size()) {
      int x = queue[head++];
      if (x == e.second) break;
      for (int y : g.neighbors(x)) {
        if (x == e.first && y == e.second) continue;
        if (x == e.second && y == e.first) continue;
        if (dist[static_cast<size_t>(y)] == -1) {
          dist[static_cast<size_t>(y)] = dist[static_cast<size_t>(x)] + 1;
          queue.push_back(y);
        }
      }
    }
    if (dist[static_cast<size_t>(e.second)] != -1)
      best = std::min(best, dist[static_cast<size_t>(e.second)] + 1);
  }
  return best == std::numeric_limits<int>::max() ? -1 : best;
}

// Brute-force count of distinct cycles of length <= ell (tiny graphs only):
// enumerates all vertex subsets and checks whether the subset supports a
// cycle visiting exactly those vertices, counting Hamiltonian cycles of the
// induced subgraph via permutations.
inline long long brute_cycle_count(const Graph& g, int ell) {
  const int n = g.vertex_count();
  long long count = 0;
  std::vector<int> subset;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int bits = __builtin_popcount(mask);
    if (bits < 3 || bits > ell) continue;
    subset.clear();
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) subset.push_back(v);
    // Count Hamiltonian cycles on `subset`: fix the first vertex, permute the
    // rest, accept closed walks; each cycle appears twice (two directions).
    std::vector<int> rest(subset.begin() + 1, subset.end());
    std::sort(rest.begin(), rest.end());
    long long ham = 0;
    do {
      int prev = subset[0];
      bool ok = true;
      for (int v : rest) {
        if (!g.has_edge(prev, v)) { ok = false; break; }
        prev = v;
      }
      if (ok && g.has_edge(prev, subset[0])) ++ham;
    } while (std::next_permutation(rest.begin(), rest.end()));
    count += ham / 2;
  }
  return count;
}

namespace detail {

// Path options for one branch-vertex pair: direct edge or a chain through
// distinct spare vertices, encoded as a bitmask over spares.
struct PathOption {
  std::uint32_t spare_mask;
};

inline void collect_paths(const Graph& g, int a, int b, const std::vector<int>& spares,
                          std::vector<PathOption>& out) {
  out.clear();
  if (g.has_edge(a, b)) out.push_back({0});
  const int k = static_cast<int>(spares.size());
  // Chains through ordered spare tuples, depth-first.
  std::function<void(int, std::uint32_t)> rec = [&](int last, std::uint32_t mask) {
    if (g.has_edge(last, b)) out.push_back({mask});
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) continue;
      if (!g.has_edge(last, spares[static_cast<size_t>(i)])) continue;
      rec(spares[static_cast<size_t>(i)], mask | (1u << i));
    }
  };
  for (int i = 0; i < k; ++i)
    if (g.has_edge(a, spares[static_cast<size_t>(i)]))
      rec(spares[static_cast<size_t>(i)], 1u << i);
}

// Assigns one option per pair with disjoint spare masks.
inline bool assign_disjoint(const std::vector<std::vector<PathOption>>& options, size_t idx,
                            std::uint32_t used) {
  if (idx == options.size()) return true;
  for (const PathOption& opt : options[idx]) {
    if (opt.spare_mask & used) continue;
    if (assign_disjoint(options, idx + 1, used | opt.spare_mask)) return true;
  }
  return false;
}

inline bool has_subdivision(const Graph& g, const std::vector<int>& branch,
                            const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> spares;
  std::vector<char> is_branch(static_cast<size_t>(g.vertex_count()), 0);
  for (int v : branch) is_branch[static_cast<size_t>(v)] = 1;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!is_branch[static_cast<size_t>(v)]) spares.push_back(v);
  std::vector<std::vector<PathOption>> options(pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i) {
    collect_paths(g, branch[static_cast<size_t>(pairs[i].first)],
                  branch[static_cast<size_t>(pairs[i].second)], spares, options[i]);
    if (options[i].empty()) return false;
  }
  // Cheapest-first ordering keeps the search tiny.
  std::vector<size_t> order(pairs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&options](size_t a, size_t b) { return options[a].size() < options[b].size(); });
  std::vector<std::vector<PathOption>> sorted;
  sorted.reserve(order.size());
  for (size_t i : order) sorted.push_back(options[i]);
  return assign_disjoint(sorted, 0, 0);
}

inline void subsets_rec(int n, int k, int start, std::vector<int>& cur,
                        std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int v = start; v < n; ++v) {
    cur.push_back(v);
    subsets_rec(n, k, v + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

// True iff g contains a subdivision of K5.
inline bool has_k5_subdivision(const Graph& g) {
  const int n = g.vertex_count();
  if (n < 5) return false;
  int deg4 = 0;
  for (int v = 0; v < n; ++v)
    if (g.degree(v) >= 4) ++deg4;
  if (deg4 < 5 || g.edge_count() < 10) return false;
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  detail::subsets_rec(n, 5, 0, cur, subsets);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) pairs.emplace_back(i, j);
  for (const auto& branch : subsets) {
    bool degree_ok = true;
    for (int v : branch)
      if (g.degree(v) < 4) { degree_ok = false; break; }
    if (!degree_ok) continue;
    if (detail::has_subdivision(g, branch, pairs)) return true;
  }
  return false;
}

// True iff g contains a subdivision of K_{3,3}.
inline bool has_k33_subdivision(const Graph& g) {
  const int n = g.vertex_count();
  if (n < 6) return false;
  int deg3 = 0;
  for (int v = 0; v < n; ++v)
    if (g.degree(v) >= 3) ++deg3;
  if (deg3 < 6 || g.edge_count() < 9) return false;
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  detail::subsets_rec(n, 6, 0, cur, subsets);
  // All 10 ways of splitting six branch vertices into two sides of three,
  // with position 0 fixed on the left.
  static const std::array<std::array<int, 3>, 10> lefts = {{
      {0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {0, 1, 5}, {0, 2, 3},
      {0, 2, 4}, {0, 2, 5}, {0, 3, 4}, {0, 3, 5}, {0, 4, 5},
  }};
  for (const auto& branch : subsets) {
    bool degree_ok = true;
    for (int v : branch)
      if (g.degree(v) < 3) { degree_ok = false; break; }
    if (!degree_ok) continue;
    for (const auto& left : lefts) {
      std::array<int, 3> right{};
      int ri = 0;
      for (int pos = 0; pos < 6; ++pos)
        if (std::find(left.begin(), left.end(), pos) == left.end()) right[static_cast<size_t>(ri++)] = pos;
      std::vector<std::pair<int, int>> pairs;
      for (int a : left)
        for (int b : right) pairs.emplace_back(a, b);
      if (detail::has_subdivision(g, branch, pairs)) return true;
    }
  }
  return false;
}

// Kuratowski: planar iff no K5 and no K_{3,3} subdivision.
inline bool brute_planar(const Graph& g) {
  return !has_k5_subdivision(g) && !has_k33_subdivision(g);
}

// Independent bisection for x = 1 - exp(-c x) on (0, 1).
inline double bisect_fixed_point(double c, double tol) {
  if (c <= 1.0) return 0.0;
  auto f = [c](double x) { return -std::expm1(-c * x) - x; };
  double lo = tol, hi = 1.0 - tol;
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Chi-square statistic against expected cell probabilities.
inline double chi_square(const std::vector<long long>& observed, const std::vector<double>& probs,
                         long long total) {
  double stat = 0.0;
  for (size_t i = 0; i < observed.size(); ++i) {
    double expected = probs[i] * static_cast<double>(total);
    double diff = static_cast<double>(observed[i]) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

// Upper 0.001 critical values of the chi-square distribution.
inline double chi2_crit_999(int df) {
  switch (df) {
    case 15: return 37.697;
    case 31: return 61.098;
    case 63: return 103.442;
    default: return -1.0;
  }
}

// All-subgraph exact product distribution for a graph with m <= 20 edges:
// probability of each edge-subset mask at retention p.
inline std::vector<double> subgraph_distribution(int m, double p) {
  std::vector<double> probs(static_cast<size_t>(1) << m);
  for (std::uint32_t mask = 0; mask < probs.size(); ++mask) {
    double pr = 1.0;
    for (int i = 0; i < m; ++i) pr *= (mask & (1u << i)) ? p : (1.0 - p);
    probs[mask] = pr;
  }
  return probs;
}

inline Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_canonical(n, std::move(edges));
}

inline Graph petersen() {
  std::vector<Edge> edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},
                             {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                             {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}};
  std::sort(edges.begin(), edges.end());
  return Graph::from_canonical(10, std::move(edges));
}

// Deterministic random graph on n vertices with edge probability num/den,
// driven by the library's counter stream (distinct tag from library streams).
inline Graph random_graph(int n, double p, std::uint64_t seed) {
  std::uint64_t base = percoplanar::rng::substream(seed, 0x7465737447ULL);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (percoplanar::rng::edge_unit(base, u, v) < p) edges.emplace_back(u, v);
  return Graph::from_canonical(n, std::move(edges));
}

}  // namespace test_oracles

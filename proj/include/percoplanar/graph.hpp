#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "percoplanar/errors.hpp"

namespace percoplanar {

using Edge = std::pair<int, int>;

// Immutable simple undirected graph. Vertices are 0..n-1, edges are stored
// canonically (u < v, sorted lexicographically) and adjacency lists ascend.
// Safe to share across threads once constructed.
class Graph {
 public:
  Graph() = default;

  // Validating constructor: rejects self-loops, duplicates and out-of-range
  // endpoints, naming the offending pair.
  static Graph from_edges(int n, std::span<const Edge> edges) {
    if (n < 0) throw validation_error("vertex count must be non-negative");
    std::vector<Edge> canon;
    canon.reserve(edges.size());
    for (const Edge& e : edges) {
      int u = e.first, v = e.second;
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw validation_error("edge endpoint out of range: (" + std::to_string(u) + ", " +
                               std::to_string(v) + ") with n=" + std::to_string(n));
      if (u == v)
        throw validation_error("self-loop rejected: (" + std::to_string(u) + ", " +
                               std::to_string(v) + ")");
      if (u > v) std::swap(u, v);
      canon.emplace_back(u, v);
    }
    std::sort(canon.begin(), canon.end());
    auto dup = std::adjacent_find(canon.begin(), canon.end());
    if (dup != canon.end())
      throw validation_error("duplicate edge rejected: (" + std::to_string(dup->first) + ", " +
                             std::to_string(dup->second) + ")");
    return Graph(n, std::move(canon));
  }

  // Fast path for internally produced edge lists that are already canonical
  // (u < v, strictly ascending). Used by generators and samplers.
  static Graph from_canonical(int n, std::vector<Edge> edges) {
    return Graph(n, std::move(edges));
  }

  int vertex_count() const { return n_; }
  long long edge_count() const { return static_cast<long long>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const int> neighbors(int v) const {
    return {adj_.data() + off_[v], adj_.data() + off_[v + 1]};
  }
  int degree(int v) const { return off_[v + 1] - off_[v]; }

  bool has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    off_.assign(static_cast<size_t>(n_) + 1, 0);
    for (const Edge& e : edges_) {
      ++off_[static_cast<size_t>(e.first) + 1];
      ++off_[static_cast<size_t>(e.second) + 1];
    }
    for (size_t i = 1; i < off_.size(); ++i) off_[i] += off_[i - 1];
    adj_.resize(edges_.size() * 2);
    std::vector<int> cursor(off_.begin(), off_.end() - 1);
    for (const Edge& e : edges_) {
      adj_[static_cast<size_t>(cursor[e.first]++)] = e.second;
      adj_[static_cast<size_t>(cursor[e.second]++)] = e.first;
    }
    for (int v = 0; v < n_; ++v)
      std::sort(adj_.begin() + off_[v], adj_.begin() + off_[v + 1]);
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> off_ = {0};
  std::vector<int> adj_;
};

inline Graph build_graph(int n, std::span<const Edge> edges) {
  return Graph::from_edges(n, edges);
}
inline Graph build_graph(int n, const std::vector<Edge>& edges) {
  return Graph::from_edges(n, std::span<const Edge>(edges));
}

struct GraphStats {
  int n = 0;
  long long m = 0;
  int min_degree = 0;
  int max_degree = 0;
};

inline GraphStats graph_stats(const Graph& g) {
  GraphStats s{g.vertex_count(), g.edge_count(), 0, 0};
  if (g.vertex_count() == 0) return s;
  s.min_degree = g.degree(0);
  for (int v = 0; v < g.vertex_count(); ++v) {
    s.min_degree = std::min(s.min_degree, g.degree(v));
    s.max_degree = std::max(s.max_degree, g.degree(v));
  }
  return s;
}

namespace detail {

// Component labels plus the list of vertices of the largest component
// (ties broken by smallest member, i.e. first component found when
// scanning roots in ascending order).
inline std::vector<int> largest_component_vertices(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> comp(static_cast<size_t>(n), -1);
  std::vector<int> queue;
  int best_root = -1;
  long long best_size = -1;
  int label = 0;
  for (int root = 0; root < n; ++root) {
    if (comp[root] != -1) continue;
    queue.assign(1, root);
    comp[root] = label;
    size_t head = 0;
    while (head < queue.size()) {
      int x = queue[head++];
      for (int y : g.neighbors(x)) {
        if (comp[y] == -1) {
          comp[y] = label;
          queue.push_back(y);
        }
      }
    }
    if (static_cast<long long>(queue.size()) > best_size) {
      best_size = static_cast<long long>(queue.size());
      best_root = label;
    }
    ++label;
  }
  std::vector<int> verts;
  if (best_root >= 0) {
    for (int v = 0; v < n; ++v)
      if (comp[v] == best_root) verts.push_back(v);
  }
  return verts;
}

// Edges of G with both endpoints inside `verts` (ascending, original ids).
inline std::vector<Edge> induced_edges(const Graph& g, const std::vector<int>& verts) {
  std::vector<char> in(static_cast<size_t>(g.vertex_count()), 0);
  for (int v : verts) in[static_cast<size_t>(v)] = 1;
  std::vector<Edge> out;
  for (const Edge& e : g.edges())
    if (in[static_cast<size_t>(e.first)] && in[static_cast<size_t>(e.second)]) out.push_back(e);
  return out;
}

}  // namespace detail

struct ComponentResult {
  Graph graph;                    // relabeled 0..k-1
  std::vector<int> original_ids;  // original_ids[new] = old vertex id
};

inline ComponentResult largest_component(const Graph& g) {
  std::vector<int> verts = detail::largest_component_vertices(g);
  if (verts.empty()) return {Graph::from_canonical(0, {}), {}};
  std::vector<int> remap(static_cast<size_t>(g.vertex_count()), -1);
  for (size_t i = 0; i < verts.size(); ++i) remap[static_cast<size_t>(verts[i])] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    int a = remap[static_cast<size_t>(e.first)], b = remap[static_cast<size_t>(e.second)];
    if (a != -1 && b != -1) edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges.begin(), edges.end());
  return {Graph::from_canonical(static_cast<int>(verts.size()), std::move(edges)), std::move(verts)};
}

struct GirthResult {
  enum class Kind { finite, exceeds_cap, acyclic };
  Kind kind = Kind::acyclic;
  int value = 0;  // girth for finite, the cap otherwise

  bool is_finite() const { return kind == Kind::finite; }
  // True when the girth is known to be at least `g` (or there is no cycle).
  bool at_least(int g) const { return kind != Kind::finite || value >= g; }
};

inline bool is_acyclic(const Graph& g) {
  // Union-find: any edge joining an already-joined pair closes a cycle.
  std::vector<int> parent(static_cast<size_t>(g.vertex_count()));
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (const Edge& e : g.edges()) {
    int a = find(e.first), b = find(e.second);
    if (a == b) return false;
    parent[static_cast<size_t>(a)] = b;
  }
  return true;
}

// Exact girth when it is at most `cap`, via truncated BFS from every vertex.
// A candidate dist[x]+dist[y]+1 never undershoots the girth, and a root on a
// shortest cycle realizes it exactly, so the minimum over roots is the girth.
inline GirthResult girth(const Graph& g, int cap) {
  if (cap < 3) throw validation_error("girth cap must be at least 3");
  const int n = g.vertex_count();
  int best = cap + 1;
  std::vector<int> dist(static_cast<size_t>(n), -1);
  std::vector<int> parent(static_cast<size_t>(n), -1);
  std::vector<int> queue;
  std::vector<int> touched;
  for (int root = 0; root < n && best > 3; ++root) {
    const int depth_limit = (best - 1) / 2;  // deeper vertices cannot improve `best`
    queue.assign(1, root);
    touched.assign(1, root);
    dist[static_cast<size_t>(root)] = 0;
    parent[static_cast<size_t>(root)] = -1;
    size_t head = 0;
    while (head < queue.size()) {
      int x = queue[head++];
      int dx = dist[static_cast<size_t>(x)];
      if (dx >= depth_limit && dx * 2 + 1 > best) break;
      for (int y : g.neighbors(x)) {
        if (y == parent[static_cast<size_t>(x)]) continue;
        if (dist[static_cast<size_t>(y)] == -1) {
          if (dx + 1 <= depth_limit) {
            dist[static_cast<size_t>(y)] = dx + 1;
            parent[static_cast<size_t>(y)] = x;
            queue.push_back(y);
            touched.push_back(y);
          }
        } else {
          int cand = dx + dist[static_cast<size_t>(y)] + 1;
          if (cand < best) best = cand;
        }
      }
    }
    for (int t : touched) {
      dist[static_cast<size_t>(t)] = -1;
      parent[static_cast<size_t>(t)] = -1;
    }
  }
  if (best <= cap) return {GirthResult::Kind::finite, best};
  if (is_acyclic(g)) return {GirthResult::Kind::acyclic, 0};
  return {GirthResult::Kind::exceeds_cap, cap};
}

namespace detail {

// Mutable adjacency used only by the cycle-deletion loop.
struct EditableGraph {
  std::vector<std::vector<int>> adj;

  explicit EditableGraph(const Graph& g) : adj(static_cast<size_t>(g.vertex_count())) {
    for (int v = 0; v < g.vertex_count(); ++v) {
      auto nb = g.neighbors(v);
      adj[static_cast<size_t>(v)].assign(nb.begin(), nb.end());
    }
  }
  void remove_edge(int u, int v) {
    auto& a = adj[static_cast<size_t>(u)];
    a.erase(std::find(a.begin(), a.end(), v));
    auto& b = adj[static_cast<size_t>(v)];
    b.erase(std::find(b.begin(), b.end(), u));
  }
};

// First cycle of length <= ell found by a truncated BFS scan over ascending
// roots starting at *start_root; returns its edge list and rewinds
// *start_root to the discovering root. Roots already scanned stay clean after
// a deletion (removing an edge never creates a cycle), so the caller may
// resume instead of rescanning. The parent walk to the closing edge's LCA
// keeps the cycle simple even if the two BFS branches met off-root.
inline bool find_short_cycle(const EditableGraph& eg, int ell, std::vector<Edge>& cycle,
                             int* start_root) {
  const int n = static_cast<int>(eg.adj.size());
  std::vector<int> dist(static_cast<size_t>(n), -1);
  std::vector<int> parent(static_cast<size_t>(n), -1);
  std::vector<int> queue, touched;
  const int depth_limit = (ell - 1) / 2 + 1;
  for (int root = *start_root; root < n; ++root) {
    if (eg.adj[static_cast<size_t>(root)].size() < 2) continue;
    queue.assign(1, root);
    touched.assign(1, root);
    dist[static_cast<size_t>(root)] = 0;
    parent[static_cast<size_t>(root)] = -1;
    size_t head = 0;
    int cx = -1, cy = -1;
    while (head < queue.size() && cx == -1) {
      int x = queue[head++];
      int dx = dist[static_cast<size_t>(x)];
      for (int y : eg.adj[static_cast<size_t>(x)]) {
        if (y == parent[static_cast<size_t>(x)]) continue;
        if (dist[static_cast<size_t>(y)] == -1) {
          if (dx + 1 <= depth_limit) {
            dist[static_cast<size_t>(y)] = dx + 1;
            parent[static_cast<size_t>(y)] = x;
            queue.push_back(y);
            touched.push_back(y);
          }
        } else if (dx + dist[static_cast<size_t>(y)] + 1 <= ell) {
          cx = x;
          cy = y;
          break;
        }
      }
    }
    if (cx != -1) {
      *start_root = root;
      // Walk both endpoints up to their LCA.
      std::vector<int> px{cx}, py{cy};
      while (px.back() != -1) {
        int p = parent[static_cast<size_t>(px.back())];
        if (p == -1) break;
        px.push_back(p);
      }
      std::vector<char> on_px(static_cast<size_t>(n), 0);
      for (int v : px) on_px[static_cast<size_t>(v)] = 1;
      while (!on_px[static_cast<size_t>(py.back())]) py.push_back(parent[static_cast<size_t>(py.back())]);
      int lca = py.back();
      cycle.clear();
      for (size_t i = 0; px[i] != lca; ++i) cycle.emplace_back(px[i], px[i + 1]);
      for (size_t i = 0; i + 1 < py.size(); ++i) cycle.emplace_back(py[i], py[i + 1]);
      cycle.emplace_back(cx, cy);
      for (auto& e : cycle)
        if (e.first > e.second) std::swap(e.first, e.second);
      for (int t : touched) {
        dist[static_cast<size_t>(t)] = -1;
        parent[static_cast<size_t>(t)] = -1;
      }
      return true;
    }
    for (int t : touched) {
      dist[static_cast<size_t>(t)] = -1;
      parent[static_cast<size_t>(t)] = -1;
    }
  }
  return false;
}

}  // namespace detail

struct DeletionResult {
  Graph graph;
  std::vector<Edge> deleted;  // in deletion order
};

// Repeatedly finds any cycle of length <= ell and deletes its
// lexicographically smallest edge, until the girth exceeds ell.
inline DeletionResult short_cycle_edge_deletion(const Graph& g, int ell) {
  if (ell < 3) throw validation_error("cycle horizon must be at least 3");
  detail::EditableGraph eg(g);
  std::vector<Edge> deleted;
  std::vector<Edge> cycle;
  int resume_root = 0;
  while (detail::find_short_cycle(eg, ell, cycle, &resume_root)) {
    Edge victim = *std::min_element(cycle.begin(), cycle.end());
    eg.remove_edge(victim.first, victim.second);
    deleted.push_back(victim);
  }
  std::vector<Edge> remaining;
  remaining.reserve(g.edges().size() - deleted.size());
  std::vector<Edge> sorted_deleted = deleted;
  std::sort(sorted_deleted.begin(), sorted_deleted.end());
  for (const Edge& e : g.edges())
    if (!std::binary_search(sorted_deleted.begin(), sorted_deleted.end(), e)) remaining.push_back(e);
  return {Graph::from_canonical(g.vertex_count(), std::move(remaining)), std::move(deleted)};
}

// Exact number of distinct cycles of length <= ell, each counted once.
// Enumerates simple paths rooted at each cycle's minimum vertex; a path
// extension costs one unit of budget (guard for dense inputs).
inline long long count_short_cycles(const Graph& g, int ell, long long budget = 50'000'000) {
  if (ell < 3) throw validation_error("cycle horizon must be at least 3");
  long long count = 0;
  std::vector<char> on_path(static_cast<size_t>(g.vertex_count()), 0);
  std::vector<int> path;
  long long remaining = budget;

  struct Hop {
    int vertex;
    size_t next;
  };
  std::vector<Hop> stack;
  for (int root = 0; root < g.vertex_count(); ++root) {
    path.assign(1, root);
    on_path[static_cast<size_t>(root)] = 1;
    stack.assign(1, {root, 0});
    while (!stack.empty()) {
      Hop& h = stack.back();
      auto nb = g.neighbors(h.vertex);
      if (h.next >= nb.size()) {
        on_path[static_cast<size_t>(h.vertex)] = 0;
        path.pop_back();
        stack.pop_back();
        continue;
      }
      int w = nb[h.next++];
      if (--remaining <= 0)
        throw budget_error("cycle enumeration budget exceeded (" + std::to_string(budget) +
                           " path extensions)");
      int depth = static_cast<int>(path.size()) - 1;  // edges on current path
      if (w == root && depth >= 2 && path[1] < h.vertex) {
        ++count;  // closing edge; path[1] < last enforces one orientation
        continue;
      }
      if (w > root && !on_path[static_cast<size_t>(w)] && depth + 1 <= ell - 1) {
        path.push_back(w);
        on_path[static_cast<size_t>(w)] = 1;
        stack.push_back({w, 0});
      }
    }
    on_path[static_cast<size_t>(root)] = 0;
  }
  return count;
}

// --- Edge-list text format -------------------------------------------------
// Line 1: "n m"; then m lines "u v" with 0 <= u < v < n. '#' starts a comment.

inline Graph read_edge_list(std::istream& in, const std::string& context = "<stream>") {
  std::string line;
  long long n = -1, m = -1;
  std::vector<Edge> edges;
  long long line_no = 0;
  auto fail = [&](const std::string& what) {
    throw io_error(context + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n >> m)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
          n = -1;
          continue;  // leading blank/comment line
        }
        fail("expected header 'n m'");
      }
      if (n < 0 || m < 0) fail("header counts must be non-negative");
      continue;
    }
    long long u, v;
    if (!(ls >> u >> v)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      fail("expected edge line 'u v'");
    }
    if (u >= v) fail("edges must satisfy u < v, got " + std::to_string(u) + " " + std::to_string(v));
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  if (n < 0) throw io_error(context + ": empty edge-list input");
  if (static_cast<long long>(edges.size()) != m)
    throw io_error(context + ": header declares " + std::to_string(m) + " edges, found " +
                   std::to_string(edges.size()));
  if (n > (1LL << 31) - 1) throw io_error(context + ": vertex count too large");
  return build_graph(static_cast<int>(n), edges);
}

inline Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open graph file: " + path);
  return read_edge_list(in, path);
}

inline void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.first << ' ' << e.second << '\n';
}

inline void write_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open output file: " + path);
  write_edge_list(g, out);
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace percoplanar

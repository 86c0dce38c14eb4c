#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "percoplanar/errors.hpp"
#include "percoplanar/graph.hpp"
#include "percoplanar/rng.hpp"

namespace percoplanar {

enum class Family {
  complete,
  complete_bipartite,
  hypercube,
  grid,
  random_regular,
  disjoint_cliques,
  from_file,
};

inline const char* family_name(Family f) {
  switch (f) {
    case Family::complete: return "complete";
    case Family::complete_bipartite: return "complete_bipartite";
    case Family::hypercube: return "hypercube";
    case Family::grid: return "grid";
    case Family::random_regular: return "random_regular";
    case Family::disjoint_cliques: return "disjoint_cliques";
    case Family::from_file: return "from_file";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  if (s == "complete") return Family::complete;
  if (s == "complete_bipartite") return Family::complete_bipartite;
  if (s == "hypercube") return Family::hypercube;
  if (s == "grid") return Family::grid;
  if (s == "random_regular") return Family::random_regular;
  if (s == "disjoint_cliques") return Family::disjoint_cliques;
  if (s == "from_file") return Family::from_file;
  throw validation_error("unknown family: " + s);
}

// Family tag plus the size parameters that tag needs.
struct FamilySpec {
  Family family = Family::complete;
  long long n = 0;      // complete
  long long a = 0;      // complete_bipartite
  long long b = 0;
  long long dim = 0;    // hypercube
  long long rows = 0;   // grid
  long long cols = 0;
  long long r = 0;      // random_regular / disjoint_cliques clique degree
  long long copies = 0; // disjoint_cliques
  std::string path;     // from_file

  static FamilySpec complete(long long n) { return {Family::complete, n, 0, 0, 0, 0, 0, 0, 0, {}}; }
  static FamilySpec complete_bipartite(long long a, long long b) {
    FamilySpec s; s.family = Family::complete_bipartite; s.a = a; s.b = b; return s;
  }
  static FamilySpec hypercube(long long d) { FamilySpec s; s.family = Family::hypercube; s.dim = d; return s; }
  static FamilySpec grid(long long rows, long long cols) {
    FamilySpec s; s.family = Family::grid; s.rows = rows; s.cols = cols; return s;
  }
  static FamilySpec random_regular(long long n, long long r) {
    FamilySpec s; s.family = Family::random_regular; s.n = n; s.r = r; return s;
  }
  static FamilySpec disjoint_cliques(long long copies, long long r) {
    FamilySpec s; s.family = Family::disjoint_cliques; s.copies = copies; s.r = r; return s;
  }
  static FamilySpec from_file(std::string path) {
    FamilySpec s; s.family = Family::from_file; s.path = std::move(path); return s;
  }
};

namespace detail {

// Materialization cap; families near desk scale stay well below it.
inline constexpr long long kMaxEdges = 60'000'000;

inline void check_edge_budget(long long m, const std::string& what) {
  if (m > kMaxEdges)
    throw validation_error(what + " would materialize " + std::to_string(m) +
                           " edges (cap " + std::to_string(kMaxEdges) + ")");
}

inline Graph make_complete(long long n) {
  if (n < 1) throw validation_error("complete: n must be >= 1");
  check_edge_budget(n * (n - 1) / 2, "complete(" + std::to_string(n) + ")");
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(n * (n - 1) / 2));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_canonical(static_cast<int>(n), std::move(edges));
}

inline Graph make_complete_bipartite(long long a, long long b) {
  if (a < 1 || b < 1) throw validation_error("complete_bipartite: sides must be >= 1");
  check_edge_budget(a * b, "complete_bipartite");
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(a * b));
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) edges.emplace_back(u, static_cast<int>(a) + v);
  return Graph::from_canonical(static_cast<int>(a + b), std::move(edges));
}

// Vertices are binary-coded; edge between words differing in one bit.
inline Graph make_hypercube(long long d) {
  if (d < 1 || d > 24) throw validation_error("hypercube: dimension must be in [1, 24]");
  long long n = 1LL << d;
  check_edge_budget(d * n / 2, "hypercube");
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(d * n / 2));
  for (long long x = 0; x < n; ++x)
    for (long long k = 0; k < d; ++k) {
      long long y = x ^ (1LL << k);
      if (x < y) edges.emplace_back(static_cast<int>(x), static_cast<int>(y));
    }
  std::sort(edges.begin(), edges.end());
  return Graph::from_canonical(static_cast<int>(n), std::move(edges));
}

// Row-major planar grid.
inline Graph make_grid(long long rows, long long cols) {
  if (rows < 1 || cols < 1) throw validation_error("grid: sides must be >= 1");
  check_edge_budget(2 * rows * cols, "grid");
  std::vector<Edge> edges;
  auto id = [cols](long long r, long long c) { return static_cast<int>(r * cols + c); };
  for (long long r = 0; r < rows; ++r)
    for (long long c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  std::sort(edges.begin(), edges.end());
  return Graph::from_canonical(static_cast<int>(rows * cols), std::move(edges));
}

// Consecutive blocks of r+1 vertices, each a clique.
inline Graph make_disjoint_cliques(long long copies, long long r) {
  if (copies < 1 || r < 1) throw validation_error("disjoint_cliques: parameters must be >= 1");
  long long block = r + 1;
  check_edge_budget(copies * block * (block - 1) / 2, "disjoint_cliques");
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(copies * block * (block - 1) / 2));
  for (long long c = 0; c < copies; ++c) {
    int base = static_cast<int>(c * block);
    for (int u = 0; u < block; ++u)
      for (int v = u + 1; v < block; ++v) edges.emplace_back(base + u, base + v);
  }
  return Graph::from_canonical(static_cast<int>(copies * block), std::move(edges));
}

// Pairing-model sampler with per-edge retry and full restart when stuck.
// A full restart on any collision would succeed with probability shrinking
// like exp(-r^2/4), so collisions are retried locally instead; the sampler
// stays deterministic in (n, r, seed).
inline Graph make_random_regular(long long n, long long r, std::uint64_t seed) {
  if (n < 1 || r < 1) throw validation_error("random_regular: parameters must be >= 1");
  if (r >= n) throw validation_error("random_regular: need r < n");
  if ((n * r) % 2 != 0) throw validation_error("random_regular: n*r must be even");
  check_edge_budget(n * r / 2, "random_regular");
  rng::SequentialStream rs(rng::substream(seed, 0x7265670ULL));
  const int restart_budget = 10'000;
  for (int attempt = 0; attempt < restart_budget; ++attempt) {
    std::vector<int> stubs;
    stubs.reserve(static_cast<size_t>(n * r));
    for (int v = 0; v < n; ++v)
      for (int k = 0; k < r; ++k) stubs.push_back(v);
    std::unordered_set<std::uint64_t> used;
    used.reserve(static_cast<size_t>(n * r));
    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(n * r / 2));
    bool stuck = false;
    while (!stubs.empty()) {
      int fails = 0;
      int u = -1, v = -1;
      size_t iu = 0, iv = 0;
      for (;;) {
        iu = static_cast<size_t>(rs.next_below(stubs.size()));
        iv = static_cast<size_t>(rs.next_below(stubs.size() - 1));
        if (iv >= iu) ++iv;
        u = stubs[iu];
        v = stubs[iv];
        if (u != v && !used.count(rng::edge_key(u, v))) break;
        if (++fails > 200) { stuck = true; break; }
      }
      if (stuck) break;
      used.insert(rng::edge_key(u, v));
      edges.emplace_back(std::min(u, v), std::max(u, v));
      if (iu < iv) std::swap(iu, iv);
      stubs[iu] = stubs.back(); stubs.pop_back();
      stubs[iv] = stubs.back(); stubs.pop_back();
    }
    if (!stuck) {
      std::sort(edges.begin(), edges.end());
      return Graph::from_canonical(static_cast<int>(n), std::move(edges));
    }
  }
  throw generation_error("random_regular(" + std::to_string(n) + ", " + std::to_string(r) +
                         "): restart budget exhausted");
}

}  // namespace detail

// Deterministic in (spec, seed): identical calls give identical edge lists.
inline Graph generate(const FamilySpec& spec, std::uint64_t seed) {
  switch (spec.family) {
    case Family::complete: return detail::make_complete(spec.n);
    case Family::complete_bipartite: return detail::make_complete_bipartite(spec.a, spec.b);
    case Family::hypercube: return detail::make_hypercube(spec.dim);
    case Family::grid: return detail::make_grid(spec.rows, spec.cols);
    case Family::random_regular: return detail::make_random_regular(spec.n, spec.r, seed);
    case Family::disjoint_cliques: return detail::make_disjoint_cliques(spec.copies, spec.r);
    case Family::from_file: return read_edge_list_file(spec.path);
  }
  throw validation_error("unknown family tag");
}

inline bool validate_min_degree(const Graph& g, int r) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) < r) return false;
  return true;
}

}  // namespace percoplanar

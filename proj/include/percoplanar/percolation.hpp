#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "percoplanar/errors.hpp"
#include "percoplanar/graph.hpp"
#include "percoplanar/rng.hpp"

namespace percoplanar {

struct SampleParams {
  double p = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

// Assigns each edge of a base graph a fixed uniform variate derived from
// (seed, stream_id, edge). Queries at increasing p are nested subgraphs,
// which makes per-seed threshold sweeps exactly monotone.
class CoupledSampler {
 public:
  CoupledSampler(const Graph& g, std::uint64_t seed, std::uint64_t stream_id)
      : g_(&g), base_(rng::substream(seed, stream_id)) {}

  double variate(int u, int v) const { return rng::edge_unit(base_, u, v); }
  bool retained(int u, int v, double p) const { return variate(u, v) < p; }

  Graph query(double p) const {
    if (p < 0.0 || p > 1.0) throw validation_error("retention probability must be in [0,1]");
    std::vector<Edge> kept;
    for (const Edge& e : g_->edges())
      if (variate(e.first, e.second) < p) kept.push_back(e);
    return Graph::from_canonical(g_->vertex_count(), std::move(kept));
  }

  const Graph& base() const { return *g_; }
  std::uint64_t stream_base() const { return base_; }

 private:
  const Graph* g_;
  std::uint64_t base_;
};

inline CoupledSampler coupled_sampler(const Graph& g, std::uint64_t seed, std::uint64_t stream_id) {
  return CoupledSampler(g, seed, stream_id);
}

// Spanning subgraph keeping each edge independently with probability p.
inline Graph percolate(const Graph& g, const SampleParams& params) {
  return CoupledSampler(g, params.seed, params.stream_id).query(params.p);
}

// Solves (1-p1)(1-p2) = 1-p for p2.
inline double split_probability(double p, double p1) {
  if (p < 0.0 || p >= 1.0) throw validation_error("split_probability: need 0 <= p < 1");
  if (p1 < 0.0 || p1 > p) throw validation_error("split_probability: need 0 <= p1 <= p");
  return 1.0 - (1.0 - p) / (1.0 - p1);
}

// Stream ids of the two exposure rounds used throughout the witness pipeline.
inline constexpr std::uint64_t kRoundOneStream = 1;
inline constexpr std::uint64_t kRoundTwoStream = 2;

// Two independent Bernoulli rounds; the union is distributed as a single
// round at p = 1-(1-p1)(1-p2).
inline std::pair<Graph, Graph> two_round_sample(const Graph& g, double p1, double p2,
                                                std::uint64_t seed) {
  Graph g1 = CoupledSampler(g, seed, kRoundOneStream).query(p1);
  Graph g2 = CoupledSampler(g, seed, kRoundTwoStream).query(p2);
  return {std::move(g1), std::move(g2)};
}

// Union of the two rounds, materialized directly from the edge variates.
inline Graph two_round_union(const Graph& g, double p1, double p2, std::uint64_t seed) {
  std::uint64_t b1 = rng::substream(seed, kRoundOneStream);
  std::uint64_t b2 = rng::substream(seed, kRoundTwoStream);
  std::vector<Edge> kept;
  for (const Edge& e : g.edges())
    if (rng::edge_unit(b1, e.first, e.second) < p1 || rng::edge_unit(b2, e.first, e.second) < p2)
      kept.push_back(e);
  return Graph::from_canonical(g.vertex_count(), std::move(kept));
}

// G(n,p) sampler that never materializes K_n: walks the C(n,2) pair sequence
// with geometric jumps, emitting only retained pairs. Distributionally equal
// to percolate(K_n, .) and deterministic in (n, p, seed, stream).
inline Graph sample_gnp(long long n, double p, std::uint64_t seed, std::uint64_t stream_id) {
  if (n < 0) throw validation_error("sample_gnp: n must be non-negative");
  if (p < 0.0 || p > 1.0) throw validation_error("sample_gnp: p must be in [0,1]");
  std::vector<Edge> edges;
  if (n >= 2 && p > 0.0) {
    const long long total = n * (n - 1) / 2;
    if (p >= 1.0) {
      if (total > 60'000'000)
        throw validation_error("sample_gnp at p=1 would materialize " + std::to_string(total) +
                               " edges");
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    } else {
      rng::SequentialStream rs(rng::substream(seed, stream_id));
      const double log_q = std::log1p(-p);
      long long idx = -1;
      long long row = 0;                 // current u
      long long row_start = 0;           // pair index of (row, row+1)
      long long row_len = n - 1;
      for (;;) {
        double u01 = rs.next_unit_positive();
        double jump = std::floor(std::log(u01) / log_q);
        idx += 1 + static_cast<long long>(jump);
        if (idx >= total) break;
        while (idx >= row_start + row_len) {
          row_start += row_len;
          ++row;
          row_len = n - 1 - row;
        }
        long long col = row + 1 + (idx - row_start);
        edges.emplace_back(static_cast<int>(row), static_cast<int>(col));
      }
    }
  }
  return Graph::from_canonical(static_cast<int>(n), std::move(edges));
}

}  // namespace percoplanar

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "percoplanar/generators.hpp"
#include "percoplanar/percolation.hpp"
#include "support/test_oracles.hpp"

using namespace percoplanar;

namespace {

// Edge-subset index of a sample of `base` (base.m <= 20).
std::uint32_t subgraph_mask(const Graph& base, const Graph& sample) {
  std::uint32_t mask = 0;
  const auto& edges = base.edges();
  for (size_t i = 0; i < edges.size(); ++i)
    if (sample.has_edge(edges[i].first, edges[i].second)) mask |= (1u << i);
  return mask;
}

}  // namespace

TEST_CASE("percolate endpoints") {
  Graph k4 = test_oracles::complete_graph(4);
  CHECK(percolate(k4, {0.0, 9, 0}).edge_count() == 0);
  CHECK(percolate(k4, {0.0, 9, 0}).vertex_count() == 4);
  CHECK(percolate(k4, {1.0, 9, 0}) == k4);
}

TEST_CASE("percolate mean retained edges is binomial") {
  Graph k4 = test_oracles::complete_graph(4);
  const int trials = 10000;
  long long total = 0;
  for (int t = 0; t < trials; ++t)
    total += percolate(k4, {0.5, 2024, static_cast<std::uint64_t>(t)}).edge_count();
  double mean = double(total) / trials;
  CHECK(std::fabs(mean - 3.0) < 0.05);  // 3 sigma of the empirical mean is ~0.037
}

TEST_CASE("determinism across invocations") {
  Graph g = generate(FamilySpec::random_regular(60, 4), 5);
  Graph a = percolate(g, {0.4, 77, 3});
  Graph b = percolate(g, {0.4, 77, 3});
  CHECK(a == b);
  CHECK_FALSE(a == percolate(g, {0.4, 77, 4}));
  CHECK_FALSE(a == percolate(g, {0.4, 78, 3}));
}

TEST_CASE("split_probability") {
  CHECK_THAT(split_probability(0.1, 0.06), Catch::Matchers::WithinAbs(0.0425531914893617, 1e-12));
  CHECK(split_probability(0.3, 0.3) == 0.0);
  CHECK_THROWS_AS(split_probability(0.5, 0.6), validation_error);
  CHECK_THROWS_AS(split_probability(1.0, 0.5), validation_error);
  // identity: (1-p1)(1-p2) = 1-p
  for (double p : {0.05, 0.3, 0.77}) {
    double p1 = p / 2;
    double p2 = split_probability(p, p1);
    CHECK_THAT((1 - p1) * (1 - p2), Catch::Matchers::WithinAbs(1 - p, 1e-12));
  }
}

TEST_CASE("two_round_sample endpoints") {
  Graph g = generate(FamilySpec::grid(2, 3), 0);
  auto [a0, b0] = two_round_sample(g, 0.0, 0.0, 4);
  CHECK(a0.edge_count() == 0);
  CHECK(b0.edge_count() == 0);
  auto [a1, b1] = two_round_sample(g, 1.0, 0.0, 4);
  CHECK(a1 == g);
  CHECK(b1.edge_count() == 0);
}

TEST_CASE("single-round subgraph frequencies pass chi-square against the product law") {
  // 5-edge graph: path on 6 vertices.
  Graph path = build_graph(6, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  const double p = 0.37;
  const int trials = 100000;
  std::vector<long long> observed(32, 0);
  for (int t = 0; t < trials; ++t) {
    Graph s = percolate(path, {p, 1234, static_cast<std::uint64_t>(t)});
    ++observed[subgraph_mask(path, s)];
  }
  std::vector<double> probs = test_oracles::subgraph_distribution(5, p);
  double stat = test_oracles::chi_square(observed, probs, trials);
  CHECK(stat < test_oracles::chi2_crit_999(31));
}

TEST_CASE("two-round union matches a single round at the combined probability") {
  // Fixed 4-edge path; p1 = p2 = 0.3 so the union is a single round at 0.51.
  Graph path = build_graph(5, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  const double p1 = 0.3, p2 = 0.3;
  const double p_union = 1.0 - (1.0 - p1) * (1.0 - p2);
  const int trials = 100000;
  std::vector<long long> observed(16, 0);
  for (int t = 0; t < trials; ++t) {
    Graph u = two_round_union(path, p1, p2, rng::derive(5150, 0, static_cast<std::uint64_t>(t)));
    ++observed[subgraph_mask(path, u)];
  }
  std::vector<double> probs = test_oracles::subgraph_distribution(4, p_union);
  double stat = test_oracles::chi_square(observed, probs, trials);
  CHECK(stat < test_oracles::chi2_crit_999(15));

  // union assembled from the two samples coincides with two_round_union
  Graph u = two_round_union(path, p1, p2, 99);
  auto [g1, g2] = two_round_sample(path, p1, p2, 99);
  for (const Edge& e : path.edges()) {
    bool in_union = u.has_edge(e.first, e.second);
    bool in_either = g1.has_edge(e.first, e.second) || g2.has_edge(e.first, e.second);
    CHECK(in_union == in_either);
  }
}

TEST_CASE("coupled sampler: endpoints, nesting, distribution") {
  Graph g = generate(FamilySpec::random_regular(80, 5), 11);
  CoupledSampler sampler(g, 321, 6);
  CHECK(sampler.query(0.0).edge_count() == 0);
  CHECK(sampler.query(1.0) == g);

  SECTION("monotone nesting over 100 random probability pairs") {
    rng::SequentialStream rs(rng::substream(7, 7));
    for (int i = 0; i < 100; ++i) {
      double a = rs.next_unit(), b = rs.next_unit();
      double lo = std::min(a, b), hi = std::max(a, b);
      Graph glo = sampler.query(lo), ghi = sampler.query(hi);
      for (const Edge& e : glo.edges()) CHECK(ghi.has_edge(e.first, e.second));
    }
  }
  SECTION("query(p) is distributed as percolate at p") {
    CHECK(sampler.query(0.5) == percolate(g, {0.5, 321, 6}));
  }
}

TEST_CASE("sample_gnp matches percolate(K_n) distributionally and is deterministic") {
  CHECK(sample_gnp(100, 0.0, 1, 0).edge_count() == 0);
  CHECK(sample_gnp(50, 1.0, 1, 0).edge_count() == 50 * 49 / 2);
  CHECK(sample_gnp(200, 0.1, 9, 4) == sample_gnp(200, 0.1, 9, 4));

  // Mean edge count over seeds: Binomial(C(60,2), 0.1).
  const int trials = 4000;
  const double p = 0.1;
  long long total = 0;
  for (int t = 0; t < trials; ++t)
    total += sample_gnp(60, p, 31, static_cast<std::uint64_t>(t)).edge_count();
  double mean = double(total) / trials;
  double expect = 1770 * p;
  double sigma_mean = std::sqrt(1770 * p * (1 - p) / trials);
  CHECK(std::fabs(mean - expect) < 4 * sigma_mean);

  // Per-edge inclusion is uniform across positions: first vs last pair.
  int first = 0, last = 0;
  for (int t = 0; t < trials; ++t) {
    Graph s = sample_gnp(12, 0.5, 77, static_cast<std::uint64_t>(t));
    if (s.has_edge(0, 1)) ++first;
    if (s.has_edge(10, 11)) ++last;
  }
  CHECK(std::fabs(first / double(trials) - 0.5) < 0.03);
  CHECK(std::fabs(last / double(trials) - 0.5) < 0.03);
}

// Copyright 2026 The hamwedge Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "hamwedge/graph.hpp"
#include "oracles.hpp"

using namespace hamwedge;

namespace {

const char* kFourNode = "4 7\n1 2\n2 3\n3 2\n4 3\n2 1\n1 3\n2 4";

// Arc subsets of G' forming one simple undirected cycle, by brute force.
std::size_t brute_force_cycle_count(const SplitGraph& g) {
  const auto arcs = g.arcs();
  const std::size_t m = arcs.size();
  std::size_t count = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    std::map<int, int> degree;
    std::vector<std::pair<int, int>> edges;
    for (std::size_t k = 0; k < m; ++k) {
      if ((mask >> k) & 1U) {
        ++degree[arcs[k].tail()];
        ++degree[arcs[k].head()];
        edges.emplace_back(arcs[k].tail(), arcs[k].head());
      }
    }
    bool two = true;
    for (const auto& [node, d] : degree) two = two && d == 2;
    if (!two) continue;
    // connected?
    std::set<int> seen{edges.front().first};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& [a, b] : edges) {
        if (seen.count(a) != seen.count(b)) {
          seen.insert(a);
          seen.insert(b);
          grew = true;
        }
      }
    }
    if (seen.size() == degree.size()) ++count;
  }
  return count;
}

// Product of multipliers along the cycle, dividing for backward arcs.
RatFunc direct_multiplier(const OrientedCycle& c) {
  RatFunc mu(1);
  const RatFunc beta(beta_power(1));
  for (const auto& a : c.arcs()) {
    if (a.arc.kind != SplitArcKind::Transit) continue;
    mu = a.forward ? mu * beta : mu / beta;
  }
  return mu;
}

SplitSubgraph balanced_tree_subgraph() {
  using A = SplitArc;
  return {6,
          {A::transit(1, 2), A::transit(3, 2), A::transit(4, 3), A::transit(4, 5), A::transit(6, 1), A::transit(4, 1),
           A::internal(1), A::internal(2), A::internal(5), A::internal(3), A::transit(3, 4), A::transit(5, 6)}};
}

SplitSubgraph good_forest_subgraph() {
  using A = SplitArc;
  return {6,
          {A::transit(3, 2), A::transit(4, 3), A::transit(5, 6), A::transit(1, 5), A::transit(6, 1), A::transit(2, 4),
           A::transit(1, 6), A::internal(2), A::internal(3), A::internal(4), A::internal(1), A::internal(6)}};
}

}  // namespace

TEST_CASE("parse the four-node example") {
  const auto p = parse_digraph(kFourNode);
  CHECK(p.warnings.empty());
  CHECK(p.graph.node_count() == 4);
  CHECK(p.graph.arc_count() == 7);
  CHECK(p.graph.has_arc(4, 3));
  CHECK_FALSE(p.graph.has_arc(3, 4));
  CHECK(parse_digraph(serialize_digraph(p.graph)).graph == p.graph);
}

TEST_CASE("graph input errors") {
  CHECK_THROWS_AS(parse_digraph("2 1\n1 1"), GraphError);
  CHECK_THROWS_AS(parse_digraph("3 1\n1 4"), GraphError);
  CHECK_THROWS_AS(parse_digraph("3 2\n1 2"), GraphError);
  CHECK_THROWS_AS(parse_digraph("3 1\n1 x"), GraphError);
  CHECK_THROWS_AS(parse_digraph(""), GraphError);
  const auto dup = parse_digraph("# comment\n3 3\n1 2\n1 2\n2 3\n");
  CHECK(dup.graph.arc_count() == 2);
  CHECK(dup.warnings.size() == 1);
}

TEST_CASE("random graphs are reproducible and contain a Hamilton cycle") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Digraph g = random_graph(5, Rational(1, 3), seed);
    CHECK(g == random_graph(5, Rational(1, 3), seed));
    for (int i = 1; i <= 5; ++i) {
      CHECK_FALSE(g.out_neighbors(i).empty());
      CHECK_FALSE(g.in_neighbors(i).empty());
    }
    // p = 0 leaves only the planted cycle.
    const Digraph c = random_graph(6, Rational(0), seed);
    CHECK(c.arc_count() == 6);
    CHECK(enumerate_cycle_covers(c).size() == 1);
    CHECK(cycles_of(enumerate_cycle_covers(c).front().pi).size() == 1);
  }
  CHECK(random_graph(7, Rational(1), 3) == complete_digraph(7));
  CHECK_THROWS(random_graph(4, Rational(3, 2), 1));
}

TEST_CASE("random graph arc count matches the analytic expectation") {
  const int n = 10, samples = 1000;
  const Rational p(1, 2);
  double sum = 0;
  for (int k = 0; k < samples; ++k) sum += static_cast<double>(random_graph(n, p, 1000 + k).arc_count());
  const double mean = sum / samples;
  // Cycle arcs always present; the other n(n-1) - n pairs are independent Bernoulli(p).
  const double pd = p.get_d();
  const double expect = n * (n - 1) * pd + n * (1 - pd);
  const double sigma = std::sqrt((n * (n - 1) - n) * pd * (1 - pd) / samples);
  CHECK(std::abs(mean - expect) <= 3 * sigma);
}

TEST_CASE("split graph shape") {
  const SplitGraph s = split(parse_digraph(kFourNode).graph);
  CHECK(s.node_count() == 8);
  CHECK(s.transit_arcs().size() == 7);
  CHECK(s.internal_arcs().size() == 3);
  const SplitGraph t = split(Digraph(2, {{1, 2}, {2, 1}}));
  CHECK(t.node_count() == 4);
  CHECK(t.transit_arcs().size() == 2);
  REQUIRE(t.internal_arcs().size() == 1);
  CHECK(t.internal_arcs()[0] == SplitArc::internal(2));
  CHECK(t.multiplier(SplitArc::transit(1, 2)) == beta_power(1));
  CHECK(t.multiplier(SplitArc::internal(2)) == DeltaPoly(1));
  CHECK(t.supply(w_node(1)) == DeltaPoly(1));
  CHECK(t.supply(w_node(2)) == beta_power(1));
  CHECK(t.supply(v_node(1)) == -beta_power(1));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Digraph g = random_graph(6, Rational(1, 2), seed);
    const SplitGraph sg = split(g);
    CHECK(sg.transit_arcs().size() + sg.internal_arcs().size() == g.arc_count() + 5);
  }
}

TEST_CASE("cycle multipliers and balance") {
  // w1 -> v2 -> w2 -> v3 -> w3 -> v1 ... closed by v1 -> w1 is not an arc of G'
  // (node 1 has no internal arc), so use a directed cycle through nodes 2 and 3.
  const Digraph g(3, {{2, 3}, {3, 2}, {1, 2}, {2, 1}});
  using A = SplitArc;
  const OrientedCycle directed({{A::transit(2, 3), true}, {A::internal(3), true}, {A::transit(3, 2), true},
                                {A::internal(2), true}});
  CHECK(cycle_multiplier(directed) == RatFunc(beta_power(2)));
  CHECK(direct_multiplier(directed) == cycle_multiplier(directed));
  CHECK_FALSE(is_balanced(directed));
  CHECK_THROWS_AS(OrientedCycle({{A::transit(2, 3), true}, {A::transit(3, 2), true}}), GraphError);
}

TEST_CASE("the two drawn augmented forests") {
  const auto b = augmented_components(balanced_tree_subgraph());
  REQUIRE(b.size() == 1);
  CHECK(b[0].kind == ComponentKind::AugmentedTree);
  REQUIRE(b[0].extra_cycle);
  CHECK(b[0].extra_cycle->arcs().size() == 6);
  CHECK(is_balanced(*b[0].extra_cycle));
  CHECK(cycle_multiplier(*b[0].extra_cycle) == RatFunc(1));
  CHECK_FALSE(is_good_spanning_augmented_forest(balanced_tree_subgraph()));

  const auto c = augmented_components(good_forest_subgraph());
  REQUIRE(c.size() == 2);
  for (const auto& comp : c) {
    CHECK(comp.kind == ComponentKind::AugmentedTree);
    REQUIRE(comp.extra_cycle);
    CHECK_FALSE(is_balanced(*comp.extra_cycle));
  }
  CHECK(is_good_spanning_augmented_forest(good_forest_subgraph()));
  CHECK_FALSE(is_good_spanning_augmented_tree(good_forest_subgraph()));

  const auto single = augmented_components({2, {SplitArc::transit(1, 2)}});
  CHECK(single.front().kind == ComponentKind::Tree);
}

TEST_CASE("split-graph cycle enumeration is complete") {
  for (const auto& g : {complete_digraph(3), parse_digraph(kFourNode).graph, Digraph(3, {{1, 2}, {2, 3}, {3, 1}})}) {
    const SplitGraph s = split(g);
    CHECK(enumerate_split_cycles(s).size() == brute_force_cycle_count(s));
  }
}

TEST_CASE("balanced iff breakeven on small split graphs") {
  std::size_t cycles = 0;
  for (int n = 2; n <= 3; ++n) {
    std::vector<Arc> all;
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        if (i != j) all.push_back({i, j});
      }
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
      std::vector<Arc> arcs;
      for (std::size_t k = 0; k < all.size(); ++k) {
        if ((mask >> k) & 1U) arcs.push_back(all[k]);
      }
      for (const auto& c : enumerate_split_cycles(split(Digraph(n, arcs)))) {
        ++cycles;
        CHECK(is_balanced(c) == (direct_multiplier(c) == RatFunc(1)));
        CHECK(cycle_multiplier(c) == direct_multiplier(c));
      }
    }
  }
  CHECK(cycles > 0);
}

TEST_CASE("cycle covers") {
  const auto k3 = enumerate_cycle_covers(complete_digraph(3));
  REQUIRE(k3.size() == 2);
  CHECK(format_cycles(k3[0].pi) == "(123)");
  CHECK(format_cycles(k3[1].pi) == "(132)");
  CHECK(enumerate_cycle_covers(cycle_digraph({1, 2, 3, 4})).size() == 1);
  for (int n = 2; n <= 7; ++n) CHECK(enumerate_cycle_covers(complete_digraph(n)).size() == oracle::derangements(n));
  // Lexicographic order of the one-line notation.
  const auto k4 = enumerate_cycle_covers(complete_digraph(4));
  for (std::size_t k = 1; k < k4.size(); ++k) CHECK(k4[k - 1].pi < k4[k].pi);
}

TEST_CASE("cycle covers are exactly the transit perfect matchings") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Digraph g = random_graph(5, Rational(1, 2), seed);
    const SplitGraph s = split(g);
    std::set<Permutation> matchings;
    std::vector<int> perm{1, 2, 3, 4, 5};
    do {
      bool ok = true;
      for (int i = 1; i <= 5 && ok; ++i) ok = s.contains(SplitArc::transit(i, perm[static_cast<std::size_t>(i - 1)]));
      if (ok) {
        Permutation pi{0};
        pi.insert(pi.end(), perm.begin(), perm.end());
        matchings.insert(pi);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::set<Permutation> covers;
    for (const auto& c : enumerate_cycle_covers(g)) covers.insert(c.pi);
    CHECK(covers == matchings);
  }
}

TEST_CASE("cycle notation") {
  const Permutation pi = parse_cycles("(16453)(287)", 8);
  CHECK(pi[1] == 6);
  CHECK(pi[3] == 1);
  CHECK(pi[8] == 7);
  CHECK(format_cycles(pi) == "(16453)(287)");
  CHECK(inverse(inverse(pi)) == pi);
  CHECK(parse_cycles("(1,2)(3,4,5)", 5) == parse_cycles("(12)(345)", 5));
  CHECK_THROWS(parse_cycles("(12)(23)", 3));
  const auto cyc = cycles_of(parse_cycles("(12)(345)(67)", 7));
  REQUIRE(cyc.size() == 3);
  CHECK(cyc[0].size() == 2);
}

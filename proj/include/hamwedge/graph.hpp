// Copyright 2026 The hamwedge Authors
// SPDX-License-Identifier: Apache-2.0
//
// Digraphs on nodes 1..n (node 1 distinguished), the random planted-cycle
// model, the node-split flow graph and its structural predicates.

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hamwedge/exactnum.hpp"

namespace hamwedge {

struct Arc {
  int from = 0;
  int to = 0;
  auto operator<=>(const Arc&) const = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Digraph {
 public:
  Digraph() = default;
  // Throws GraphError on n < 2, loops, or out-of-range endpoints. Duplicate
  // arcs collapse to one.
  Digraph(int n, std::vector<Arc> arcs);

  int node_count() const { return n_; }
  std::size_t arc_count() const { return arcs_.size(); }
  // Lexicographically sorted.
  std::span<const Arc> arcs() const { return arcs_; }
  bool has_arc(int i, int j) const;
  std::optional<std::size_t> arc_index(const Arc& a) const;
  std::span<const int> out_neighbors(int i) const { return out_[static_cast<std::size_t>(i)]; }
  std::span<const int> in_neighbors(int i) const { return in_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_;
  }

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_, in_;
};

struct ParsedDigraph {
  Digraph graph;
  std::vector<std::string> warnings;
};

// Format: header "n m", then m lines "i j"; '#' starts a comment line.
ParsedDigraph parse_digraph(std::string_view text);
Digraph read_digraph_file(const std::string& path, std::vector<std::string>* warnings = nullptr);
std::string serialize_digraph(const Digraph& g);

Digraph complete_digraph(int n);
// Directed cycle visiting nodes in the given order.
Digraph cycle_digraph(const std::vector<int>& order);

// Bernoulli(p) on every ordered pair, united with a uniformly random directed
// Hamilton cycle. Generator: std::mt19937_64 seeded with `seed`; bounded
// integers and Bernoulli trials by rejection sampling, so the stream is fixed
// by the C++ standard. Accepts 0 <= p <= 1.
Digraph random_graph(int n, const Rational& p, std::uint64_t seed);

// 1-indexed permutation; index 0 is unused and holds 0.
using Permutation = std::vector<int>;

// Cycle notation with each cycle starting at its smallest node, cycles ordered
// by that node, fixed points omitted. Nodes are written without separators when
// n <= 9 and comma-separated otherwise.
std::string format_cycles(const Permutation& pi);
// Accepts "(16453)(287)" (single-digit nodes) or "(1,6,4,5,3)(2,8,7)".
Permutation parse_cycles(std::string_view text, int n);
bool is_permutation(const Permutation& pi, int n);
Permutation inverse(const Permutation& pi);
// Cycle lengths; the cycle through node 1 comes first, then the others in
// order of their smallest node.
std::vector<std::vector<int>> cycles_of(const Permutation& pi);

struct CycleCover {
  Permutation pi;
};

// All fixed-point-free pi with every (i, pi(i)) in G, in lexicographic order of
// the one-line notation.
void for_each_cycle_cover(const Digraph& g, const std::function<void(const CycleCover&)>& fn);
std::vector<CycleCover> enumerate_cycle_covers(const Digraph& g);

// ---- split graph ----
//
// Node ids: v_i -> 2(i-1), w_i -> 2(i-1)+1.
inline int v_node(int i) { return 2 * (i - 1); }
inline int w_node(int i) { return 2 * (i - 1) + 1; }
std::string split_node_name(int id);

enum class SplitArcKind { Transit, Internal };

// Transit: (w_i, v_j) for an arc (i, j) of G, multiplier beta.
// Internal: (v_i, w_i) for i >= 2, multiplier 1.
struct SplitArc {
  SplitArcKind kind = SplitArcKind::Transit;
  int i = 0;
  int j = 0;

  static SplitArc transit(int i, int j) { return {SplitArcKind::Transit, i, j}; }
  static SplitArc internal(int i) { return {SplitArcKind::Internal, i, i}; }
  int tail() const { return kind == SplitArcKind::Transit ? w_node(i) : v_node(i); }
  int head() const { return kind == SplitArcKind::Transit ? v_node(j) : w_node(i); }
  auto operator<=>(const SplitArc&) const = default;
};

std::string to_string(const SplitArc& a);

class SplitGraph {
 public:
  explicit SplitGraph(const Digraph& g);

  const Digraph& base() const { return base_; }
  int node_count() const { return 2 * base_.node_count(); }
  std::span<const SplitArc> transit_arcs() const { return transit_; }
  std::span<const SplitArc> internal_arcs() const { return internal_; }
  std::vector<SplitArc> arcs() const;
  bool contains(const SplitArc& a) const;
  DeltaPoly multiplier(const SplitArc& a) const;
  DeltaPoly supply(int node) const;

 private:
  Digraph base_;
  std::vector<SplitArc> transit_, internal_;
};

SplitGraph split(const Digraph& g);

struct OrientedArc {
  SplitArc arc;
  bool forward = true;
  int start() const { return forward ? arc.tail() : arc.head(); }
  int end() const { return forward ? arc.head() : arc.tail(); }
};

// Closed walk with distinct nodes; throws GraphError when the arcs do not chain.
class OrientedCycle {
 public:
  explicit OrientedCycle(std::vector<OrientedArc> arcs);
  std::span<const OrientedArc> arcs() const { return arcs_; }
  std::vector<int> nodes() const;

 private:
  std::vector<OrientedArc> arcs_;
};

// beta^d with d = forward minus backward transit arcs.
RatFunc cycle_multiplier(const OrientedCycle& c);
int transit_balance(const OrientedCycle& c);
bool is_balanced(const OrientedCycle& c);

struct SplitSubgraph {
  int n = 0;
  std::vector<SplitArc> arcs;
};

enum class ComponentKind { Tree, AugmentedTree, Other };

struct Component {
  std::vector<int> nodes;
  std::vector<SplitArc> arcs;
  ComponentKind kind = ComponentKind::Other;
  std::optional<OrientedCycle> extra_cycle;
};

// Components of the underlying undirected multigraph over all 2n nodes, in
// order of their smallest node id. Isolated nodes form single-node trees.
std::vector<Component> augmented_components(const SplitSubgraph& h);
bool is_good_spanning_augmented_forest(const SplitSubgraph& h);
bool is_good_spanning_augmented_tree(const SplitSubgraph& h);

// Every simple cycle of the underlying undirected graph of G', each oriented
// along one traversal direction and reported once.
std::vector<OrientedCycle> enumerate_split_cycles(const SplitGraph& g);

}  // namespace hamwedge

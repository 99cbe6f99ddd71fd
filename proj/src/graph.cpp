// Copyright 2026 The hamwedge Authors
// SPDX-License-Identifier: Apache-2.0

#include "hamwedge/graph.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace hamwedge {

Digraph::Digraph(int n, std::vector<Arc> arcs) : n_(n) {
  if (n < 2) throw GraphError("a digraph needs at least 2 nodes");
  for (const Arc& a : arcs) {
    if (a.from < 1 || a.from > n || a.to < 1 || a.to > n) {
      throw GraphError("arc " + std::to_string(a.from) + " " + std::to_string(a.to) +
                       " has an endpoint outside 1.." + std::to_string(n));
    }
    if (a.from == a.to) throw GraphError("loop arc at node " + std::to_string(a.from));
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  arcs_ = std::move(arcs);
  out_.assign(static_cast<std::size_t>(n) + 1, {});
  in_.assign(static_cast<std::size_t>(n) + 1, {});
  for (const Arc& a : arcs_) {
    out_[static_cast<std::size_t>(a.from)].push_back(a.to);
    in_[static_cast<std::size_t>(a.to)].push_back(a.from);
  }
  for (auto& v : in_) std::sort(v.begin(), v.end());
}

bool Digraph::has_arc(int i, int j) const { return arc_index({i, j}).has_value(); }

std::optional<std::size_t> Digraph::arc_index(const Arc& a) const {
  const auto it = std::lower_bound(arcs_.begin(), arcs_.end(), a);
  if (it == arcs_.end() || *it != a) return std::nullopt;
  return static_cast<std::size_t>(it - arcs_.begin());
}

namespace {

bool read_ints(const std::string& line, std::vector<long long>& out) {
  std::istringstream is(line);
  out.clear();
  std::string tok;
  while (is >> tok) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
      return false;
    }
    if (pos != tok.size()) return false;
    out.push_back(v);
  }
  return true;
}

bool fits_int(long long v) {
  return v >= std::numeric_limits<int>::min() && v <= std::numeric_limits<int>::max();
}

}  // namespace

ParsedDigraph parse_digraph(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  std::optional<std::pair<int, long long>> header;
  std::vector<Arc> arcs;
  std::set<Arc> seen;
  std::vector<std::string> warnings;
  std::vector<long long> v;
  while (std::getline(is, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::string where = "line " + std::to_string(lineno);
    if (!read_ints(line, v) || v.size() != 2) throw GraphError(where + ": expected two integers");
    if (!header) {
      if (!fits_int(v[0]) || v[0] < 2) throw GraphError(where + ": node count must be at least 2");
      if (v[1] < 0) throw GraphError(where + ": negative arc count");
      header = std::make_pair(static_cast<int>(v[0]), v[1]);
      continue;
    }
    const int n = header->first;
    if (v[0] < 1 || v[0] > n || v[1] < 1 || v[1] > n) {
      throw GraphError(where + ": node index out of range 1.." + std::to_string(n));
    }
    const Arc a{static_cast<int>(v[0]), static_cast<int>(v[1])};
    if (a.from == a.to) throw GraphError(where + ": loop arc at node " + std::to_string(a.from));
    if (!seen.insert(a).second) {
      warnings.push_back(where + ": duplicate arc " + std::to_string(a.from) + " " +
                         std::to_string(a.to) + " ignored");
      continue;
    }
    arcs.push_back(a);
  }
  if (!header) throw GraphError("missing header line \"n m\"");
  const long long listed = static_cast<long long>(arcs.size() + warnings.size());
  if (listed != header->second) {
    throw GraphError("header announces " + std::to_string(header->second) + " arcs but " +
                     std::to_string(listed) + " were listed");
  }
  return {Digraph(header->first, std::move(arcs)), std::move(warnings)};
}

Digraph read_digraph_file(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  ParsedDigraph p = parse_digraph(ss.str());
  if (warnings) *warnings = std::move(p.warnings);
  return std::move(p.graph);
}

std::string serialize_digraph(const Digraph& g) {
  std::ostringstream os;
  os << g.node_count() << " " << g.arc_count() << "\n";
  for (const Arc& a : g.arcs()) os << a.from << " " << a.to << "\n";
  return os.str();
}

Digraph complete_digraph(int n) {
  std::vector<Arc> arcs;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i != j) arcs.push_back({i, j});
    }
  }
  return Digraph(n, std::move(arcs));
}

Digraph cycle_digraph(const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  std::vector<Arc> arcs;
  for (int k = 0; k < n; ++k) arcs.push_back({order[static_cast<std::size_t>(k)],
                                              order[static_cast<std::size_t>((k + 1) % n)]});
  return Digraph(n, std::move(arcs));
}

namespace {

// Uniform integer in [0, bound) by rejection.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

Digraph random_graph(int n, const Rational& p, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("random_graph needs n >= 3");
  if (p < 0 || p > 1) throw std::invalid_argument("probability outside [0, 1]");
  if (!p.get_den().fits_ulong_p()) throw std::invalid_argument("probability denominator too large");
  const std::uint64_t den = p.get_den().get_ui();
  const std::uint64_t num = p.get_num().get_ui();
  std::mt19937_64 rng(seed);
  std::vector<Arc> arcs;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      if (uniform_below(rng, den) < num) arcs.push_back({i, j});
    }
  }
  // Node 1 fixed, the rest shuffled: uniform over directed Hamilton cycles.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  for (std::size_t k = order.size() - 1; k >= 2; --k) {
    const std::size_t r = 1 + static_cast<std::size_t>(uniform_below(rng, k));
    std::swap(order[k], order[r]);
  }
  for (int k = 0; k < n; ++k) {
    arcs.push_back({order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>((k + 1) % n)]});
  }
  return Digraph(n, std::move(arcs));
}

bool is_permutation(const Permutation& pi, int n) {
  if (static_cast<int>(pi.size()) != n + 1) return false;
  std::vector<bool> hit(static_cast<std::size_t>(n) + 1, false);
  for (int i = 1; i <= n; ++i) {
    const int j = pi[static_cast<std::size_t>(i)];
    if (j < 1 || j > n || hit[static_cast<std::size_t>(j)]) return false;
    hit[static_cast<std::size_t>(j)] = true;
  }
  return true;
}

Permutation inverse(const Permutation& pi) {
  Permutation inv(pi.size(), 0);
  for (std::size_t i = 1; i < pi.size(); ++i) inv[static_cast<std::size_t>(pi[i])] = static_cast<int>(i);
  return inv;
}

std::vector<std::vector<int>> cycles_of(const Permutation& pi) {
  const int n = static_cast<int>(pi.size()) - 1;
  std::vector<bool> seen(pi.size(), false);
  std::vector<std::vector<int>> out;
  for (int i = 1; i <= n; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    std::vector<int> c;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = pi[static_cast<std::size_t>(j)]) {
      seen[static_cast<std::size_t>(j)] = true;
      c.push_back(j);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string format_cycles(const Permutation& pi) {
  const int n = static_cast<int>(pi.size()) - 1;
  std::string s;
  for (const auto& c : cycles_of(pi)) {
    if (c.size() == 1) continue;
    s += "(";
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k > 0 && n > 9) s += ",";
      s += std::to_string(c[k]);
    }
    s += ")";
  }
  return s;
}

Permutation parse_cycles(std::string_view text, int n) {
  Permutation pi(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) pi[static_cast<std::size_t>(i)] = i;
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad cycle notation '" + std::string(text) + "': " + why);
  };
  while (pos < text.size()) {
    if (text[pos] == ' ') {
      ++pos;
      continue;
    }
    if (text[pos] != '(') fail("expected '('");
    const auto close = text.find(')', pos);
    if (close == std::string_view::npos) fail("missing ')'");
    const std::string body(text.substr(pos + 1, close - pos - 1));
    std::vector<int> cyc;
    if (body.find_first_of(", ") != std::string::npos) {
      std::string tok;
      std::istringstream is(body);
      while (std::getline(is, tok, ',')) {
        const auto b = tok.find_first_not_of(' ');
        if (b == std::string::npos) fail("empty entry");
        try {
          cyc.push_back(std::stoi(tok));
        } catch (const std::exception&) {
          fail("not a node index");
        }
      }
    } else {
      for (char ch : body) {
        if (ch < '0' || ch > '9') fail("not a digit");
        cyc.push_back(ch - '0');
      }
    }
    if (cyc.empty()) fail("empty cycle");
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      const int a = cyc[k];
      if (a < 1 || a > n) fail("node out of range");
      if (used[static_cast<std::size_t>(a)]) fail("node repeated");
      used[static_cast<std::size_t>(a)] = true;
      pi[static_cast<std::size_t>(a)] = cyc[(k + 1) % cyc.size()];
    }
    pos = close + 1;
  }
  return pi;
}

void for_each_cycle_cover(const Digraph& g, const std::function<void(const CycleCover&)>& fn) {
  const int n = g.node_count();
  CycleCover cc{Permutation(static_cast<std::size_t>(n) + 1, 0)};
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  std::function<void(int)> rec = [&](int i) {
    if (i > n) {
      fn(cc);
      return;
    }
    for (int j : g.out_neighbors(i)) {
      if (used[static_cast<std::size_t>(j)]) continue;
      used[static_cast<std::size_t>(j)] = true;
      cc.pi[static_cast<std::size_t>(i)] = j;
      rec(i + 1);
      used[static_cast<std::size_t>(j)] = false;
    }
  };
  rec(1);
}

std::vector<CycleCover> enumerate_cycle_covers(const Digraph& g) {
  std::vector<CycleCover> out;
  for_each_cycle_cover(g, [&](const CycleCover& c) { out.push_back(c); });
  return out;
}

std::string split_node_name(int id) {
  return std::string(id % 2 == 0 ? "v" : "w") + std::to_string(id / 2 + 1);
}

std::string to_string(const SplitArc& a) {
  return split_node_name(a.tail()) + "->" + split_node_name(a.head());
}

SplitGraph::SplitGraph(const Digraph& g) : base_(g) {
  for (const Arc& a : g.arcs()) transit_.push_back(SplitArc::transit(a.from, a.to));
  for (int i = 2; i <= g.node_count(); ++i) internal_.push_back(SplitArc::internal(i));
}

std::vector<SplitArc> SplitGraph::arcs() const {
  std::vector<SplitArc> all = transit_;
  all.insert(all.end(), internal_.begin(), internal_.end());
  return all;
}

bool SplitGraph::contains(const SplitArc& a) const {
  if (a.kind == SplitArcKind::Internal) return a.i >= 2 && a.i <= base_.node_count() && a.j == a.i;
  return base_.has_arc(a.i, a.j);
}

DeltaPoly SplitGraph::multiplier(const SplitArc& a) const {
  return a.kind == SplitArcKind::Transit ? beta_power(1) : DeltaPoly(1);
}

DeltaPoly SplitGraph::supply(int node) const {
  const int n = base_.node_count();
  if (node < 0 || node >= 2 * n) throw GraphError("unknown split node");
  if (node == w_node(1)) return DeltaPoly(1);
  const DeltaPoly b = beta_power(n - 1);
  return node % 2 == 1 ? b : -b;
}

SplitGraph split(const Digraph& g) { return SplitGraph(g); }

OrientedCycle::OrientedCycle(std::vector<OrientedArc> arcs) : arcs_(std::move(arcs)) {
  if (arcs_.size() < 2) throw GraphError("a cycle needs at least two arcs");
  std::set<int> seen;
  for (std::size_t k = 0; k < arcs_.size(); ++k) {
    const auto& cur = arcs_[k];
    const auto& next = arcs_[(k + 1) % arcs_.size()];
    if (cur.end() != next.start()) throw GraphError("cycle arcs do not chain");
    if (!seen.insert(cur.start()).second) throw GraphError("cycle repeats a node");
  }
}

std::vector<int> OrientedCycle::nodes() const {
  std::vector<int> out;
  for (const auto& a : arcs_) out.push_back(a.start());
  return out;
}

int transit_balance(const OrientedCycle& c) {
  int d = 0;
  for (const auto& a : c.arcs()) {
    if (a.arc.kind == SplitArcKind::Transit) d += a.forward ? 1 : -1;
  }
  return d;
}

RatFunc cycle_multiplier(const OrientedCycle& c) {
  const int d = transit_balance(c);
  if (d >= 0) return RatFunc(beta_power(d));
  return RatFunc(DeltaPoly(1), beta_power(-d));
}

bool is_balanced(const OrientedCycle& c) {
  int f = 0;
  for (const auto& a : c.arcs()) f += a.forward ? 1 : -1;
  return f == 0;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }
};

// The unique cycle of a connected unicyclic arc set, oriented starting from its
// smallest arc.
OrientedCycle extract_cycle(const std::vector<SplitArc>& arcs) {
  std::map<int, std::vector<std::size_t>> inc;
  for (std::size_t e = 0; e < arcs.size(); ++e) {
    inc[arcs[e].tail()].push_back(e);
    inc[arcs[e].head()].push_back(e);
  }
  std::vector<bool> removed(arcs.size(), false);
  std::map<int, int> deg;
  for (const auto& [v, es] : inc) deg[v] = static_cast<int>(es.size());
  std::vector<int> leaves;
  for (const auto& [v, d] : deg) {
    if (d == 1) leaves.push_back(v);
  }
  while (!leaves.empty()) {
    const int v = leaves.back();
    leaves.pop_back();
    for (std::size_t e : inc[v]) {
      if (removed[e]) continue;
      removed[e] = true;
      const int u = arcs[e].tail() == v ? arcs[e].head() : arcs[e].tail();
      if (--deg[u] == 1) leaves.push_back(u);
    }
  }
  std::size_t start = arcs.size();
  for (std::size_t e = 0; e < arcs.size(); ++e) {
    if (!removed[e] && (start == arcs.size() || arcs[e] < arcs[start])) start = e;
  }
  std::vector<OrientedArc> out{{arcs[start], true}};
  const int origin = arcs[start].tail();
  int at = arcs[start].head();
  std::size_t prev = start;
  while (at != origin) {
    for (std::size_t e : inc[at]) {
      if (removed[e] || e == prev) continue;
      const bool fwd = arcs[e].tail() == at;
      out.push_back({arcs[e], fwd});
      at = fwd ? arcs[e].head() : arcs[e].tail();
      prev = e;
      break;
    }
  }
  return OrientedCycle(std::move(out));
}

}  // namespace

std::vector<Component> augmented_components(const SplitSubgraph& h) {
  const int nodes = 2 * h.n;
  UnionFind uf(nodes);
  for (const auto& a : h.arcs) {
    if (a.tail() < 0 || a.tail() >= nodes || a.head() < 0 || a.head() >= nodes) {
      throw GraphError("split arc outside the node range");
    }
    uf.unite(a.tail(), a.head());
  }
  std::map<int, Component> by_root;
  for (int v = 0; v < nodes; ++v) by_root[uf.find(v)].nodes.push_back(v);
  for (const auto& a : h.arcs) by_root[uf.find(a.tail())].arcs.push_back(a);
  std::vector<Component> out;
  for (auto& [root, comp] : by_root) {
    std::sort(comp.arcs.begin(), comp.arcs.end());
    const std::size_t na = comp.arcs.size();
    const std::size_t nv = comp.nodes.size();
    if (na + 1 == nv) {
      comp.kind = ComponentKind::Tree;
    } else if (na == nv) {
      comp.kind = ComponentKind::AugmentedTree;
      comp.extra_cycle = extract_cycle(comp.arcs);
    } else {
      comp.kind = ComponentKind::Other;
    }
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_good_spanning_augmented_forest(const SplitSubgraph& h) {
  for (const auto& c : augmented_components(h)) {
    if (c.kind != ComponentKind::AugmentedTree || is_balanced(*c.extra_cycle)) return false;
  }
  return true;
}

bool is_good_spanning_augmented_tree(const SplitSubgraph& h) {
  const auto comps = augmented_components(h);
  return comps.size() == 1 && comps[0].kind == ComponentKind::AugmentedTree &&
         !is_balanced(*comps[0].extra_cycle);
}

std::vector<OrientedCycle> enumerate_split_cycles(const SplitGraph& g) {
  const int nodes = g.node_count();
  const auto arcs = g.arcs();
  std::vector<std::vector<std::pair<int, std::size_t>>> adj(static_cast<std::size_t>(nodes));
  for (std::size_t e = 0; e < arcs.size(); ++e) {
    adj[static_cast<std::size_t>(arcs[e].tail())].push_back({arcs[e].head(), e});
    adj[static_cast<std::size_t>(arcs[e].head())].push_back({arcs[e].tail(), e});
  }
  std::vector<OrientedCycle> out;
  std::vector<int> path;
  std::vector<std::size_t> edges;
  std::vector<bool> on(static_cast<std::size_t>(nodes), false);
  auto emit = [&](int root) {
    std::vector<OrientedArc> oa;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const int from = path[k];
      const SplitArc& a = arcs[edges[k]];
      oa.push_back({a, a.tail() == from});
    }
    (void)root;
    out.emplace_back(std::move(oa));
  };
  std::function<void(int, int)> dfs = [&](int root, int at) {
    for (const auto& [nb, e] : adj[static_cast<std::size_t>(at)]) {
      if (!edges.empty() && e == edges.back()) continue;
      if (nb == root && path.size() >= 3) {
        // Report each cycle once: second node smaller than the last.
        if (path[1] < path.back()) {
          edges.push_back(e);
          emit(root);
          edges.pop_back();
        }
        continue;
      }
      if (nb <= root || on[static_cast<std::size_t>(nb)]) continue;
      on[static_cast<std::size_t>(nb)] = true;
      path.push_back(nb);
      edges.push_back(e);
      dfs(root, nb);
      edges.pop_back();
      path.pop_back();
      on[static_cast<std::size_t>(nb)] = false;
    }
  };
  for (int r = 0; r < nodes; ++r) {
    path = {r};
    on[static_cast<std::size_t>(r)] = true;
    dfs(r, r);
    on[static_cast<std::size_t>(r)] = false;
  }
  return out;
}

}  // namespace hamwedge

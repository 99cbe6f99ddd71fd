// Copyright 2026 The hamwedge Authors
// SPDX-License-Identifier: Apache-2.0

#include "hamwedge/polytope.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "hamwedge/bareiss.hpp"

namespace hamwedge {

namespace {

using IntMatrix = Eigen::Matrix<IntDeltaPoly, Eigen::Dynamic, Eigen::Dynamic>;

IntDeltaPoly to_int_poly(const DeltaPoly& p) {
  std::vector<Integer> c;
  c.reserve(p.coefficients().size());
  for (const auto& v : p.coefficients()) {
    if (v.get_den() != 1) throw std::logic_error("constraint entry with a non-integer coefficient");
    c.push_back(v.get_num());
  }
  return IntDeltaPoly(std::move(c));
}

// Lowest-order sign of a sum of polynomials, without materializing the sum.
SignClass sign_of_sum(const std::vector<const IntDeltaPoly*>& terms) {
  int maxdeg = -1;
  for (const auto* t : terms) maxdeg = std::max(maxdeg, t->degree());
  Integer s;
  for (int k = 0; k <= maxdeg; ++k) {
    s = 0;
    for (const auto* t : terms) {
      if (k <= t->degree()) s += t->coefficients()[static_cast<std::size_t>(k)];
    }
    const int sg = sgn(s);
    if (sg != 0) return sg > 0 ? SignClass::Positive : SignClass::Negative;
  }
  return SignClass::Zero;
}

bool nonnegative(SignClass s) { return s != SignClass::Negative; }

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(v[k]);
  }
  return s;
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Basic columns of M_B: arcs of A, then slacks of Y.
IntMatrix basic_matrix(const ConstraintSystem& sys, const std::vector<Arc>& A, const std::vector<int>& Y) {
  const Eigen::Index size = 2 * sys.n;
  IntMatrix m(size, size);
  Eigen::Index col = 0;
  auto copy_col = [&](Eigen::Index src) {
    for (Eigen::Index r = 0; r < size; ++r) m(r, col) = to_int_poly(sys.matrix(r, src));
    ++col;
  };
  for (const Arc& a : A) copy_col(sys.arc_column(a));
  for (int i : Y) copy_col(sys.slack_column(i));
  return m;
}

BasicSolution make_solution(int n, int cap, const Basis& basis, const IntDeltaPoly& det,
                            const std::vector<IntDeltaPoly>& numerators) {
  BasicSolution sol;
  sol.basis = basis;
  sol.n = n;
  const DeltaPoly den = to_rational_poly(det);
  sol.det = den.with_cap(cap);
  std::size_t k = 0;
  for (const Arc& a : basis.A) sol.x.emplace(a, RatFunc(to_rational_poly(numerators[k++]), den).with_cap(cap));
  for (int i : basis.Y) sol.y.emplace(i, RatFunc(to_rational_poly(numerators[k++]), den).with_cap(cap));
  return sol;
}

}  // namespace

Eigen::Index ConstraintSystem::arc_column(const Arc& a) const {
  const auto idx = graph.arc_index(a);
  if (!idx) throw BasisError("arc " + std::to_string(a.from) + "-" + std::to_string(a.to) + " is not in the graph");
  return static_cast<Eigen::Index>(*idx);
}

Eigen::Index ConstraintSystem::slack_column(int i) const {
  if (i < 2 || i > n) throw BasisError("no slack variable for node " + std::to_string(i));
  return static_cast<Eigen::Index>(graph.arc_count()) + i - 2;
}

std::string ConstraintSystem::variable_name(Eigen::Index col) const {
  const auto m = static_cast<Eigen::Index>(graph.arc_count());
  if (col < m) {
    const Arc& a = graph.arcs()[static_cast<std::size_t>(col)];
    return "x_" + std::to_string(a.from) + "_" + std::to_string(a.to);
  }
  return "y_" + std::to_string(col - m + 2);
}

ConstraintSystem build_system(const Digraph& g) {
  ConstraintSystem sys;
  sys.graph = g;
  sys.n = g.node_count();
  const int n = sys.n;
  sys.degree_cap = 4 * n;
  const int cap = sys.degree_cap;
  const auto m = static_cast<Eigen::Index>(g.arc_count());
  const DeltaPoly zero(std::vector<Rational>{}, cap);
  sys.matrix = PolyMatrix::Constant(2 * n, m + n - 1, zero);
  sys.rhs = PolyVector::Constant(2 * n, zero);
  const DeltaPoly one = DeltaPoly(1).with_cap(cap);
  const DeltaPoly minus_beta = -beta_power(1, cap);
  for (Eigen::Index col = 0; col < m; ++col) {
    const Arc& a = g.arcs()[static_cast<std::size_t>(col)];
    sys.matrix(sys.conservation_row(a.from), col) += one;
    sys.matrix(sys.conservation_row(a.to), col) += minus_beta;
    if (a.from == 1) {
      sys.matrix(n, col) = one;
    } else {
      sys.matrix(sys.wedge_row(a.from), col) = one;
    }
  }
  for (int i = 2; i <= n; ++i) sys.matrix(sys.wedge_row(i), sys.slack_column(i)) = -one;
  sys.rhs(0) = one - beta_power(n, cap);
  sys.rhs(n) = one;
  for (int i = 2; i <= n; ++i) sys.rhs(sys.wedge_row(i)) = beta_power(n - 1, cap);
  return sys;
}

Basis canonical(Basis b) {
  std::sort(b.A.begin(), b.A.end());
  std::sort(b.Y.begin(), b.Y.end());
  std::sort(b.L.begin(), b.L.end());
  std::sort(b.U.begin(), b.U.end());
  return b;
}

void validate_basis(const Basis& b, const Digraph& g) {
  const int n = g.node_count();
  if (static_cast<int>(b.A.size() + b.Y.size()) != 2 * n) {
    throw BasisError("basis has " + std::to_string(b.A.size() + b.Y.size()) +
                     " basic variables, expected " + std::to_string(2 * n));
  }
  std::set<Arc> arcs;
  for (const Arc& a : b.A) {
    if (!g.has_arc(a.from, a.to)) {
      throw BasisError("basic arc " + std::to_string(a.from) + "-" + std::to_string(a.to) + " is not in the graph");
    }
    if (!arcs.insert(a).second) throw BasisError("basic arc listed twice");
  }
  std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
  for (const auto* set : {&b.Y, &b.L, &b.U}) {
    for (int i : *set) {
      if (i < 2 || i > n) throw BasisError("slack node " + std::to_string(i) + " outside 2.." + std::to_string(n));
      if (seen[static_cast<std::size_t>(i)]++) throw BasisError("node " + std::to_string(i) + " in two slack sets");
    }
  }
  for (int i = 2; i <= n; ++i) {
    if (!seen[static_cast<std::size_t>(i)]) throw BasisError("node " + std::to_string(i) + " missing from Y, L, U");
  }
}

Basis parse_basis(std::string_view text) {
  Basis b;
  std::set<char> keys;
  std::stringstream ss{std::string(text)};
  std::string part;
  auto trim = [](std::string s) {
    const auto f = s.find_first_not_of(" \t");
    if (f == std::string::npos) return std::string();
    return s.substr(f, s.find_last_not_of(" \t") - f + 1);
  };
  while (std::getline(ss, part, ';')) {
    part = trim(part);
    if (part.empty()) continue;
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw BasisError("basis section without ':' in '" + part + "'");
    const std::string key = trim(part.substr(0, colon));
    if (key.size() != 1 || std::string("AYLU").find(key[0]) == std::string::npos) {
      throw BasisError("unknown basis section '" + key + "'");
    }
    if (!keys.insert(key[0]).second) throw BasisError("basis section '" + key + "' repeated");
    std::stringstream items(part.substr(colon + 1));
    std::string item;
    while (std::getline(items, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      try {
        if (key[0] == 'A') {
          const auto dash = item.find('-');
          if (dash == std::string::npos) throw BasisError("arc '" + item + "' is not of the form i-j");
          std::size_t p1 = 0, p2 = 0;
          const std::string s1 = trim(item.substr(0, dash)), s2 = trim(item.substr(dash + 1));
          const int i = std::stoi(s1, &p1), j = std::stoi(s2, &p2);
          if (p1 != s1.size() || p2 != s2.size()) throw BasisError("bad arc '" + item + "'");
          b.A.push_back({i, j});
        } else {
          std::size_t p = 0;
          const int v = std::stoi(item, &p);
          if (p != item.size()) throw BasisError("bad node '" + item + "'");
          (key[0] == 'Y' ? b.Y : key[0] == 'L' ? b.L : b.U).push_back(v);
        }
      } catch (const std::logic_error& e) {
        if (dynamic_cast<const BasisError*>(&e)) throw;
        throw BasisError("bad entry '" + item + "' in basis section " + key);
      }
    }
  }
  return canonical(std::move(b));
}

std::string format_basis(const Basis& b) {
  std::string s = "A:";
  for (std::size_t k = 0; k < b.A.size(); ++k) {
    s += (k ? "," : " ") + std::to_string(b.A[k].from) + "-" + std::to_string(b.A[k].to);
  }
  auto section = [](const char* key, const std::vector<int>& v) {
    std::string out = std::string(" ; ") + key + ":";
    if (!v.empty()) out += " " + join_ints(v);
    return out;
  };
  return s + section("Y", b.Y) + section("L", b.L) + section("U", b.U);
}

DeltaPoly slack_upper_bound(int n) { return beta_power(1) - beta_power(n - 1); }

RatFunc BasicSolution::x_value(const Arc& a) const {
  const auto it = x.find(a);
  return it == x.end() ? RatFunc() : it->second;
}

RatFunc BasicSolution::y_value(int i) const {
  if (const auto it = y.find(i); it != y.end()) return it->second;
  if (std::find(basis.U.begin(), basis.U.end(), i) != basis.U.end()) return RatFunc(slack_upper_bound(n));
  if (std::find(basis.L.begin(), basis.L.end(), i) != basis.L.end()) return RatFunc();
  throw BasisError("node " + std::to_string(i) + " has no slack value");
}

std::optional<BasicSolution> solve_basis(const ConstraintSystem& sys, const Basis& raw) {
  const Basis basis = canonical(raw);
  validate_basis(basis, sys.graph);
  const IntMatrix m = basic_matrix(sys, basis.A, basis.Y);
  IntMatrix rhs(2 * sys.n, 1);
  const IntDeltaPoly upper = to_int_poly(slack_upper_bound(sys.n));
  for (Eigen::Index r = 0; r < 2 * sys.n; ++r) rhs(r, 0) = to_int_poly(sys.rhs(r));
  for (int i : basis.U) rhs(sys.wedge_row(i), 0) += upper;
  const auto ff = solve_fraction_free(m, rhs);
  if (!ff) return std::nullopt;
  std::vector<IntDeltaPoly> nums(static_cast<std::size_t>(2 * sys.n));
  for (Eigen::Index k = 0; k < 2 * sys.n; ++k) nums[static_cast<std::size_t>(k)] = ff->numerators(k, 0);
  return make_solution(sys.n, sys.degree_cap, basis, ff->determinant, nums);
}

std::vector<RatFunc> residuals(const ConstraintSystem& sys, const BasicSolution& sol) {
  const auto m = static_cast<Eigen::Index>(sys.graph.arc_count());
  std::vector<RatFunc> values;
  for (Eigen::Index c = 0; c < m; ++c) values.push_back(sol.x_value(sys.graph.arcs()[static_cast<std::size_t>(c)]));
  for (int i = 2; i <= sys.n; ++i) values.push_back(sol.y_value(i));
  std::vector<RatFunc> out;
  for (Eigen::Index r = 0; r < sys.matrix.rows(); ++r) {
    RatFunc acc = -RatFunc(sys.rhs(r));
    for (Eigen::Index c = 0; c < sys.matrix.cols(); ++c) {
      const DeltaPoly& e = sys.matrix(r, c);
      if (!e.is_zero() && !values[static_cast<std::size_t>(c)].is_zero()) {
        acc += RatFunc(e) * values[static_cast<std::size_t>(c)];
      }
    }
    out.push_back(acc);
  }
  return out;
}

bool is_ultimately_feasible(const BasicSolution& sol, const Basis& basis) {
  const RatFunc upper(slack_upper_bound(sol.n));
  for (const Arc& a : basis.A) {
    if (!nonnegative(sign_at_one_minus(sol.x_value(a)))) return false;
  }
  for (int i : basis.Y) {
    const RatFunc v = sol.y_value(i);
    if (!nonnegative(sign_at_one_minus(v)) || !nonnegative(sign_at_one_minus(upper - v))) return false;
  }
  return true;
}

bool is_feasible_at(const BasicSolution& sol, const Basis& basis, const Rational& d) {
  const Rational upper = slack_upper_bound(sol.n).evaluate(d);
  for (const Arc& a : basis.A) {
    if (evaluate(sol.x_value(a), d) < 0) return false;
  }
  for (int i : basis.Y) {
    const Rational v = evaluate(sol.y_value(i), d);
    if (v < 0 || upper - v < 0) return false;
  }
  return true;
}

const char* to_string(ArcClass c) {
  switch (c) {
    case ArcClass::Thick: return "thick";
    case ArcClass::Thin: return "thin";
    case ArcClass::Intermediate: return "intermediate";
  }
  return "?";
}

std::map<Arc, ArcClass> classify_arcs(const BasicSolution& sol) {
  std::map<Arc, ArcClass> out;
  for (const auto& [a, v] : sol.x) {
    const auto lim = v.limit_at_zero();
    if (lim && *lim == 1) {
      out[a] = ArcClass::Thick;
    } else if (lim && *lim == 0) {
      out[a] = ArcClass::Thin;
    } else {
      out[a] = ArcClass::Intermediate;
    }
  }
  return out;
}

RatFunc inflow(const BasicSolution& sol, int i) {
  if (i < 1 || i > sol.n) throw std::out_of_range("unknown node " + std::to_string(i));
  RatFunc acc;
  for (const auto& [a, v] : sol.x) {
    if (a.to == i) acc += v;
  }
  return acc;
}

RatFunc outflow(const BasicSolution& sol, int i) {
  if (i < 1 || i > sol.n) throw std::out_of_range("unknown node " + std::to_string(i));
  RatFunc acc;
  for (const auto& [a, v] : sol.x) {
    if (a.from == i) acc += v;
  }
  return acc;
}

bool is_quasi_hamiltonian(const Digraph& g, const BasicSolution& sol) {
  const int n = g.node_count();
  std::vector<std::vector<int>> best(static_cast<std::size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) {
    std::optional<RatFunc> top;
    for (int j : g.out_neighbors(i)) {
      const RatFunc v = sol.x_value({i, j});
      const Ordering o = top ? compare_at_one_minus(v, *top) : Ordering::Greater;
      if (o == Ordering::Greater) {
        top = v;
        best[static_cast<std::size_t>(i)] = {j};
      } else if (o == Ordering::Equal) {
        best[static_cast<std::size_t>(i)].push_back(j);
      }
    }
  }
  std::vector<bool> visited(static_cast<std::size_t>(n) + 1, false);
  std::function<bool(int, int, int)> walk = [&](int start, int at, int steps) {
    const auto& next = best[static_cast<std::size_t>(at)];
    if (next.empty()) return false;
    for (int j : next) {
      if (steps + 1 == n) {
        if (j != start) return false;
        continue;
      }
      if (visited[static_cast<std::size_t>(j)]) return false;
      visited[static_cast<std::size_t>(j)] = true;
      const bool ok = walk(start, j, steps + 1);
      visited[static_cast<std::size_t>(j)] = false;
      if (!ok) return false;
    }
    return true;
  };
  for (int s = 1; s <= n; ++s) {
    visited[static_cast<std::size_t>(s)] = true;
    const bool ok = walk(s, s, 0);
    visited[static_cast<std::size_t>(s)] = false;
    if (!ok) return false;
  }
  return true;
}

BasicSolution hamiltonian_extreme_point(const Digraph& g, const std::vector<int>& cycle) {
  const int n = g.node_count();
  if (static_cast<int>(cycle.size()) != n) throw GraphError("cycle does not visit every node");
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int v : cycle) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) throw GraphError("cycle is not Hamiltonian");
    seen[static_cast<std::size_t>(v)] = true;
  }
  const auto at1 = std::find(cycle.begin(), cycle.end(), 1) - cycle.begin();
  BasicSolution sol;
  sol.n = n;
  sol.det = DeltaPoly(1);
  for (int t = 0; t < n; ++t) {
    const int a = cycle[static_cast<std::size_t>((at1 + t) % n)];
    const int b = cycle[static_cast<std::size_t>((at1 + t + 1) % n)];
    if (!g.has_arc(a, b)) throw GraphError("cycle uses an arc missing from the graph");
    sol.x.emplace(Arc{a, b}, RatFunc(beta_power(t)));
    sol.basis.A.push_back({a, b});
  }
  std::sort(sol.basis.A.begin(), sol.basis.A.end());
  const RatFunc floor(beta_power(n - 1));
  for (int i = 2; i <= n; ++i) {
    sol.y.emplace(i, outflow(sol, i) - floor);
    sol.basis.Y.push_back(i);
  }
  return sol;
}

bool StructureReport::all() const {
  for (const auto& [name, ok] : fields()) {
    if (!ok) return false;
  }
  return true;
}

std::vector<std::pair<std::string, bool>> StructureReport::fields() const {
  return {{"no_intermediate_arcs", no_intermediate_arcs},
          {"thick_arcs_form_cycle_cover", thick_arcs_form_cycle_cover},
          {"all_nodes_reachable_from_1", all_nodes_reachable_from_1},
          {"slack_partition_bounded", slack_partition_bounded},
          {"good_augmented_spanning_tree", good_augmented_spanning_tree},
          {"thick_arcs_unique_matching", thick_arcs_unique_matching},
          {"thick_and_slack_arcs_form_paths", thick_and_slack_arcs_form_paths}};
}

StructureReport verify_structure(const Digraph& g, const Basis& raw, const BasicSolution& sol) {
  const Basis basis = canonical(raw);
  validate_basis(basis, g);
  if (!is_ultimately_feasible(sol, basis)) throw BasisError("structure report requires a feasible basis");
  const int n = g.node_count();
  StructureReport r;
  const auto classes = classify_arcs(sol);

  std::vector<Arc> thick;
  r.no_intermediate_arcs = true;
  for (const auto& [a, c] : classes) {
    if (c == ArcClass::Intermediate) r.no_intermediate_arcs = false;
    if (c == ArcClass::Thick) thick.push_back(a);
  }

  std::vector<int> out_deg(static_cast<std::size_t>(n) + 1, 0), in_deg(static_cast<std::size_t>(n) + 1, 0);
  for (const Arc& a : thick) {
    ++out_deg[static_cast<std::size_t>(a.from)];
    ++in_deg[static_cast<std::size_t>(a.to)];
  }
  r.thick_arcs_form_cycle_cover = static_cast<int>(thick.size()) == n;
  for (int i = 1; i <= n; ++i) {
    if (out_deg[static_cast<std::size_t>(i)] != 1 || in_deg[static_cast<std::size_t>(i)] != 1) {
      r.thick_arcs_form_cycle_cover = false;
    }
  }

  std::vector<bool> reach(static_cast<std::size_t>(n) + 1, false);
  std::vector<int> stack{1};
  reach[1] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const Arc& a : basis.A) {
      if (a.from == v && !reach[static_cast<std::size_t>(a.to)]) {
        reach[static_cast<std::size_t>(a.to)] = true;
        stack.push_back(a.to);
      }
    }
  }
  r.all_nodes_reachable_from_1 = std::all_of(reach.begin() + 1, reach.end(), [](bool b) { return b; });

  r.slack_partition_bounded = 2 * static_cast<int>(basis.L.size()) <= n - 1 &&
                              2 * static_cast<int>(basis.U.size()) <= n - 1;

  SplitSubgraph bprime{n, {}};
  for (const Arc& a : basis.A) bprime.arcs.push_back(SplitArc::transit(a.from, a.to));
  for (int i : basis.Y) bprime.arcs.push_back(SplitArc::internal(i));
  r.good_augmented_spanning_tree = is_good_spanning_augmented_tree(bprime);

  // Perfect matchings w_i -> v_j among the transit arcs of B', by exhaustive search.
  {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
    for (const Arc& a : basis.A) adj[static_cast<std::size_t>(a.from)].push_back(a.to);
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    std::vector<int> match(static_cast<std::size_t>(n) + 1, 0), found;
    int count = 0;
    std::function<void(int)> rec = [&](int i) {
      if (count > 1) return;
      if (i > n) {
        ++count;
        found = match;
        return;
      }
      for (int j : adj[static_cast<std::size_t>(i)]) {
        if (used[static_cast<std::size_t>(j)]) continue;
        used[static_cast<std::size_t>(j)] = true;
        match[static_cast<std::size_t>(i)] = j;
        rec(i + 1);
        used[static_cast<std::size_t>(j)] = false;
      }
    };
    rec(1);
    bool same = count == 1 && r.thick_arcs_form_cycle_cover;
    if (same) {
      for (const Arc& a : thick) {
        if (found[static_cast<std::size_t>(a.from)] != a.to) same = false;
      }
    }
    r.thick_arcs_unique_matching = same;
  }

  // Thick transit arcs plus slack arcs: directed paths, n - |Y| of them.
  {
    const int nodes = 2 * n;
    std::vector<int> indeg(static_cast<std::size_t>(nodes), 0), outdeg(static_cast<std::size_t>(nodes), 0);
    std::vector<int> parent(static_cast<std::size_t>(nodes));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]);
    };
    bool ok = true;
    int components = nodes;
    std::vector<SplitArc> arcs;
    for (const Arc& a : thick) arcs.push_back(SplitArc::transit(a.from, a.to));
    for (int i : basis.Y) arcs.push_back(SplitArc::internal(i));
    for (const auto& a : arcs) {
      if (++outdeg[static_cast<std::size_t>(a.tail())] > 1 || ++indeg[static_cast<std::size_t>(a.head())] > 1) ok = false;
      const int x = find(a.tail()), y = find(a.head());
      if (x == y) {
        ok = false;
      } else {
        parent[static_cast<std::size_t>(x)] = y;
        --components;
      }
    }
    r.thick_and_slack_arcs_form_paths = ok && components == n - static_cast<int>(basis.Y.size());
  }
  return r;
}

std::optional<BasisFamily> BasisFamily::solve(const ConstraintSystem& sys, std::vector<Arc> A, std::vector<int> Y) {
  const int n = sys.n;
  std::sort(A.begin(), A.end());
  std::sort(Y.begin(), Y.end());
  BasisFamily f;
  f.n_ = n;
  f.cap_ = sys.degree_cap;
  f.A_ = std::move(A);
  f.Y_ = std::move(Y);
  for (int i = 2; i <= n; ++i) {
    if (!std::binary_search(f.Y_.begin(), f.Y_.end(), i)) f.free_.push_back(i);
  }
  if (f.free_.size() >= 63) throw BasisError("too many free slacks");
  validate_basis(Basis{f.A_, f.Y_, f.free_, {}}, sys.graph);
  const IntMatrix m = basic_matrix(sys, f.A_, f.Y_);
  const auto k = static_cast<Eigen::Index>(f.free_.size());
  IntMatrix rhs = IntMatrix::Constant(2 * n, 1 + k, IntDeltaPoly());
  for (Eigen::Index r = 0; r < 2 * n; ++r) rhs(r, 0) = to_int_poly(sys.rhs(r));
  for (Eigen::Index c = 0; c < k; ++c) rhs(sys.wedge_row(f.free_[static_cast<std::size_t>(c)]), 1 + c) = IntDeltaPoly(1);
  const auto ff = solve_fraction_free(m, rhs);
  if (!ff) return std::nullopt;
  const IntDeltaPoly upper = to_int_poly(slack_upper_bound(n));
  f.det_ = ff->determinant;
  f.upper_times_det_ = upper * f.det_;
  for (Eigen::Index v = 0; v < 2 * n; ++v) {
    f.base_.push_back(ff->numerators(v, 0));
    std::vector<IntDeltaPoly> units;
    for (Eigen::Index c = 0; c < k; ++c) units.push_back(upper * ff->numerators(v, 1 + c));
    f.unit_.push_back(std::move(units));
  }
  return f;
}

Basis BasisFamily::basis(std::uint64_t upper_mask) const {
  Basis b{A_, Y_, {}, {}};
  for (std::size_t k = 0; k < free_.size(); ++k) {
    ((upper_mask >> k) & 1U ? b.U : b.L).push_back(free_[k]);
  }
  return b;
}

IntDeltaPoly BasisFamily::numerator(std::size_t var, std::uint64_t upper_mask) const {
  IntDeltaPoly acc = base_[var];
  for (std::size_t k = 0; k < free_.size(); ++k) {
    if ((upper_mask >> k) & 1U) acc += unit_[var][k];
  }
  return acc;
}

bool BasisFamily::is_feasible(std::uint64_t upper_mask) const {
  const SignClass det_sign = det_.sign_near_zero();
  std::vector<const IntDeltaPoly*> terms;
  for (std::size_t v = 0; v < base_.size(); ++v) {
    terms.clear();
    terms.push_back(&base_[v]);
    for (std::size_t k = 0; k < free_.size(); ++k) {
      if ((upper_mask >> k) & 1U) terms.push_back(&unit_[v][k]);
    }
    if (!nonnegative(sign_of_sum(terms) * det_sign)) return false;
    if (v >= A_.size()) {
      // upper*det - numerator
      IntDeltaPoly slack = upper_times_det_ - numerator(v, upper_mask);
      if (!nonnegative(slack.sign_near_zero() * det_sign)) return false;
    }
  }
  return true;
}

BasicSolution BasisFamily::solution(std::uint64_t upper_mask) const {
  std::vector<IntDeltaPoly> nums;
  for (std::size_t v = 0; v < base_.size(); ++v) nums.push_back(numerator(v, upper_mask));
  return make_solution(n_, cap_, basis(upper_mask), det_, nums);
}

}  // namespace hamwedge

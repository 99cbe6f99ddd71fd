// Copyright 2026 The hamwedge Authors
// SPDX-License-Identifier: Apache-2.0

#include "hamwedge/hamclass.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hamwedge {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t p = 0;
    out.push_back(std::stoi(item, &p));
    if (p != item.size()) throw std::invalid_argument("bad node '" + item + "'");
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s;
}

// Inflow forced by the label: node 1 gets beta^(n-1), L gets beta^(n-2), U gets 1.
DeltaPoly phi_of(Label l, int n) {
  switch (l) {
    case Label::R: return beta_power(n - 1, 4 * n);
    case Label::L: return beta_power(n - 2, 4 * n);
    case Label::U: return DeltaPoly(1).with_cap(4 * n);
    case Label::S: break;
  }
  throw std::logic_error("no fixed inflow at the slack node");
}

// Outflow forced by the label: node 1 sends 1, L sends beta^(n-1), U sends beta.
DeltaPoly psi_of(Label l, int n) {
  switch (l) {
    case Label::R: return DeltaPoly(1).with_cap(4 * n);
    case Label::L: return beta_power(n - 1, 4 * n);
    case Label::U: return beta_power(1, 4 * n);
    case Label::S: break;
  }
  throw std::logic_error("no fixed outflow at the slack node");
}

WClass classify(Label a, Label b) {
  if (a == Label::U && b == Label::U) return WClass::UU;
  if (a == Label::U && b == Label::L) return WClass::UL;
  if (a == Label::L && b == Label::U) return WClass::LU;
  if (a == Label::L && b == Label::L) return WClass::LL;
  if (a == Label::R && b == Label::U) return WClass::RU;
  if (a == Label::R && b == Label::L) return WClass::RL;
  if (a == Label::U && b == Label::R) return WClass::UR;
  if (a == Label::L && b == Label::R) return WClass::LR;
  throw std::logic_error("index outside the classified range");
}

void require_index(const Quadruple& q, int i) {
  if (i < 1 || i > q.n || i == q.s || i == cyc_prev(q.s, q.n)) {
    throw std::out_of_range("index " + std::to_string(i) + " outside [n] \\ {s, s-1}");
  }
}

}  // namespace

QuadrupleCheck validate_quadruple(const Quadruple& q) {
  auto bad = [](QuadrupleDefect d, std::string why) { return QuadrupleCheck{d, std::move(why)}; };
  if (q.n < 5) return bad(QuadrupleDefect::TooFewNodes, "n must be at least 5");
  if (q.s < 2 || q.s > q.n) return bad(QuadrupleDefect::SlackNodeOutOfRange, "s must lie in 2..n");
  if (!is_permutation(q.pi, q.n)) return bad(QuadrupleDefect::NotAPermutation, "pi is not a permutation of 1..n");
  const int pred_s = cyc_prev(q.s, q.n);
  for (int i = 1; i <= q.n; ++i) {
    if (q.pi[at(i)] == i) return bad(QuadrupleDefect::FixedPoint, "pi fixes node " + std::to_string(i));
    if ((q.pi[at(i)] == cyc_next(i, q.n)) != (i == pred_s)) {
      return bad(QuadrupleDefect::SuccessorRule,
                 "pi(i) = i+1 must hold exactly for i = s-1; violated at i = " + std::to_string(i));
    }
  }
  std::vector<int> seen(at(q.n) + 1, 0);
  for (const auto* set : {&q.L, &q.U}) {
    for (int v : *set) {
      if (v < 1 || v > q.n || v == 1 || v == q.s || seen[at(v)]++) {
        return bad(QuadrupleDefect::BadPartition, "L and U must partition [n] \\ {1, s}");
      }
    }
  }
  for (int v = 2; v <= q.n; ++v) {
    if (v != q.s && !seen[at(v)]) return bad(QuadrupleDefect::BadPartition, "node " + std::to_string(v) + " is in neither L nor U");
  }
  return {};
}

Quadruple parse_quadruple(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::map<std::string, std::string> kv;
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    if (key != "n" && key != "s" && key != "pi" && key != "L" && key != "U") {
      throw std::invalid_argument("unknown quadruple field '" + key + "'");
    }
    if (!kv.emplace(key, tok.substr(eq + 1)).second) throw std::invalid_argument("field '" + key + "' repeated");
  }
  for (const char* key : {"n", "s", "pi", "L", "U"}) {
    if (!kv.count(key)) throw std::invalid_argument(std::string("missing quadruple field '") + key + "'");
  }
  Quadruple q;
  std::size_t p = 0;
  q.n = std::stoi(kv["n"], &p);
  if (p != kv["n"].size() || q.n < 2) throw std::invalid_argument("bad n");
  q.s = std::stoi(kv["s"], &p);
  if (p != kv["s"].size()) throw std::invalid_argument("bad s");
  q.pi = parse_cycles(kv["pi"], q.n);
  q.L = parse_int_list(kv["L"]);
  q.U = parse_int_list(kv["U"]);
  return q;
}

std::string format_quadruple(const Quadruple& q) {
  std::vector<int> L = q.L, U = q.U;
  std::sort(L.begin(), L.end());
  std::sort(U.begin(), U.end());
  return "n=" + std::to_string(q.n) + " s=" + std::to_string(q.s) + " pi=" + format_cycles(q.pi) + " L=" + join(L) +
         " U=" + join(U);
}

std::vector<Label> labels_of(const Quadruple& q) {
  std::vector<Label> lab(at(q.n) + 1, Label::S);
  lab[1] = Label::R;
  for (int v : q.L) lab[at(v)] = Label::L;
  for (int v : q.U) lab[at(v)] = Label::U;
  return lab;
}

const char* to_string(WClass c) {
  static const char* names[] = {"UU", "UL", "LU", "LL", "RU", "RL", "UR", "LR"};
  return names[static_cast<int>(c)];
}

WClass w_class(const Quadruple& q, int i) {
  require_index(q, i);
  const auto lab = labels_of(q);
  return classify(lab[at(i)], lab[at(q.pi[at(i)])]);
}

DeltaPoly gamma(const Quadruple& q, int i) {
  const int n = q.n;
  const int cap = 4 * n;
  const DeltaPoly one = DeltaPoly(1).with_cap(cap);
  switch (w_class(q, i)) {
    case WClass::UU: return one - beta_power(1, cap);
    case WClass::UL: return beta_power(n - 2, cap) - beta_power(1, cap);
    case WClass::LU: return one - beta_power(n - 1, cap);
    case WClass::LL: return beta_power(n - 2, cap) - beta_power(n - 1, cap);
    case WClass::RU: return DeltaPoly(std::vector<Rational>{}, cap);
    case WClass::RL: return beta_power(n - 2, cap) - one;
    case WClass::UR: return beta_power(n - 1, cap) - beta_power(1, cap);
    case WClass::LR: return DeltaPoly(std::vector<Rational>{}, cap);
  }
  throw std::logic_error("unreachable");
}

namespace {
Rational frac(long num, long den) { return make_rational(Integer(num), Integer(den)); }
}  // namespace

AlphaPair alphas(WClass c, int n) {
  const long m = n;
  switch (c) {
    case WClass::UU: return {1, 0};
    case WClass::LL: return {1, frac(2 - m, 1)};
    case WClass::UL: return {3 - m, frac((m - 2) * (m - 3), 2)};
    case WClass::LU: return {m - 1, frac(-(m - 1) * (m - 2), 2)};
    case WClass::UR: return {2 - m, frac((m - 1) * (m - 2), 2)};
    case WClass::RL: return {2 - m, frac((m - 2) * (m - 3), 2)};
    case WClass::LR: return {0, 0};
    case WClass::RU: return {0, 0};
  }
  throw std::logic_error("unreachable");
}

AlphaPair alphas(const Quadruple& q, int i) { return alphas(w_class(q, i), q.n); }

AlphaPair alpha_s(int n) {
  if (n < 5) throw std::invalid_argument("alpha_s needs n >= 5");
  const long m = n;
  if (n % 2 == 0) return {m / 2, frac((m - 1) * (m - 2) * (m - 6), 12)};
  return {1, frac((m - 1) * (m - 2) * (m - 3), 12)};
}

ClassSolution solve_xi_eta(const Quadruple& q) {
  if (const auto chk = validate_quadruple(q); !chk.valid()) throw std::invalid_argument(chk.reason);
  const int n = q.n;
  const int s = q.s;
  const int cap = 4 * n;
  const auto lab = labels_of(q);
  ClassSolution sol;

  // Total flow identity: sum of all outflows equals sum_{k<n} beta^k.
  DeltaPoly xi_s = geometric_sum(n, cap);
  for (int j = 1; j <= n; ++j) {
    if (j != s) xi_s -= psi_of(lab[at(j)], n);
  }
  sol.xi[s] = xi_s;
  sol.y_s = xi_s - beta_power(n - 1, cap);

  // Row of pi(s): xi_s + eta_s = Phi(pi(s)).
  DeltaPoly eta = phi_of(lab[at(q.pi[at(s)])], n) - xi_s;
  sol.eta[s] = eta;
  const int pred_s = cyc_prev(s, n);
  for (int i = cyc_next(s, n); i != pred_s; i = cyc_next(i, n)) {
    eta += phi_of(lab[at(q.pi[at(i)])], n) - psi_of(lab[at(i)], n);
    sol.eta[i] = eta;
    sol.xi[i] = phi_of(lab[at(q.pi[at(i)])], n) - eta;
  }
  // Outflow of s-1: xi_{s-1} + eta_{s-2}.
  sol.xi[pred_s] = psi_of(lab[at(pred_s)], n) - sol.eta.at(cyc_prev(pred_s, n));
  for (const auto& r : class_residuals(q, sol)) {
    if (!r.is_zero()) throw std::logic_error("reduced system not satisfied: " + format_quadruple(q));
  }
  return sol;
}

std::vector<DeltaPoly> class_residuals(const Quadruple& q, const ClassSolution& sol) {
  const int n = q.n;
  const int s = q.s;
  const auto lab = labels_of(q);
  const auto inv = inverse(q.pi);
  std::vector<DeltaPoly> out;
  out.push_back(sol.xi.at(s) - beta_power(1) * sol.xi.at(cyc_prev(s, n)));
  for (int k = 1; k <= n; ++k) {
    if (k == s) continue;
    const int src = inv[at(k)];
    out.push_back(sol.xi.at(src) + sol.eta.at(src) - phi_of(lab[at(k)], n));
  }
  for (int j = 1; j <= n; ++j) {
    if (j == s) continue;
    out.push_back(sol.xi.at(j) + sol.eta.at(cyc_prev(j, n)) - psi_of(lab[at(j)], n));
  }
  out.push_back(sol.xi.at(s) - sol.y_s - beta_power(n - 1));
  return out;
}

bool eta_criterion(const Quadruple& q, const ClassSolution& sol) {
  for (const auto& [i, e] : sol.eta) {
    if (sign_at_one_minus(e) == SignClass::Negative) return false;
  }
  const DeltaPoly& xs = sol.xi.at(q.s);
  return sign_at_one_minus(xs - beta_power(q.n - 1)) != SignClass::Negative &&
         sign_at_one_minus(beta_power(1) - xs) != SignClass::Negative;
}

std::vector<int> window_order(const Quadruple& q) {
  std::vector<int> out;
  const int stop = cyc_prev(q.s, q.n);
  for (int i = cyc_next(q.s, q.n); i != stop; i = cyc_next(i, q.n)) out.push_back(i);
  return out;
}

std::vector<int> index_window(const Quadruple& q, int i) {
  require_index(q, i);
  std::vector<int> out;
  for (int j = cyc_next(q.s, q.n);; j = cyc_next(j, q.n)) {
    out.push_back(j);
    if (j == i) break;
  }
  return out;
}

Counters counters(const Quadruple& q, int i) {
  const auto lab = labels_of(q);
  Counters c;
  for (int j : index_window(q, i)) ++c.by_class[static_cast<std::size_t>(classify(lab[at(j)], lab[at(q.pi[at(j)])]))];
  return c;
}

int excess(const Quadruple& q, int i) {
  const Counters c = counters(q, i);
  return c[WClass::UL] + c[WClass::UR] + c[WClass::RL] - c[WClass::LU];
}

std::optional<int> i_star(const Quadruple& q) {
  const auto lab = labels_of(q);
  if (lab[at(q.pi[at(q.s)])] != Label::U) return std::nullopt;
  const Label before = lab[at(cyc_prev(q.s, q.n))];
  if (before != Label::R && before != Label::U) return std::nullopt;
  for (int i : window_order(q)) {
    if (excess(q, i) == 1) return i;
  }
  return std::nullopt;
}

bool check_char_general(const Quadruple& q) {
  const int n = q.n;
  if (static_cast<int>(q.U.size()) != (n - 2) / 2 || static_cast<int>(q.L.size()) != (n - 1) / 2) return false;
  const auto lab = labels_of(q);
  if (lab[at(q.pi[at(q.s)])] != Label::U) return false;
  long long sum = alpha_s(n).first;
  for (int i : window_order(q)) {
    sum += alphas(classify(lab[at(i)], lab[at(q.pi[at(i)])]), n).first;
    if (sum < 0) return false;
  }
  return true;
}

bool check_char_parity_raw(int n, int s, std::span<const int> pi, std::span<const int> inv,
                           std::span<const Label> label) {
  int nu = 0, nl = 0;
  for (int v = 2; v <= n; ++v) {
    nu += label[at(v)] == Label::U;
    nl += label[at(v)] == Label::L;
  }
  const int k = n / 2;
  const bool odd = n % 2 == 1;
  if (odd ? (nu != k - 1 || nl != k) : (nu != k - 1 || nl != k - 1)) return false;
  if (label[at(pi[at(s)])] != Label::U) return false;
  const int pred_s = cyc_prev(s, n);
  const Label before = label[at(pred_s)];
  if (odd ? before != Label::R : (before != Label::R && before != Label::U)) return false;

  int f = 0;
  int star = 0;
  int prefix = 0;        // |I(i*)|
  int prefix_marks = 0;  // |I(i*) & {1, pi^-1(1)}|
  for (int i = cyc_next(s, n); i != pred_s; i = cyc_next(i, n)) {
    const Label a = label[at(i)];
    const Label b = label[at(pi[at(i)])];
    if ((a == Label::U && (b == Label::L || b == Label::R)) || (a == Label::R && b == Label::L)) {
      ++f;
    } else if (a == Label::L && b == Label::U) {
      --f;
    }
    if (star == 0) {
      ++prefix;
      prefix_marks += (i == 1 || i == inv[1]);
      if (f == 1) star = i;
    } else if (f > 1) {
      return false;
    }
  }
  if (star == 0) return false;
  if (odd) return star == n;
  return 2 * (prefix - prefix_marks) >= n - 4;
}

bool check_char_parity(const Quadruple& q) {
  if (!validate_quadruple(q).valid()) return false;
  const auto lab = labels_of(q);
  const auto inv = inverse(q.pi);
  return check_char_parity_raw(q.n, q.s, q.pi, inv, lab);
}

std::pair<Digraph, Basis> decode_to_basis(const Quadruple& q) {
  if (const auto chk = validate_quadruple(q); !chk.valid()) throw std::invalid_argument(chk.reason);
  Basis b;
  const int pred_s = cyc_prev(q.s, q.n);
  for (int i = 1; i <= q.n; ++i) {
    b.A.push_back({i, q.pi[at(i)]});
    if (i != pred_s) b.A.push_back({cyc_next(i, q.n), q.pi[at(i)]});
  }
  b.Y = {q.s};
  b.L = q.L;
  b.U = q.U;
  return {complete_digraph(q.n), canonical(std::move(b))};
}

bool polytope_feasible(const Quadruple& q) {
  const auto [g, b] = decode_to_basis(q);
  const auto sol = solve_basis(build_system(g), b);
  return sol && is_ultimately_feasible(*sol, b);
}

ClassOracle::ClassOracle(int n) : n_(n), sys_(build_system(complete_digraph(n))) {}

bool ClassOracle::feasible(const Quadruple& q) {
  if (q.n != n_) throw std::invalid_argument("quadruple size does not match the oracle");
  auto key = std::make_pair(q.s, q.pi);
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    const auto [g, b] = decode_to_basis(q);
    it = cache_.emplace(std::move(key), BasisFamily::solve(sys_, b.A, b.Y)).first;
  }
  if (!it->second) return false;
  const auto& fam = *it->second;
  std::uint64_t mask = 0;
  for (std::size_t k = 0; k < fam.free_nodes().size(); ++k) {
    if (contains(q.U, fam.free_nodes()[k])) mask |= std::uint64_t{1} << k;
  }
  return fam.is_feasible(mask);
}

}  // namespace hamwedge

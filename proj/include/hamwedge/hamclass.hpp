// Copyright 2026 The hamwedge Authors
// SPDX-License-Identifier: Apache-2.0
//
// Bases of the complete digraph whose split-graph image is a Hamilton cycle
// with a single basic slack, encoded as (s, pi, L, U). Node 1 plays the role
// "R"; node s carries the basic slack.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hamwedge/exactnum.hpp"
#include "hamwedge/graph.hpp"
#include "hamwedge/polytope.hpp"

namespace hamwedge {

enum class Label : unsigned char { R, L, U, S };

struct Quadruple {
  int n = 0;
  int s = 0;
  Permutation pi;
  std::vector<int> L, U;
};

enum class QuadrupleDefect {
  None,
  TooFewNodes,
  SlackNodeOutOfRange,
  NotAPermutation,
  FixedPoint,
  SuccessorRule,
  BadPartition
};

struct QuadrupleCheck {
  QuadrupleDefect defect = QuadrupleDefect::None;
  std::string reason;
  bool valid() const { return defect == QuadrupleDefect::None; }
};

QuadrupleCheck validate_quadruple(const Quadruple& q);
// "n=8 s=5 pi=(16453)(287) L=2,6,7 U=3,4,8"
Quadruple parse_quadruple(std::string_view text);
std::string format_quadruple(const Quadruple& q);

// Cyclic successor/predecessor on 1..n.
inline int cyc_next(int i, int n) { return i == n ? 1 : i + 1; }
inline int cyc_prev(int i, int n) { return i == 1 ? n : i - 1; }

// Per-node labels, index 0 unused.
std::vector<Label> labels_of(const Quadruple& q);

enum class WClass { UU, UL, LU, LL, RU, RL, UR, LR };
const char* to_string(WClass c);

// Domain of the per-index quantities: i not in {s, s-1}.
WClass w_class(const Quadruple& q, int i);
DeltaPoly gamma(const Quadruple& q, int i);

struct AlphaPair {
  long long first;
  Rational second;
  friend bool operator==(const AlphaPair&, const AlphaPair&) = default;
};
AlphaPair alphas(const Quadruple& q, int i);
AlphaPair alphas(WClass c, int n);
AlphaPair alpha_s(int n);

// Flow on thick arcs (i, pi(i)) and thin arcs (i+1, pi(i)); all values are
// polynomials in d.
struct ClassSolution {
  std::map<int, DeltaPoly> xi;
  std::map<int, DeltaPoly> eta;
  DeltaPoly y_s;
};

ClassSolution solve_xi_eta(const Quadruple& q);
// Every equation of the reduced system, as residual polynomials.
std::vector<DeltaPoly> class_residuals(const Quadruple& q, const ClassSolution& sol);
// All eta >= 0 and beta^(n-1) <= xi_s <= beta near beta = 1.
bool eta_criterion(const Quadruple& q, const ClassSolution& sol);

// s+1, ..., n, 1, ..., s-2.
std::vector<int> window_order(const Quadruple& q);
// {s+1, ..., i} cyclically.
std::vector<int> index_window(const Quadruple& q, int i);

struct Counters {
  std::array<int, 8> by_class{};
  int operator[](WClass c) const { return by_class[static_cast<std::size_t>(c)]; }
};
Counters counters(const Quadruple& q, int i);
// N_UL + N_UR + N_RL - N_LU over I(i).
int excess(const Quadruple& q, int i);
std::optional<int> i_star(const Quadruple& q);

bool check_char_general(const Quadruple& q);
bool check_char_parity(const Quadruple& q);

// Allocation-free form of check_char_parity for enumeration; `inv` is the
// inverse permutation and `label` the per-node labels.
bool check_char_parity_raw(int n, int s, std::span<const int> pi, std::span<const int> inv,
                           std::span<const Label> label);

// Thick arcs, thin arcs (i+1, pi(i)) for i != s-1, Y = {s}.
std::pair<Digraph, Basis> decode_to_basis(const Quadruple& q);

// Feasibility of the decoded basis by the full polytope solve.
bool polytope_feasible(const Quadruple& q);

// The same oracle with one elimination per (s, pi) shared by all L/U splits.
class ClassOracle {
 public:
  explicit ClassOracle(int n);
  bool feasible(const Quadruple& q);

 private:
  int n_;
  ConstraintSystem sys_;
  std::map<std::pair<int, Permutation>, std::optional<BasisFamily>> cache_;
};

}  // namespace hamwedge

// Copyright 2026 The hamwedge Authors
// SPDX-License-Identifier: Apache-2.0
//
// The wedge-constrained flow polytope of a digraph, exact basic solutions as
// rational functions of d = 1 - beta, and feasibility in the limit beta -> 1-.

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hamwedge/exactnum.hpp"
#include "hamwedge/graph.hpp"

namespace hamwedge {

using PolyMatrix = Eigen::Matrix<DeltaPoly, Eigen::Dynamic, Eigen::Dynamic>;
using PolyVector = Eigen::Matrix<DeltaPoly, Eigen::Dynamic, 1>;

// Row layout for n nodes and m arcs (0-based):
//   0            extraction at node 1:   out(1) - beta*in(1) = 1 - beta^n
//   1 .. n-1     conservation, node i+1: out(i) - beta*in(i) = 0
//   n            injection at node 1:    out(1) = 1
//   n+1 .. 2n-1  wedge row, node i-n+1:  out(i) - y_i = beta^(n-1)
// Columns: arcs in sorted order, then y_2 .. y_n.
struct ConstraintSystem {
  Digraph graph;
  int n = 0;
  int degree_cap = 0;
  PolyMatrix matrix;
  PolyVector rhs;

  Eigen::Index arc_column(const Arc& a) const;
  Eigen::Index slack_column(int i) const;
  Eigen::Index conservation_row(int i) const { return i == 1 ? 0 : i - 1; }
  Eigen::Index wedge_row(int i) const { return n + i - 1; }
  std::string variable_name(Eigen::Index col) const;
};

ConstraintSystem build_system(const Digraph& g);

class BasisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Basis {
  std::vector<Arc> A;
  std::vector<int> Y, L, U;
  friend bool operator==(const Basis&, const Basis&) = default;
  friend auto operator<=>(const Basis&, const Basis&) = default;
};

// Sorts all four sets.
Basis canonical(Basis b);
// Throws BasisError unless |A| + |Y| = 2n, {Y, L, U} partitions 2..n, A is a
// subset of the arcs of g.
void validate_basis(const Basis& b, const Digraph& g);
// "A: i-j,i-j ; Y: i,j ; L: i ; U: i"
Basis parse_basis(std::string_view text);
std::string format_basis(const Basis& b);

struct BasicSolution {
  Basis basis;
  int n = 0;
  std::map<Arc, RatFunc> x;
  std::map<int, RatFunc> y;
  DeltaPoly det;

  // Extended by 0 on non-basic arcs.
  RatFunc x_value(const Arc& a) const;
  // Non-basic slacks at their bounds: 0 on L, beta - beta^(n-1) on U.
  RatFunc y_value(int i) const;
};

// Upper bound beta - beta^(n-1) of every slack.
DeltaPoly slack_upper_bound(int n);

// nullopt iff the basic matrix is singular. Throws BasisError on malformed bases.
std::optional<BasicSolution> solve_basis(const ConstraintSystem& sys, const Basis& basis);

// Residuals row * (x, y) - rhs for all 2n rows.
std::vector<RatFunc> residuals(const ConstraintSystem& sys, const BasicSolution& sol);

bool is_ultimately_feasible(const BasicSolution& sol, const Basis& basis);
// Same test at a concrete point d (exact rational evaluation).
bool is_feasible_at(const BasicSolution& sol, const Basis& basis, const Rational& d);

enum class ArcClass { Thick, Thin, Intermediate };
const char* to_string(ArcClass c);
std::map<Arc, ArcClass> classify_arcs(const BasicSolution& sol);

RatFunc inflow(const BasicSolution& sol, int i);
RatFunc outflow(const BasicSolution& sol, int i);

bool is_quasi_hamiltonian(const Digraph& g, const BasicSolution& sol);

// The extreme point of a Hamilton cycle: the t-th arc from node 1 carries
// beta^t. All slacks are reported in y. `cycle` lists the nodes in order.
BasicSolution hamiltonian_extreme_point(const Digraph& g, const std::vector<int>& cycle);

struct StructureReport {
  bool no_intermediate_arcs = false;
  bool thick_arcs_form_cycle_cover = false;
  bool all_nodes_reachable_from_1 = false;
  bool slack_partition_bounded = false;
  bool good_augmented_spanning_tree = false;
  bool thick_arcs_unique_matching = false;
  bool thick_and_slack_arcs_form_paths = false;

  bool all() const;
  std::vector<std::pair<std::string, bool>> fields() const;
};

// Throws BasisError unless the basis is ultimately feasible.
StructureReport verify_structure(const Digraph& g, const Basis& basis, const BasicSolution& sol);

// All L/U splits for a fixed basic set (A, Y) from one elimination with one
// right-hand side per free slack.
class BasisFamily {
 public:
  static std::optional<BasisFamily> solve(const ConstraintSystem& sys, std::vector<Arc> A,
                                          std::vector<int> Y);

  const std::vector<int>& free_nodes() const { return free_; }
  std::size_t split_count() const { return std::size_t{1} << free_.size(); }
  // Bit k of upper_mask puts free_nodes()[k] in U, otherwise in L.
  Basis basis(std::uint64_t upper_mask) const;
  bool is_feasible(std::uint64_t upper_mask) const;
  BasicSolution solution(std::uint64_t upper_mask) const;

 private:
  int n_ = 0;
  int cap_ = 0;
  std::vector<Arc> A_;
  std::vector<int> Y_, free_;
  IntDeltaPoly det_;
  IntDeltaPoly upper_times_det_;
  // Per basic variable: base numerator, then per free node the numerator of
  // the unit right-hand side already scaled by the upper bound.
  std::vector<IntDeltaPoly> base_;
  std::vector<std::vector<IntDeltaPoly>> unit_;

  IntDeltaPoly numerator(std::size_t var, std::uint64_t upper_mask) const;
};

}  // namespace hamwedge

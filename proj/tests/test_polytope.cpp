// Copyright 2026 The hamwedge Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "hamwedge/hamclass.hpp"
#include "hamwedge/polytope.hpp"
#include "oracles.hpp"

using namespace hamwedge;

namespace {

Digraph six_node_graph() {
  return Digraph(6, {{1, 2}, {2, 6}, {3, 2}, {3, 4}, {3, 5}, {4, 3}, {5, 4}, {6, 1}, {6, 3}, {6, 5}});
}
Basis six_node_basis() { return canonical(parse_basis("A: 1-2,2-6,6-1,3-5,5-4,4-3,6-5,3-4 ; Y: 2,4,5,6 ; L: 3 ; U:")); }

RatFunc b(int k) { return RatFunc(beta_power(k)); }

// Values by Cramer's rule with cofactor determinants.
void check_against_cramer(const ConstraintSystem& sys, const Basis& basis, const std::optional<BasicSolution>& sol) {
  const int n = sys.n;
  std::vector<Eigen::Index> cols;
  for (const Arc& a : basis.A) cols.push_back(sys.arc_column(a));
  for (int i : basis.Y) cols.push_back(sys.slack_column(i));
  std::vector<DeltaPoly> rhs;
  for (Eigen::Index r = 0; r < 2 * n; ++r) rhs.push_back(sys.rhs(r));
  for (int i : basis.U) rhs[static_cast<std::size_t>(sys.wedge_row(i))] += slack_upper_bound(n);
  auto matrix_with = [&](std::optional<std::size_t> replace) {
    std::vector<std::vector<DeltaPoly>> m(static_cast<std::size_t>(2 * n));
    for (Eigen::Index r = 0; r < 2 * n; ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        m[static_cast<std::size_t>(r)].push_back(replace == c ? rhs[static_cast<std::size_t>(r)]
                                                              : DeltaPoly(sys.matrix(r, cols[c])));
      }
    }
    return m;
  };
  const DeltaPoly det = oracle::cofactor_det(matrix_with(std::nullopt));
  if (det.is_zero()) {
    CHECK_FALSE(sol.has_value());
    return;
  }
  REQUIRE(sol.has_value());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const RatFunc expect = RatFunc(oracle::cofactor_det(matrix_with(c))) / RatFunc(det);
    if (c < basis.A.size()) {
      CHECK(sol->x.at(basis.A[c]) == expect);
    } else {
      CHECK(sol->y.at(basis.Y[c - basis.A.size()]) == expect);
    }
  }
}

RatFunc total_flow(const BasicSolution& s) {
  RatFunc t(0);
  for (const auto& [a, v] : s.x) t += v;
  return t;
}

}  // namespace

TEST_CASE("two-node constraint system") {
  const ConstraintSystem sys = build_system(Digraph(2, {{1, 2}, {2, 1}}));
  CHECK(sys.matrix.rows() == 4);
  CHECK(sys.matrix.cols() == 3);
  const auto x12 = sys.arc_column({1, 2}), x21 = sys.arc_column({2, 1}), y2 = sys.slack_column(2);
  CHECK(sys.matrix(0, x12) == DeltaPoly(1));
  CHECK(sys.matrix(0, x21) == -beta_power(1));
  CHECK(sys.rhs(0) == DeltaPoly(1) - beta_power(2));
  CHECK(sys.matrix(2, x12) == DeltaPoly(1));
  CHECK(sys.rhs(2) == DeltaPoly(1));
  CHECK(sys.matrix(3, x21) == DeltaPoly(1));
  CHECK(sys.matrix(3, y2) == DeltaPoly(-1));
  CHECK(sys.rhs(3) == beta_power(1));
  CHECK(sys.variable_name(x12) == "x_1_2");
}

TEST_CASE("system shape and coefficients") {
  const ConstraintSystem sys = build_system(six_node_graph());
  CHECK(sys.matrix.rows() == 12);
  CHECK(sys.matrix.cols() == 15);
  for (Eigen::Index r = 0; r < sys.matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < sys.matrix.cols(); ++c) {
      const DeltaPoly& v = sys.matrix(r, c);
      CHECK((v.is_zero() || v == DeltaPoly(1) || v == DeltaPoly(-1) || v == -beta_power(1)));
    }
  }
  // Summing the extraction and conservation rows gives (1 - beta) per arc and 1 - beta^n on the right.
  for (Eigen::Index c = 0; c < sys.matrix.cols(); ++c) {
    DeltaPoly sum;
    for (Eigen::Index r = 0; r < 6; ++r) sum += sys.matrix(r, c);
    CHECK(sum == (c < 10 ? delta_poly() : DeltaPoly()));
  }
  DeltaPoly rhs;
  for (Eigen::Index r = 0; r < 6; ++r) rhs += sys.rhs(r);
  CHECK(rhs == DeltaPoly(1) - beta_power(6));
}

TEST_CASE("basis text") {
  const Basis bb = six_node_basis();
  CHECK(format_basis(bb) == "A: 1-2,2-6,3-4,3-5,4-3,5-4,6-1,6-5 ; Y: 2,4,5,6 ; L: 3 ; U:");
  CHECK(parse_basis(format_basis(bb)) == bb);
  CHECK_THROWS_AS(parse_basis("A: 1-2 ; Y: x"), BasisError);
  CHECK_THROWS_AS(validate_basis(parse_basis("A: 1-2,2-6 ; Y: 2 ; L: 3,4,5,6 ; U:"), six_node_graph()), BasisError);
  CHECK_THROWS_AS(validate_basis(parse_basis("A: 1-2,2-6,6-1,3-5,5-4,4-3,6-5,1-3 ; Y: 2,4,5,6 ; L: 3 ; U:"),
                                 six_node_graph()),
                  BasisError);
  CHECK_THROWS_AS(validate_basis(parse_basis("A: 1-2,2-6,6-1,3-5,5-4,4-3,6-5,3-4 ; Y: 2,4,5,6 ; L: 3 ; U: 3"),
                                 six_node_graph()),
                  BasisError);
}

TEST_CASE("the six-node feasible basis solves to its labelled values") {
  const Digraph g = six_node_graph();
  const ConstraintSystem sys = build_system(g);
  const Basis basis = six_node_basis();
  const auto sol = solve_basis(sys, basis);
  REQUIRE(sol);
  CHECK(sol->x.at({1, 2}) == b(0));
  CHECK(sol->x.at({2, 6}) == b(1));
  CHECK(sol->x.at({6, 1}) == b(5));
  CHECK(sol->x.at({3, 5}) == b(5));
  CHECK(sol->x.at({5, 4}) == b(3));
  CHECK(sol->x.at({4, 3}) == b(4));
  CHECK(sol->x.at({6, 5}) == b(2) - b(5));
  CHECK(sol->x.at({3, 4}) == RatFunc(0));
  CHECK(sol->y.at(2) == b(1) - b(5));
  CHECK(sol->y.at(4) == b(4) - b(5));
  CHECK(sol->y.at(5) == b(3) - b(5));
  CHECK(sol->y.at(6) == b(2) - b(5));
  CHECK(sol->y_value(3) == RatFunc(0));
  CHECK(sol->x_value({6, 3}) == RatFunc(0));
  for (const auto& r : residuals(sys, *sol)) CHECK(r.is_zero());
  CHECK(is_ultimately_feasible(*sol, basis));

  const auto cls = classify_arcs(*sol);
  int thick = 0, thin = 0;
  for (const auto& [a, c] : cls) {
    thick += c == ArcClass::Thick;
    thin += c == ArcClass::Thin;
  }
  CHECK(thick == 6);
  CHECK(thin == 2);
  CHECK(cls.at({6, 5}) == ArcClass::Thin);
  CHECK(cls.at({3, 4}) == ArcClass::Thin);

  const StructureReport rep = verify_structure(g, basis, *sol);
  for (const auto& [name, ok] : rep.fields()) CHECK_MESSAGE(ok, name);
  CHECK(rep.fields().size() == 7);
  CHECK(total_flow(*sol) == RatFunc(geometric_sum(6)));
  CHECK_FALSE(is_quasi_hamiltonian(g, *sol));

  // Moving node 3 to U breaks feasibility; the structure report refuses it.
  Basis moved = basis;
  moved.L.clear();
  moved.U = {3};
  const auto bad = solve_basis(sys, moved);
  REQUIRE(bad);
  CHECK_FALSE(is_ultimately_feasible(*bad, moved));
  CHECK_THROWS_AS(verify_structure(g, moved, *bad), BasisError);
}

TEST_CASE("Hamiltonian extreme point") {
  const Digraph g = complete_digraph(4);
  const BasicSolution h = hamiltonian_extreme_point(g, {1, 2, 3, 4});
  CHECK(h.x.at({1, 2}) == b(0));
  CHECK(h.x.at({2, 3}) == b(1));
  CHECK(h.x.at({3, 4}) == b(2));
  CHECK(h.x.at({4, 1}) == b(3));
  CHECK(h.y.at(2) == b(1) - b(3));
  CHECK(h.y.at(3) == b(2) - b(3));
  CHECK(h.y.at(4) == RatFunc(0));
  for (const auto& r : residuals(build_system(g), h)) CHECK(r.is_zero());
  for (int i = 2; i <= 4; ++i) {
    CHECK(compare_at_one_minus(outflow(h, i), b(3)) != Ordering::Less);
    CHECK(compare_at_one_minus(outflow(h, i), b(1)) != Ordering::Greater);
  }
  for (const auto& [a, c] : classify_arcs(h)) CHECK(c == ArcClass::Thick);
  const BasicSolution h5 = hamiltonian_extreme_point(complete_digraph(5), {1, 3, 5, 2, 4});
  CHECK(is_quasi_hamiltonian(complete_digraph(5), h5));
  CHECK(h5.x.at({1, 3}) == b(0));
  CHECK(h5.x.at({4, 1}) == b(4));
  CHECK_THROWS(hamiltonian_extreme_point(g, {1, 2, 3}));
}

TEST_CASE("solutions agree with Cramer's rule on small systems") {
  std::mt19937_64 rng(31);
  int singular = 0, solved = 0;
  for (int t = 0; t < 60; ++t) {
    const Digraph g = random_graph(3, Rational(2, 3), rng());
    const ConstraintSystem sys = build_system(g);
    const auto arcs = g.arcs();
    // Random Y, random A of the right size, random L/U for the rest.
    Basis basis;
    std::vector<int> nodes{2, 3};
    for (int i : nodes) {
      const int r = static_cast<int>(rng() % 3);
      (r == 0 ? basis.Y : r == 1 ? basis.L : basis.U).push_back(i);
    }
    const std::size_t need = 6 - basis.Y.size();
    if (need > arcs.size()) continue;
    std::vector<Arc> pool(arcs.begin(), arcs.end());
    std::shuffle(pool.begin(), pool.end(), rng);
    basis.A.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(need));
    basis = canonical(basis);
    const auto sol = solve_basis(sys, basis);
    check_against_cramer(sys, basis, sol);
    (sol ? solved : singular)++;
    if (sol) {
      for (const auto& r : residuals(sys, *sol)) CHECK(r.is_zero());
    }
  }
  CHECK(solved > 0);
  CHECK(singular > 0);
}

TEST_CASE("Cramer check on the four-node example") {
  const Digraph g = parse_digraph("4 7\n1 2\n2 3\n3 2\n4 3\n2 1\n1 3\n2 4").graph;
  const ConstraintSystem sys = build_system(g);
  const Basis basis = canonical(parse_basis("A: 1-2,2-3,3-2,4-3,2-1,1-3,2-4 ; Y: 3 ; L: 2 ; U: 4"));
  check_against_cramer(sys, basis, solve_basis(sys, basis));
}

TEST_CASE("basis family matches individual solves") {
  const Digraph g = six_node_graph();
  const ConstraintSystem sys = build_system(g);
  const Basis base = six_node_basis();
  const auto fam = BasisFamily::solve(sys, base.A, base.Y);
  REQUIRE(fam);
  CHECK(fam->split_count() == 2);
  for (std::uint64_t mask = 0; mask < fam->split_count(); ++mask) {
    const Basis bb = fam->basis(mask);
    const auto sol = solve_basis(sys, bb);
    REQUIRE(sol);
    CHECK(fam->is_feasible(mask) == is_ultimately_feasible(*sol, bb));
    const BasicSolution fs = fam->solution(mask);
    CHECK(fs.x == sol->x);
    CHECK(fs.y == sol->y);
  }
  std::mt19937_64 rng(32);
  for (int t = 0; t < 30; ++t) {
    const Digraph h = random_graph(4, Rational(1, 2), rng());
    const ConstraintSystem hs = build_system(h);
    std::vector<Arc> pool(h.arcs().begin(), h.arcs().end());
    if (pool.size() < 6) continue;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<Arc> A(pool.begin(), pool.begin() + 6);
    std::sort(A.begin(), A.end());
    const std::vector<int> Y{2, 4};
    const auto f = BasisFamily::solve(hs, A, Y);
    const auto direct = solve_basis(hs, Basis{A, Y, {3}, {}});
    CHECK(f.has_value() == direct.has_value());
    if (!f) continue;
    for (std::uint64_t mask = 0; mask < f->split_count(); ++mask) {
      const Basis bb = f->basis(mask);
      const auto s = solve_basis(hs, bb);
      REQUIRE(s);
      CHECK(f->is_feasible(mask) == is_ultimately_feasible(*s, bb));
    }
  }
}

TEST_CASE("decoded class bases") {
  struct Case {
    Quadruple q;
    bool feasible;
    bool quasi;
    std::size_t thick_cycles;
  };
  for (const auto& c : {Case{oracle::two_cycle_feasible(), true, false, 2}, Case{oracle::hamiltonian_feasible(), true, true, 1},
                        Case{oracle::negative_sum_infeasible(), false, false, 2}}) {
    const auto [g, basis] = decode_to_basis(c.q);
    CHECK(basis.A.size() == 11);
    CHECK(basis.Y == std::vector<int>{c.q.s});
    const auto sol = solve_basis(build_system(g), basis);
    REQUIRE(sol);
    CHECK(is_ultimately_feasible(*sol, basis) == c.feasible);
    for (const Rational d : {Rational(1, 1024), Rational(1, 1048576)}) {
      CHECK(is_feasible_at(*sol, basis, d) == c.feasible);
    }
    if (!c.feasible) continue;
    CHECK(is_quasi_hamiltonian(g, *sol) == c.quasi);
    const StructureReport rep = verify_structure(g, basis, *sol);
    CHECK(rep.all());
    CHECK(total_flow(*sol) == RatFunc(geometric_sum(6)));
    std::vector<Arc> thick;
    for (const auto& [a, k] : classify_arcs(*sol)) {
      if (k == ArcClass::Thick) thick.push_back(a);
    }
    Permutation pi(7, 0);
    for (const Arc& a : thick) pi[static_cast<std::size_t>(a.from)] = a.to;
    CHECK(pi == c.q.pi);
    CHECK(cycles_of(pi).size() == c.thick_cycles);
    // Inflow/outflow at the bounds of L and U.
    for (int i : c.q.L) {
      CHECK(inflow(*sol, i) == b(4));
      CHECK(outflow(*sol, i) == b(5));
    }
    for (int i : c.q.U) {
      CHECK(inflow(*sol, i) == b(0));
      CHECK(outflow(*sol, i) == b(1));
    }
    RatFunc psi(0);
    for (int i = 1; i <= 6; ++i) psi += outflow(*sol, i);
    CHECK(psi == RatFunc(geometric_sum(6)));
  }
}

TEST_CASE("symbolic feasibility agrees with evaluation near beta = 1") {
  const Digraph g = six_node_graph();
  const ConstraintSystem sys = build_system(g);
  const Basis base = six_node_basis();
  for (const auto& bb : {base, Basis{base.A, base.Y, {}, {3}}}) {
    const auto sol = solve_basis(sys, bb);
    REQUIRE(sol);
    for (const Rational d : {Rational(1, 1024), Rational(1, 1048576)}) {
      CHECK(is_feasible_at(*sol, bb, d) == is_ultimately_feasible(*sol, bb));
    }
  }
}

TEST_CASE("inflow and outflow reject unknown nodes") {
  const auto sol = solve_basis(build_system(six_node_graph()), six_node_basis());
  REQUIRE(sol);
  CHECK_THROWS_AS(inflow(*sol, 7), std::out_of_range);
  CHECK_THROWS_AS(outflow(*sol, 0), std::out_of_range);
}

// Copyright 2026 The hamwedge Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "hamwedge/bareiss.hpp"
#include "oracles.hpp"

using namespace hamwedge;

namespace {

using IntMat = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;
using PolyMat = Eigen::Matrix<IntDeltaPoly, Eigen::Dynamic, Eigen::Dynamic>;

template <typename M>
auto to_rows(const M& m) {
  std::vector<std::vector<typename M::Scalar>> rows(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) rows[static_cast<std::size_t>(i)].push_back(m(i, j));
  }
  return rows;
}

// Cramer numerator for unknown `col` and right-hand side `r`.
template <typename M>
typename M::Scalar cramer(const M& a, const M& b, Eigen::Index col, Eigen::Index r) {
  M replaced = a;
  replaced.col(col) = b.col(r);
  return oracle::cofactor_det(to_rows(replaced));
}

IntMat random_int(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, int span, double zero_rate) {
  std::uniform_int_distribution<int> v(-span, span);
  std::bernoulli_distribution z(zero_rate);
  IntMat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = z(rng) ? 0 : v(rng);
  }
  return m;
}

PolyMat random_poly(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::uniform_int_distribution<int> v(-3, 3), deg(0, 2);
  std::bernoulli_distribution z(0.3);
  PolyMat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      std::vector<Integer> c(static_cast<std::size_t>(deg(rng)) + 1);
      for (auto& x : c) x = z(rng) ? 0 : v(rng);
      m(i, j) = IntDeltaPoly(c);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("integer determinants agree with cofactor expansion") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 300; ++t) {
    const Eigen::Index n = 1 + t % 6;
    const IntMat a = random_int(rng, n, n, 6, 0.35);
    CHECK(fraction_free_determinant(a) == oracle::cofactor_det(to_rows(a)));
  }
}

TEST_CASE("integer solves agree with Cramer's rule") {
  std::mt19937_64 rng(22);
  int solved = 0;
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = 1 + t % 5;
    const IntMat a = random_int(rng, n, n, 5, 0.3), b = random_int(rng, n, 2, 5, 0.2);
    const auto sol = solve_fraction_free(a, b);
    const Integer det = oracle::cofactor_det(to_rows(a));
    if (det == 0) {
      CHECK_FALSE(sol.has_value());
      continue;
    }
    REQUIRE(sol);
    ++solved;
    CHECK(sol->determinant == det);
    for (Eigen::Index r = 0; r < 2; ++r) {
      for (Eigen::Index i = 0; i < n; ++i) CHECK(sol->numerators(i, r) == cramer(a, b, i, r));
    }
  }
  CHECK(solved > 100);
}

TEST_CASE("row swaps flip the determinant sign") {
  IntMat p = IntMat::Zero(3, 3);
  p(0, 1) = 1;
  p(1, 0) = 1;
  p(2, 2) = 1;
  CHECK(fraction_free_determinant(p) == -1);
  IntMat q = IntMat::Zero(3, 3);
  q(0, 2) = 2;
  q(1, 0) = 3;
  q(2, 1) = 5;
  CHECK(fraction_free_determinant(q) == 30);
}

TEST_CASE("singular matrices report no solution") {
  IntMat a(3, 3);
  a << 1, 2, 3, 2, 4, 6, 0, 1, 1;
  IntMat b(3, 1);
  b << 1, 1, 1;
  CHECK_FALSE(solve_fraction_free(a, b).has_value());
  CHECK(fraction_free_determinant(a) == 0);
}

TEST_CASE("polynomial determinants agree with cofactor expansion") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 60; ++t) {
    const Eigen::Index n = 1 + t % 5;
    const PolyMat a = random_poly(rng, n, n), b = random_poly(rng, n, 1);
    const IntDeltaPoly det = oracle::cofactor_det(to_rows(a));
    const auto sol = solve_fraction_free(a, b);
    if (det.is_zero()) {
      CHECK_FALSE(sol.has_value());
      continue;
    }
    REQUIRE(sol);
    CHECK(sol->determinant == det);
    for (Eigen::Index i = 0; i < n; ++i) CHECK(sol->numerators(i, 0) == cramer(a, b, i, 0));
  }
}

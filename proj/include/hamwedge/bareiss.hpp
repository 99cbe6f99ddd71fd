// Copyright 2026 The hamwedge Authors
// SPDX-License-Identifier: Apache-2.0
//
// Fraction-free (Bareiss) elimination over an integral domain. Works for any
// Eigen dense matrix whose scalar provides ring operators plus the two
// customization points ff_is_zero and ff_exact_div.

#pragma once

#include <Eigen/Core>
#include <optional>
#include <utility>

#include "hamwedge/exactnum.hpp"

namespace hamwedge {

inline bool ff_is_zero(const Integer& v) { return v == 0; }
template <typename Coeff>
bool ff_is_zero(const BasicDeltaPoly<Coeff>& v) {
  return v.is_zero();
}

inline Integer ff_exact_div(const Integer& a, const Integer& b) {
  if (b == 0) throw ZeroDenominator("exact division by zero");
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) throw std::domain_error("inexact division");
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
inline IntDeltaPoly ff_exact_div(const IntDeltaPoly& a, const IntDeltaPoly& b) {
  return exact_quotient(a, b);
}

template <typename Scalar>
struct FractionFreeSolution {
  Scalar determinant;
  // determinant * A^{-1} * B, one column per right-hand side. These are the
  // Cramer numerators and lie in the ring.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> numerators;
};

// Solves A X = B for square A. Returns nullopt iff det(A) is zero. Pivot: the
// first nonzero entry at or below the diagonal in the current column.
template <typename DerivedA, typename DerivedB>
std::optional<FractionFreeSolution<typename DerivedA::Scalar>> solve_fraction_free(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = a.rows();
  const Eigen::Index k = b.cols();
  if (a.cols() != n || b.rows() != n) throw std::invalid_argument("dimension mismatch");

  Mat m(n, n + k);
  m.leftCols(n) = a;
  m.rightCols(k) = b;

  Scalar prev(1);
  bool negate = false;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && ff_is_zero(m(p, c))) ++p;
    if (p == n) return std::nullopt;
    if (p != c) {
      m.row(p).swap(m.row(c));
      negate = !negate;
    }
    const Scalar pivot = m(c, c);
    const bool unit_prev = (prev == Scalar(1));
    for (Eigen::Index i = c + 1; i < n; ++i) {
      const Scalar lead = m(i, c);
      const bool lead_zero = ff_is_zero(lead);
      for (Eigen::Index j = c + 1; j < n + k; ++j) {
        if (lead_zero && ff_is_zero(m(i, j))) continue;
        Scalar v = pivot * m(i, j);
        if (!lead_zero && !ff_is_zero(m(c, j))) v -= lead * m(c, j);
        m(i, j) = unit_prev ? std::move(v) : ff_exact_div(v, prev);
      }
      m(i, c) = Scalar(0);
    }
    prev = pivot;
  }

  const Scalar last = m(n - 1, n - 1);
  FractionFreeSolution<Scalar> out{negate ? Scalar(-last) : last, Mat(n, k)};
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      Scalar acc = last * m(i, n + r);
      for (Eigen::Index j = i + 1; j < n; ++j) {
        if (!ff_is_zero(m(i, j)) && !ff_is_zero(out.numerators(j, r))) acc -= m(i, j) * out.numerators(j, r);
      }
      out.numerators(i, r) = ff_exact_div(acc, m(i, i));
    }
    if (negate) {
      for (Eigen::Index i = 0; i < n; ++i) out.numerators(i, r) = -out.numerators(i, r);
    }
  }
  return out;
}

// Determinant by the same elimination; zero when singular.
template <typename Derived>
typename Derived::Scalar fraction_free_determinant(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> rhs(a.rows(), 0);
  auto sol = solve_fraction_free(a, rhs);
  return sol ? sol->determinant : Scalar(0);
}

}  // namespace hamwedge

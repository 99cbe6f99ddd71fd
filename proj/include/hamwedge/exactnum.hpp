// Copyright 2026 The hamwedge Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact arithmetic in the shifted variable d = 1 - beta. Polynomials are
// templated on the coefficient ring so the same type serves as a rational
// scalar (DeltaPoly) and as a fraction-free elimination scalar (IntDeltaPoly).

#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hamwedge {

using Integer = mpz_class;
using Rational = mpq_class;

// Builds a canonical rational; throws std::domain_error on a zero denominator.
Rational make_rational(const Integer& num, const Integer& den);
// Parses "a" or "a/b".
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

enum class SignClass { Negative = -1, Zero = 0, Positive = 1 };
enum class Ordering { Less, Equal, Greater };

SignClass operator*(SignClass a, SignClass b);
const char* to_string(SignClass s);
const char* to_string(Ordering o);

class DegreeCapExceeded : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class ZeroDenominator : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <typename Coeff>
struct LeadingTerm {
  int order;
  Coeff coefficient;
};

// Polynomial in d with coefficients in Coeff (mpz_class or mpq_class).
// Coefficient k multiplies d^k. Trailing zeros are always trimmed, so the zero
// polynomial has no coefficients. A nonzero cap bounds the degree; results of
// binary operations inherit the smaller nonzero cap of the operands.
template <typename Coeff>
class BasicDeltaPoly {
 public:
  BasicDeltaPoly() = default;
  BasicDeltaPoly(int constant) : BasicDeltaPoly(Coeff(constant)) {}  // NOLINT
  BasicDeltaPoly(const Coeff& constant) {                            // NOLINT
    if (sgn(constant) != 0) c_.push_back(constant);
  }
  explicit BasicDeltaPoly(std::vector<Coeff> coeffs, int cap = 0)
      : c_(std::move(coeffs)), cap_(cap) {
    trim();
    check_cap();
  }

  static BasicDeltaPoly monomial(const Coeff& c, int k, int cap = 0) {
    if (sgn(c) == 0) return BasicDeltaPoly(std::vector<Coeff>{}, cap);
    std::vector<Coeff> v(static_cast<std::size_t>(k) + 1);
    v.back() = c;
    return BasicDeltaPoly(std::move(v), cap);
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  int degree_cap() const { return cap_; }
  std::span<const Coeff> coefficients() const { return c_; }
  Coeff coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Coeff(0);
    return c_[static_cast<std::size_t>(k)];
  }

  BasicDeltaPoly with_cap(int cap) const {
    BasicDeltaPoly r = *this;
    r.cap_ = cap;
    r.check_cap();
    return r;
  }

  // Lowest-order nonzero term; nullopt for the zero polynomial.
  std::optional<LeadingTerm<Coeff>> leading_order() const {
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (sgn(c_[k]) != 0) return LeadingTerm<Coeff>{static_cast<int>(k), c_[k]};
    }
    return std::nullopt;
  }

  // Sign for all sufficiently small d > 0.
  SignClass sign_near_zero() const {
    for (const auto& v : c_) {
      const int s = sgn(v);
      if (s != 0) return s > 0 ? SignClass::Positive : SignClass::Negative;
    }
    return SignClass::Zero;
  }

  Rational evaluate(const Rational& d) const {
    Rational acc = 0;
    for (std::size_t k = c_.size(); k-- > 0;) {
      acc *= d;
      acc += Rational(c_[k]);
    }
    return acc;
  }

  BasicDeltaPoly& operator+=(const BasicDeltaPoly& o) {
    cap_ = merge_cap(cap_, o.cap_);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    check_cap();
    return *this;
  }
  BasicDeltaPoly& operator-=(const BasicDeltaPoly& o) {
    cap_ = merge_cap(cap_, o.cap_);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    check_cap();
    return *this;
  }
  BasicDeltaPoly& operator*=(const BasicDeltaPoly& o) {
    *this = *this * o;
    return *this;
  }

  friend BasicDeltaPoly operator+(BasicDeltaPoly a, const BasicDeltaPoly& b) {
    a += b;
    return a;
  }
  friend BasicDeltaPoly operator-(BasicDeltaPoly a, const BasicDeltaPoly& b) {
    a -= b;
    return a;
  }
  friend BasicDeltaPoly operator-(BasicDeltaPoly a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend BasicDeltaPoly operator*(const BasicDeltaPoly& a, const BasicDeltaPoly& b) {
    BasicDeltaPoly r;
    r.cap_ = merge_cap(a.cap_, b.cap_);
    if (a.c_.empty() || b.c_.empty()) return r;
    const std::size_t deg = a.c_.size() + b.c_.size() - 2;
    if (r.cap_ > 0 && deg > static_cast<std::size_t>(r.cap_)) {
      throw DegreeCapExceeded("polynomial product of degree " + std::to_string(deg) +
                              " exceeds cap " + std::to_string(r.cap_));
    }
    r.c_.assign(deg + 1, Coeff(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }
  friend bool operator==(const BasicDeltaPoly& a, const BasicDeltaPoly& b) {
    return a.c_ == b.c_;
  }

  // Multiply by d^k.
  BasicDeltaPoly shifted(int k) const {
    if (c_.empty() || k == 0) return *this;
    std::vector<Coeff> v(static_cast<std::size_t>(k), Coeff(0));
    v.insert(v.end(), c_.begin(), c_.end());
    return BasicDeltaPoly(std::move(v), cap_);
  }

 private:
  static int merge_cap(int a, int b) {
    if (a == 0) return b;
    if (b == 0) return a;
    return std::min(a, b);
  }
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  void check_cap() const {
    if (cap_ > 0 && degree() > cap_) {
      throw DegreeCapExceeded("polynomial degree " + std::to_string(degree()) +
                              " exceeds cap " + std::to_string(cap_));
    }
  }

  std::vector<Coeff> c_;
  int cap_ = 0;
};

using DeltaPoly = BasicDeltaPoly<Rational>;
using IntDeltaPoly = BasicDeltaPoly<Integer>;

enum class PolyOp { Add, Sub, Mul };
DeltaPoly poly_arith(const DeltaPoly& a, const DeltaPoly& b, PolyOp op);

// (1 - d)^k.
DeltaPoly beta_power(int k, int cap = 0);
IntDeltaPoly int_beta_power(int k);
// d itself.
DeltaPoly delta_poly();
// sum_{k<n} beta^k, i.e. (1 - beta^n)/(1 - beta).
DeltaPoly geometric_sum(int n, int cap = 0);

std::optional<LeadingTerm<Rational>> leading_order(const DeltaPoly& p);
SignClass sign_at_one_minus(const DeltaPoly& p);

// Exact division over Z[d]; throws std::domain_error when den does not divide num.
IntDeltaPoly exact_quotient(const IntDeltaPoly& num, const IntDeltaPoly& den);
// Euclidean division over Q[d].
std::pair<DeltaPoly, DeltaPoly> divmod(const DeltaPoly& num, const DeltaPoly& den);
// Monic gcd over Q[d]; gcd(0, 0) = 0.
DeltaPoly poly_gcd(const DeltaPoly& a, const DeltaPoly& b);

DeltaPoly to_rational_poly(const IntDeltaPoly& p, int cap = 0);

std::string to_string(const DeltaPoly& p);
std::ostream& operator<<(std::ostream& os, const DeltaPoly& p);

// Quotient of two d-polynomials, kept in lowest terms with a monic
// denominator, so equality is structural.
class RatFunc {
 public:
  RatFunc() : num_(), den_(1) {}
  RatFunc(int c) : RatFunc(DeltaPoly(c)) {}  // NOLINT
  RatFunc(DeltaPoly num);                     // NOLINT
  RatFunc(DeltaPoly num, DeltaPoly den);

  const DeltaPoly& num() const { return num_; }
  const DeltaPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  // Same value with a degree cap on numerator and denominator.
  RatFunc with_cap(int cap) const;

  // Limit at d = 0, or nullopt when it does not exist (pole at d = 0).
  std::optional<Rational> limit_at_zero() const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend RatFunc operator-(RatFunc a);
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void normalize(int cap);

  DeltaPoly num_;
  DeltaPoly den_;
};

SignClass sign_at_one_minus(const RatFunc& f);
Ordering compare_at_one_minus(const RatFunc& f, const RatFunc& g);
Rational evaluate(const RatFunc& f, const Rational& d);
Rational evaluate(const DeltaPoly& p, const Rational& d);

std::string to_string(const RatFunc& f);
std::ostream& operator<<(std::ostream& os, const RatFunc& f);

}  // namespace hamwedge

namespace Eigen {

template <typename Coeff>
struct NumTraits<hamwedge::BasicDeltaPoly<Coeff>> : GenericNumTraits<hamwedge::BasicDeltaPoly<Coeff>> {
  using Real = hamwedge::BasicDeltaPoly<Coeff>;
  using NonInteger = hamwedge::BasicDeltaPoly<Coeff>;
  using Nested = hamwedge::BasicDeltaPoly<Coeff>;
  using Literal = hamwedge::BasicDeltaPoly<Coeff>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 128
  };
};

template <>
struct NumTraits<hamwedge::Integer> : GenericNumTraits<hamwedge::Integer> {
  using Real = hamwedge::Integer;
  using NonInteger = hamwedge::Rational;
  using Nested = hamwedge::Integer;
  using Literal = hamwedge::Integer;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 16
  };
};

}  // namespace Eigen

// Copyright 2026 The hamwedge Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "hamwedge/exactnum.hpp"
#include "oracles.hpp"

using namespace hamwedge;

namespace {

DeltaPoly poly(std::initializer_list<int> c) {
  std::vector<Rational> v;
  for (int x : c) v.emplace_back(x);
  return DeltaPoly(v);
}

DeltaPoly random_poly(std::mt19937_64& rng, int max_degree, int span = 9) {
  std::uniform_int_distribution<int> deg(0, max_degree), coef(-span, span);
  std::vector<Rational> v(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : v) x = coef(rng);
  return DeltaPoly(v);
}

}  // namespace

TEST_CASE("leading order reads off the lowest nonzero term") {
  const auto t = leading_order(poly({0, 3, 5}));
  REQUIRE(t);
  CHECK(t->order == 1);
  CHECK(t->coefficient == 3);
  CHECK_FALSE(leading_order(DeltaPoly()).has_value());
  const auto u = leading_order(poly({0, 0, 0, -2}));
  REQUIRE(u);
  CHECK(u->order == 3);
  CHECK(u->coefficient == -2);
}

TEST_CASE("sign near beta = 1") {
  CHECK(sign_at_one_minus(RatFunc(poly({0, 1, -3}))) == SignClass::Positive);
  CHECK(sign_at_one_minus(RatFunc(DeltaPoly(), beta_power(1))) == SignClass::Zero);
  const DeltaPoly f = beta_power(4) - beta_power(1);
  CHECK(sign_at_one_minus(RatFunc(f)) == SignClass::Negative);
  // Expansion by hand: (1-d)^4 - (1-d) = -3d + 6d^2 - 4d^3 + d^4.
  CHECK(f == poly({0, -3, 6, -4, 1}));
  CHECK(evaluate(f, Rational(1, 100)) < 0);
  CHECK(sign_at_one_minus(RatFunc(poly({0, -1}), poly({0, 0, -2}))) == SignClass::Positive);
  CHECK_THROWS_AS(RatFunc(poly({1}), DeltaPoly()), ZeroDenominator);
}

TEST_CASE("ordering near beta = 1") {
  CHECK(compare_at_one_minus(RatFunc(1), RatFunc(beta_power(1))) == Ordering::Greater);
  CHECK(compare_at_one_minus(RatFunc(beta_power(5)), RatFunc(beta_power(5))) == Ordering::Equal);
  CHECK(compare_at_one_minus(RatFunc(beta_power(2)), RatFunc(beta_power(5))) == Ordering::Greater);
  CHECK(compare_at_one_minus(RatFunc(beta_power(5)), RatFunc(beta_power(2))) == Ordering::Less);
  const Rational d(1, 100);
  CHECK(oracle::pow_rational(1 - d, 2) > oracle::pow_rational(1 - d, 5));
}

TEST_CASE("exact evaluation") {
  CHECK(evaluate(RatFunc(beta_power(1)), Rational(1, 10)) == Rational(9, 10));
  CHECK(evaluate(RatFunc(geometric_sum(3)), Rational(1, 2)) == Rational(7, 4));
  const RatFunc q(poly({0, 0, 1}), poly({0, 1}));
  CHECK(q.is_polynomial());
  CHECK(evaluate(q, Rational(1, 3)) == Rational(1, 3));
  CHECK_THROWS_AS(evaluate(RatFunc(poly({1}), poly({-1, 2})), Rational(1, 2)), ZeroDenominator);
}

TEST_CASE("geometric sum is (1 - beta^n) / (1 - beta)") {
  for (int n = 1; n <= 9; ++n) {
    const RatFunc lhs(geometric_sum(n));
    const RatFunc rhs = RatFunc(DeltaPoly(1) - oracle::beta_pow(n)) / RatFunc(delta_poly());
    CHECK(lhs == rhs);
  }
}

TEST_CASE("beta powers multiply exactly") {
  const int cap = 24;
  for (int j = 0; j <= 12; ++j) {
    for (int k = 0; j + k <= cap; ++k) {
      CHECK(beta_power(j, cap) * beta_power(k, cap) == beta_power(j + k, cap));
    }
    CHECK(beta_power(j) == oracle::beta_pow(j));
  }
}

TEST_CASE("degree cap is a hard error") {
  const DeltaPoly a = beta_power(5, 8);
  CHECK_NOTHROW(a * beta_power(3, 8));
  CHECK_THROWS_AS(a * beta_power(4, 8), DegreeCapExceeded);
  CHECK_THROWS_AS(DeltaPoly(std::vector<Rational>(10, Rational(1)), 8), DegreeCapExceeded);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const DeltaPoly a = random_poly(rng, 6), b = random_poly(rng, 6), c = random_poly(rng, 6);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a - a == DeltaPoly());
    const Rational d(1, 7);
    CHECK(evaluate(a * b + c, d) == evaluate(a, d) * evaluate(b, d) + evaluate(c, d));
  }
}

TEST_CASE("sign is multiplicative") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 300; ++t) {
    const RatFunc f(random_poly(rng, 5, 3)), g(random_poly(rng, 5, 3));
    CHECK(sign_at_one_minus(f * g) == sign_at_one_minus(f) * sign_at_one_minus(g));
  }
}

TEST_CASE("symbolic sign matches evaluation below a root bound") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> frac(1, 999);
  for (int t = 0; t < 200; ++t) {
    DeltaPoly num = random_poly(rng, 12), den = random_poly(rng, 12);
    if (den.is_zero()) den = DeltaPoly(1);
    const RatFunc f(num, den);
    const Rational bound = std::min(oracle::small_root_bound(num), oracle::small_root_bound(den));
    const SignClass s = sign_at_one_minus(f);
    for (int k = 0; k < 3; ++k) {
      const Rational d = bound * make_rational(frac(rng), 1000);
      const Rational v = Rational(num.evaluate(d)) / Rational(den.evaluate(d));
      const int vs = sgn(v);
      CHECK(vs == static_cast<int>(s));
      CHECK(evaluate(f, d) == v);
    }
  }
}

TEST_CASE("rational functions stay in lowest terms") {
  const RatFunc a(poly({0, 2, 2}), poly({0, 4}));
  CHECK(a.num() == DeltaPoly(std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
  CHECK(a.den() == DeltaPoly(1));
  CHECK(RatFunc(poly({1, 1}), poly({2, 2})) == RatFunc(DeltaPoly(Rational(1, 2))));
  const RatFunc b = RatFunc(1) / RatFunc(beta_power(1));
  CHECK(b * RatFunc(beta_power(1)) == RatFunc(1));
  CHECK(b.limit_at_zero() == Rational(1));
  CHECK_FALSE((RatFunc(1) / RatFunc(delta_poly())).limit_at_zero().has_value());
  CHECK(RatFunc(poly({0, 3}), poly({0, 2})).limit_at_zero() == Rational(3, 2));
}

TEST_CASE("gcd and division") {
  const DeltaPoly a = poly({1, 1}) * poly({2, 0, 1}), b = poly({1, 1}) * poly({0, 3});
  CHECK(poly_gcd(a, b) == poly({1, 1}));
  const auto [q, r] = divmod(a, poly({1, 1}));
  CHECK(q == poly({2, 0, 1}));
  CHECK(r.is_zero());
  const IntDeltaPoly x(std::vector<Integer>{2, 2}), y(std::vector<Integer>{1, 1});
  CHECK(exact_quotient(x * y, y) == x);
  CHECK_THROWS_AS(exact_quotient(IntDeltaPoly(std::vector<Integer>{1, 2}), IntDeltaPoly(std::vector<Integer>{2})),
                  std::domain_error);
}

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
  CHECK(to_string(make_rational(-2, 4)) == "-1/2");
  CHECK(to_string(poly({1, -2, 1})) == "1 - 2*d + d^2");
  CHECK(to_string(DeltaPoly()) == "0");
}

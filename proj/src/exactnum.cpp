// Copyright 2026 The hamwedge Authors
// SPDX-License-Identifier: Apache-2.0

#include "hamwedge/exactnum.hpp"

#include <sstream>

namespace hamwedge {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ZeroDenominator("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool parse_integer(const std::string& s, Integer& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') return false;
  }
  return out.set_str(s[0] == '+' ? s.substr(1) : s, 10) == 0;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const std::string t = trim(text);
  const auto slash = t.find('/');
  Integer num, den = 1;
  const bool ok = slash == std::string::npos
                      ? parse_integer(t, num)
                      : parse_integer(trim(t.substr(0, slash)), num) &&
                            parse_integer(trim(t.substr(slash + 1)), den);
  if (!ok) throw std::invalid_argument("not a rational number: '" + text + "'");
  return make_rational(num, den);
}

std::string to_string(const Rational& r) { return r.get_str(); }

SignClass operator*(SignClass a, SignClass b) {
  return static_cast<SignClass>(static_cast<int>(a) * static_cast<int>(b));
}

const char* to_string(SignClass s) {
  switch (s) {
    case SignClass::Negative: return "Negative";
    case SignClass::Zero: return "Zero";
    case SignClass::Positive: return "Positive";
  }
  return "?";
}

const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
  }
  return "?";
}

DeltaPoly poly_arith(const DeltaPoly& a, const DeltaPoly& b, PolyOp op) {
  switch (op) {
    case PolyOp::Add: return a + b;
    case PolyOp::Sub: return a - b;
    case PolyOp::Mul: return a * b;
  }
  throw std::invalid_argument("unknown polynomial operation");
}

IntDeltaPoly int_beta_power(int k) {
  if (k < 0) throw std::invalid_argument("negative power of beta");
  std::vector<Integer> c(static_cast<std::size_t>(k) + 1);
  for (int l = 0; l <= k; ++l) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(l));
    c[static_cast<std::size_t>(l)] = (l % 2 == 0) ? b : Integer(-b);
  }
  return IntDeltaPoly(std::move(c));
}

DeltaPoly to_rational_poly(const IntDeltaPoly& p, int cap) {
  std::vector<Rational> c;
  c.reserve(p.coefficients().size());
  for (const auto& v : p.coefficients()) c.emplace_back(v);
  return DeltaPoly(std::move(c), cap);
}

DeltaPoly beta_power(int k, int cap) {
  if (cap > 0 && k > cap) {
    throw DegreeCapExceeded("beta^" + std::to_string(k) + " exceeds cap " + std::to_string(cap));
  }
  return to_rational_poly(int_beta_power(k), cap);
}

DeltaPoly delta_poly() { return DeltaPoly::monomial(Rational(1), 1); }

DeltaPoly geometric_sum(int n, int cap) {
  DeltaPoly s(std::vector<Rational>{}, cap);
  for (int k = 0; k < n; ++k) s += beta_power(k, cap);
  return s;
}

std::optional<LeadingTerm<Rational>> leading_order(const DeltaPoly& p) { return p.leading_order(); }

SignClass sign_at_one_minus(const DeltaPoly& p) { return p.sign_near_zero(); }

IntDeltaPoly exact_quotient(const IntDeltaPoly& num, const IntDeltaPoly& den) {
  if (den.is_zero()) throw ZeroDenominator("polynomial division by zero");
  if (num.is_zero()) return {};
  const int dn = num.degree();
  const int dd = den.degree();
  if (dn < dd) throw std::domain_error("inexact polynomial division");
  std::vector<Integer> r(num.coefficients().begin(), num.coefficients().end());
  std::vector<Integer> q(static_cast<std::size_t>(dn - dd) + 1);
  const auto dc = den.coefficients();
  const Integer& lead = dc[static_cast<std::size_t>(dd)];
  for (int k = dn - dd; k >= 0; --k) {
    Integer& top = r[static_cast<std::size_t>(k + dd)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) {
      throw std::domain_error("inexact polynomial division");
    }
    Integer f;
    mpz_divexact(f.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
    for (int j = 0; j <= dd; ++j) {
      if (dc[static_cast<std::size_t>(j)] != 0) {
        r[static_cast<std::size_t>(k + j)] -= f * dc[static_cast<std::size_t>(j)];
      }
    }
    q[static_cast<std::size_t>(k)] = std::move(f);
  }
  for (int k = 0; k < dd; ++k) {
    if (r[static_cast<std::size_t>(k)] != 0) throw std::domain_error("inexact polynomial division");
  }
  return IntDeltaPoly(std::move(q));
}

std::pair<DeltaPoly, DeltaPoly> divmod(const DeltaPoly& num, const DeltaPoly& den) {
  if (den.is_zero()) throw ZeroDenominator("polynomial division by zero");
  if (num.degree() < den.degree()) return {DeltaPoly(), num};
  const int dn = num.degree();
  const int dd = den.degree();
  std::vector<Rational> r(num.coefficients().begin(), num.coefficients().end());
  std::vector<Rational> q(static_cast<std::size_t>(dn - dd) + 1);
  const auto dc = den.coefficients();
  const Rational& lead = dc[static_cast<std::size_t>(dd)];
  for (int k = dn - dd; k >= 0; --k) {
    const Rational f = r[static_cast<std::size_t>(k + dd)] / lead;
    if (f == 0) continue;
    for (int j = 0; j <= dd; ++j) {
      r[static_cast<std::size_t>(k + j)] -= f * dc[static_cast<std::size_t>(j)];
    }
    q[static_cast<std::size_t>(k)] = f;
  }
  r.resize(static_cast<std::size_t>(dd));
  return {DeltaPoly(std::move(q)), DeltaPoly(std::move(r))};
}

namespace {

DeltaPoly make_monic(const DeltaPoly& p) {
  if (p.is_zero()) return p;
  const Rational lead = p.coefficients().back();
  if (lead == 1) return p;
  std::vector<Rational> c(p.coefficients().begin(), p.coefficients().end());
  for (auto& v : c) v /= lead;
  return DeltaPoly(std::move(c));
}

DeltaPoly uncapped(const DeltaPoly& p) { return p.with_cap(0); }

int merged_cap(int a, int b) {
  if (a == 0) return b;
  if (b == 0) return a;
  return std::min(a, b);
}

}  // namespace

DeltaPoly poly_gcd(const DeltaPoly& a, const DeltaPoly& b) {
  DeltaPoly x = make_monic(uncapped(a));
  DeltaPoly y = make_monic(uncapped(b));
  while (!y.is_zero()) {
    DeltaPoly r = divmod(x, y).second;
    x = std::move(y);
    y = make_monic(r);
  }
  return make_monic(x);
}

std::string to_string(const DeltaPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto c = p.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    Rational mag = abs(c[k]);
    const bool neg = sgn(c[k]) < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "d";
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const DeltaPoly& p) { return os << to_string(p); }

RatFunc::RatFunc(DeltaPoly num) : num_(std::move(num)), den_(DeltaPoly(1).with_cap(num_.degree_cap())) {}

RatFunc::RatFunc(DeltaPoly num, DeltaPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ZeroDenominator("rational function with zero denominator");
  normalize(merged_cap(num_.degree_cap(), den_.degree_cap()));
}

void RatFunc::normalize(int cap) {
  if (num_.is_zero()) {
    num_ = DeltaPoly(std::vector<Rational>{}, cap);
    den_ = DeltaPoly(1).with_cap(cap);
    return;
  }
  DeltaPoly n = uncapped(num_);
  DeltaPoly d = uncapped(den_);
  if (d.degree() > 0) {
    const DeltaPoly g = poly_gcd(n, d);
    if (g.degree() > 0) {
      n = divmod(n, g).first;
      d = divmod(d, g).first;
    }
  }
  const Rational lead = d.coefficients().back();
  if (lead != 1) {
    const DeltaPoly inv(Rational(1) / lead);
    n = n * inv;
    d = d * inv;
  }
  num_ = n.with_cap(cap);
  den_ = d.with_cap(cap);
}

RatFunc RatFunc::with_cap(int cap) const {
  RatFunc r = *this;
  r.num_ = r.num_.with_cap(cap);
  r.den_ = r.den_.with_cap(cap);
  return r;
}

std::optional<Rational> RatFunc::limit_at_zero() const {
  const auto ln = num_.leading_order();
  if (!ln) return Rational(0);
  const auto ld = den_.leading_order();
  if (ln->order > ld->order) return Rational(0);
  if (ln->order < ld->order) return std::nullopt;
  return Rational(ln->coefficient / ld->coefficient);
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  const int cap = merged_cap(num_.degree_cap(), o.num_.degree_cap());
  if (den_ == o.den_) {
    num_ = uncapped(num_) + uncapped(o.num_);
  } else {
    num_ = uncapped(num_) * uncapped(o.den_) + uncapped(o.num_) * uncapped(den_);
    den_ = uncapped(den_) * uncapped(o.den_);
  }
  normalize(cap);
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  const int cap = merged_cap(num_.degree_cap(), o.num_.degree_cap());
  num_ = uncapped(num_) * uncapped(o.num_);
  den_ = uncapped(den_) * uncapped(o.den_);
  normalize(cap);
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw ZeroDenominator("division by the zero rational function");
  const int cap = merged_cap(num_.degree_cap(), o.num_.degree_cap());
  num_ = uncapped(num_) * uncapped(o.den_);
  den_ = uncapped(den_) * uncapped(o.num_);
  normalize(cap);
  return *this;
}

RatFunc operator-(RatFunc a) {
  a.num_ = -a.num_;
  return a;
}

SignClass sign_at_one_minus(const RatFunc& f) {
  return f.num().sign_near_zero() * f.den().sign_near_zero();
}

Ordering compare_at_one_minus(const RatFunc& f, const RatFunc& g) {
  switch (sign_at_one_minus(f - g)) {
    case SignClass::Negative: return Ordering::Less;
    case SignClass::Zero: return Ordering::Equal;
    case SignClass::Positive: return Ordering::Greater;
  }
  return Ordering::Equal;
}

Rational evaluate(const DeltaPoly& p, const Rational& d) { return p.evaluate(d); }

Rational evaluate(const RatFunc& f, const Rational& d) {
  const Rational den = f.den().evaluate(d);
  if (den == 0) throw ZeroDenominator("denominator vanishes at d = " + d.get_str());
  return f.num().evaluate(d) / den;
}

std::string to_string(const RatFunc& f) {
  if (f.is_polynomial()) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << to_string(f); }

}  // namespace hamwedge

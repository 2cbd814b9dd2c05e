#pragma once

// Exact scalars: big integers, rationals, and Laurent polynomials in s = q^{1/2}.

#include <gmpxx.h>

#include <map>
#include <span>
#include <string>

namespace qlens {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms with a positive denominator.
/// Throws std::invalid_argument when den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// Finite sum  sum_e c_e s^e  with s^2 = q and rational c_e != 0.
///
/// Every exponent stored is an integer power of s, so q^{k/2} is exact for
/// any integer k. Zero coefficients are never stored, so two values are
/// equal iff their term maps are equal.
class HalfLaurent {
 public:
  using Terms = std::map<int, Rational>;

  HalfLaurent() = default;
  HalfLaurent(const Rational& c);  // NOLINT: constants convert implicitly
  HalfLaurent(long c) : HalfLaurent(Rational(c)) {}  // NOLINT

  static HalfLaurent monomial(const Rational& c, int s_exp);
  static HalfLaurent s_power(int s_exp) { return monomial(1, s_exp); }
  static HalfLaurent q_power(int q_exp) { return monomial(1, 2 * q_exp); }

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  Rational coefficient(int s_exp) const;
  int min_exponent() const;  // requires !is_zero()
  int max_exponent() const;  // requires !is_zero()

  HalfLaurent& operator+=(const HalfLaurent& rhs);
  HalfLaurent& operator-=(const HalfLaurent& rhs);
  HalfLaurent& operator*=(const HalfLaurent& rhs);

  friend HalfLaurent operator+(HalfLaurent a, const HalfLaurent& b) { return a += b; }
  friend HalfLaurent operator-(HalfLaurent a, const HalfLaurent& b) { return a -= b; }
  friend HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b);
  HalfLaurent operator-() const;

  friend bool operator==(const HalfLaurent& a, const HalfLaurent& b) { return a.terms_ == b.terms_; }

  /// Multiplies by s^k.
  HalfLaurent shifted(int s_exp) const;
  /// Substitution s -> s^{-1}.
  HalfLaurent bar() const;

  /// Ascending exponents, e.g. "1 - s^4", "-1/2*s^-2 + 3*s".
  std::string to_string() const;

 private:
  void add_term(int s_exp, const Rational& c);

  Terms terms_;
};

/// a / b in the Laurent ring. Throws std::domain_error on b == 0 and
/// std::logic_error if b does not divide a exactly.
HalfLaurent divide_exact(const HalfLaurent& a, const HalfLaurent& b);

/// Balanced q-integer [m] = (q^m - q^{-m}) / (q - q^{-1}).
HalfLaurent qint(long m);

/// [m]! = [m][m-1]...[1], [0]! = 1. Throws std::invalid_argument for m < 0.
HalfLaurent qfact(long m);

/// [j_0 + ... + j_k]! / ([j_0]! ... [j_k]!), by exact division.
HalfLaurent qmultinomial(std::span<const int> j);

/// Value at s = 1 (the classical limit q -> 1).
Rational eval_at_one(const HalfLaurent& x);

}  // namespace qlens

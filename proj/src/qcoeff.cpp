#include "qlens/qcoeff.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qlens {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

HalfLaurent::HalfLaurent(const Rational& c) {
  if (c != 0) terms_.emplace(0, c);
}

HalfLaurent HalfLaurent::monomial(const Rational& c, int s_exp) {
  HalfLaurent h;
  if (c != 0) h.terms_.emplace(s_exp, c);
  return h;
}

Rational HalfLaurent::coefficient(int s_exp) const {
  auto it = terms_.find(s_exp);
  return it == terms_.end() ? Rational(0) : it->second;
}

int HalfLaurent::min_exponent() const { return terms_.begin()->first; }
int HalfLaurent::max_exponent() const { return terms_.rbegin()->first; }

void HalfLaurent::add_term(int s_exp, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(s_exp, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

HalfLaurent& HalfLaurent::operator+=(const HalfLaurent& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

HalfLaurent& HalfLaurent::operator-=(const HalfLaurent& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b) {
  HalfLaurent out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

HalfLaurent& HalfLaurent::operator*=(const HalfLaurent& rhs) {
  *this = *this * rhs;
  return *this;
}

HalfLaurent HalfLaurent::operator-() const {
  HalfLaurent out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

HalfLaurent HalfLaurent::shifted(int s_exp) const {
  HalfLaurent out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e + s_exp, c);
  return out;
}

HalfLaurent HalfLaurent::bar() const {
  HalfLaurent out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
  return out;
}

std::string HalfLaurent::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "s";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

namespace {

// Dense coefficients of a Laurent polynomial shifted so that the lowest term
// sits at index 0.
std::vector<Rational> dense_from(const HalfLaurent& x) {
  const int lo = x.min_exponent();
  std::vector<Rational> v(static_cast<std::size_t>(x.max_exponent() - lo + 1));
  for (const auto& [e, c] : x.terms()) v[static_cast<std::size_t>(e - lo)] = c;
  return v;
}

}  // namespace

HalfLaurent divide_exact(const HalfLaurent& a, const HalfLaurent& b) {
  if (b.is_zero()) throw std::domain_error("division by zero Laurent polynomial");
  if (a.is_zero()) return {};

  // a = s^ea A(s), b = s^eb B(s) with A(0), B(0) != 0; then A = B C exactly.
  std::vector<Rational> num = dense_from(a);
  const std::vector<Rational> den = dense_from(b);
  if (num.size() < den.size()) throw std::logic_error("inexact Laurent division");

  const std::size_t qdeg = num.size() - den.size();
  std::vector<Rational> quot(qdeg + 1);
  for (std::size_t k = qdeg + 1; k-- > 0;) {
    Rational c = num[k + den.size() - 1] / den.back();
    quot[k] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i < den.size(); ++i) num[k + i] -= c * den[i];
  }
  for (const Rational& rem : num)
    if (rem != 0) throw std::logic_error("inexact Laurent division");

  HalfLaurent out;
  const int shift = a.min_exponent() - b.min_exponent();
  for (std::size_t k = 0; k < quot.size(); ++k)
    out += HalfLaurent::monomial(quot[k], static_cast<int>(k) + shift);
  return out;
}

HalfLaurent qint(long m) {
  if (m == 0) return {};
  if (m < 0) return -qint(-m);
  // q^{m-1} + q^{m-3} + ... + q^{-(m-1)}
  HalfLaurent out;
  for (long k = 0; k < m; ++k) out += HalfLaurent::q_power(static_cast<int>(m - 1 - 2 * k));
  return out;
}

HalfLaurent qfact(long m) {
  if (m < 0) throw std::invalid_argument("q-factorial of a negative integer");
  HalfLaurent out(1);
  for (long k = 2; k <= m; ++k) out *= qint(k);
  return out;
}

HalfLaurent qmultinomial(std::span<const int> j) {
  long total = 0;
  HalfLaurent den(1);
  for (int part : j) {
    if (part < 0) throw std::invalid_argument("q-multinomial with a negative part");
    total += part;
    den *= qfact(part);
  }
  return divide_exact(qfact(total), den);
}

Rational eval_at_one(const HalfLaurent& x) {
  Rational sum = 0;
  for (const auto& [e, c] : x.terms()) sum += c;
  return sum;
}

}  // namespace qlens

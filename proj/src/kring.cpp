#include "qlens/kring.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace qlens::kring {

Integer binomial(long top, long bottom) {
  if (top < 0 || bottom < 0 || bottom > top) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(bottom));
  return out;
}

TruncPoly::TruncPoly(int n) : n_(n), coeffs_(static_cast<std::size_t>(n) + 1, Integer(0)) {
  if (n < 0) throw std::invalid_argument("truncation degree must be nonnegative");
}

TruncPoly::TruncPoly(int n, std::vector<Integer> coeffs) : TruncPoly(n) {
  for (std::size_t k = 0; k < coeffs.size() && k < coeffs_.size(); ++k) coeffs_[k] = std::move(coeffs[k]);
}

TruncPoly TruncPoly::one(int n) { return u_power(n, 0); }

TruncPoly TruncPoly::u_power(int n, int k) {
  TruncPoly p(n);
  if (k < 0) throw std::invalid_argument("negative power of u");
  if (k <= n) p.coeffs_[static_cast<std::size_t>(k)] = 1;
  return p;
}

bool TruncPoly::is_zero() const {
  for (const Integer& c : coeffs_)
    if (c != 0) return false;
  return true;
}

TruncPoly& TruncPoly::operator+=(const TruncPoly& rhs) {
  if (rhs.n_ != n_) throw std::invalid_argument("mismatched truncation degree");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

TruncPoly& TruncPoly::operator-=(const TruncPoly& rhs) {
  if (rhs.n_ != n_) throw std::invalid_argument("mismatched truncation degree");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

TruncPoly operator*(const Integer& k, TruncPoly a) {
  for (Integer& c : a.coeffs_) c *= k;
  return a;
}

TruncPoly TruncPoly::operator-() const { return Integer(-1) * *this; }

std::string TruncPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= n_; ++k) {
    const Integer& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << " ";
    os << "u";
    if (k > 1) os << "^" << k;
  }
  if (first) return "0";
  return os.str();
}

TruncPoly TruncPoly::parse(int n, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty polynomial");

  std::vector<Integer> coeffs(static_cast<std::size_t>(n) + 1, Integer(0));
  std::size_t pos = 0;
  auto fail = [&]() { throw std::invalid_argument("malformed polynomial in u: " + text); };
  auto read_digits = [&]() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return s.substr(start, pos - start);
  };

  bool first = true;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      fail();
    }
    first = false;

    std::string digits = read_digits();
    Integer c = digits.empty() ? Integer(1) : Integer(digits);
    if (pos < s.size() && s[pos] == '*') {
      if (digits.empty()) fail();
      ++pos;
    }
    long degree = 0;
    if (pos < s.size() && s[pos] == 'u') {
      ++pos;
      degree = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::string e = read_digits();
        if (e.empty()) fail();
        degree = std::stol(e);
      }
    } else if (digits.empty()) {
      fail();
    }
    if (degree <= n) coeffs[static_cast<std::size_t>(degree)] += sign * c;
  }
  return TruncPoly(n, std::move(coeffs));
}

TruncPoly trunc_mul(const TruncPoly& a, const TruncPoly& b) {
  if (a.n() != b.n()) throw std::invalid_argument("mismatched truncation degree");
  const int n = a.n();
  std::vector<Integer> out(static_cast<std::size_t>(n) + 1, Integer(0));
  for (int i = 0; i <= n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= n; ++j) out[static_cast<std::size_t>(i + j)] += a[i] * b[j];
  }
  return TruncPoly(n, std::move(out));
}

TruncPoly trunc_pow(const TruncPoly& a, unsigned k) {
  TruncPoly out = TruncPoly::one(a.n());
  for (unsigned i = 0; i < k; ++i) out = trunc_mul(out, a);
  return out;
}

TruncPoly line_bundle_class(int n, int N) {
  if (N <= 0) {
    // [L_{-m}] = [L_{-1}]^m = (1 - u)^m
    return trunc_pow(TruncPoly(n, {1, -1}), static_cast<unsigned>(-N));
  }
  // (1 - u)^{-1} = 1 + u + ... + u^n
  std::vector<Integer> geometric(static_cast<std::size_t>(n) + 1, Integer(1));
  return trunc_pow(TruncPoly(n, std::move(geometric)), static_cast<unsigned>(N));
}

TruncPoly euler_class(int n, int r) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  std::vector<Integer> c(static_cast<std::size_t>(n) + 1, Integer(0));
  for (int j = 1; j <= std::min(r, n); ++j) c[static_cast<std::size_t>(j)] = (j % 2 ? 1 : -1) * binomial(r, j);
  return TruncPoly(n, std::move(c));
}

Integer pair_mu(int k, const TruncPoly& x) {
  if (k < 0 || k > x.n()) throw std::out_of_range("pairing index k outside [0, n]");
  return (k % 2 ? -1 : 1) * x[k];
}

PairingMatrix basis_change_P_to_u(int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const auto size = static_cast<std::size_t>(n) + 1;
  PairingMatrix pm;
  pm.n = n;
  pm.m.assign(size, std::vector<Integer>(size, Integer(0)));
  pm.inverse = pm.m;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      pm.m[i][j] = binomial(j, i);
      pm.inverse[i][j] = ((i + j) % 2 ? -1 : 1) * binomial(j, i);
    }
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) {
      Integer s = 0;
      for (std::size_t k = 0; k < size; ++k) s += pm.m[i][k] * pm.inverse[k][j];
      if (s != (i == j ? 1 : 0)) throw std::logic_error("pairing matrix inverse check failed");
    }
  return pm;
}

TruncPoly p_basis_to_u(int n, const std::vector<Integer>& p_coords) {
  if (p_coords.size() != static_cast<std::size_t>(n) + 1) throw std::invalid_argument("coordinate length must be n+1");
  TruncPoly out(n);
  for (int j = 0; j <= n; ++j) out += p_coords[static_cast<std::size_t>(j)] * line_bundle_class(n, -j);
  return out;
}

std::vector<Integer> u_to_p_basis(const TruncPoly& x) {
  const int n = x.n();
  const PairingMatrix pm = basis_change_P_to_u(n);
  std::vector<Integer> out(static_cast<std::size_t>(n) + 1, Integer(0));
  for (int i = 0; i <= n; ++i)
    for (int k = 0; k <= n; ++k) out[static_cast<std::size_t>(i)] += pm.inverse[i][k] * pair_mu(k, x);
  return out;
}

}  // namespace qlens::kring

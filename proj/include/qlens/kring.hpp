#pragma once

// K_0 of quantum projective space as the truncated ring Z[u]/u^{n+1},
// u = 1 - [L_{-1}].

#include "qlens/qcoeff.hpp"

#include <string>
#include <vector>

namespace qlens::kring {

/// sum_k c_k u^k with u^{n+1} = 0.
class TruncPoly {
 public:
  explicit TruncPoly(int n);
  /// Coefficients beyond degree n are dropped.
  TruncPoly(int n, std::vector<Integer> coeffs);

  static TruncPoly one(int n);
  static TruncPoly u_power(int n, int k);

  int n() const { return n_; }
  const Integer& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  TruncPoly& operator+=(const TruncPoly& rhs);
  TruncPoly& operator-=(const TruncPoly& rhs);
  friend TruncPoly operator+(TruncPoly a, const TruncPoly& b) { return a += b; }
  friend TruncPoly operator-(TruncPoly a, const TruncPoly& b) { return a -= b; }
  friend TruncPoly operator*(const Integer& k, TruncPoly a);
  TruncPoly operator-() const;

  friend bool operator==(const TruncPoly&, const TruncPoly&) = default;

  /// "2 u - u^2", "1", "0": nonzero terms in ascending degree.
  std::string to_string() const;

  /// Inverse of to_string; also accepts "12u", "u^3+12u", "-u". Throws
  /// std::invalid_argument on malformed input.
  static TruncPoly parse(int n, const std::string& text);

 private:
  int n_;
  std::vector<Integer> coeffs_;
};

/// Product truncated at degree n. Throws std::invalid_argument on mismatched n.
TruncPoly trunc_mul(const TruncPoly& a, const TruncPoly& b);
inline TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) { return trunc_mul(a, b); }

TruncPoly trunc_pow(const TruncPoly& a, unsigned k);

/// [L_N]: (1 - u)^{-N}; for N > 0 the truncated geometric series is used.
TruncPoly line_bundle_class(int n, int N);

/// 1 - (1 - u)^r = sum_{j=1}^{min(r,n)} (-1)^{j+1} C(r,j) u^j.
TruncPoly euler_class(int n, int r);

/// <mu_k, x> = (-1)^k x_k. Throws std::out_of_range unless 0 <= k <= n.
Integer pair_mu(int k, const TruncPoly& x);

/// M_ij = <mu_i, [P_{-j}]> = C(j, i) together with its integral inverse.
struct PairingMatrix {
  int n = 0;
  std::vector<std::vector<Integer>> m;
  std::vector<std::vector<Integer>> inverse;  // (-1)^{i+j} C(j, i)
};

/// Builds M and the closed-form inverse, checking M * M^{-1} = 1.
PairingMatrix basis_change_P_to_u(int n);

/// Coordinates in the basis {[P_0], [P_{-1}], ..., [P_{-n}]} to u-coordinates.
TruncPoly p_basis_to_u(int n, const std::vector<Integer>& p_coords);
/// Inverse of p_basis_to_u.
std::vector<Integer> u_to_p_basis(const TruncPoly& x);

Integer binomial(long top, long bottom);

}  // namespace qlens::kring

#pragma once

// Coordinate *-algebra of the quantum sphere S^{2n+1}_q, generated by
// z_0..z_n and z_0*..z_n* subject to
//
//   z_i z_j   = q^{-1} z_j z_i                  (i < j)
//   z_i* z_j  = q z_j z_i*                      (i != j)
//   z_n* z_n  = z_n z_n*
//   z_i* z_i  = z_i z_i* + (1 - q^2) sum_{j>i} z_j z_j*
//   1         = z_0 z_0* + ... + z_n z_n*
//
// Elements are kept as linear combinations of normal words: an unstarred
// block with non-increasing indices followed by a starred block with
// non-decreasing indices, never containing both z_0 and z_0*. The sphere
// relation is applied as z_0 z_0* -> 1 - sum_{j>0} z_j z_j*.

#include "qlens/qcoeff.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlens::nc {

struct Letter {
  std::uint8_t index = 0;
  bool starred = false;

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// Words ordered by length first, then lexicographically.
struct ShortlexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Unreduced linear combination of words; the input side of normal_form.
using WordSum = std::map<Word, HalfLaurent, ShortlexLess>;

struct RewriteConfig {
  std::uint64_t budget = 1'000'000;  // rule applications per normal_form call
};

class RewriteBudgetExceeded : public std::runtime_error {
 public:
  explicit RewriteBudgetExceeded(std::uint64_t budget);
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t budget_;
};

/// Raised when an identity would need a square root that is not paired
/// with a matching one.
class UnpairedSquareRoot : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Element of A(S^{2n+1}_q) in normal form.
class NCPoly {
 public:
  explicit NCPoly(int n);

  static NCPoly scalar(int n, const HalfLaurent& c);
  static NCPoly one(int n) { return scalar(n, HalfLaurent(1)); }
  static NCPoly z(int n, int i);
  static NCPoly zstar(int n, int i);

  int ambient_n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const WordSum& terms() const { return terms_; }

  NCPoly& operator+=(const NCPoly& rhs);
  NCPoly& operator-=(const NCPoly& rhs);
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  NCPoly scaled(const HalfLaurent& c) const;

  friend bool operator==(const NCPoly& a, const NCPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// "(coeff) * z1 z0'" terms joined by " + ", shortlex word order; "0" if empty.
  std::string to_string() const;

 private:
  friend NCPoly normal_form(int n, const WordSum& sum, const RewriteConfig& cfg);

  int n_;
  WordSum terms_;
};

bool is_normal_word(int n, const Word& w);

/// Reduces a word sum to the normal form of the element it represents.
/// Throws RewriteBudgetExceeded past cfg.budget rule applications.
NCPoly normal_form(int n, const WordSum& sum, const RewriteConfig& cfg = {});
NCPoly normal_form(const NCPoly& p, const RewriteConfig& cfg = {});

NCPoly multiply(const NCPoly& a, const NCPoly& b, const RewriteConfig& cfg = {});
NCPoly adjoint(const NCPoly& p, const RewriteConfig& cfg = {});

/// Net count of unstarred minus starred letters, if all words agree.
/// The zero element reports 0.
std::optional<int> u1_degree(const NCPoly& p);

/// True iff every word has degree divisible by r. Throws for r < 1.
bool zr_invariant(const NCPoly& p, int r);

/// Parses "z0 z1' z2" (a prime marks the adjoint) into a word.
Word parse_word(const std::string& text);
std::string word_to_string(const Word& w);

/// Matrix over A(S^{2n+1}_q) with formal square-root scalings.
///
/// Entry (i, j) stands for sqrt(row_radicand(i)) * sqrt(col_radicand(j)) *
/// core(i, j). Only products that pair equal radicands are supported, which
/// is all that the identities quadratic in Psi_N ever need.
class NCMatrix {
 public:
  NCMatrix(int n, std::size_t rows, std::size_t cols);

  static NCMatrix identity(int n, std::size_t size);

  int ambient_n() const { return n_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const NCPoly& core(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  NCPoly& core(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  const HalfLaurent& row_radicand(std::size_t i) const { return row_rad_[i]; }
  const HalfLaurent& col_radicand(std::size_t j) const { return col_rad_[j]; }
  void set_row_radicand(std::size_t i, HalfLaurent r) { row_rad_[i] = std::move(r); }
  void set_col_radicand(std::size_t j, HalfLaurent r) { col_rad_[j] = std::move(r); }

  /// Exact equality of cores; throws UnpairedSquareRoot if the tags differ.
  bool equals(const NCMatrix& other) const;

 private:
  int n_;
  std::size_t rows_, cols_;
  std::vector<NCPoly> entries_;
  std::vector<HalfLaurent> row_rad_, col_rad_;
};

NCMatrix multiply(const NCMatrix& a, const NCMatrix& b, const RewriteConfig& cfg = {});
NCMatrix adjoint(const NCMatrix& m, const RewriteConfig& cfg = {});

/// d_N = C(|N| + n, n).
std::size_t psi_length(int n, int N);

/// Multi-indices (j_0..j_n) with sum |N|, colexicographic order.
std::vector<std::vector<int>> psi_multi_indices(int n, int N);

/// Column vector Psi_N. The q-multinomial [j]! sits in the row radicand,
/// the remaining q-power and the monomial in the core.
NCMatrix build_psi(int n, int N);

/// P_N = Psi_N Psi_N^*.
NCMatrix build_projection(int n, int N, const RewriteConfig& cfg = {});

/// v_N = Psi_{r(N+1)} Psi_{rN}^*.
NCMatrix build_partial_isometry(int n, int r, int N, const RewriteConfig& cfg = {});

bool verify_isometry(int n, int N, const RewriteConfig& cfg = {});
bool verify_projection(int n, int N, const RewriteConfig& cfg = {});
bool verify_qtrace(int n, const RewriteConfig& cfg = {});
bool verify_partial_isometry(int n, int r, int N, const RewriteConfig& cfg = {});

/// Collapsed Hopf-Galois identity sum_j psi_j^* psi_j = 1 plus the Z_r
/// grading of every psi_j. Throws std::invalid_argument unless r divides N.
bool hopf_galois_witness(int n, int r, int N, const RewriteConfig& cfg = {});

}  // namespace qlens::nc

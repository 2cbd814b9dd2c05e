#pragma once

// Exact integer matrices: Smith normal form with unimodular certificates,
// invariant factors from determinantal divisors, kernels, image membership
// and orders of elements in the cokernel.

#include "qlens/qcoeff.hpp"

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace qlens::intlin {

using Vector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t size);
  static IntMatrix from_rows(const std::vector<Vector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const;
  Vector row(std::size_t i) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  /// "[[0,0],[3,0]]"
  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
Vector operator*(const IntMatrix& a, const Vector& v);

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& a);

/// Inverse of a unimodular matrix; throws std::domain_error otherwise.
IntMatrix unimodular_inverse(const IntMatrix& a);

/// P * A * Q = D with P, Q unimodular and D = diag(alpha_1, ..., alpha_k, 0, ...).
struct SNFResult {
  IntMatrix P;
  IntMatrix Q;
  IntMatrix D;
  std::vector<Integer> alphas;  // alpha_1 | alpha_2 | ... , all >= 1
};

/// Smith normal form by gcd-driven elimination. The certificate is checked
/// by multiplication before returning; a failed check throws std::logic_error.
SNFResult snf(const IntMatrix& a);

/// Invariant factors d_i / d_{i-1}, d_i the gcd of the nonzero i x i minors.
/// Enumerates every minor; meant as an independent check on snf().
std::vector<Integer> invariant_factors_by_minors(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);

/// Basis of {x in Z^cols : A x = 0}.
std::vector<Vector> kernel_basis(const IntMatrix& a);

/// Some integer x with A x = v, or nullopt if v is not in the column lattice.
/// Throws std::invalid_argument on a dimension mismatch.
std::optional<Vector> image_membership(const IntMatrix& a, const Vector& v);
std::optional<Vector> image_membership(const SNFResult& s, const IntMatrix& a, const Vector& v);

/// Order of v in Z^rows / Im(A); nullopt means infinite order.
std::optional<Integer> coker_order(const IntMatrix& a, const Vector& v);
std::optional<Integer> coker_order(const SNFResult& s, const Vector& v);

}  // namespace qlens::intlin

#include "qlens/intlin.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qlens::intlin {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t size) {
  IntMatrix m(size, size);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Vector>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vector IntMatrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vector IntMatrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

Vector operator*(const IntMatrix& a, const Vector& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  Vector out(a.rows(), Integer(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::domain_error("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a(i, j);
    aug[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && aug[p][c] == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix has no inverse");
    std::swap(aug[p], aug[c]);
    const Rational piv = aug[c][c];
    for (Rational& x : aug[c]) x /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || aug[i][c] == 0) continue;
      const Rational f = aug[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) aug[i][j] -= f * aug[c][j];
    }
  }
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = aug[i][n + j];
      if (x.get_den() != 1) throw std::domain_error("matrix is not unimodular");
      inv(i, j) = x.get_num();
    }
  return inv;
}

namespace {

// Row and column operations applied simultaneously to the working matrix
// and to the accumulated transforms.
struct Elimination {
  IntMatrix W, P, Q;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < W.cols(); ++j) std::swap(W(a, j), W(b, j));
    for (std::size_t j = 0; j < P.cols(); ++j) std::swap(P(a, j), P(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < W.rows(); ++i) std::swap(W(i, a), W(i, b));
    for (std::size_t i = 0; i < Q.rows(); ++i) std::swap(Q(i, a), Q(i, b));
  }
  // row_dst -= f * row_src
  void sub_row(std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t j = 0; j < W.cols(); ++j) W(dst, j) -= f * W(src, j);
    for (std::size_t j = 0; j < P.cols(); ++j) P(dst, j) -= f * P(src, j);
  }
  // col_dst -= f * col_src
  void sub_col(std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t i = 0; i < W.rows(); ++i) W(i, dst) -= f * W(i, src);
    for (std::size_t i = 0; i < Q.rows(); ++i) Q(i, dst) -= f * Q(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < W.cols(); ++j) W(r, j) = -W(r, j);
    for (std::size_t j = 0; j < P.cols(); ++j) P(r, j) = -P(r, j);
  }

  // Rows (a, b) <- [[x, y], [c, d]] (a, b), applied to W and P.
  void mix_rows(std::size_t a, std::size_t b, const Integer& x, const Integer& y, const Integer& c, const Integer& d) {
    auto mix = [&](IntMatrix& M) {
      for (std::size_t j = 0; j < M.cols(); ++j) {
        Integer ra = M(a, j), rb = M(b, j);
        M(a, j) = x * ra + y * rb;
        M(b, j) = c * ra + d * rb;
      }
    };
    mix(W);
    mix(P);
  }
  // Columns (a, b) <- (a, b) [[x, c], [y, d]], i.e. col_a' = x a + y b.
  void mix_cols(std::size_t a, std::size_t b, const Integer& x, const Integer& y, const Integer& c, const Integer& d) {
    auto mix = [&](IntMatrix& M) {
      for (std::size_t i = 0; i < M.rows(); ++i) {
        Integer ca = M(i, a), cb = M(i, b);
        M(i, a) = x * ca + y * cb;
        M(i, b) = c * ca + d * cb;
      }
    };
    mix(W);
    mix(Q);
  }
};

Integer tdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SNFResult snf(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  Elimination e{a, IntMatrix::identity(m), IntMatrix::identity(n)};
  IntMatrix& W = e.W;

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // Pivot: smallest nonzero |entry| of the trailing block.
    std::optional<std::pair<std::size_t, std::size_t>> piv;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (W(i, j) != 0 && (!piv || abs(W(i, j)) < abs(W(piv->first, piv->second)))) piv = {i, j};
    if (!piv) break;
    e.swap_rows(t, piv->first);
    e.swap_cols(t, piv->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (W(i, t) == 0) continue;
        e.sub_row(i, t, tdiv(W(i, t), W(t, t)));
        if (W(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (W(t, j) == 0) continue;
        e.sub_col(j, t, tdiv(W(t, j), W(t, t)));
        if (W(t, j) != 0) clean = false;
      }
      if (clean) break;
      // A remainder is now smaller than the pivot; promote the smallest.
      std::size_t bi = t, bj = t;
      for (std::size_t i = t + 1; i < m; ++i)
        if (W(i, t) != 0 && abs(W(i, t)) < abs(W(bi, bj))) bi = i, bj = t;
      for (std::size_t j = t + 1; j < n; ++j)
        if (W(t, j) != 0 && abs(W(t, j)) < abs(W(bi, bj))) bi = t, bj = j;
      e.swap_rows(t, bi);
      e.swap_cols(t, bj);
    }
    if (W(t, t) < 0) e.negate_row(t);
  }
  const std::size_t k = t;

  // Enforce alpha_i | alpha_j by (a, b) -> (gcd, lcm) on diagonal pairs.
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const Integer a_ = W(i, i), b_ = W(j, j);
      if (b_ % a_ == 0) continue;
      Integer g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
      const Integer bg = b_ / g, ag = a_ / g;
      e.mix_rows(i, j, x, y, -bg, ag);
      e.mix_cols(i, j, Integer(1), Integer(1), -y * bg, x * ag);
    }
  }

  SNFResult out{std::move(e.P), std::move(e.Q), std::move(e.W), {}};
  for (std::size_t i = 0; i < k; ++i) out.alphas.push_back(out.D(i, i));

  // Certificate check.
  if (out.P * a * out.Q != out.D) throw std::logic_error("snf: P*A*Q != D");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && out.D(i, j) != 0) throw std::logic_error("snf: D is not diagonal");
  for (std::size_t i = 0; i < k; ++i) {
    if (out.alphas[i] < 1) throw std::logic_error("snf: nonpositive invariant factor");
    if (i + 1 < k && out.alphas[i + 1] % out.alphas[i] != 0) throw std::logic_error("snf: divisibility chain broken");
  }
  if (abs(determinant(out.P)) != 1 || abs(determinant(out.Q)) != 1) throw std::logic_error("snf: transform not unimodular");
  return out;
}

namespace {

// Calls f on every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<Integer> invariant_factors_by_minors(const IntMatrix& a) {
  std::vector<Integer> alphas;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    Integer d = 0;
    for_each_subset(a.rows(), k, [&](const std::vector<std::size_t>& rs) {
      for_each_subset(a.cols(), k, [&](const std::vector<std::size_t>& cs) {
        IntMatrix minor(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) minor(i, j) = a(rs[i], cs[j]);
        Integer det = determinant(minor);
        if (det != 0) d = gcd(d, det);
      });
    });
    if (d == 0) break;
    alphas.push_back(d / prev);
    prev = d;
  }
  return alphas;
}

std::size_t rank(const IntMatrix& a) { return snf(a).alphas.size(); }

std::vector<Vector> kernel_basis(const IntMatrix& a) {
  const SNFResult s = snf(a);
  std::vector<Vector> basis;
  for (std::size_t j = s.alphas.size(); j < a.cols(); ++j) {
    Vector v = s.Q.column(j);
    const Vector image = a * v;
    if (!std::all_of(image.begin(), image.end(), [](const Integer& x) { return x == 0; }))
      throw std::logic_error("kernel vector check failed");
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> image_membership(const SNFResult& s, const IntMatrix& a, const Vector& v) {
  if (v.size() != a.rows()) throw std::invalid_argument("vector length must equal the row count");
  const Vector w = s.P * v;
  const std::size_t k = s.alphas.size();
  Vector y(a.cols(), Integer(0));
  for (std::size_t i = 0; i < k; ++i) {
    if (w[i] % s.alphas[i] != 0) return std::nullopt;
    y[i] = w[i] / s.alphas[i];
  }
  for (std::size_t i = k; i < w.size(); ++i)
    if (w[i] != 0) return std::nullopt;
  Vector x = s.Q * y;
  if (a * x != v) throw std::logic_error("image membership witness check failed");
  return x;
}

std::optional<Vector> image_membership(const IntMatrix& a, const Vector& v) {
  if (v.size() != a.rows()) throw std::invalid_argument("vector length must equal the row count");
  return image_membership(snf(a), a, v);
}

std::optional<Integer> coker_order(const SNFResult& s, const Vector& v) {
  if (v.size() != s.P.cols()) throw std::invalid_argument("vector length must equal the row count");
  const Vector w = s.P * v;
  const std::size_t k = s.alphas.size();
  for (std::size_t i = k; i < w.size(); ++i)
    if (w[i] != 0) return std::nullopt;
  Integer order = 1;
  for (std::size_t i = 0; i < k; ++i) order = lcm(order, s.alphas[i] / gcd(s.alphas[i], w[i]));
  return order;
}

std::optional<Integer> coker_order(const IntMatrix& a, const Vector& v) {
  if (v.size() != a.rows()) throw std::invalid_argument("vector length must equal the row count");
  return coker_order(snf(a), v);
}

}  // namespace qlens::intlin

#include "qlens/gysin.hpp"

#include <stdexcept>

namespace qlens::gysin {

using intlin::IntMatrix;
using intlin::Vector;
using kring::TruncPoly;

namespace {

Vector coords(const TruncPoly& p) { return p.coeffs(); }

TruncPoly poly(int n, std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return TruncPoly(n, std::move(v));
}

GeneratorClaim claim(int n, std::initializer_list<long> c, long order, std::string order_expr) {
  return GeneratorClaim{poly(n, c), Integer(order), std::move(order_expr)};
}

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Columns of P^{-1}: the Smith basis of Z^{n+1} seen in original coordinates.
std::vector<Vector> smith_basis(const intlin::SNFResult& s) {
  const IntMatrix pinv = intlin::unimodular_inverse(s.P);
  std::vector<Vector> out;
  for (std::size_t i = 0; i < pinv.cols(); ++i) out.push_back(pinv.column(i));
  return out;
}

// Shorter representative of v modulo Im(A): column k-1 of A starts with
// r u^k, so coefficients can be pushed into (-r/2, r/2] from low degree up.
Vector reduce_mod_image(const IntMatrix& a, int r, Vector v) {
  const Integer R = r;
  for (std::size_t k = 1; k < v.size(); ++k) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), v[k].get_mpz_t(), R.get_mpz_t());
    if (v[k] - q * R > R / 2) q += 1;
    if (q == 0) continue;
    for (std::size_t i = k; i < v.size(); ++i) v[i] -= q * a(i, k - 1);
  }
  return v;
}

}  // namespace

std::string KTheoryResult::k0_string() const {
  std::string s;
  for (int i = 0; i < k0_free_rank; ++i) s += (s.empty() ? "Z" : " + Z");
  for (const Integer& a : torsion) {
    if (a == 1) continue;
    s += (s.empty() ? "" : " + ");
    s += "Z_" + a.get_str();
  }
  return s.empty() ? "0" : s;
}

std::string KTheoryResult::k1_string() const {
  if (k1_rank == 0) return "0";
  std::string s = "Z";
  if (k1_rank > 1) s += "^" + std::to_string(k1_rank);
  return s;
}

IntMatrix euler_mult_matrix(int n, int r) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (r < 1) throw std::invalid_argument("r must be positive");
  const auto size = static_cast<std::size_t>(n) + 1;
  IntMatrix a(size, size);
  // k-th subdiagonal: (-1)^{k+1} C(r, k) for 1 <= k <= min(r, n)
  for (int k = 1; k <= std::min(r, n); ++k) {
    const Integer entry = (k % 2 ? 1 : -1) * kring::binomial(r, k);
    for (std::size_t j = 0; j + static_cast<std::size_t>(k) < size; ++j) a(j + static_cast<std::size_t>(k), j) = entry;
  }
  return a;
}

KTheoryResult compute_ktheory(int n, int r) {
  if (n < 1 || n > 8) throw std::invalid_argument("n must lie in [1, 8]");
  if (r < 1) throw std::invalid_argument("r must be positive");

  KTheoryResult res;
  res.n = n;
  res.r = r;
  res.matrix = euler_mult_matrix(n, r);
  res.snf_certificate = intlin::snf(res.matrix);
  const auto& s = res.snf_certificate;

  const int dim = n + 1;
  const int rk = static_cast<int>(s.alphas.size());
  res.k1_rank = dim - rk;
  res.k0_free_rank = dim - rk;
  res.torsion = s.alphas;
  res.k1_kernel = intlin::kernel_basis(res.matrix);

  const std::vector<Vector> basis = smith_basis(s);
  for (std::size_t i = 0; i < s.alphas.size(); ++i) {
    if (s.alphas[i] == 1) continue;
    Vector rep = reduce_mod_image(res.matrix, r, basis[i]);
    auto order = intlin::coker_order(s, rep);
    if (!order || *order != s.alphas[i]) throw std::logic_error("Smith generator has unexpected order");
    res.generators.push_back({TruncPoly(n, std::move(rep)), *order});
  }
  return res;
}

bool ClaimReport::ok() const {
  if (!generates_torsion) return false;
  for (const ClaimCheck& c : checks)
    if (!c.order_ok) return false;
  return true;
}

ClaimReport verify_generator_claims(int n, int r, const std::vector<GeneratorClaim>& claims) {
  const IntMatrix a = euler_mult_matrix(n, r);
  const intlin::SNFResult s = intlin::snf(a);

  ClaimReport report;
  report.n = n;
  report.r = r;
  for (const GeneratorClaim& c : claims) {
    if (c.expr.n() != n) throw std::invalid_argument("claim lives in the wrong truncation degree");
    if (c.expr[0] != 0) throw std::invalid_argument("claim has a nonzero constant term");
    if (c.claimed_order < 1) throw std::invalid_argument("claimed order must be positive");
    ClaimCheck check{c, intlin::coker_order(s, coords(c.expr)), false};
    check.order_ok = check.computed_order && *check.computed_order == c.claimed_order;
    report.checks.push_back(std::move(check));
  }

  // Im(A) plus the claims must contain every Smith torsion basis vector.
  IntMatrix aug(a.rows(), a.cols() + claims.size());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    for (std::size_t k = 0; k < claims.size(); ++k) aug(i, a.cols() + k) = claims[k].expr[static_cast<int>(i)];
  }
  const intlin::SNFResult saug = intlin::snf(aug);
  const std::vector<Vector> basis = smith_basis(s);
  report.generates_torsion = true;
  for (std::size_t i = 0; i < s.alphas.size(); ++i) {
    if (!intlin::image_membership(saug, aug, basis[i])) {
      report.generates_torsion = false;
      break;
    }
  }
  return report;
}

std::vector<GeneratorClaim> paper_generator_table(int n, int r) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  switch (n) {
    case 1:
      return {claim(1, {0, 1}, r, "r")};
    case 2:
      if (r % 2 == 0) return {claim(2, {0, 2, 1}, r / 2, "r/2"), claim(2, {0, 1}, 2L * r, "2r")};
      return {claim(2, {0, 1}, r, "r"), claim(2, {0, 0, 1}, r, "r")};
    case 3:
      if (r % 6 == 0)
        return {claim(3, {0, 12, 0, 1}, r / 6, "r/6"), claim(3, {0, 6, 1}, r / 2, "r/2"),
                claim(3, {0, 1}, 12L * r, "12r")};
      if (r % 2 == 0)
        return {claim(3, {0, 0, 2, 1}, r / 2, "r/2"), claim(3, {0, 2, 1}, r / 2, "r/2"),
                claim(3, {0, 1}, 4L * r, "4r")};
      if (r % 3 == 0)
        return {claim(3, {0, 3, 0, 1}, r / 3, "r/3"), claim(3, {0, 0, 1}, r, "r"), claim(3, {0, 1}, 3L * r, "3r")};
      return {claim(3, {0, 0, 0, 1}, r, "r"), claim(3, {0, 0, 1}, r, "r"), claim(3, {0, 1}, r, "r")};
    default:
      throw std::invalid_argument("published generators exist only for n in {1, 2, 3}");
  }
}

std::vector<Integer> paper_torsion_table(int n, int r) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  const long R = r;
  switch (n) {
    case 1:
      return ints({R});
    case 2:
      return R % 2 == 0 ? ints({R / 2, 2 * R}) : ints({R, R});
    case 3:
      if (R % 6 == 0) return ints({R / 6, R / 2, 12 * R});
      if (R % 2 == 0) return ints({R / 2, R / 2, 4 * R});
      if (R % 3 == 0) return ints({R / 3, R, 3 * R});
      return ints({R, R, R});
    case 4:
      if (R % 24 == 0) return ints({R / 24, R / 6, 6 * R, 24 * R});
      if (R % 12 == 0) return ints({R / 12, R / 12, 12 * R, 12 * R});
      if (R % 8 == 0) return ints({R / 8, R / 4, 4 * R, 8 * R});
      if (R % 6 == 0) return ints({R / 6, R / 6, 4 * R, 12 * R});
      if (R % 4 == 0) return ints({R / 4, R / 4, 2 * R, 8 * R});
      if (R % 3 == 0) return ints({R / 3, R / 3, R, 9 * R});
      if (R % 2 == 0) return ints({R / 2, R / 2, R / 2, 8 * R});
      return ints({R, R, R, R});
    default:
      throw std::invalid_argument("published torsion tables exist only for n in {1, 2, 3, 4}");
  }
}

std::vector<SweepRow> sweep_table(int n, int r_from, int r_to) {
  if (r_from < 1 || r_from > r_to) throw std::invalid_argument("need 1 <= r_from <= r_to");
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(r_to - r_from + 1));
  for (int r = r_from; r <= r_to; ++r) {
    SweepRow row{compute_ktheory(n, r), std::nullopt};
    if (n <= 3) row.claims = verify_generator_claims(n, r, paper_generator_table(n, r));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qlens::gysin

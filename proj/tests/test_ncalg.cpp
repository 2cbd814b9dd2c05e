#include "qlens/ncalg.hpp"

#include <doctest.h>

#include <complex>
#include <random>

using namespace qlens::nc;
using qlens::HalfLaurent;

namespace {

HalfLaurent q(int k) { return HalfLaurent::q_power(k); }

NCPoly word(int n, const std::string& text, const HalfLaurent& c = HalfLaurent(1)) {
  return normal_form(n, WordSum{{parse_word(text), c}});
}

Word random_word(std::mt19937_64& rng, int n, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), idx(0, n), star(0, 1);
  Word w;
  for (int k = len(rng); k > 0; --k) w.push_back(Letter{static_cast<std::uint8_t>(idx(rng)), star(rng) == 1});
  return w;
}

NCPoly random_poly(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> terms(1, 3), coef(-3, 3), expo(-2, 2);
  WordSum sum;
  for (int k = terms(rng); k > 0; --k) sum[random_word(rng, n, 3)] += HalfLaurent::monomial(coef(rng), expo(rng));
  return normal_form(n, sum);
}

// At q = 1 the relations become those of functions on the round sphere, so
// evaluation at a point of S^{2n+1} is a homomorphism. Independent of the
// rewriting code: the original word and its normal form must agree.
using Point = std::vector<std::complex<double>>;

Point random_sphere_point(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Point z(static_cast<std::size_t>(n) + 1);
  double norm = 0;
  for (auto& c : z) {
    c = {g(rng), g(rng)};
    norm += std::norm(c);
  }
  for (auto& c : z) c /= std::sqrt(norm);
  return z;
}

std::complex<double> eval_word(const Word& w, const Point& z) {
  std::complex<double> v = 1;
  for (const Letter& l : w) v *= l.starred ? std::conj(z[l.index]) : z[l.index];
  return v;
}

std::complex<double> eval_classical(const WordSum& sum, const Point& z) {
  std::complex<double> v = 0;
  for (const auto& [w, c] : sum) v += qlens::eval_at_one(c).get_d() * eval_word(w, z);
  return v;
}

}  // namespace

TEST_CASE("defining relations") {
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    CHECK(word(n, "z0 z1") == word(n, "z1 z0", q(-1)));
    const std::string zn = "z" + std::to_string(n);
    CHECK(word(n, zn + "' " + zn) == word(n, zn + " " + zn + "'"));
    WordSum sphere;
    for (int j = 0; j <= n; ++j) sphere[parse_word("z" + std::to_string(j) + " z" + std::to_string(j) + "'")] += 1;
    CHECK(normal_form(n, sphere) == NCPoly::one(n));
  }
}

TEST_CASE("multiplication examples") {
  const int n = 2;
  const NCPoly p = word(n, "z1 z0 z2'", q(3));
  CHECK(multiply(NCPoly::one(n), p) == p);
  CHECK(multiply(NCPoly::z(n, 2), NCPoly::zstar(n, 2)) == word(n, "z2 z2'"));
  CHECK(word(n, "z2 z2'").terms().size() == 1);
  CHECK(multiply(NCPoly::z(n, 0), NCPoly::zstar(n, 0)) == NCPoly::one(n) - word(n, "z1 z1'") - word(n, "z2 z2'"));

  NCPoly expected = word(n, "z0 z0'");
  for (int j = 1; j <= n; ++j) expected += word(n, "z" + std::to_string(j) + " z" + std::to_string(j) + "'", HalfLaurent(1) - q(2));
  CHECK(multiply(NCPoly::zstar(n, 0), NCPoly::z(n, 0)) == expected);
}

TEST_CASE("adjoint") {
  const int n = 2;
  CHECK(adjoint(NCPoly::z(n, 0)) == NCPoly::zstar(n, 0));
  CHECK(adjoint(word(n, "z0 z1")) == word(n, "z1' z0'"));
  // q is real: coefficients pass through unchanged
  CHECK(adjoint(NCPoly::scalar(n, q(1) + HalfLaurent::s_power(1))) == NCPoly::scalar(n, q(1) + HalfLaurent::s_power(1)));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const NCPoly a = random_poly(rng, n), b = random_poly(rng, n);
    CHECK(adjoint(adjoint(a)) == a);
    CHECK(adjoint(multiply(a, b)) == multiply(adjoint(b), adjoint(a)));
  }
}

TEST_CASE("grading") {
  const int n = 1;
  CHECK(u1_degree(word(n, "z0 z1")) == 2);
  CHECK(u1_degree(word(n, "z0' z1")) == 0);
  CHECK(u1_degree(NCPoly(n)) == 0);
  CHECK_FALSE(u1_degree(NCPoly::z(n, 0) + NCPoly::one(n)).has_value());
  for (int r = 1; r <= 4; ++r) CHECK(zr_invariant(word(n, "z0' z1"), r));
  CHECK(zr_invariant(word(n, "z0 z0"), 2));
  CHECK_FALSE(zr_invariant(NCPoly::z(n, 0), 2));
  CHECK_THROWS_AS(zr_invariant(NCPoly::z(n, 0), 0), std::invalid_argument);
  for (int N = -3; N <= 3; ++N) {
    const NCMatrix psi = build_psi(2, N);
    for (std::size_t i = 0; i < psi.rows(); ++i) CHECK(u1_degree(psi.core(i, 0)) == -N);
  }
}

TEST_CASE("normal form agrees with evaluation on the classical sphere") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 3;
    WordSum sum;
    sum[random_word(rng, n, 6)] += HalfLaurent::monomial(1, 2 * (trial % 5) - 4);
    sum[random_word(rng, n, 6)] += HalfLaurent(2) - q(1);
    const NCPoly nf = normal_form(n, sum);
    const Point z = random_sphere_point(rng, n);
    CHECK(std::abs(eval_classical(sum, z) - eval_classical(nf.terms(), z)) < 1e-9);
  }
}

TEST_CASE("normal form output consists of normal words and is idempotent") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    const NCPoly p = normal_form(n, WordSum{{random_word(rng, n, 7), HalfLaurent(1)}});
    for (const auto& [w, c] : p.terms()) {
      CHECK(is_normal_word(n, w));
      CHECK_FALSE(c.is_zero());
    }
    CHECK(normal_form(p) == p);
  }
}

TEST_CASE("reduction is independent of the split point (confluence)") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 3;
    const Word w = random_word(rng, n, 7);
    std::uniform_int_distribution<std::size_t> cut(0, w.size());
    const std::size_t c = cut(rng);
    const Word left(w.begin(), w.begin() + static_cast<long>(c)), right(w.begin() + static_cast<long>(c), w.end());
    const NCPoly whole = normal_form(n, WordSum{{w, HalfLaurent(1)}});
    const NCPoly split = multiply(normal_form(n, WordSum{{left, HalfLaurent(1)}}), normal_form(n, WordSum{{right, HalfLaurent(1)}}));
    CHECK(whole == split);
  }
}

TEST_CASE("multiplication is associative") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + trial % 2;
    const NCPoly a = random_poly(rng, n), b = random_poly(rng, n), c = random_poly(rng, n);
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
  }
}

TEST_CASE("rewrite budget") {
  const Word w = parse_word("z0' z0' z0' z0 z0 z0");
  CHECK_THROWS_AS(normal_form(2, WordSum{{w, HalfLaurent(1)}}, RewriteConfig{3}), RewriteBudgetExceeded);
  try {
    normal_form(2, WordSum{{w, HalfLaurent(1)}}, RewriteConfig{3});
  } catch (const RewriteBudgetExceeded& e) {
    CHECK(e.budget() == 3);
  }
  CHECK_NOTHROW(normal_form(2, WordSum{{w, HalfLaurent(1)}}));
}

TEST_CASE("words print and parse") {
  const Word w = parse_word("z2 z0' z1");
  CHECK(word_to_string(w) == "z2 z0' z1");
  CHECK(parse_word(word_to_string(w)) == w);
  CHECK_THROWS_AS(parse_word("z0 x1"), std::invalid_argument);
  CHECK(NCPoly(1).to_string() == "0");
  CHECK(NCPoly::one(1).to_string() == "(1) * 1");
  CHECK(word(1, "z0 z1").to_string() == "(s^-2) * z1 z0");
}

TEST_CASE("Psi and projections") {
  const NCMatrix p0 = build_psi(1, 0);
  REQUIRE(p0.rows() == 1);
  CHECK(p0.core(0, 0) == NCPoly::one(1));

  const NCMatrix p1 = build_psi(1, 1);
  REQUIRE(p1.rows() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    REQUIRE(p1.core(i, 0).terms().size() == 1);
    const Word& w = p1.core(i, 0).terms().begin()->first;
    CHECK(w == Word{Letter{static_cast<std::uint8_t>(i), true}});
  }
  CHECK(build_psi(2, 2).rows() == 6);
  CHECK(psi_length(2, 2) == 6);
  CHECK(psi_length(3, -4) == 35);
  CHECK(psi_multi_indices(1, 2) == std::vector<std::vector<int>>{{2, 0}, {1, 1}, {0, 2}});

  CHECK(build_projection(2, 0).equals(NCMatrix::identity(2, 1)));
  const NCMatrix P = build_projection(1, 1);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(u1_degree(P.core(i, j)) == 0);
}

TEST_CASE("isometries and projections") {
  CHECK(verify_isometry(1, 0));
  CHECK(verify_isometry(1, 1));
  CHECK(verify_isometry(2, 2));
  CHECK(verify_isometry(2, -1));
  CHECK(verify_projection(1, 0));
  CHECK(verify_projection(1, 1));
  CHECK(verify_projection(1, -2));
}

TEST_CASE("q-trace") {
  for (int n = 1; n <= 3; ++n) CHECK(verify_qtrace(n));
}

TEST_CASE("partial isometries") {
  CHECK(verify_partial_isometry(1, 1, 0));
  CHECK(verify_partial_isometry(1, 2, 0));
  const NCMatrix v = build_partial_isometry(1, 2, 0);
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < v.cols(); ++j)
      if (!v.core(i, j).is_zero()) CHECK(u1_degree(v.core(i, j)) == -2);
}

TEST_CASE("Hopf-Galois witness") {
  CHECK(hopf_galois_witness(1, 1, 1));
  CHECK(hopf_galois_witness(1, 2, 2));
  CHECK(hopf_galois_witness(1, 1, -1));
  CHECK_THROWS_AS(hopf_galois_witness(1, 2, 1), std::invalid_argument);
}

TEST_CASE("square roots must pair") {
  NCMatrix a(1, 1, 1), b(1, 1, 1);
  a.core(0, 0) = NCPoly::one(1);
  b.core(0, 0) = NCPoly::one(1);
  a.set_col_radicand(0, qlens::qint(2));
  CHECK_THROWS_AS(multiply(a, b), UnpairedSquareRoot);
  b.set_row_radicand(0, qlens::qint(2));
  const NCMatrix ab = multiply(a, b);
  CHECK(ab.core(0, 0) == NCPoly::scalar(1, qlens::qint(2)));
}

namespace {

int sgn(int x) { return (x > 0) - (x < 0); }

}  // namespace

TEST_CASE("generators of the projective space obey its relations") {
  for (int n = 1; n <= 2; ++n) {
    auto p = [&](int i, int j) { return multiply(NCPoly::zstar(n, i), NCPoly::z(n, j)); };
    const HalfLaurent c = HalfLaurent(1) - q(2);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k)
          for (int l = 0; l <= n; ++l) {
            CAPTURE(n);
            CAPTURE(i);
            CAPTURE(j);
            CAPTURE(k);
            CAPTURE(l);
            const NCPoly lhs = multiply(p(i, j), p(k, l));
            if (i != l && j != k) {
              CHECK(lhs == multiply(p(k, l), p(i, j)).scaled(q(sgn(k - i) + sgn(j - l))));
            } else if (j == k && i != l) {
              NCPoly rhs = multiply(p(j, l), p(i, j)).scaled(q(sgn(j - i) + sgn(j - l) + 1));
              for (int m = j + 1; m <= n; ++m) rhs -= multiply(p(i, m), p(m, l)).scaled(c);
              CHECK(lhs == rhs);
            } else if (j == k && i == l && i != j) {
              const HalfLaurent t = q(2 * sgn(j - i));
              NCPoly rhs = multiply(p(j, i), p(i, j)).scaled(t);
              for (int m = i + 1; m <= n; ++m) rhs += multiply(p(j, m), p(m, j)).scaled(c * t);
              for (int m = j + 1; m <= n; ++m) rhs -= multiply(p(i, m), p(m, i)).scaled(c);
              CHECK(lhs == rhs);
            }
          }
  }
}

TEST_CASE("grading is additive and the invariant part is a *-subalgebra") {
  std::mt19937_64 rng(37);
  int tested = 0;
  while (tested < 200) {
    const int n = 1 + tested % 2;
    const Word wa = random_word(rng, n, 4), wb = random_word(rng, n, 4);
    const NCPoly a = normal_form(n, WordSum{{wa, HalfLaurent(1)}}), b = normal_form(n, WordSum{{wb, HalfLaurent(1)}});
    const auto da = u1_degree(a), db = u1_degree(b);
    REQUIRE(da.has_value());
    REQUIRE(db.has_value());
    const NCPoly ab = multiply(a, b);
    if (!ab.is_zero()) CHECK(u1_degree(ab) == *da + *db);
    if (*da == 0 && *db == 0) {
      CHECK(u1_degree(ab) == 0);
      CHECK(u1_degree(adjoint(a)) == 0);
    }
    ++tested;
  }
}

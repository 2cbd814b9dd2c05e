// Acceptance run: one PASS/FAIL line per criterion. "--only K" runs one.

#include "oracles.hpp"
#include "qlens/gysin.hpp"
#include "qlens/intlin.hpp"
#include "qlens/kring.hpp"
#include "qlens/ncalg.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using qlens::Integer;
using qlens::intlin::IntMatrix;
using qlens::intlin::Vector;
using qlens::kring::TruncPoly;
namespace gy = qlens::gysin;

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  double budget_s;
  std::function<Outcome()> run;
};

std::vector<Integer> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

std::string str(const std::vector<Integer>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return "(" + s + ")";
}

// Records the first few failures, counts the rest.
struct Failures {
  int count = 0;
  std::ostringstream first;
  void add(const std::string& what) {
    if (count++ < 4) first << (count > 1 ? "; " : "") << what;
  }
  Outcome outcome(const std::string& ok_text) const {
    if (count == 0) return {true, ok_text};
    return {false, std::to_string(count) + " failures: " + first.str() + (count > 4 ? "; ..." : "")};
  }
};

Outcome ac1() {
  Failures f;
  for (int r = 1; r <= 60; ++r) {
    const auto res = gy::compute_ktheory(1, r);
    if (res.torsion != ints({r}) || res.k0_free_rank != 1 || res.k1_rank != 1)
      f.add("r=" + std::to_string(r) + " K0=" + res.k0_string() + " K1=" + res.k1_string());
  }
  return f.outcome("n=1, r=1..60: K0 = Z + Z_r, K1 = Z");
}

Outcome ac2() {
  Failures f;
  for (long r = 2; r <= 60; ++r) {
    const auto want = r % 2 == 0 ? ints({r / 2, 2 * r}) : ints({r, r});
    const auto got = gy::compute_ktheory(2, static_cast<int>(r)).torsion;
    if (got != want) f.add("r=" + std::to_string(r) + " got " + str(got) + " want " + str(want));
  }
  return f.outcome("n=2, r=2..60: (r/2, 2r) even, (r, r) odd");
}

Outcome ac3() {
  Failures f;
  for (long r = 1; r <= 60; ++r) {
    std::vector<Integer> want;
    if (r % 6 == 0) want = ints({r / 6, r / 2, 12 * r});
    else if (r % 2 == 0) want = ints({r / 2, r / 2, 4 * r});
    else if (r % 3 == 0) want = ints({r / 3, r, 3 * r});
    else want = ints({r, r, r});
    const auto got = gy::compute_ktheory(3, static_cast<int>(r)).torsion;
    if (got != want) f.add("r=" + std::to_string(r) + " got " + str(got) + " want " + str(want));
  }
  if (gy::compute_ktheory(3, 6).k0_string() != "Z + Z_3 + Z_72") f.add("K0(L(3,6))");
  if (gy::compute_ktheory(3, 3).k0_string() != "Z + Z_3 + Z_9") f.add("K0(L(3,3))");
  return f.outcome("n=3, r=1..60 four-case table; L(3,6), L(3,3) exact");
}

Outcome ac4() {
  Failures f;
  for (int r = 1; r <= 48; ++r) {
    const auto want = gy::paper_torsion_table(4, r);
    const auto got = gy::compute_ktheory(4, r).torsion;
    if (got != want) f.add("r=" + std::to_string(r) + " computed " + str(got) + " published " + str(want));
  }
  return f.outcome("n=4, r=1..48 matches the published eight-case table");
}

Outcome ac5() {
  Failures f;
  int checked = 0;
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 60; ++r) {
      const auto rep = gy::verify_generator_claims(n, r, gy::paper_generator_table(n, r));
      for (const auto& c : rep.checks) {
        ++checked;
        if (!c.order_ok)
          f.add("n=" + std::to_string(n) + " r=" + std::to_string(r) + " " + c.claim.expr.to_string() + " claimed " +
                c.claim.claimed_order.get_str() + " computed " +
                (c.computed_order ? c.computed_order->get_str() : std::string("inf")));
      }
      if (!rep.generates_torsion) f.add("n=" + std::to_string(n) + " r=" + std::to_string(r) + " no joint generation");
    }
  return f.outcome(std::to_string(checked) + " claims, n=1..3, r=1..60: exact orders, joint generation");
}

Outcome ac6() {
  Failures f;
  for (int n = 1; n <= 4; ++n)
    for (int r = 1; r <= 60; ++r) {
      const auto a = gy::euler_mult_matrix(n, r);
      if (qlens::intlin::rank(a) != static_cast<std::size_t>(n) || oracle::rank(a) != static_cast<std::size_t>(n) ||
          gy::compute_ktheory(n, r).k1_rank != 1)
        f.add("n=" + std::to_string(n) + " r=" + std::to_string(r));
    }
  return f.outcome("rank A(n, r) = n and K1 = Z for n<=4, r<=60");
}

Outcome ac7() {
  Failures f;
  std::mt19937_64 rng(7);
  const int samples = 250;
  for (int s = 0; s < samples; ++s) {
    const IntMatrix a = oracle::random_matrix(rng, 5, -9, 9);
    const auto res = qlens::intlin::snf(a);
    std::vector<Integer> nonzero = res.alphas;
    const auto minors = oracle::factors_by_minors(a);
    bool ok = nonzero == minors && res.P * a * res.Q == res.D;
    ok = ok && abs(oracle::det(res.P)) == 1 && abs(oracle::det(res.Q)) == 1;
    for (std::size_t i = 0; ok && i < res.D.rows(); ++i)
      for (std::size_t j = 0; j < res.D.cols(); ++j) {
        const Integer want = (i == j && i < res.alphas.size()) ? res.alphas[i] : Integer(0);
        if (res.D(i, j) != want) ok = false;
      }
    if (!ok) f.add("sample " + std::to_string(s) + " " + a.to_string());
  }
  return f.outcome(std::to_string(samples) + " random matrices, seed 7");
}

Outcome ac8() {
  Failures f;
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> entry(-6, 6);
  int instances = 0, finite = 0, tries = 0;
  while (instances < 80 && tries < 100000) {
    ++tries;
    const IntMatrix a = oracle::random_matrix(rng, 4, -5, 5);
    Integer product = 1;
    for (const Integer& x : oracle::factors_by_minors(a)) product *= x;
    if (product > 500) continue;
    Vector v(a.rows());
    for (Integer& x : v) x = entry(rng);
    const auto got = qlens::intlin::coker_order(a, v);
    const auto want = oracle::brute_order(a, v, product.get_si());
    ++instances;
    if (want) ++finite;
    if (got != want)
      f.add(a.to_string() + " v=" + str(v) + " got " + (got ? got->get_str() : "inf") + " want " +
            (want ? want->get_str() : "inf"));
  }
  if (instances < 50) f.add("only " + std::to_string(instances) + " instances");
  return f.outcome(std::to_string(instances) + " instances (" + std::to_string(finite) + " of finite order), seed 8");
}

Outcome ac9() {
  using namespace qlens::nc;
  Failures f;
  int checks = 0;
  auto check = [&](const std::string& what, bool ok) {
    ++checks;
    if (!ok) f.add(what);
  };
  const std::pair<int, int> cases[] = {{1, 0}, {1, 1}, {1, -1}, {1, 2}, {1, -2}, {1, 3},
                                       {1, -3}, {2, 1}, {2, -1}, {2, 2}, {2, -2}};
  for (const auto& [n, N] : cases) {
    const std::string at = "(n=" + std::to_string(n) + ", N=" + std::to_string(N) + ")";
    check("isometry" + at, verify_isometry(n, N));
    check("projection" + at, verify_projection(n, N));
  }
  for (int n = 1; n <= 3; ++n) check("qtrace(n=" + std::to_string(n) + ")", verify_qtrace(n));
  check("partial_isometry(1, 2, 0)", verify_partial_isometry(1, 2, 0));
  check("partial_isometry(1, 1, 0)", verify_partial_isometry(1, 1, 0));
  for (int N = -2; N <= 2; ++N) check("witness(1, 1, " + std::to_string(N) + ")", hopf_galois_witness(1, 1, N));
  for (int N : {2, 4}) check("witness(1, 2, " + std::to_string(N) + ")", hopf_galois_witness(1, 2, N));
  return f.outcome(std::to_string(checks) + " symbolic identities");
}

Outcome ac10() {
  using namespace qlens::kring;
  Failures f;
  for (int n = 1; n <= 4; ++n) {
    for (int N = 0; N <= 6; ++N) {
      const TruncPoly p = line_bundle_class(n, -N);  // [P_{-N}] = [L_{-1}]^N
      for (int k = 0; k <= n; ++k)
        if (pair_mu(k, p) != binomial(N, k))
          f.add("<mu_" + std::to_string(k) + ", P_-" + std::to_string(N) + "> n=" + std::to_string(n));
      if (N <= n) {
        std::vector<Integer> e(static_cast<std::size_t>(n + 1), 0);
        e[static_cast<std::size_t>(N)] = 1;
        if (p_basis_to_u(n, e) != p) f.add("P-basis vector " + std::to_string(N) + " n=" + std::to_string(n));
      }
    }
    const PairingMatrix pm = basis_change_P_to_u(n);
    const std::size_t d = static_cast<std::size_t>(n + 1);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Integer s = 0;
        for (std::size_t k = 0; k < d; ++k) s += pm.m[i][k] * pm.inverse[k][j];
        if (s != (i == j ? 1 : 0)) f.add("M * M^-1 n=" + std::to_string(n));
      }
    for (int N = -5; N <= 5; ++N)
      if (pair_mu(1, line_bundle_class(n, N)) != -N) f.add("<mu_1, L_" + std::to_string(N) + ">");
  }
  return f.outcome("binomial grid n<=4, N<=6; M * M^-1 = I; <mu_1, L_N> = -N");
}

Outcome ac11() {
  using namespace qlens::kring;
  Failures f;
  for (int n = 1; n <= 6; ++n) {
    for (int r = 1; r <= 60; ++r) {
      const IntMatrix a = gy::euler_mult_matrix(n, r);
      const TruncPoly e = euler_class(n, r);
      for (int j = 0; j <= n; ++j)
        if (TruncPoly(n, a.column(static_cast<std::size_t>(j))) != trunc_mul(e, TruncPoly::u_power(n, j)))
          f.add("column " + std::to_string(j) + " n=" + std::to_string(n) + " r=" + std::to_string(r));
    }
    for (int N = -6; N <= 6; ++N)
      for (int M = -6; M <= 6; ++M)
        if (line_bundle_class(n, N) * line_bundle_class(n, M) != line_bundle_class(n, N + M))
          f.add("L_" + std::to_string(N) + " L_" + std::to_string(M) + " n=" + std::to_string(n));
  }
  return f.outcome("A(n, r) columns = e * u^j for n<=6, r<=60; L_N L_M = L_{N+M}");
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--only K]\n";
      return 2;
    }
  }
  const std::vector<Criterion> all = {
      {1, 1, ac1},   {2, 1, ac2},   {3, 2, ac3},     {4, 5, ac4}, {5, 10, ac5},  {6, 5, ac6},
      {7, 30, ac7},  {8, 30, ac8},  {9, 600, ac9},   {10, 1, ac10}, {11, 1, ac11},
  };
  bool all_ok = true;
  bool ran = false;
  for (const auto& c : all) {
    if (only && c.id != only) continue;
    ran = true;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool ok = o.ok && in_time;
    all_ok = all_ok && ok;
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << secs << " s, budget " << c.budget_s << " s" << (in_time ? "" : " EXCEEDED");
    std::cout << "AC" << c.id << " " << (ok ? "PASS" : "FAIL") << " " << o.detail << " [" << t.str() << "]\n";
  }
  if (!ran) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  return all_ok ? 0 : 1;
}

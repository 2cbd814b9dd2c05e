// qlens: K-theory of quantum lens spaces from the command line.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 rewrite budget exhausted.

#include "qlens/gysin.hpp"
#include "qlens/ncalg.hpp"
#include "qlens/report.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using qlens::report::Json;

enum Exit { kOk = 0, kVerifyFail = 1, kUsage = 2, kBudget = 3 };

struct Output {
  int code = kOk;
  std::string body;
};

struct Range {
  int from = 0, to = 0;
};

// "a..b" inclusive, or a single integer.
Range parse_range(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad range: " + text);
    }
    if (used != s.size()) throw std::invalid_argument("bad range: " + text);
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  Range r{to_int(text.substr(0, dots)), to_int(text.substr(dots + 2))};
  if (r.from > r.to) throw std::invalid_argument("empty range: " + text);
  return r;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Parses "EXPR=ORDER", e.g. "u^3+12u=2".
qlens::gysin::GeneratorClaim parse_claim(int n, const std::string& text) {
  const auto eq = text.rfind('=');
  if (eq == std::string::npos) throw std::invalid_argument("claim must look like EXPR=ORDER: " + text);
  const std::string order = text.substr(eq + 1);
  qlens::Integer o;
  if (order.empty() || o.set_str(order, 10) != 0) throw std::invalid_argument("bad claimed order: " + text);
  return {qlens::kring::TruncPoly::parse(n, text.substr(0, eq)), o, order};
}

struct CheckLog {
  std::vector<std::pair<std::string, bool>> entries;
  std::string exhausted;  // name of the check that ran out of budget
};

bool run_check(CheckLog& log, const std::string& name, const std::function<bool()>& f) {
  try {
    const bool ok = f();
    log.entries.emplace_back(name, ok);
    return true;
  } catch (const qlens::nc::RewriteBudgetExceeded&) {
    log.exhausted = name;
    return false;
  }
}

std::string label(const std::string& check, std::initializer_list<std::pair<const char*, int>> args) {
  std::string s = check + "(";
  bool first = true;
  for (const auto& [k, v] : args) {
    s += (first ? "" : ", ") + std::string(k) + "=" + std::to_string(v);
    first = false;
  }
  return s + ")";
}

CheckLog algebra_checks(int n, int max_N, int r, std::uint64_t budget, int samples, std::uint64_t seed) {
  using namespace qlens::nc;
  const RewriteConfig cfg{budget};
  CheckLog log;
  for (int N = -max_N; N <= max_N; ++N)
    if (!run_check(log, label("isometry", {{"n", n}, {"N", N}}), [&] { return verify_isometry(n, N, cfg); }))
      return log;
  for (int N = -max_N; N <= max_N; ++N)
    if (!run_check(log, label("projection", {{"n", n}, {"N", N}}), [&] { return verify_projection(n, N, cfg); }))
      return log;
  if (!run_check(log, label("qtrace", {{"n", n}}), [&] { return verify_qtrace(n, cfg); })) return log;
  // v_N involves Psi_{rN} and Psi_{r(N+1)}; keep both inside the grid
  for (int N = -max_N; N <= max_N; ++N) {
    if (std::abs(r * N) > max_N || std::abs(r * (N + 1)) > max_N) continue;
    if (!run_check(log, label("partial_isometry", {{"n", n}, {"r", r}, {"N", N}}),
                   [&] { return verify_partial_isometry(n, r, N, cfg); }))
      return log;
  }
  for (int N = -max_N; N <= max_N; ++N) {
    if (N % r != 0) continue;
    if (!run_check(log, label("witness", {{"n", n}, {"r", r}, {"N", N}}),
                   [&] { return hopf_galois_witness(n, r, N, cfg); }))
      return log;
  }

  std::mt19937_64 rng(seed);
  auto random_poly = [&]() {
    std::uniform_int_distribution<int> len(0, 3), idx(0, n), star(0, 1);
    NCPoly p = NCPoly::one(n);
    for (int k = len(rng); k > 0; --k) {
      const int i = idx(rng);
      p = multiply(p, star(rng) ? NCPoly::zstar(n, i) : NCPoly::z(n, i), cfg);
    }
    return p;
  };
  for (int k = 0; k < samples; ++k) {
    const NCPoly a = random_poly(), b = random_poly(), c = random_poly();
    const bool ok = run_check(log, "random_sample(" + std::to_string(k) + ")", [&] {
      const bool assoc = multiply(multiply(a, b, cfg), c, cfg) == multiply(a, multiply(b, c, cfg), cfg);
      const bool anti = adjoint(multiply(a, b, cfg), cfg) == multiply(adjoint(b, cfg), adjoint(a, cfg), cfg);
      return assoc && anti && normal_form(a, cfg) == a;
    });
    if (!ok) return log;
  }
  return log;
}

Output cmd_ktheory(int n, int r, bool json) {
  const auto res = qlens::gysin::compute_ktheory(n, r);
  std::optional<qlens::gysin::ClaimReport> claims;
  if (n <= 3) claims = qlens::gysin::verify_generator_claims(n, r, qlens::gysin::paper_generator_table(n, r));
  return {kOk, json ? dump(qlens::report::ktheory_json(res, claims)) : qlens::report::ktheory_text(res, claims)};
}

Output cmd_matrix(int n, int r, bool json) {
  const auto a = qlens::gysin::euler_mult_matrix(n, r);
  if (json) {
    Json j;
    j["n"] = n;
    j["r"] = r;
    j["matrix"] = qlens::report::matrix_json(a);
    return {kOk, dump(j)};
  }
  std::size_t w = 1;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) w = std::max(w, a(i, k).get_str().size());
  std::ostringstream os;
  os << "A(n=" << n << ", r=" << r << ")\n";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::string c = a(i, k).get_str();
      os << (k ? " " : "") << std::string(w - c.size(), ' ') << c;
    }
    os << "\n";
  }
  return {kOk, os.str()};
}

Output cmd_table(int n, Range r, bool json) {
  const auto rows = qlens::gysin::sweep_table(n, r.from, r.to);
  return {kOk, json ? dump(qlens::report::table_json(n, rows)) : qlens::report::table_text(n, rows)};
}

Output cmd_verify_generators(int n, Range r, const std::vector<std::string>& claim_texts, bool json) {
  if (claim_texts.empty() && n > 3) throw std::invalid_argument("no published claims for n > 3; pass --claim");
  Json arr = Json::array();
  std::string text;
  bool all_ok = true;
  for (int rr = r.from; rr <= r.to; ++rr) {
    std::vector<qlens::gysin::GeneratorClaim> claims;
    if (claim_texts.empty()) {
      claims = qlens::gysin::paper_generator_table(n, rr);
    } else {
      for (const auto& c : claim_texts) claims.push_back(parse_claim(n, c));
    }
    const auto rep = qlens::gysin::verify_generator_claims(n, rr, claims);
    all_ok = all_ok && rep.ok();
    arr.push_back(qlens::report::claims_json(rep, claim_texts.empty() ? "published" : "user"));
    text += qlens::report::claims_text(rep);
  }
  if (json) {
    Json j;
    j["n"] = n;
    j["reports"] = std::move(arr);
    j["ok"] = all_ok;
    return {all_ok ? kOk : kVerifyFail, dump(j)};
  }
  text += all_ok ? "all claims verified\n" : "some claims FAILED\n";
  return {all_ok ? kOk : kVerifyFail, text};
}

Output cmd_verify_algebra(int n, int max_N, int r, std::uint64_t budget, int samples, std::uint64_t seed, bool json) {
  if (max_N < 0) throw std::invalid_argument("--max-N must be nonnegative");
  if (r < 1) throw std::invalid_argument("--r must be positive");
  if (budget == 0) throw std::invalid_argument("--budget must be positive");
  if (samples < 0) throw std::invalid_argument("--samples must be nonnegative");
  const CheckLog log = algebra_checks(n, max_N, r, budget, samples, seed);
  bool all_ok = true;
  for (const auto& e : log.entries) all_ok = all_ok && e.second;
  const int code = !log.exhausted.empty() ? kBudget : (all_ok ? kOk : kVerifyFail);

  if (json) {
    Json j;
    j["n"] = n;
    j["max_N"] = max_N;
    j["r"] = r;
    j["budget"] = budget;
    Json checks = Json::array();
    for (const auto& [name, ok] : log.entries) checks.push_back(Json{{"check", name}, {"pass", ok}});
    j["checks"] = std::move(checks);
    if (!log.exhausted.empty()) j["budget_exhausted"] = log.exhausted;
    j["ok"] = code == kOk;
    return {code, dump(j)};
  }
  std::ostringstream os;
  for (const auto& [name, ok] : log.entries) os << (ok ? "PASS " : "FAIL ") << name << "\n";
  if (!log.exhausted.empty()) os << "BUDGET EXHAUSTED " << log.exhausted << "\n";
  os << (code == kOk ? "all checks passed" : code == kBudget ? "stopped: rewrite budget exhausted" : "verification failed") << "\n";
  return {code, os.str()};
}

Output cmd_pairings(int n, Range N, bool json) {
  const auto g = qlens::report::pairing_grid(n, N.from, N.to);
  const int code = g.inverse_ok && g.binomial_ok ? kOk : kVerifyFail;
  return {code, json ? dump(qlens::report::pairings_json(g)) : qlens::report::pairings_text(g)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact K-theory of quantum lens spaces"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  std::string out_path;
  std::uint64_t seed = 1;
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", out_path, "write the report to PATH instead of stdout");
  app.add_option("--seed", seed, "seed for randomized checks");

  int n = 1;
  int r = 1;
  std::string r_range = "1";
  std::string N_range;
  int max_N = 2;
  std::uint64_t budget = 1'000'000;
  int samples = 0;
  std::vector<std::string> claims;

  auto* kt = app.add_subcommand("ktheory", "K0, K1, invariant factors and generators of L(n, r)");
  kt->add_option("--n", n)->required();
  kt->add_option("--r", r)->required();

  auto* mx = app.add_subcommand("matrix", "Gysin matrix A(n, r)");
  mx->add_option("--n", n)->required();
  mx->add_option("--r", r)->required();

  auto* tb = app.add_subcommand("table", "sweep over a range of r");
  tb->add_option("--n", n)->required();
  tb->add_option("--r", r_range, "a..b inclusive")->required();

  auto* va = app.add_subcommand("verify-algebra", "symbolic identity suite on the quantum sphere");
  va->add_option("--n", n)->required();
  va->add_option("--max-N", max_N);
  va->add_option("--r", r);
  va->add_option("--budget", budget, "rewrite steps allowed per reduction");
  va->add_option("--samples", samples, "random associativity/adjoint samples");

  auto* vg = app.add_subcommand("verify-generators", "check generator orders and joint generation");
  vg->add_option("--n", n)->required();
  vg->add_option("--r", r_range, "r or a..b")->required();
  vg->add_option("--claim", claims, "EXPR=ORDER, repeatable; defaults to the published table");

  auto* pr = app.add_subcommand("pairings", "index pairings of line bundles and projections");
  pr->add_option("--n", n)->required();
  pr->add_option("--N", N_range, "a..b inclusive, default 0..n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  const bool json = format == "json";
  Output out;
  try {
    if (n < 1) throw std::invalid_argument("--n must be at least 1");
    if (kt->parsed()) {
      out = cmd_ktheory(n, r, json);
    } else if (mx->parsed()) {
      out = cmd_matrix(n, r, json);
    } else if (tb->parsed()) {
      out = cmd_table(n, parse_range(r_range), json);
    } else if (va->parsed()) {
      out = cmd_verify_algebra(n, max_N, r, budget, samples, seed, json);
    } else if (vg->parsed()) {
      out = cmd_verify_generators(n, parse_range(r_range), claims, json);
    } else if (pr->parsed()) {
      out = cmd_pairings(n, N_range.empty() ? Range{0, n} : parse_range(N_range), json);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (out_path.empty()) {
    std::cout << out.body;
  } else {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kUsage;
    }
    f << out.body;
  }
  if (out.code == kBudget) std::cerr << "rewrite budget exhausted\n";
  return out.code;
}

#include "qlens/report.hpp"

#include <algorithm>
#include <sstream>

namespace qlens::report {

using gysin::ClaimReport;
using gysin::KTheoryResult;
using gysin::SweepRow;

Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Json vector_json(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const Integer& x : v) out.push_back(integer_json(x));
  return out;
}

Json matrix_json(const intlin::IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i)));
  return out;
}

std::string join(const std::vector<Integer>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i].get_str();
  return s;
}

namespace {

std::string order_string(const std::optional<Integer>& o) { return o ? o->get_str() : "inf"; }

Json published_generators_json(const ClaimReport& rep) {
  Json gens = Json::array();
  for (const auto& c : rep.checks) {
    Json g;
    g["expr"] = c.claim.expr.to_string();
    g["order"] = integer_json(c.claim.claimed_order);
    g["verified"] = c.order_ok;
    g["computed_order"] = c.computed_order ? integer_json(*c.computed_order) : Json("inf");
    g["order_expr"] = c.claim.order_expr;
    g["source"] = "published";
    gens.push_back(std::move(g));
  }
  return gens;
}

Json smith_generators_json(const KTheoryResult& res) {
  Json gens = Json::array();
  for (const auto& t : res.generators) {
    Json g;
    g["expr"] = t.expr.to_string();
    g["order"] = integer_json(t.order);
    g["verified"] = true;
    g["computed_order"] = integer_json(t.order);
    g["source"] = "smith";
    gens.push_back(std::move(g));
  }
  return gens;
}

std::optional<std::vector<Integer>> published_alphas(const KTheoryResult& res) {
  if (res.n > 4) return std::nullopt;
  return gysin::paper_torsion_table(res.n, res.r);
}

std::string pad(const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); }

}  // namespace

Json claims_json(const ClaimReport& rep, const std::string& source) {
  Json j;
  j["n"] = rep.n;
  j["r"] = rep.r;
  j["generators"] = published_generators_json(rep);
  for (auto& g : j["generators"]) g["source"] = source;
  j["generates_torsion"] = rep.generates_torsion;
  j["ok"] = rep.ok();
  return j;
}

Json ktheory_json(const KTheoryResult& res, const std::optional<ClaimReport>& claims) {
  const auto& s = res.snf_certificate;
  Json j;
  j["n"] = res.n;
  j["r"] = res.r;
  j["k0"] = res.k0_string();
  j["k1"] = res.k1_string();
  j["k0_free_rank"] = res.k0_free_rank;
  j["k1_rank"] = res.k1_rank;
  j["alphas"] = vector_json(res.torsion);
  j["matrix"] = matrix_json(res.matrix);
  Json snf;
  snf["P"] = matrix_json(s.P);
  snf["Q"] = matrix_json(s.Q);
  snf["D"] = matrix_json(s.D);
  snf["det_P"] = integer_json(intlin::determinant(s.P));
  snf["det_Q"] = integer_json(intlin::determinant(s.Q));
  j["snf"] = std::move(snf);
  Json ker = Json::array();
  for (const auto& v : res.k1_kernel) ker.push_back(vector_json(v));
  j["k1_kernel"] = std::move(ker);
  j["smith_generators"] = smith_generators_json(res);
  if (claims) {
    j["generators"] = published_generators_json(*claims);
    j["generates_torsion"] = claims->generates_torsion;
  }
  if (auto pub = published_alphas(res)) {
    j["published_alphas"] = vector_json(*pub);
    j["matches_published"] = (*pub == res.torsion);
  }
  return j;
}

Json table_json(int n, const std::vector<SweepRow>& rows) {
  Json j;
  j["n"] = n;
  Json arr = Json::array();
  for (const SweepRow& row : rows) {
    const KTheoryResult& res = row.result;
    Json rj;
    rj["r"] = res.r;
    rj["alphas"] = vector_json(res.torsion);
    rj["k0"] = res.k0_string();
    rj["k1"] = res.k1_string();
    rj["generators"] = row.claims ? published_generators_json(*row.claims) : smith_generators_json(res);
    if (row.claims) rj["generates_torsion"] = row.claims->generates_torsion;
    if (auto pub = published_alphas(res)) {
      rj["published_alphas"] = vector_json(*pub);
      rj["matches_published"] = (*pub == res.torsion);
    }
    arr.push_back(std::move(rj));
  }
  j["rows"] = std::move(arr);
  return j;
}

std::string claims_text(const ClaimReport& rep) {
  std::ostringstream os;
  os << "generator claims for L(n=" << rep.n << ", r=" << rep.r << ")\n";
  std::size_t w = 4;
  for (const auto& c : rep.checks) w = std::max(w, c.claim.expr.to_string().size());
  for (const auto& c : rep.checks) {
    os << "  " << pad(c.claim.expr.to_string(), w) << "  claimed " << c.claim.claimed_order.get_str();
    if (!c.claim.order_expr.empty()) os << " (" << c.claim.order_expr << ")";
    os << "  computed " << order_string(c.computed_order) << "  " << (c.order_ok ? "ok" : "FAIL") << "\n";
  }
  os << "  joint generation: " << (rep.generates_torsion ? "yes" : "NO") << "\n";
  return os.str();
}

std::string ktheory_text(const KTheoryResult& res, const std::optional<ClaimReport>& claims) {
  std::ostringstream os;
  os << "L(n=" << res.n << ", r=" << res.r << ")\n";
  os << "K0 = " << res.k0_string() << "\n";
  os << "K1 = " << res.k1_string() << "\n";
  os << "invariant factors: " << join(res.torsion) << "\n";
  os << "rank A = " << res.torsion.size() << "\n";
  os << "A = " << res.matrix.to_string() << "\n";
  os << "Smith certificate: P*A*Q = D checked, det P = " << intlin::determinant(res.snf_certificate.P).get_str()
     << ", det Q = " << intlin::determinant(res.snf_certificate.Q).get_str() << "\n";
  os << "K1 kernel basis:";
  for (const auto& v : res.k1_kernel) os << " [" << join(v, ",") << "]";
  os << "\n";
  if (auto pub = published_alphas(res))
    os << "published factors: " << join(*pub) << (*pub == res.torsion ? " (match)" : " (MISMATCH)") << "\n";
  os << "Smith generators:\n";
  if (res.generators.empty()) os << "  none\n";
  for (const auto& g : res.generators) os << "  " << g.expr.to_string() << "  order " << g.order.get_str() << "\n";
  if (claims) {
    os << "published generators:\n";
    std::string body = claims_text(*claims);
    os << body.substr(body.find('\n') + 1);
  }
  return os.str();
}

std::string table_text(int n, const std::vector<SweepRow>& rows) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"r", "alphas", "K0", "K1", "published", "generators"});
  for (const SweepRow& row : rows) {
    const KTheoryResult& res = row.result;
    std::string pub = "-";
    if (auto p = published_alphas(res)) pub = (*p == res.torsion) ? "match" : "MISMATCH";
    std::string gens;
    if (row.claims) {
      for (const auto& c : row.claims->checks) {
        if (!gens.empty()) gens += "; ";
        gens += c.claim.expr.to_string() + ":" + order_string(c.computed_order) + (c.order_ok ? "" : "!");
      }
      if (!row.claims->generates_torsion) gens += "; NOT GENERATING";
    } else {
      for (const auto& g : res.generators) {
        if (!gens.empty()) gens += "; ";
        gens += g.expr.to_string() + ":" + g.order.get_str();
      }
    }
    if (gens.empty()) gens = "-";
    cells.push_back({std::to_string(res.r), join(res.torsion), res.k0_string(), res.k1_string(), pub, gens});
  }
  std::vector<std::size_t> w(cells[0].size(), 0);
  for (const auto& c : cells)
    for (std::size_t k = 0; k < c.size(); ++k) w[k] = std::max(w[k], c[k].size());

  std::ostringstream os;
  os << "n = " << n << "\n";
  for (const auto& c : cells) {
    std::string line;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) line += " | ";
      line += k + 1 == c.size() ? c[k] : pad(c[k], w[k]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
  }
  return os.str();
}

PairingGrid pairing_grid(int n, int N_from, int N_to) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (N_from > N_to) throw std::invalid_argument("empty N range");
  PairingGrid g;
  g.n = n;
  g.binomial_ok = true;
  for (int N = N_from; N <= N_to; ++N) {
    g.Ns.push_back(N);
    const kring::TruncPoly p = kring::line_bundle_class(n, -N);
    const kring::TruncPoly l = kring::line_bundle_class(n, N);
    std::vector<Integer> prow, lrow;
    for (int k = 0; k <= n; ++k) {
      prow.push_back(kring::pair_mu(k, p));
      lrow.push_back(kring::pair_mu(k, l));
      if (N >= 0 && prow.back() != kring::binomial(N, k)) g.binomial_ok = false;
    }
    g.projection.push_back(std::move(prow));
    g.line_bundle.push_back(std::move(lrow));
  }
  for (int j = 0; j <= n; ++j) {
    std::vector<Integer> row;
    for (int k = 0; k <= n; ++k) row.push_back(kring::pair_mu(k, kring::TruncPoly::u_power(n, j)));
    g.u_basis.push_back(std::move(row));
  }
  try {
    kring::basis_change_P_to_u(n);
    g.inverse_ok = true;
  } catch (const std::logic_error&) {
    g.inverse_ok = false;
  }
  return g;
}

namespace {

// M_kN = <mu_k, [P_-N]>: one row per k, one column per N.
std::vector<std::vector<Integer>> transposed(const PairingGrid& g) {
  std::vector<std::vector<Integer>> m(static_cast<std::size_t>(g.n) + 1);
  for (std::size_t k = 0; k < m.size(); ++k)
    for (const auto& row : g.projection) m[k].push_back(row[k]);
  return m;
}

}  // namespace

Json pairings_json(const PairingGrid& g) {
  Json j;
  j["n"] = g.n;
  j["N"] = g.Ns;
  Json m = Json::array();
  for (const auto& row : transposed(g)) m.push_back(vector_json(row));
  j["M"] = std::move(m);
  Json rows = Json::array();
  for (std::size_t i = 0; i < g.Ns.size(); ++i) {
    Json r;
    r["N"] = g.Ns[i];
    r["projection"] = vector_json(g.projection[i]);
    r["line_bundle"] = vector_json(g.line_bundle[i]);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  Json u = Json::array();
  for (const auto& row : g.u_basis) u.push_back(vector_json(row));
  j["u_basis"] = std::move(u);
  j["inverse_ok"] = g.inverse_ok;
  j["binomial_ok"] = g.binomial_ok;
  return j;
}

std::string pairings_text(const PairingGrid& g) {
  std::ostringstream os;
  os << "n = " << g.n << "\n";
  os << "M = <mu_k, [P_-N]>, row k, column N = " << g.Ns.front() << ".." << g.Ns.back() << "\n";
  const auto m = transposed(g);
  for (std::size_t k = 0; k < m.size(); ++k) os << "  k = " << k << ": " << join(m[k]) << "\n";
  os << "<mu_k, [L_N]>\n";
  for (std::size_t i = 0; i < g.Ns.size(); ++i) os << "  N = " << g.Ns[i] << ": " << join(g.line_bundle[i]) << "\n";
  os << "<mu_k, u^j>\n";
  for (std::size_t j = 0; j < g.u_basis.size(); ++j) os << "  j = " << j << ": " << join(g.u_basis[j]) << "\n";
  os << "M * M^-1 = I: " << (g.inverse_ok ? "yes" : "NO") << "\n";
  os << "binomial grid: " << (g.binomial_ok ? "yes" : "NO") << "\n";
  return os.str();
}

}  // namespace qlens::report

#pragma once

// Text and JSON renderings shared by the command-line tool and its tests.
// Integers are emitted as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise.

#include "qlens/gysin.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qlens::report {

using Json = nlohmann::ordered_json;

Json integer_json(const Integer& x);
Json vector_json(const std::vector<Integer>& v);
Json matrix_json(const intlin::IntMatrix& m);

/// source: "published" for the built-in table, "user" for --claim input.
Json claims_json(const gysin::ClaimReport& rep, const std::string& source = "user");
Json ktheory_json(const gysin::KTheoryResult& res, const std::optional<gysin::ClaimReport>& claims);
Json table_json(int n, const std::vector<gysin::SweepRow>& rows);

std::string claims_text(const gysin::ClaimReport& rep);
std::string ktheory_text(const gysin::KTheoryResult& res, const std::optional<gysin::ClaimReport>& claims);
std::string table_text(int n, const std::vector<gysin::SweepRow>& rows);

/// "1, 3, 72"
std::string join(const std::vector<Integer>& v, const std::string& sep = ", ");

struct PairingGrid {
  int n = 0;
  std::vector<int> Ns;
  std::vector<std::vector<Integer>> projection;   // <mu_k, [P_{-N}]>, row per N
  std::vector<std::vector<Integer>> line_bundle;  // <mu_k, [L_N]>, row per N
  std::vector<std::vector<Integer>> u_basis;      // <mu_k, u^j>
  bool inverse_ok = false;
  bool binomial_ok = false;  // projection grid equals C(N, k) for N >= 0
};

PairingGrid pairing_grid(int n, int N_from, int N_to);
Json pairings_json(const PairingGrid& g);
std::string pairings_text(const PairingGrid& g);

}  // namespace qlens::report

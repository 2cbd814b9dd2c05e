#pragma once

// K-theory of the quantum lens space L^{(n,r)}_q from the Gysin sequence
//
//   0 -> K_1(L) -> K_0(CP^n_q) --A--> K_0(CP^n_q) -> K_0(L) -> 0,
//
// with A the multiplication by the Euler class 1 - (1-u)^r on Z[u]/u^{n+1}.
// Cokernel classes are written in powers of the pulled-back u (printed "u").

#include "qlens/intlin.hpp"
#include "qlens/kring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qlens::gysin {

struct GeneratorClaim {
  kring::TruncPoly expr;
  Integer claimed_order;
  std::string order_expr;  // e.g. "r/6"; informational
};

/// Cokernel element together with its computed order.
struct TorsionGenerator {
  kring::TruncPoly expr;
  Integer order;
};

struct KTheoryResult {
  int n = 0;
  int r = 0;
  int k1_rank = 0;
  int k0_free_rank = 0;
  std::vector<Integer> torsion;  // alpha_1 | ... | alpha_rank, 1s included
  intlin::IntMatrix matrix;
  intlin::SNFResult snf_certificate;
  std::vector<intlin::Vector> k1_kernel;
  std::vector<TorsionGenerator> generators;  // from the Smith basis, alpha_i > 1

  /// "Z + Z_3 + Z_72"; trivial factors are dropped.
  std::string k0_string() const;
  std::string k1_string() const;
};

/// Matrix of multiplication by 1 - (1-u)^r in the basis {1, u, ..., u^n}.
intlin::IntMatrix euler_mult_matrix(int n, int r);

/// Throws std::invalid_argument unless 1 <= n <= 8 and r >= 1.
KTheoryResult compute_ktheory(int n, int r);

struct ClaimCheck {
  GeneratorClaim claim;
  std::optional<Integer> computed_order;  // nullopt: infinite
  bool order_ok = false;
};

struct ClaimReport {
  int n = 0;
  int r = 0;
  std::vector<ClaimCheck> checks;
  bool generates_torsion = false;

  bool ok() const;
};

/// Checks each claimed order exactly and that the claims together with Im(A)
/// span every Smith torsion basis vector. Throws std::invalid_argument for a
/// claim with the wrong n, a nonzero constant term or a nonpositive order.
ClaimReport verify_generator_claims(int n, int r, const std::vector<GeneratorClaim>& claims);

/// Published generators and orders for n in {1, 2, 3}, listed in the
/// published order. Throws std::invalid_argument for other n.
std::vector<GeneratorClaim> paper_generator_table(int n, int r);

/// Published invariant factors for n in {1, 2, 3, 4}.
std::vector<Integer> paper_torsion_table(int n, int r);

struct SweepRow {
  KTheoryResult result;
  std::optional<ClaimReport> claims;  // present when n <= 3
};

/// One row per r in [r_from, r_to], ascending. Throws std::invalid_argument
/// unless 1 <= r_from <= r_to.
std::vector<SweepRow> sweep_table(int n, int r_from, int r_to);

}  // namespace qlens::gysin

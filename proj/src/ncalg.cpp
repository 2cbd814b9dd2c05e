#include "qlens/ncalg.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <iterator>
#include <sstream>

namespace qlens::nc {

RewriteBudgetExceeded::RewriteBudgetExceeded(std::uint64_t budget)
    : std::runtime_error("rewrite budget of " + std::to_string(budget) + " rule applications exceeded"),
      budget_(budget) {}

namespace {

void check_ambient(int n) {
  if (n < 0 || n > 255) throw std::invalid_argument("ambient n out of range");
}

void accumulate(WordSum& sum, const Word& w, const HalfLaurent& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = sum.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) sum.erase(it);
  }
}

Word concat(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

Word adjoint_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& l : out) l.starred = !l.starred;
  return out;
}

Letter zl(int i) { return Letter{static_cast<std::uint8_t>(i), false}; }
Letter zsl(int i) { return Letter{static_cast<std::uint8_t>(i), true}; }

const HalfLaurent& one_minus_q2() {
  static const HalfLaurent c = HalfLaurent(1) - HalfLaurent::q_power(2);
  return c;
}

// Position of the leftmost adjacent pair that is out of order, if any.
std::optional<std::size_t> find_adjacent_redex(const Word& w) {
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    const Letter a = w[k], b = w[k + 1];
    if (a.starred && !b.starred) return k;
    if (!a.starred && !b.starred && a.index < b.index) return k;
    if (a.starred && b.starred && a.index > b.index) return k;
  }
  return std::nullopt;
}

// In a sorted word z_0 ends the unstarred block and z_0* opens the starred
// one, so both letters present means the factor z_0 z_0* occurs.
std::optional<std::size_t> find_sphere_redex(const Word& w) {
  for (std::size_t k = 0; k + 1 < w.size(); ++k)
    if (w[k] == zl(0) && w[k + 1] == zsl(0)) return k;
  return std::nullopt;
}

// One rule application on w with coefficient c; results go into `out`.
void rewrite_once(int n, const Word& w, const HalfLaurent& c, WordSum& out) {
  if (auto pos = find_adjacent_redex(w)) {
    const std::size_t k = *pos;
    const Letter a = w[k], b = w[k + 1];
    Word swapped = w;
    std::swap(swapped[k], swapped[k + 1]);

    if (!a.starred || (a.starred && b.starred)) {
      // z_i z_j = q^{-1} z_j z_i (i<j); its adjoint z_i* z_j* = q^{-1} z_j* z_i* (i>j)
      accumulate(out, swapped, c.shifted(-2));
      return;
    }
    if (a.index != b.index) {
      // z_i* z_j = q z_j z_i*
      accumulate(out, swapped, c.shifted(2));
      return;
    }
    // z_i* z_i = z_i z_i* + (1 - q^2) sum_{j>i} z_j z_j*
    accumulate(out, swapped, c);
    const HalfLaurent cc = c * one_minus_q2();
    for (int j = a.index + 1; j <= n; ++j) {
      Word t = w;
      t[k] = zl(j);
      t[k + 1] = zsl(j);
      accumulate(out, t, cc);
    }
    return;
  }

  // z_0 z_0* = 1 - sum_{j>0} z_j z_j*
  const std::size_t k = *find_sphere_redex(w);
  Word t = w;
  t.erase(t.begin() + static_cast<long>(k), t.begin() + static_cast<long>(k) + 2);
  accumulate(out, t, c);
  for (int j = 1; j <= n; ++j) {
    Word u = w;
    u[k] = zl(j);
    u[k + 1] = zsl(j);
    accumulate(out, u, -c);
  }
}

}  // namespace

bool is_normal_word(int n, const Word& w) {
  for (const Letter& l : w)
    if (l.index > n) return false;
  return !find_adjacent_redex(w) && !find_sphere_redex(w);
}

NCPoly::NCPoly(int n) : n_(n) { check_ambient(n); }

NCPoly NCPoly::scalar(int n, const HalfLaurent& c) {
  NCPoly p(n);
  if (!c.is_zero()) p.terms_.emplace(Word{}, c);
  return p;
}

NCPoly NCPoly::z(int n, int i) {
  if (i < 0 || i > n) throw std::invalid_argument("generator index out of range");
  return normal_form(n, WordSum{{Word{zl(i)}, HalfLaurent(1)}});
}

NCPoly NCPoly::zstar(int n, int i) {
  if (i < 0 || i > n) throw std::invalid_argument("generator index out of range");
  return normal_form(n, WordSum{{Word{zsl(i)}, HalfLaurent(1)}});
}

NCPoly& NCPoly::operator+=(const NCPoly& rhs) {
  if (rhs.n_ != n_) throw std::invalid_argument("mismatched ambient n");
  for (const auto& [w, c] : rhs.terms_) accumulate(terms_, w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& rhs) {
  if (rhs.n_ != n_) throw std::invalid_argument("mismatched ambient n");
  for (const auto& [w, c] : rhs.terms_) accumulate(terms_, w, -c);
  return *this;
}

NCPoly NCPoly::scaled(const HalfLaurent& c) const {
  NCPoly out(n_);
  if (c.is_zero()) return out;
  for (const auto& [w, x] : terms_) out.terms_.emplace(w, x * c);
  return out;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += ' ';
    s += 'z';
    s += std::to_string(w[k].index);
    if (w[k].starred) s += '\'';
  }
  return s;
}

std::string NCPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    s += "(" + c.to_string() + ") * " + word_to_string(w);
  }
  return s;
}

Word parse_word(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  Word w;
  while (is >> tok) {
    if (tok == "1") continue;
    if (tok.size() < 2 || tok[0] != 'z') throw std::invalid_argument("bad letter: " + tok);
    bool starred = tok.back() == '\'';
    std::string digits = tok.substr(1, tok.size() - 1 - (starred ? 1 : 0));
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char ch) { return std::isdigit(ch); }))
      throw std::invalid_argument("bad letter: " + tok);
    int idx = std::stoi(digits);
    if (idx > 255) throw std::invalid_argument("bad letter: " + tok);
    w.push_back(Letter{static_cast<std::uint8_t>(idx), starred});
  }
  return w;
}

NCPoly normal_form(int n, const WordSum& sum, const RewriteConfig& cfg) {
  check_ambient(n);
  for (const auto& [w, c] : sum)
    for (const Letter& l : w)
      if (l.index > n) throw std::invalid_argument("generator index exceeds ambient n");

  // Longest words are rewritten first so equal shorter words merge before
  // they are processed; no rule lengthens a word. Every rule either shortens
  // a word, removes an inversion, or raises the index sum, so this terminates.
  WordSum todo = sum;
  NCPoly result(n);
  std::uint64_t steps = 0;
  while (!todo.empty()) {
    auto it = std::prev(todo.end());
    Word w = it->first;
    HalfLaurent c = std::move(it->second);
    todo.erase(it);

    if (is_normal_word(n, w)) {
      accumulate(result.terms_, w, c);
      continue;
    }
    if (++steps > cfg.budget) throw RewriteBudgetExceeded(cfg.budget);
    rewrite_once(n, w, c, todo);
  }
  return result;
}

NCPoly normal_form(const NCPoly& p, const RewriteConfig& cfg) {
  return normal_form(p.ambient_n(), p.terms(), cfg);
}

NCPoly multiply(const NCPoly& a, const NCPoly& b, const RewriteConfig& cfg) {
  if (a.ambient_n() != b.ambient_n()) throw std::invalid_argument("mismatched ambient n");
  WordSum prod;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) accumulate(prod, concat(wa, wb), ca * cb);
  return normal_form(a.ambient_n(), prod, cfg);
}

NCPoly adjoint(const NCPoly& p, const RewriteConfig& cfg) {
  WordSum sum;
  for (const auto& [w, c] : p.terms()) accumulate(sum, adjoint_word(w), c);
  return normal_form(p.ambient_n(), sum, cfg);
}

std::optional<int> u1_degree(const NCPoly& p) {
  std::optional<int> deg;
  for (const auto& [w, c] : p.terms()) {
    int d = 0;
    for (const Letter& l : w) d += l.starred ? -1 : 1;
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg.value_or(0);
}

bool zr_invariant(const NCPoly& p, int r) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  for (const auto& [w, c] : p.terms()) {
    int d = 0;
    for (const Letter& l : w) d += l.starred ? -1 : 1;
    if (d % r != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

NCMatrix::NCMatrix(int n, std::size_t rows, std::size_t cols)
    : n_(n),
      rows_(rows),
      cols_(cols),
      entries_(rows * cols, NCPoly(n)),
      row_rad_(rows, HalfLaurent(1)),
      col_rad_(cols, HalfLaurent(1)) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("empty NCMatrix");
}

NCMatrix NCMatrix::identity(int n, std::size_t size) {
  NCMatrix m(n, size, size);
  for (std::size_t i = 0; i < size; ++i) m.core(i, i) = NCPoly::one(n);
  return m;
}

bool NCMatrix::equals(const NCMatrix& other) const {
  if (n_ != other.n_ || rows_ != other.rows_ || cols_ != other.cols_) return false;
  if (row_rad_ != other.row_rad_ || col_rad_ != other.col_rad_)
    throw UnpairedSquareRoot("comparison of matrices with different square-root tags");
  return entries_ == other.entries_;
}

NCMatrix multiply(const NCMatrix& a, const NCMatrix& b, const RewriteConfig& cfg) {
  if (a.ambient_n() != b.ambient_n()) throw std::invalid_argument("mismatched ambient n");
  if (a.cols() != b.rows()) throw std::invalid_argument("NCMatrix shape mismatch");

  // sqrt(x) * sqrt(x) = x is the only pairing we allow.
  std::vector<HalfLaurent> inner(a.cols());
  for (std::size_t k = 0; k < a.cols(); ++k) {
    if (!(a.col_radicand(k) == b.row_radicand(k)))
      throw UnpairedSquareRoot("unpaired square root at inner index " + std::to_string(k));
    inner[k] = a.col_radicand(k);
  }

  NCMatrix out(a.ambient_n(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) out.set_row_radicand(i, a.row_radicand(i));
  for (std::size_t j = 0; j < b.cols(); ++j) out.set_col_radicand(j, b.col_radicand(j));

  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      WordSum acc;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        for (const auto& [wa, ca] : a.core(i, k).terms())
          for (const auto& [wb, cb] : b.core(k, j).terms())
            accumulate(acc, concat(wa, wb), ca * cb * inner[k]);
      }
      out.core(i, j) = normal_form(a.ambient_n(), acc, cfg);
    }
  }
  return out;
}

NCMatrix adjoint(const NCMatrix& m, const RewriteConfig& cfg) {
  NCMatrix out(m.ambient_n(), m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out.set_col_radicand(i, m.row_radicand(i));
  for (std::size_t j = 0; j < m.cols(); ++j) out.set_row_radicand(j, m.col_radicand(j));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.core(j, i) = adjoint(m.core(i, j), cfg);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_n(int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
}

Integer binomial(long top, long bottom) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(bottom));
  return out;
}

void compositions(int parts, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == parts - 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions(parts, total - v, cur, out);
    cur.pop_back();
  }
}

int pair_sum(const std::vector<int>& j) {
  int s = 0;
  for (std::size_t a = 0; a < j.size(); ++a)
    for (std::size_t b = a + 1; b < j.size(); ++b) s += j[a] * j[b];
  return s;
}

}  // namespace

std::size_t psi_length(int n, int N) {
  require_n(n);
  return binomial(std::abs(N) + n, n).get_ui();
}

std::vector<std::vector<int>> psi_multi_indices(int n, int N) {
  require_n(n);
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  compositions(n + 1, std::abs(N), cur, out);
  std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return out;
}

NCMatrix build_psi(int n, int N) {
  const auto indices = psi_multi_indices(n, N);
  NCMatrix psi(n, indices.size(), 1);
  for (std::size_t row = 0; row < indices.size(); ++row) {
    const std::vector<int>& j = indices[row];
    psi.set_row_radicand(row, qmultinomial(j));

    Word w;
    int s_exp = 0;
    if (N >= 0) {
      // q^{-1/2 sum_{r<s} j_r j_s} (z_0^{j_0})* ... (z_n^{j_n})*
      s_exp = -pair_sum(j);
      for (int i = 0; i <= n; ++i) w.insert(w.end(), static_cast<std::size_t>(j[i]), zsl(i));
    } else {
      // q^{1/2 sum_{r<s} j_r j_s + sum_r r j_r} z_0^{j_0} ... z_n^{j_n}
      s_exp = pair_sum(j);
      for (int i = 0; i <= n; ++i) s_exp += 2 * i * j[i];
      for (int i = 0; i <= n; ++i) w.insert(w.end(), static_cast<std::size_t>(j[i]), zl(i));
    }
    psi.core(row, 0) = normal_form(n, WordSum{{w, HalfLaurent::s_power(s_exp)}});
  }
  return psi;
}

NCMatrix build_projection(int n, int N, const RewriteConfig& cfg) {
  NCMatrix psi = build_psi(n, N);
  return multiply(psi, adjoint(psi, cfg), cfg);
}

NCMatrix build_partial_isometry(int n, int r, int N, const RewriteConfig& cfg) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  NCMatrix upper = build_psi(n, r * (N + 1));
  NCMatrix lower = build_psi(n, r * N);
  return multiply(upper, adjoint(lower, cfg), cfg);
}

bool verify_isometry(int n, int N, const RewriteConfig& cfg) {
  NCMatrix psi = build_psi(n, N);
  return multiply(adjoint(psi, cfg), psi, cfg).equals(NCMatrix::identity(n, 1));
}

bool verify_projection(int n, int N, const RewriteConfig& cfg) {
  NCMatrix p = build_projection(n, N, cfg);
  return multiply(p, p, cfg).equals(p) && adjoint(p, cfg).equals(p);
}

bool verify_qtrace(int n, const RewriteConfig& cfg) {
  require_n(n);
  // sum_i q^{2i} p_ii with p_ii = z_i* z_i
  WordSum sum;
  for (int i = 0; i <= n; ++i) accumulate(sum, Word{zsl(i), zl(i)}, HalfLaurent::q_power(2 * i));
  return normal_form(n, sum, cfg) == NCPoly::one(n);
}

bool verify_partial_isometry(int n, int r, int N, const RewriteConfig& cfg) {
  NCMatrix v = build_partial_isometry(n, r, N, cfg);
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < v.cols(); ++j) {
      const NCPoly& e = v.core(i, j);
      if (e.is_zero()) continue;
      if (u1_degree(e) != -r) return false;
    }
  NCMatrix vs = adjoint(v, cfg);
  return multiply(vs, v, cfg).equals(build_projection(n, r * N, cfg)) &&
         multiply(v, vs, cfg).equals(build_projection(n, r * (N + 1), cfg));
}

bool hopf_galois_witness(int n, int r, int N, const RewriteConfig& cfg) {
  require_n(n);
  if (r < 1) throw std::invalid_argument("r must be positive");
  if (N % r != 0) throw std::invalid_argument("witness requires N to be a multiple of r");

  const NCMatrix psi = build_psi(n, N);
  for (std::size_t row = 0; row < psi.rows(); ++row)
    if (!zr_invariant(psi.core(row, 0), r)) return false;

  WordSum sum;
  if (N >= 0) {
    // sum_j beta_j z_n^{j_n}..z_0^{j_0} (z_0^{j_0})*..(z_n^{j_n})*,
    // beta_j = [j]! q^{-sum_{r<s} j_r j_s}
    for (const auto& j : psi_multi_indices(n, N)) {
      Word w;
      for (int i = n; i >= 0; --i) w.insert(w.end(), static_cast<std::size_t>(j[i]), zl(i));
      for (int i = 0; i <= n; ++i) w.insert(w.end(), static_cast<std::size_t>(j[i]), zsl(i));
      accumulate(sum, w, qmultinomial(j) * HalfLaurent::q_power(-pair_sum(j)));
    }
  } else {
    for (std::size_t row = 0; row < psi.rows(); ++row) {
      const NCPoly& core = psi.core(row, 0);
      const NCPoly core_star = adjoint(core, cfg);
      for (const auto& [wa, ca] : core_star.terms())
        for (const auto& [wb, cb] : core.terms())
          accumulate(sum, concat(wa, wb), ca * cb * psi.row_radicand(row));
    }
  }
  return normal_form(n, sum, cfg) == NCPoly::one(n);
}

}  // namespace qlens::nc

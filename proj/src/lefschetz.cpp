#include "unx/lefschetz.hpp"

#include <algorithm>

#include "unx/prng.hpp"

namespace unx {

namespace {

bool proportional(const std::vector<FieldScalar>& u, const std::vector<FieldScalar>& v) {
  // u = c v for some scalar c; both are nonzero coefficient vectors
  size_t lead = u.size();
  for (size_t i = 0; i < u.size(); ++i)
    if (!v[i].is_zero()) {
      lead = i;
      break;
    }
  if (lead == u.size()) return false;
  if (u[lead].is_zero()) return false;
  FieldScalar c = u[lead] / v[lead];
  for (size_t i = 0; i < u.size(); ++i)
    if (u[i] != c * v[i]) return false;
  return true;
}

SparsePoly linear_form_poly(int n, const FieldSpecPtr& field,
                            const std::vector<FieldScalar>& coeffs) {
  SparsePoly L(n, field);
  for (int i = 0; i <= n; ++i) {
    if (coeffs[size_t(i)].is_zero()) continue;
    Monomial m = Monomial::unit(n);
    m.x_exp[size_t(i)] = 1;
    L.add_term(m, coeffs[size_t(i)]);
  }
  return L;
}

// Coefficient row of an x-only polynomial over the degree-j monomial basis.
void fill_row(ScalarMatrix& M, int row, const SparsePoly& f,
              const std::map<std::vector<int>, int>& index) {
  for (const auto& [mono, c] : f.terms()) M.at(row, index.at(mono.x_exp)) = c;
}

std::map<std::vector<int>, int> basis_index(const std::vector<Monomial>& basis) {
  std::map<std::vector<int>, int> index;
  for (size_t j = 0; j < basis.size(); ++j) index[basis[j].x_exp] = int(j);
  return index;
}

// Rows spanning [I]_j: all mu * L_s^d with deg mu = j - d.
std::vector<SparsePoly> ideal_span(const PowerIdealSpec& spec, int j) {
  std::vector<SparsePoly> rows;
  if (j < spec.exponent) return rows;
  std::vector<SparsePoly> powers;
  for (const auto& f : spec.forms)
    powers.push_back(linear_form_poly(spec.n, spec.field, f).pow(spec.exponent));
  if (j == spec.exponent) return powers;
  for (const Monomial& mu : monomial_basis(spec.n, j - spec.exponent))
    for (const auto& p : powers)
      rows.push_back(p * SparsePoly::single(spec.n, mu, FieldScalar::one(spec.field)));
  return rows;
}

std::vector<FieldScalar> seeded_prime_form(int n, const FieldSpecPtr& field,
                                           uint64_t seed) {
  static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                               31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  std::vector<int> pool(std::begin(primes), std::end(primes));
  uint64_t state = seed;
  for (size_t i = pool.size() - 1; i > 0; --i)
    std::swap(pool[i], pool[splitmix64(state) % (i + 1)]);
  std::vector<FieldScalar> L;
  for (int i = 0; i <= n; ++i) L.emplace_back(Rat(pool[size_t(i)]), field);
  return L;
}

}  // namespace

PowerIdealSpec::PowerIdealSpec(int n_, FieldSpecPtr field_,
                               std::vector<std::vector<FieldScalar>> forms_,
                               int exponent_)
    : n(n_), field(std::move(field_)), forms(std::move(forms_)), exponent(exponent_) {
  if (exponent < 1) throw error("power ideal exponent must be >= 1");
  for (const auto& f : forms) {
    if (int(f.size()) != n + 1) throw error("linear form length mismatch");
    bool nonzero = false;
    for (const auto& c : f) nonzero = nonzero || !c.is_zero();
    if (!nonzero) throw error("zero linear form in power ideal");
  }
  for (size_t i = 0; i < forms.size(); ++i)
    for (size_t j = i + 1; j < forms.size(); ++j)
      if (proportional(forms[i], forms[j]))
        throw error("proportional linear forms in power ideal");
}

PowerIdealSpec power_ideal_from_points(const PointSet& Z, int d) {
  std::vector<std::vector<FieldScalar>> forms;
  for (const auto& p : Z.points()) forms.push_back(p.coords());
  return PowerIdealSpec(Z.n(), Z.field(), std::move(forms), d);
}

int power_ideal_dim(const PowerIdealSpec& spec, int j) {
  if (j < 0) throw error("power_ideal_dim requires j >= 0");
  auto rows = ideal_span(spec, j);
  if (rows.empty()) return 0;
  std::vector<Monomial> basis = monomial_basis(spec.n, j);
  auto index = basis_index(basis);
  ScalarMatrix M(int(rows.size()), int(basis.size()), spec.field);
  for (size_t r = 0; r < rows.size(); ++r) fill_row(M, int(r), rows[r], index);
  return rank_scalar(std::move(M));
}

LefschetzVerdict multiplication_map_rank(const PowerIdealSpec& spec,
                                         const std::vector<FieldScalar>& L, int e,
                                         int i) {
  if (e < 1 || i < 0) throw error("multiplication_map_rank requires e >= 1, i >= 0");
  const int n = spec.n;
  std::vector<Monomial> src = monomial_basis(n, i);
  std::vector<Monomial> dst = monomial_basis(n, i + e);
  auto dst_index = basis_index(dst);

  auto src_ideal = ideal_span(spec, i);
  auto dst_ideal = ideal_span(spec, i + e);

  int rank_src_ideal = 0;
  if (!src_ideal.empty()) {
    auto src_index = basis_index(src);
    ScalarMatrix A(int(src_ideal.size()), int(src.size()), spec.field);
    for (size_t r = 0; r < src_ideal.size(); ++r) fill_row(A, int(r), src_ideal[r], src_index);
    rank_src_ideal = rank_scalar(std::move(A));
  }
  int rank_dst_ideal = 0;
  if (!dst_ideal.empty()) {
    ScalarMatrix B(int(dst_ideal.size()), int(dst.size()), spec.field);
    for (size_t r = 0; r < dst_ideal.size(); ++r) fill_row(B, int(r), dst_ideal[r], dst_index);
    rank_dst_ideal = rank_scalar(std::move(B));
  }

  SparsePoly Le = linear_form_poly(n, spec.field, L).pow(e);
  // rank of the induced map = rank [T | B] - rank B, rows over R_{i+e}
  ScalarMatrix TB(int(src.size() + dst_ideal.size()), int(dst.size()), spec.field);
  for (size_t c = 0; c < src.size(); ++c)
    fill_row(TB, int(c), Le * SparsePoly::single(n, src[c], FieldScalar::one(spec.field)),
             dst_index);
  for (size_t r = 0; r < dst_ideal.size(); ++r)
    fill_row(TB, int(src.size() + r), dst_ideal[r], dst_index);
  int rank_tb = rank_scalar(std::move(TB));

  LefschetzVerdict v;
  v.degree_i = i;
  v.range_k = e;
  v.dim_source = int(src.size()) - rank_src_ideal;
  v.dim_target = int(dst.size()) - rank_dst_ideal;
  v.map_rank = rank_tb - rank_dst_ideal;
  v.fails = v.map_rank < std::min(v.dim_source, v.dim_target);
  return v;
}

LefschetzVerdict slp_check(const PointSet& Z, int d, int m, uint64_t L_seed) {
  if (m < 1 || d < m) throw error("slp_check requires d >= m >= 1");
  PowerIdealSpec spec = power_ideal_from_points(Z, d);
  const int e = d - m + 1;
  const int i = m - 1;
  LefschetzVerdict first =
      multiplication_map_rank(spec, seeded_prime_form(Z.n(), Z.field(), L_seed), e, i);
  LefschetzVerdict second = multiplication_map_rank(
      spec, seeded_prime_form(Z.n(), Z.field(), split_seed(L_seed, 1)), e, i);
  if (first.fails != second.fails || first.map_rank != second.map_rank)
    throw unreliable_sample_error("two seeded linear forms disagree in slp_check");
  return first;
}

bool equivalence_test(const PointSet& Z, int d, int m, uint64_t seed, DetectMode mode,
                      const DetectOptions& opts) {
  LefschetzVerdict lef = slp_check(Z, d, m, seed);
  DetectionCell cell = detect(Z, d, m, mode, opts);
  if (lef.fails != cell.unexpected)
    throw equivalence_violation_error(
        "SLP and detector verdicts differ on (" + std::to_string(Z.n()) + "," +
        std::to_string(d) + "," + std::to_string(m) + ") for " + Z.label());
  return cell.unexpected;
}

long long expected_count_f(int n, int k) {
  if (n < 4 || k < 3) throw error("expected_count_f requires n >= 4, k >= 3");
  if (k % 2 == 0)
    return binom(n + k, n) - binom(n + k - 2, n) - binom(n + k / 2, n) +
           binom(n - 2 + k / 2, n);
  return binom(n + k, n) - binom(n + k - 2, n) - 2 * binom(n + (k - 1) / 2, n) +
         2 * binom(n + (k - 3) / 2, n - 1);
}

}  // namespace unx

#include "unx/detector.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <thread>

#include "unx/prng.hpp"

namespace unx {

namespace {

// All exponent vectors of the given length summing to deg, lex-descending.
void exponent_vectors_rec(int len, int deg, int pos, std::vector<int>& cur,
                          std::vector<std::vector<int>>& out) {
  if (pos == len - 1) {
    cur[size_t(pos)] = deg;
    out.push_back(cur);
    return;
  }
  for (int v = deg; v >= 0; --v) {
    cur[size_t(pos)] = v;
    exponent_vectors_rec(len, deg - v, pos + 1, cur, out);
  }
}

std::vector<std::vector<int>> exponent_vectors(int len, int deg) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(size_t(len), 0);
  exponent_vectors_rec(len, deg, 0, cur, out);
  return out;
}

FieldScalar eval_x_monomial(const Monomial& mono, const ProjectivePoint& z,
                            const FieldSpecPtr& field) {
  FieldScalar v = FieldScalar::one(field);
  for (size_t i = 0; i < mono.x_exp.size(); ++i)
    for (int e = 0; e < mono.x_exp[i]; ++e) v *= z.coords()[i];
  return v;
}

Rat monomial_diff_factor(const std::vector<int>& target, const std::vector<int>& by) {
  Rat f(1);
  for (size_t i = 0; i < target.size(); ++i) {
    if (by[i] > target[i]) return Rat(0);
    for (int k = 0; k < by[i]; ++k) f *= (target[i] - k);
  }
  return f;
}

}  // namespace

std::vector<Monomial> monomial_basis(int n, int d) {
  if (d < 0) throw error("monomial_basis requires d >= 0");
  std::vector<Monomial> out;
  for (auto& e : exponent_vectors(n + 1, d))
    out.emplace_back(std::vector<int>(size_t(n) + 1, 0), e);
  return out;
}

ConditionMatrix build_condition_matrix(const PointSet& Z, int d, int m) {
  if (Z.size() == 0) throw error("empty point set");
  if (m < 1 || d < m) throw error("build_condition_matrix requires d >= m >= 1");
  const int n = Z.n();
  const FieldSpecPtr& field = Z.field();
  std::vector<Monomial> Md = monomial_basis(n, d);
  std::vector<Monomial> Mm = monomial_basis(n, m - 1);

  ScalarMatrix Q1(Z.size(), int(Md.size()), field);
  for (int i = 0; i < Z.size(); ++i)
    for (size_t j = 0; j < Md.size(); ++j)
      Q1.at(i, int(j)) = eval_x_monomial(Md[j], Z.points()[size_t(i)], field);

  PolyMatrix Q2(int(Mm.size()), int(Md.size()), n, field);
  for (size_t s = 0; s < Mm.size(); ++s)
    for (size_t j = 0; j < Md.size(); ++j) {
      Rat factor = monomial_diff_factor(Md[j].x_exp, Mm[s].x_exp);
      if (factor == 0) continue;
      // partial of Md[j] by Mm[s], then x -> a
      std::vector<int> a_exp(size_t(n) + 1);
      for (size_t i = 0; i <= size_t(n); ++i)
        a_exp[i] = Md[j].x_exp[i] - Mm[s].x_exp[i];
      Q2.at(int(s), int(j)) = SparsePoly::single(
          n, Monomial(a_exp, std::vector<int>(size_t(n) + 1, 0)),
          FieldScalar(factor, field));
    }
  return ConditionMatrix{std::move(Md), std::move(Q1), std::move(Q2)};
}

bool q2_full_row_rank_witness(int n, int d, int m) {
  if (d < m) return false;
  std::vector<Monomial> Mm = monomial_basis(n, m - 1);
  // Columns Mm_t * x0^(d-m+1).  Entry (s, t) is nonzero iff Mm_s divides
  // Mm_t * x0^(d-m+1); sorting by x0-exponent descending makes the
  // square submatrix triangular with nonzero diagonal.
  std::vector<int> order(Mm.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::stable_sort(order.begin(), order.end(), [&](int l, int r) {
    return Mm[size_t(l)].x_exp[0] > Mm[size_t(r)].x_exp[0];
  });
  const int extra = d - m + 1;
  for (size_t i = 0; i < order.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      const auto& row = Mm[size_t(order[i])].x_exp;
      auto col = Mm[size_t(order[j])].x_exp;
      col[0] += extra;
      bool divides = true;
      for (size_t v = 0; v < row.size(); ++v)
        if (row[v] > col[v]) divides = false;
      if (divides) return false;  // nonzero below the diagonal
    }
  }
  return true;  // diagonal entries Mm_s | Mm_s * x0^extra are always nonzero
}

std::vector<std::vector<int>> cone_exponents(int n, int d, int m) {
  std::vector<std::vector<int>> out;
  for (int k = m; k <= d; ++k)
    for (auto& e : exponent_vectors(n, k)) out.push_back(e);
  return out;
}

SparsePoly cone_basis_poly(int n, const FieldSpecPtr& field,
                           const std::vector<int>& beta, int d) {
  const FieldScalar one = FieldScalar::one(field);
  SparsePoly f = SparsePoly::constant(n, one);
  int total = 0;
  for (size_t i = 0; i < beta.size(); ++i) {
    total += beta[i];
    if (beta[i] == 0) continue;
    // a0*x_{i+1} - a_{i+1}*x0
    SparsePoly lin(n, field);
    Monomial m1 = Monomial::unit(n);
    m1.a_exp[0] = 1;
    m1.x_exp[i + 1] = 1;
    lin.add_term(m1, one);
    Monomial m2 = Monomial::unit(n);
    m2.a_exp[i + 1] = 1;
    m2.x_exp[0] = 1;
    lin.add_term(m2, -one);
    f = f * lin.pow(beta[i]);
  }
  if (d - total > 0) {
    Monomial mx = Monomial::unit(n);
    mx.x_exp[0] = d - total;
    f = f * SparsePoly::single(n, mx, one);
  }
  return f;
}

SparsePoly cone_poly_at_point(const std::vector<int>& beta, int d,
                              const ProjectivePoint& z) {
  const int n = z.n();
  const FieldSpecPtr& field = z.coords()[0].spec();
  const FieldScalar z0 = z.coords()[0];
  SparsePoly f = SparsePoly::constant(n, FieldScalar::one(field));
  int total = 0;
  for (size_t i = 0; i < beta.size(); ++i) {
    total += beta[i];
    if (beta[i] == 0) continue;
    // z_{i+1}*a0 - z0*a_{i+1}
    SparsePoly lin(n, field);
    Monomial m1 = Monomial::unit(n);
    m1.a_exp[0] = 1;
    lin.add_term(m1, z.coords()[i + 1]);
    Monomial m2 = Monomial::unit(n);
    m2.a_exp[i + 1] = 1;
    lin.add_term(m2, -z0);
    if (lin.is_zero()) return SparsePoly(n, field);
    f = f * lin.pow(beta[i]);
  }
  if (d - total > 0) {
    if (z0.is_zero()) return SparsePoly(n, field);
    FieldScalar scale = FieldScalar::one(field);
    for (int e = 0; e < d - total; ++e) scale *= z0;
    f = f.scaled(scale);
  }
  return f;
}

namespace {

FieldScalar cone_value_at(const std::vector<int>& beta, int d,
                          const ProjectivePoint& z,
                          const std::vector<FieldScalar>& pt) {
  const FieldSpecPtr& field = pt[0].spec();
  FieldScalar v = FieldScalar::one(field);
  int total = 0;
  for (size_t i = 0; i < beta.size(); ++i) {
    total += beta[i];
    if (beta[i] == 0) continue;
    FieldScalar lin = pt[0] * z.coords()[i + 1] - pt[i + 1] * z.coords()[0];
    if (lin.is_zero()) return FieldScalar::zero(field);
    for (int e = 0; e < beta[i]; ++e) v *= lin;
  }
  for (int e = 0; e < d - total; ++e) v *= z.coords()[0];
  return v;
}

std::vector<FieldScalar> sample_point(int n, uint64_t seed, const Int& bound,
                                      const FieldSpecPtr& field, uint64_t salt) {
  std::vector<FieldScalar> pt;
  pt.reserve(size_t(n) + 1);
  for (int i = 0; i <= n; ++i)
    pt.push_back(sample_nonzero(split_seed(seed, salt * 1315423911ULL + uint64_t(i)),
                                bound, field));
  return pt;
}

// Incremental independence tracking: a row is accepted when it enlarges
// the row space of the previously accepted witness rows.
class WitnessRank {
 public:
  explicit WitnessRank(const FieldSpecPtr& field) : field_(field) {}
  int rank() const { return int(rows_.size()); }
  bool try_add(std::vector<FieldScalar> row) {
    for (size_t r = 0; r < rows_.size(); ++r) {
      const FieldScalar& lead = row[size_t(pivots_[r])];
      if (lead.is_zero()) continue;
      for (size_t j = 0; j < row.size(); ++j)
        row[j] -= lead * rows_[r][j];
    }
    int pivot = -1;
    for (size_t j = 0; j < row.size(); ++j)
      if (!row[j].is_zero()) {
        pivot = int(j);
        break;
      }
    if (pivot < 0) return false;
    const FieldScalar inv = row[size_t(pivot)].inv();
    for (auto& c : row) c *= inv;
    rows_.push_back(std::move(row));
    pivots_.push_back(pivot);
    return true;
  }

 private:
  FieldSpecPtr field_;
  std::vector<std::vector<FieldScalar>> rows_;
  std::vector<int> pivots_;
};

// x-multiplicity of F at x = a (generic): min e-degree of F(x, x + e).
int x_multiplicity_at_diagonal(const SparsePoly& F) {
  return F.swap_blocks().diagonal_shift().min_a_degree();
}

void verify_kernel_form(const SparsePoly& F, const PointSet& Z, int m) {
  std::map<VarRef, FieldScalar> assign;
  for (const auto& z : Z.points()) {
    for (int i = 0; i <= Z.n(); ++i) assign[{Block::x, i}] = z.coords()[size_t(i)];
    if (!F.evaluate(assign).is_zero())
      throw error("kernel form does not vanish on Z");
  }
  if (x_multiplicity_at_diagonal(F) < m)
    throw error("kernel form has x-multiplicity below m at the general point");
}

std::vector<FieldScalar> form_witness_row(const SparsePoly& F,
                                          const std::vector<Monomial>& Md,
                                          const std::vector<FieldScalar>& wpt) {
  std::map<VarRef, FieldScalar> assign;
  for (size_t i = 0; i < wpt.size(); ++i) assign[{Block::a, int(i)}] = wpt[i];
  SparsePoly fx = F.evaluate(assign);
  std::map<Monomial, SparsePoly, MonomialGreater> dummy;
  std::vector<FieldScalar> row(Md.size(), FieldScalar::zero(F.field()));
  std::map<std::vector<int>, size_t> index;
  for (size_t j = 0; j < Md.size(); ++j) index[Md[j].x_exp] = j;
  for (const auto& [mono, c] : fx.terms()) {
    auto it = index.find(mono.x_exp);
    if (it == index.end()) throw error("witness row outside the degree-d basis");
    row[it->second] = c;
  }
  return row;
}

// Rescales a vector to a primitive integral representative with a
// deterministic sign; keeps incremental bases from growing fractions.
void normalize_primitive(std::vector<FieldScalar>& v, const FieldSpecPtr& field) {
  Int g = 0, l = 1;
  for (const auto& c : v) {
    for (const Rat* r : {&c.c0(), &c.c1()}) {
      if (*r == 0) continue;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r->get_num().get_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r->get_den().get_mpz_t());
    }
  }
  if (g == 0) return;
  FieldScalar scale(Rat(l) / Rat(g), field);
  bool flip = false;
  for (const auto& c : v) {
    if (c.is_zero()) continue;
    flip = (c.c0() != 0 ? c.c0() : c.c1()) < 0;
    break;
  }
  if (flip) scale = -scale;
  if (scale.is_one()) return;
  for (auto& c : v) c *= scale;
}

// Incremental right-kernel tracking: start from the identity basis and
// intersect with one constraint row at a time.  Far cheaper than a batch
// reduction here because the basis collapses after a few point blocks.
class NullspaceTracker {
 public:
  NullspaceTracker(int ncols, FieldSpecPtr field)
      : ncols_(ncols), field_(std::move(field)) {
    cols_.reserve(size_t(ncols));
    for (int i = 0; i < ncols; ++i) {
      std::vector<FieldScalar> e(size_t(ncols), FieldScalar::zero(field_));
      e[size_t(i)] = FieldScalar::one(field_);
      cols_.push_back(std::move(e));
    }
  }

  int dim() const { return int(cols_.size()); }
  const std::vector<std::vector<FieldScalar>>& basis() const { return cols_; }

  void add_constraint(const std::vector<std::pair<int, FieldScalar>>& row) {
    if (cols_.empty()) return;
    std::vector<FieldScalar> s(cols_.size(), FieldScalar::zero(field_));
    for (size_t j = 0; j < cols_.size(); ++j)
      for (const auto& [i, c] : row) s[j] += c * cols_[j][size_t(i)];
    size_t pivot = cols_.size();
    for (size_t j = 0; j < s.size(); ++j)
      if (!s[j].is_zero()) {
        pivot = j;
        break;
      }
    if (pivot == cols_.size()) return;  // row already annihilated
    for (size_t j = 0; j < cols_.size(); ++j) {
      if (j == pivot || s[j].is_zero()) continue;
      for (int i = 0; i < ncols_; ++i)
        cols_[j][size_t(i)] =
            cols_[j][size_t(i)] * s[pivot] - cols_[pivot][size_t(i)] * s[j];
      normalize_primitive(cols_[j], field_);
    }
    cols_.erase(cols_.begin() + long(pivot));
  }

 private:
  int ncols_;
  FieldSpecPtr field_;
  std::vector<std::vector<FieldScalar>> cols_;
};

// Searches bi-degree (t, d) slices for verified kernel forms until
// `target` independent ones are found or the degree cap is reached.
std::vector<SparsePoly> graded_kernel_search(const PointSet& Z, int d, int m,
                                             const std::vector<std::vector<int>>& betas,
                                             const std::vector<Monomial>& Md,
                                             long long target,
                                             const DetectOptions& opts) {
  const int n = Z.n();
  const FieldSpecPtr& field = Z.field();
  std::vector<SparsePoly> forms;
  if (target <= 0) return forms;

  std::vector<FieldScalar> wpt = sample_point(n, opts.seed, opts.bound, field, 0xabcdULL);
  WitnessRank witness(field);

  // W[z][b] symbolically, and the expanded basis forms on demand
  std::vector<std::vector<SparsePoly>> Wsym(size_t(Z.size()));
  for (int zi = 0; zi < Z.size(); ++zi) {
    Wsym[size_t(zi)].reserve(betas.size());
    for (const auto& beta : betas)
      Wsym[size_t(zi)].push_back(cone_poly_at_point(beta, d, Z.points()[size_t(zi)]));
  }
  std::vector<std::optional<SparsePoly>> basis_cache(betas.size());
  auto basis_poly = [&](size_t b) -> const SparsePoly& {
    if (!basis_cache[b]) basis_cache[b] = cone_basis_poly(n, field, betas[b], d);
    return *basis_cache[b];
  };

  for (int t = m; t <= d + opts.kernel_degree_slack; ++t) {
    // unknowns: for each beta with |beta| <= t, the coefficients of a
    // degree (t - |beta|) polynomial in a
    struct Unknown {
      size_t b;
      std::vector<int> mu;  // a-exponents of the lambda monomial
    };
    std::vector<Unknown> unknowns;
    for (size_t b = 0; b < betas.size(); ++b) {
      int bd = 0;
      for (int e : betas[b]) bd += e;
      if (bd > t) continue;
      for (auto& mu : exponent_vectors(n + 1, t - bd)) unknowns.push_back({b, mu});
    }
    if (unknowns.empty()) continue;
    std::vector<std::vector<int>> nus = exponent_vectors(n + 1, t);
    std::map<std::vector<int>, int> nu_index;
    for (size_t i = 0; i < nus.size(); ++i) nu_index[nus[i]] = int(i);

    NullspaceTracker tracker(int(unknowns.size()), field);
    std::vector<std::vector<std::pair<int, FieldScalar>>> rows(nus.size());
    for (size_t zi = 0; zi < size_t(Z.size()) && tracker.dim() > 0; ++zi) {
      for (auto& r : rows) r.clear();
      for (size_t u = 0; u < unknowns.size(); ++u) {
        const SparsePoly& w = Wsym[zi][unknowns[u].b];
        for (const auto& [mono, c] : w.terms()) {
          std::vector<int> nu(size_t(n) + 1);
          for (size_t v = 0; v <= size_t(n); ++v)
            nu[v] = mono.a_exp[v] + unknowns[u].mu[v];
          rows[size_t(nu_index.at(nu))].emplace_back(int(u), c);
        }
      }
      for (const auto& row : rows) {
        if (row.empty()) continue;
        tracker.add_constraint(row);
        if (tracker.dim() == 0) break;
      }
    }

    for (const auto& lambda : tracker.basis()) {
      SparsePoly F(n, field);
      for (size_t u = 0; u < unknowns.size(); ++u) {
        if (lambda[u].is_zero()) continue;
        Monomial mu(unknowns[u].mu, std::vector<int>(size_t(n) + 1, 0));
        F = F + basis_poly(unknowns[u].b)
                    .scaled(lambda[u])
                    * SparsePoly::single(n, mu, FieldScalar::one(field));
      }
      if (F.is_zero()) continue;
      if (!witness.try_add(form_witness_row(F, Md, wpt))) continue;
      verify_kernel_form(F, Z, m);
      forms.push_back(std::move(F));
      if (int(forms.size()) >= target) return forms;
    }
  }
  return forms;
}

}  // namespace

const char* to_string(DetectMode mode) {
  switch (mode) {
    case DetectMode::symbolic: return "symbolic";
    case DetectMode::probabilistic: return "probabilistic";
    case DetectMode::hybrid: return "hybrid";
  }
  return "?";
}

const char* to_string(CertStatus status) {
  return status == CertStatus::certified ? "certified" : "probabilistic";
}

DetectMode detect_mode_from_string(const std::string& s) {
  if (s == "symbolic") return DetectMode::symbolic;
  if (s == "probabilistic") return DetectMode::probabilistic;
  if (s == "hybrid") return DetectMode::hybrid;
  throw error("unknown mode '" + s + "'");
}

DetectionCell detect(const PointSet& Z, int d, int m, DetectMode mode,
                     const DetectOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  if (Z.size() == 0) throw error("detect requires a nonempty point set");
  if (m < 1 || d < m) throw error("detect requires d >= m >= 1");
  const int n = Z.n();
  const FieldSpecPtr& field = Z.field();

  DetectionCell cell;
  cell.n = n;
  cell.d = d;
  cell.m = m;

  std::vector<Monomial> Md = monomial_basis(n, d);
  const long long nd = (long long)Md.size();
  const long long nfat = binom(n + m - 1, n);

  // rank Q1 is an exact scalar computation
  {
    ScalarMatrix Q1(Z.size(), int(Md.size()), field);
    for (int i = 0; i < Z.size(); ++i)
      for (size_t j = 0; j < Md.size(); ++j)
        Q1.at(i, int(j)) = eval_x_monomial(Md[j], Z.points()[size_t(i)], field);
    cell.rank_q1 = rank_scalar(std::move(Q1));
  }

  // rank Q2 = binom(n+m-1, n), certified by the triangular witness
  if (!q2_full_row_rank_witness(n, d, m))
    throw error("Q2 full-row-rank witness failed");
  cell.rank_q2 = int(nfat);

  cell.edim = nd - cell.rank_q1 - cell.rank_q2;

  // rank N via the kernel basis of Q2: rank N = rank Q2 + rank W where
  // W[z][beta] = (a0 z_i - a_i z0)^beta z0^(d-|beta|).
  const std::vector<std::vector<int>> betas = cone_exponents(n, d, m);
  const long long nc = (long long)betas.size();

  long long rank_w = 0;
  if (mode == DetectMode::symbolic) {
    PolyMatrix W(Z.size(), int(betas.size()), n, field);
    for (int zi = 0; zi < Z.size(); ++zi)
      for (size_t b = 0; b < betas.size(); ++b)
        W.at(zi, int(b)) = cone_poly_at_point(betas[b], d, Z.points()[size_t(zi)]);
    RankCertificate wc = generic_rank_bareiss(W);
    rank_w = wc.rank;
    cell.rank_n.rank = int(nfat + rank_w);
    cell.rank_n.mode = RankMode::exact_symbolic;
    cell.rank_n.witness = "rank Q2 + exact rank of the cone-reduced system; " + wc.witness;
  } else {
    int best = 0;
    for (int trial = 0; trial < opts.trials; ++trial) {
      std::vector<FieldScalar> pt =
          sample_point(n, opts.seed, opts.bound, field, uint64_t(trial) + 1);
      ScalarMatrix Wpt(Z.size(), int(betas.size()), field);
      for (int zi = 0; zi < Z.size(); ++zi)
        for (size_t b = 0; b < betas.size(); ++b)
          Wpt.at(zi, int(b)) = cone_value_at(betas[b], d, Z.points()[size_t(zi)], pt);
      best = std::max(best, rank_scalar(std::move(Wpt)));
    }
    rank_w = best;
    cell.rank_n.rank = int(nfat + rank_w);
    cell.rank_n.mode = RankMode::probabilistic;
    cell.rank_n.trials = opts.trials;
    cell.rank_n.seed = opts.seed;
    std::ostringstream w;
    w << "max over " << opts.trials << " specializations, bound " << opts.bound;
    cell.rank_n.witness = w.str();
  }

  cell.adim = nd - cell.rank_n.rank;  // == nc - rank_w
  cell.unexpected = cell.adim > cell.edim && cell.adim > 0;

  const long long floor_dim = std::max(0LL, cell.edim);
  if (!cell.unexpected) {
    // adim_pt == max(0, edim) pins adim exactly by semicontinuity
    cell.certificate = (mode == DetectMode::symbolic || cell.adim == floor_dim)
                           ? CertStatus::certified
                           : CertStatus::probabilistic;
  } else if (mode == DetectMode::probabilistic) {
    cell.certificate = CertStatus::probabilistic;
  } else {
    // certify by producing independent, identically verified kernel vectors
    std::vector<SparsePoly> forms;
    if (mode == DetectMode::symbolic) {
      PolyMatrix W(Z.size(), int(betas.size()), n, field);
      for (int zi = 0; zi < Z.size(); ++zi)
        for (size_t b = 0; b < betas.size(); ++b)
          W.at(zi, int(b)) = cone_poly_at_point(betas[b], d, Z.points()[size_t(zi)]);
      auto vectors = symbolic_kernel(W, int(cell.adim));
      for (const auto& v : vectors) {
        SparsePoly F(n, field);
        for (size_t b = 0; b < betas.size(); ++b)
          if (!v[b].is_zero())
            F = F + v[b] * cone_basis_poly(n, field, betas[b], d);
        verify_kernel_form(F, Z, m);
        forms.push_back(std::move(F));
      }
    } else {
      forms = graded_kernel_search(Z, d, m, betas, Md, cell.adim, opts);
    }
    cell.kernel_dim_claimed = int(forms.size());
    if (mode == DetectMode::symbolic || cell.kernel_dim_claimed >= cell.adim ||
        cell.kernel_dim_claimed >= floor_dim + 1)
      cell.certificate = CertStatus::certified;
    else
      cell.certificate = CertStatus::probabilistic;
    if (opts.want_forms) cell.kernel_forms = std::move(forms);
  }

  cell.runtime_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return cell;
}

std::vector<DetectionCell> search(const PointSet& Z, int d_lo, int d_hi, int m_lo,
                                  int m_hi, DetectMode mode, const DetectOptions& opts,
                                  int threads) {
  std::vector<std::pair<int, int>> cells;
  for (int d = d_lo; d <= d_hi; ++d)
    for (int m = m_lo; m <= std::min(m_hi, d); ++m)
      if (m >= 1) cells.emplace_back(d, m);
  std::vector<DetectionCell> results(cells.size());
  if (cells.empty()) return results;

  if (threads <= 0) threads = int(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, int(cells.size())));

  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors;
  errors.resize(size_t(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1))
          results[i] = detect(Z, cells[i].first, cells[i].second, mode, opts);
      } catch (...) {
        errors[size_t(w)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

std::vector<UnexpectedForm> extract_form(const PointSet& Z, int d, int m, int count,
                                         const DetectOptions& opts) {
  if (count < 1) throw error("extract_form requires count >= 1");
  DetectOptions o = opts;
  o.want_forms = true;
  DetectionCell cell = detect(Z, d, m, DetectMode::hybrid, o);
  if (!cell.unexpected)
    throw not_unexpected_error("(" + std::to_string(Z.n()) + "," + std::to_string(d) +
                               "," + std::to_string(m) + ") is not unexpected for " +
                               Z.label());
  if (count > int(cell.kernel_forms.size()))
    throw kernel_deficient_error("requested " + std::to_string(count) +
                                 " forms, certified kernel has " +
                                 std::to_string(cell.kernel_forms.size()));
  std::vector<UnexpectedForm> out;
  std::map<VarRef, FieldScalar> assign;
  for (int i = 0; i < count; ++i) {
    UnexpectedForm f;
    f.poly = cell.kernel_forms[size_t(i)].star();
    auto [adeg, xdeg] = f.poly.bidegree();
    f.a_degree = adeg;
    f.x_degree = xdeg;
    if (xdeg != d) throw error("extracted form has wrong x-degree");
    if (adeg < m) throw error("extracted form violates the a-degree lower bound");
    for (const auto& z : Z.points()) {
      for (int v = 0; v <= Z.n(); ++v) assign[{Block::x, v}] = z.coords()[size_t(v)];
      if (!f.poly.evaluate(assign).is_zero())
        throw error("star-normalized form does not vanish on Z");
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace unx

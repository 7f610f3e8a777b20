#include "unx/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "unx/prng.hpp"

namespace unx {

PolyMatrix PolyMatrix::stacked(const PolyMatrix& other) const {
  if (cols_ != other.cols_ || n_ != other.n_)
    throw error("shape mismatch in PolyMatrix::stacked");
  PolyMatrix out(rows_ + other.rows_, cols_, n_, field_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
  for (int i = 0; i < other.rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(rows_ + i, j) = other.at(i, j);
  return out;
}

int rank_scalar(ScalarMatrix M) {
  const int rows = M.rows(), cols = M.cols();
  FieldScalar prev = FieldScalar::one(M.field());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i)
      if (!M.at(i, col).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = col; j < cols; ++j) std::swap(M.at(pivot, j), M.at(rank, j));
    const FieldScalar p = M.at(rank, col);
    for (int i = rank + 1; i < rows; ++i) {
      const FieldScalar f = M.at(i, col);
      M.at(i, col) = FieldScalar::zero(M.field());
      if (f.is_zero()) {
        // Bareiss scaling keeps entries as minors of the input
        for (int j = col + 1; j < cols; ++j)
          M.at(i, j) = M.at(i, j) * p / prev;
      } else {
        for (int j = col + 1; j < cols; ++j)
          M.at(i, j) = (M.at(i, j) * p - f * M.at(rank, j)) / prev;
      }
    }
    prev = p;
    ++rank;
  }
  return rank;
}

std::vector<std::vector<FieldScalar>> nullspace_scalar(ScalarMatrix M) {
  const int rows = M.rows(), cols = M.cols();
  const FieldSpecPtr& field = M.field();
  std::vector<int> pivot_col;
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (!M.at(i, col).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = col; j < cols; ++j) std::swap(M.at(pivot, j), M.at(r, j));
    const FieldScalar inv = M.at(r, col).inv();
    for (int j = col; j < cols; ++j) M.at(r, j) *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || M.at(i, col).is_zero()) continue;
      const FieldScalar f = M.at(i, col);
      for (int j = col; j < cols; ++j) M.at(i, j) -= f * M.at(r, j);
    }
    pivot_col.push_back(col);
    ++r;
  }
  std::vector<std::vector<FieldScalar>> basis;
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldScalar> v(cols, FieldScalar::zero(field));
    v[free] = FieldScalar::one(field);
    for (int i = 0; i < int(pivot_col.size()); ++i)
      v[pivot_col[i]] = -M.at(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

int rank_at_point(const PolyMatrix& M, const std::vector<FieldScalar>& point) {
  if (int(point.size()) != M.n() + 1)
    throw error("rank_at_point needs a full a-assignment");
  std::map<VarRef, FieldScalar> assignment;
  for (int i = 0; i <= M.n(); ++i) assignment[{Block::a, i}] = point[i];
  ScalarMatrix S(M.rows(), M.cols(), M.field());
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) {
      const SparsePoly& e = M.at(i, j);
      if (e.is_zero()) continue;
      SparsePoly v = e.evaluate(assignment);
      if (v.is_zero()) continue;
      S.at(i, j) = v.leading_coefficient();
    }
  return rank_scalar(std::move(S));
}

namespace {

bool try_divide_exact(const SparsePoly& f, const SparsePoly& g, SparsePoly& q) {
  try {
    q = SparsePoly::divide_exact(f, g);
    return true;
  } catch (const error&) {
    return false;
  }
}

void strip_row_content(std::vector<SparsePoly>& row) {
  SparsePoly content(row.empty() ? 0 : row[0].n(),
                     row.empty() ? FieldSpec::rationals() : row[0].field());
  for (const SparsePoly& e : row) {
    if (e.is_zero()) continue;
    content = content.is_zero() ? e : SparsePoly::gcd(content, e);
    if (content.term_count() == 1 && content.leading_monomial().a_degree() == 0 &&
        content.leading_monomial().x_degree() == 0)
      break;
  }
  if (content.is_zero()) return;
  bool trivial = content.term_count() == 1 &&
                 content.leading_monomial().a_degree() == 0 &&
                 content.leading_monomial().x_degree() == 0;
  for (SparsePoly& e : row) {
    if (e.is_zero()) continue;
    e = trivial ? e.scaled(content.leading_coefficient().inv())
                : SparsePoly::divide_exact(e, content);
  }
}

// Forward fraction-free elimination; returns pivot columns and leaves the
// echelon rows in `rows`.  Rank-preserving row scalings only.
std::vector<int> poly_echelon(std::vector<std::vector<SparsePoly>>& rows, int cols,
                              std::vector<int>* pivot_rows_out) {
  std::vector<int> pivot_cols;
  SparsePoly prev_pivot = rows.empty()
                              ? SparsePoly(0, FieldSpec::rationals())
                              : SparsePoly::constant(rows[0][0].n(),
                                                     FieldScalar::one(rows[0][0].field()));
  size_t r = 0;
  for (int col = 0; col < cols && r < rows.size(); ++col) {
    // pivot: nonzero entry of minimal term count, ties by smaller
    // leading monomial, then by row order
    int best = -1;
    for (size_t i = r; i < rows.size(); ++i) {
      const SparsePoly& e = rows[i][col];
      if (e.is_zero()) continue;
      if (best < 0) {
        best = int(i);
        continue;
      }
      const SparsePoly& b = rows[best][col];
      if (e.term_count() < b.term_count() ||
          (e.term_count() == b.term_count() &&
           MonomialGreater()(b.leading_monomial(), e.leading_monomial())))
        best = int(i);
    }
    if (best < 0) continue;
    std::swap(rows[r], rows[size_t(best)]);
    const SparsePoly pivot = rows[r][col];
    const bool prev_trivial =
        prev_pivot.term_count() == 1 && prev_pivot.leading_monomial().a_degree() == 0 &&
        prev_pivot.leading_monomial().x_degree() == 0;
    for (size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][col].is_zero()) {
        bool all_zero = true;
        for (int j = col + 1; j < cols && all_zero; ++j)
          if (!rows[i][j].is_zero()) all_zero = false;
        if (all_zero) continue;
      }
      const SparsePoly factor = rows[i][col];
      rows[i][col] = SparsePoly(pivot.n(), pivot.field());
      for (int j = col + 1; j < cols; ++j) {
        SparsePoly num = rows[i][j] * pivot;
        if (!factor.is_zero() && !rows[r][j].is_zero())
          num = num - factor * rows[r][j];
        rows[i][j] = std::move(num);
      }
      // Bareiss division by the previous pivot is only valid as a whole
      // row scaling; with content stripping in the mix it can fail, so
      // apply it all-or-nothing before reducing the row by its content.
      if (!prev_trivial) {
        std::vector<SparsePoly> divided(rows[i].size(),
                                        SparsePoly(pivot.n(), pivot.field()));
        bool all = true;
        for (int j = col + 1; j < cols && all; ++j) {
          if (rows[i][size_t(j)].is_zero()) continue;
          all = try_divide_exact(rows[i][size_t(j)], prev_pivot, divided[size_t(j)]);
        }
        if (all)
          for (int j = col + 1; j < cols; ++j) rows[i][size_t(j)] = divided[size_t(j)];
      }
      strip_row_content(rows[i]);
    }
    prev_pivot = pivot;
    pivot_cols.push_back(col);
    if (pivot_rows_out) pivot_rows_out->push_back(int(r));
    ++r;
  }
  return pivot_cols;
}

std::vector<std::vector<SparsePoly>> matrix_rows(const PolyMatrix& M) {
  std::vector<std::vector<SparsePoly>> rows;
  rows.reserve(M.rows());
  for (int i = 0; i < M.rows(); ++i) {
    std::vector<SparsePoly> row;
    row.reserve(M.cols());
    for (int j = 0; j < M.cols(); ++j) row.push_back(M.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Minimal rational-function arithmetic for kernel back-substitution.
struct PolyFraction {
  SparsePoly num, den;
  PolyFraction(const SparsePoly& n, const SparsePoly& d) : num(n), den(d) { reduce(); }
  static PolyFraction zero(int n, const FieldSpecPtr& f) {
    return PolyFraction(SparsePoly(n, f),
                        SparsePoly::constant(n, FieldScalar::one(f)));
  }
  void reduce() {
    if (num.is_zero()) {
      den = SparsePoly::constant(den.n(), FieldScalar::one(den.field()));
      return;
    }
    SparsePoly g = SparsePoly::gcd(num, den);
    num = SparsePoly::divide_exact(num, g);
    den = SparsePoly::divide_exact(den, g);
    num = num.scaled(den.leading_coefficient().inv());
    den = den.monic();
  }
  PolyFraction operator+(const PolyFraction& o) const {
    return PolyFraction(num * o.den + o.num * den, den * o.den);
  }
  PolyFraction operator*(const PolyFraction& o) const {
    return PolyFraction(num * o.num, den * o.den);
  }
  PolyFraction operator/(const PolyFraction& o) const {
    if (o.num.is_zero()) throw division_by_zero_error("polynomial fraction division");
    return PolyFraction(num * o.den, den * o.num);
  }
  PolyFraction operator-() const { return PolyFraction(-num, den); }
};

}  // namespace

RankCertificate generic_rank_bareiss(const PolyMatrix& M) {
  auto rows = matrix_rows(M);
  std::vector<int> pivot_cols = poly_echelon(rows, M.cols(), nullptr);
  RankCertificate cert;
  cert.rank = int(pivot_cols.size());
  cert.mode = RankMode::exact_symbolic;
  std::ostringstream w;
  w << "bareiss pivot columns:";
  for (int c : pivot_cols) w << " " << c;
  cert.witness = w.str();
  return cert;
}

RankCertificate generic_rank_probabilistic(const PolyMatrix& M, uint64_t seed,
                                           int trials, const Int& bound) {
  if (trials < 1) throw error("generic_rank_probabilistic requires trials >= 1");
  RankCertificate cert;
  cert.mode = RankMode::probabilistic;
  cert.trials = trials;
  cert.seed = seed;
  int best = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<FieldScalar> point;
    for (int i = 0; i <= M.n(); ++i)
      point.push_back(sample_nonzero(split_seed(seed, uint64_t(t) * (M.n() + 1) + i),
                                     bound, M.field()));
    best = std::max(best, rank_at_point(M, point));
  }
  cert.rank = best;
  std::ostringstream w;
  w << "max rank over " << trials << " random specializations, bound " << bound;
  cert.witness = w.str();
  return cert;
}

std::vector<std::vector<SparsePoly>> symbolic_kernel(const PolyMatrix& M, int k) {
  if (k < 1) throw error("symbolic_kernel requires k >= 1");
  const int n = M.n();
  const FieldSpecPtr& field = M.field();
  auto rows = matrix_rows(M);
  std::vector<int> pivot_cols = poly_echelon(rows, M.cols(), nullptr);
  const int rank = int(pivot_cols.size());
  if (M.cols() - rank < k)
    throw kernel_deficient_error("kernel has generic dimension " +
                                 std::to_string(M.cols() - rank) + " < " +
                                 std::to_string(k));
  std::vector<bool> is_pivot(M.cols(), false);
  for (int c : pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<SparsePoly>> kernel;
  const SparsePoly one = SparsePoly::constant(n, FieldScalar::one(field));
  for (int free = 0; free < M.cols() && int(kernel.size()) < k; ++free) {
    if (is_pivot[free]) continue;
    std::vector<PolyFraction> v(M.cols(), PolyFraction::zero(n, field));
    v[size_t(free)] = PolyFraction(one, one);
    for (int i = rank - 1; i >= 0; --i) {
      const int pc = pivot_cols[size_t(i)];
      PolyFraction sum = PolyFraction::zero(n, field);
      for (int j = pc + 1; j < M.cols(); ++j) {
        if (rows[size_t(i)][size_t(j)].is_zero() || v[size_t(j)].num.is_zero()) continue;
        sum = sum + PolyFraction(rows[size_t(i)][size_t(j)], one) * v[size_t(j)];
      }
      v[size_t(pc)] = -(sum / PolyFraction(rows[size_t(i)][size_t(pc)], one));
    }
    // clear denominators, divide by overall content
    SparsePoly lcm = one;
    for (const auto& f : v)
      if (!f.num.is_zero())
        lcm = SparsePoly::divide_exact(lcm * f.den, SparsePoly::gcd(lcm, f.den));
    std::vector<SparsePoly> w;
    w.reserve(v.size());
    for (const auto& f : v)
      w.push_back(f.num.is_zero()
                      ? SparsePoly(n, field)
                      : f.num * SparsePoly::divide_exact(lcm, f.den));
    strip_row_content(w);
    // verify M * w == 0 identically
    for (int i = 0; i < M.rows(); ++i) {
      SparsePoly acc(n, field);
      for (int j = 0; j < M.cols(); ++j)
        if (!M.at(i, j).is_zero() && !w[size_t(j)].is_zero())
          acc = acc + M.at(i, j) * w[size_t(j)];
      if (!acc.is_zero())
        throw error("symbolic_kernel produced a non-annihilating vector");
    }
    kernel.push_back(std::move(w));
  }
  // Independence is witnessed by the unit pattern on the chosen free
  // columns: the k x k submatrix there is a (scaled) identity.
  return kernel;
}

}  // namespace unx

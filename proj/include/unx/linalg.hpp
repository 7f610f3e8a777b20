#ifndef UNX_LINALG_HPP
#define UNX_LINALG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "unx/poly.hpp"

namespace unx {

/// Dense matrix of field scalars.
class ScalarMatrix {
 public:
  ScalarMatrix(int rows, int cols, const FieldSpecPtr& field)
      : rows_(rows), cols_(cols), field_(field),
        data_(size_t(rows) * cols, FieldScalar::zero(field)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldSpecPtr& field() const { return field_; }
  FieldScalar& at(int i, int j) { return data_[size_t(i) * cols_ + j]; }
  const FieldScalar& at(int i, int j) const { return data_[size_t(i) * cols_ + j]; }

 private:
  int rows_, cols_;
  FieldSpecPtr field_;
  std::vector<FieldScalar> data_;
};

/// Dense matrix of polynomials in the a variables only (x-degree 0).
class PolyMatrix {
 public:
  PolyMatrix(int rows, int cols, int n, const FieldSpecPtr& field)
      : rows_(rows), cols_(cols), n_(n), field_(field),
        data_(size_t(rows) * cols, SparsePoly(n, field)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int n() const { return n_; }
  const FieldSpecPtr& field() const { return field_; }
  SparsePoly& at(int i, int j) { return data_[size_t(i) * cols_ + j]; }
  const SparsePoly& at(int i, int j) const { return data_[size_t(i) * cols_ + j]; }

  /// Vertical stack [this; other].
  PolyMatrix stacked(const PolyMatrix& other) const;

 private:
  int rows_, cols_, n_;
  FieldSpecPtr field_;
  std::vector<SparsePoly> data_;
};

enum class RankMode { exact_symbolic, probabilistic };

struct RankCertificate {
  int rank = 0;
  RankMode mode = RankMode::exact_symbolic;
  int trials = 0;
  uint64_t seed = 0;
  std::string witness;
};

/// Exact rank by fraction-free elimination over the field.
int rank_scalar(ScalarMatrix M);

/// Basis of the right kernel, exact.
std::vector<std::vector<FieldScalar>> nullspace_scalar(ScalarMatrix M);

/// Rank of M specialized at a full a-assignment (length n+1).
int rank_at_point(const PolyMatrix& M, const std::vector<FieldScalar>& point);

/// Exact generic rank over K(a) by fraction-free (Bareiss) elimination
/// with minimal-term-count pivoting and row content stripping.
RankCertificate generic_rank_bareiss(const PolyMatrix& M);

/// Max rank over `trials` random rational specializations: a certified
/// lower bound on the generic rank, equal to it with Schwartz-Zippel
/// confidence.
RankCertificate generic_rank_probabilistic(const PolyMatrix& M, uint64_t seed,
                                           int trials, const Int& bound);

inline Int default_sample_bound() { return Int(1) << 31; }

/// k vectors with polynomial entries satisfying M*v == 0 identically
/// (verified by exact arithmetic), independent over K(a); throws
/// kernel_deficient_error when fewer exist generically.
std::vector<std::vector<SparsePoly>> symbolic_kernel(const PolyMatrix& M, int k);

}  // namespace unx

#endif

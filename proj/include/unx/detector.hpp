#ifndef UNX_DETECTOR_HPP
#define UNX_DETECTOR_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "unx/linalg.hpp"
#include "unx/points.hpp"

namespace unx {

/// All degree-d monomials in x_0..x_n, canonical (graded-lex) order.
std::vector<Monomial> monomial_basis(int n, int d);

/// The interpolation blocks for (Z, d, m): Q1 evaluates the basis at Z,
/// Q2 holds the order-(m-1) partials of the basis with x replaced by a.
struct ConditionMatrix {
  std::vector<Monomial> Md;
  ScalarMatrix Q1;
  PolyMatrix Q2;
};

ConditionMatrix build_condition_matrix(const PointSet& Z, int d, int m);

enum class DetectMode { symbolic, probabilistic, hybrid };
enum class CertStatus { certified, probabilistic };

const char* to_string(DetectMode mode);
const char* to_string(CertStatus status);
DetectMode detect_mode_from_string(const std::string& s);

struct DetectOptions {
  uint64_t seed = 7;
  int trials = 3;
  Int bound = default_sample_bound();
  /// Graded kernel search tries a-degrees m .. d + kernel_degree_slack.
  int kernel_degree_slack = 2;
  bool want_forms = false;
};

struct DetectionCell {
  int n = 0, d = 0, m = 0;
  long long edim = 0, adim = 0;
  bool unexpected = false;
  CertStatus certificate = CertStatus::probabilistic;
  int kernel_dim_claimed = 0;
  int rank_q1 = 0, rank_q2 = 0;
  RankCertificate rank_n;
  double runtime_sec = 0.0;
  /// Verified kernel forms (bi-homogeneous, not star-normalized);
  /// populated when DetectOptions::want_forms is set and the cell is
  /// unexpected.
  std::vector<SparsePoly> kernel_forms;
};

/// Decides unexpectedness of (Z, d, m): edim = |Md| - rank Q1 - rank Q2,
/// adim = |Md| - rank N for the stacked system N = [Q1; Q2].
DetectionCell detect(const PointSet& Z, int d, int m, DetectMode mode,
                     const DetectOptions& opts = {});

/// One cell per (d, m) with d in [d_lo, d_hi], m in [m_lo, min(m_hi, d)],
/// ascending (d, m); cells run in parallel on `threads` workers.
std::vector<DetectionCell> search(const PointSet& Z, int d_lo, int d_hi, int m_lo,
                                  int m_hi, DetectMode mode,
                                  const DetectOptions& opts = {}, int threads = 0);

struct UnexpectedForm {
  SparsePoly poly{0, FieldSpec::rationals()};  // star-normalized, lead coeff 1
  int a_degree = 0;
  int x_degree = 0;
};

/// Star-normalized unexpected forms for a cell that detect() flags as
/// unexpected; each is verified to vanish on Z and to have multiplicity
/// >= m in the x variables at x = a.
std::vector<UnexpectedForm> extract_form(const PointSet& Z, int d, int m, int count,
                                         const DetectOptions& opts = {});

/// Exact witness that Q2 has full row rank binom(n+m-1, n): the square
/// submatrix on the columns Mm_s * x0^(d-m+1) is triangular with
/// nonzero monomial diagonal once sorted by x0-exponent.
bool q2_full_row_rank_witness(int n, int d, int m);

/// Exponents beta (length n, m <= |beta| <= d) of the kernel basis of
/// Q2 over K(a): the forms (a0 x_i - a_i x0)^beta * x0^(d-|beta|).
std::vector<std::vector<int>> cone_exponents(int n, int d, int m);

/// The basis form for one beta, expanded in the bi-graded ring.
SparsePoly cone_basis_poly(int n, const FieldSpecPtr& field,
                           const std::vector<int>& beta, int d);

/// The basis form evaluated at x = z: a polynomial in a of degree |beta|.
SparsePoly cone_poly_at_point(const std::vector<int>& beta, int d,
                              const ProjectivePoint& z);

}  // namespace unx

#endif

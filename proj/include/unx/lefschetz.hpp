#ifndef UNX_LEFSCHETZ_HPP
#define UNX_LEFSCHETZ_HPP

#include <cstdint>
#include <vector>

#include "unx/detector.hpp"

namespace unx {

/// The artinian algebra R/(L_1^d, ..., L_r^d) given by the linear forms
/// L_s (coefficient vectors) and the common exponent d.
struct PowerIdealSpec {
  int n = 0;
  FieldSpecPtr field;
  std::vector<std::vector<FieldScalar>> forms;  // pairwise non-proportional
  int exponent = 0;

  PowerIdealSpec(int n_, FieldSpecPtr field_,
                 std::vector<std::vector<FieldScalar>> forms_, int exponent_);
};

/// Spec from the duals of a point set, exponent d.
PowerIdealSpec power_ideal_from_points(const PointSet& Z, int d);

/// dim [I]_j for I = (L_1^d, ..., L_r^d): rank of the coefficient matrix
/// of all products mu * L_s^d with deg mu = j - d (0 below degree d).
int power_ideal_dim(const PowerIdealSpec& spec, int j);

struct LefschetzVerdict {
  int degree_i = 0, range_k = 0;
  int dim_source = 0, dim_target = 0, map_rank = 0;
  bool fails = false;  // map_rank < min(dim_source, dim_target)
};

/// Rank of x L^e : [R/I]_i -> [R/I]_{i+e} with dims, exact.
LefschetzVerdict multiplication_map_rank(const PowerIdealSpec& spec,
                                         const std::vector<FieldScalar>& L, int e,
                                         int i);

/// The Lefschetz side of the unexpectedness equivalence: multiplication
/// by L^(d-m+1) from degree m-1 to degree d on R/(duals of Z raised to
/// the d-th power), with L drawn from L_seed and re-checked at a second
/// seed (disagreement raises unreliable_sample_error).
LefschetzVerdict slp_check(const PointSet& Z, int d, int m, uint64_t L_seed);

/// Asserts slp_check(Z,d,m).fails == detect(Z,d,m).unexpected and
/// returns the shared verdict; mismatch raises
/// equivalence_violation_error.
bool equivalence_test(const PointSet& Z, int d, int m, uint64_t seed,
                      DetectMode mode = DetectMode::hybrid,
                      const DetectOptions& opts = {});

/// The closed-form point count f(n, k) for WLP failure in P^n via
/// codimension-2 degree-k subvarieties (n >= 4, k >= 3).
long long expected_count_f(int n, int k);

}  // namespace unx

#endif

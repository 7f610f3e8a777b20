#ifndef UNX_DUALITY_HPP
#define UNX_DUALITY_HPP

#include <vector>

#include "unx/detector.hpp"

namespace unx {

enum class SwapRelation { symmetric, antisymmetric, neither };
const char* to_string(SwapRelation r);

struct DualityReport {
  int a_degree = 0, x_degree = 0;      // bi-degree of the unique form F*
  int diag_mult_in_a = 0;              // multiplicity in a at a = x
  int diag_mult_in_x = 0;              // multiplicity in x at x = a
  SwapRelation swap_relation = SwapRelation::neither;
  bool tangent_cone_match = false;     // every sample matched up to scalar
  bool sign_matches_parity = false;    // every sample matched (-1)^m exactly
  int samples_checked = 0;
  SparsePoly form;                     // the star-normalized form itself
  DualityReport() : form(0, FieldSpec::rationals()) {}
};

/// Multiplicity along the diagonal: min e-degree of the shift that
/// replaces the chosen block's variables v_i by (other block)_i + e_i.
int diagonal_multiplicity(const SparsePoly& F, Block block);

/// Classifies F against swap_blocks(F) up to one global scalar (which
/// is forced to be +-1 when the two are proportional).
SwapRelation swap_relation(const SparsePoly& F);

/// Tangent cone of the degree->=m hypersurface H at P by the
/// differential formula sum_j ((mu_j . H)(P)) mu_j / c_j over degree-m
/// monomials mu_j, c_j = mu_j . mu_j.  Checks that the multiplicity of
/// H at P is exactly m.
SparsePoly tangent_cone(const SparsePoly& H, const ProjectivePoint& P, int m);

/// Independent route for the same computation: Taylor-shift H by P via
/// diagonal_shift and take the minimal-order part.
SparsePoly tangent_cone_via_shift(const SparsePoly& H, const ProjectivePoint& P, int m);

/// For each sample point P0: specialize F* at a = P0, compare its
/// tangent cone at x = P0 with (-1)^m * F*(x, a)|_(a = P0).  Requires
/// the cell to have a unique unexpected form (adim == 1).
DualityReport bmss_check(const PointSet& Z, int d, int m,
                         const std::vector<ProjectivePoint>& samples,
                         const DetectOptions& opts = {});

/// Deterministic sample points with all coordinates nonzero.
std::vector<ProjectivePoint> bmss_sample_points(const PointSet& Z, int count,
                                                uint64_t seed);

/// Writes F as sum_alpha C_alpha(x) * a^alpha and keeps the candidates
/// at which every coefficient C_alpha vanishes.
std::vector<ProjectivePoint> base_locus_check(const SparsePoly& F,
                                              const PointSet& candidates);

}  // namespace unx

#endif

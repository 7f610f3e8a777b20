#include "unx/duality.hpp"

#include "unx/prng.hpp"

namespace unx {

const char* to_string(SwapRelation r) {
  switch (r) {
    case SwapRelation::symmetric: return "symmetric";
    case SwapRelation::antisymmetric: return "antisymmetric";
    case SwapRelation::neither: return "neither";
  }
  return "?";
}

int diagonal_multiplicity(const SparsePoly& F, Block block) {
  if (F.is_zero()) throw error("diagonal multiplicity of the zero polynomial");
  const SparsePoly& g = F;
  SparsePoly shifted =
      block == Block::a ? g.diagonal_shift() : g.swap_blocks().diagonal_shift();
  return shifted.min_a_degree();
}

SwapRelation swap_relation(const SparsePoly& F) {
  if (F.is_zero()) return SwapRelation::neither;
  SparsePoly G = F.swap_blocks();
  if (G == F) return SwapRelation::symmetric;
  if (G == -F) return SwapRelation::antisymmetric;
  // swap is an involution, so proportionality forces the scalar to be
  // +-1; nothing else to check
  return SwapRelation::neither;
}

SparsePoly tangent_cone(const SparsePoly& H, const ProjectivePoint& P, int m) {
  if (H.is_zero()) throw error("tangent cone of the zero polynomial");
  if (H.a_degree() > 0) throw error("tangent_cone expects a polynomial in x only");
  if (m < 0) throw multiplicity_mismatch_error("negative multiplicity");
  const int n = H.n();
  const FieldSpecPtr& field = H.field();
  if (int(P.coords().size()) != n + 1) throw error("point dimension mismatch");
  if (H.x_degree() < m)
    throw multiplicity_mismatch_error("deg H < m");

  std::map<VarRef, FieldScalar> at_p;
  for (int i = 0; i <= n; ++i) at_p[{Block::x, i}] = P.coords()[size_t(i)];
  auto value_at_p = [&](const SparsePoly& g) -> FieldScalar {
    SparsePoly v = g.evaluate(at_p);
    return v.is_zero() ? FieldScalar::zero(field) : v.leading_coefficient();
  };

  if (m == 0) {
    FieldScalar h0 = value_at_p(H);
    if (h0.is_zero())
      throw multiplicity_mismatch_error("H vanishes at P but m = 0");
    return SparsePoly::constant(n, h0);
  }

  // all order-(m-1) partials must vanish at P (lower orders follow by Euler)
  for (const Monomial& mu : monomial_basis(n, m - 1)) {
    SparsePoly op = SparsePoly::single(n, mu, FieldScalar::one(field));
    if (!value_at_p(H.apply_diff_operator(op)).is_zero())
      throw multiplicity_mismatch_error(
          "an order-" + std::to_string(m - 1) + " partial of H is nonzero at P");
  }

  SparsePoly cone(n, field);
  for (const Monomial& mu : monomial_basis(n, m)) {
    SparsePoly op = SparsePoly::single(n, mu, FieldScalar::one(field));
    FieldScalar v = value_at_p(H.apply_diff_operator(op));
    if (v.is_zero()) continue;
    Rat c(1);
    for (int e : mu.x_exp)
      for (int k = 2; k <= e; ++k) c *= k;  // c_j = mu_j . mu_j = prod e!
    cone.add_term(mu, v * FieldScalar(c, field).inv());
  }
  if (cone.is_zero())
    throw multiplicity_mismatch_error("all order-" + std::to_string(m) +
                                      " partials vanish at P (multiplicity > m)");
  return cone;
}

SparsePoly tangent_cone_via_shift(const SparsePoly& H, const ProjectivePoint& P,
                                  int m) {
  if (H.a_degree() > 0) throw error("tangent_cone_via_shift expects x-only input");
  const int n = H.n();
  // H(P + e): move H to the a block, shift a_i -> x_i + e_i, then
  // evaluate the x block at P; the e exponents sit in the a slot.
  SparsePoly shifted = H.swap_blocks().diagonal_shift();
  std::map<VarRef, FieldScalar> at_p;
  for (int i = 0; i <= n; ++i) at_p[{Block::x, i}] = P.coords()[size_t(i)];
  SparsePoly taylor = shifted.evaluate(at_p);
  if (taylor.min_a_degree() != m)
    throw multiplicity_mismatch_error("Taylor expansion has order " +
                                      std::to_string(taylor.min_a_degree()) +
                                      ", expected " + std::to_string(m));
  SparsePoly cone(n, H.field());
  for (const auto& [mono, c] : taylor.terms())
    if (mono.a_degree() == m)
      cone.add_term(Monomial(std::vector<int>(size_t(n) + 1, 0), mono.a_exp), c);
  return cone;
}

std::vector<ProjectivePoint> bmss_sample_points(const PointSet& Z, int count,
                                                uint64_t seed) {
  std::vector<ProjectivePoint> out;
  for (int s = 0; s < count; ++s) {
    std::vector<FieldScalar> coords;
    for (int i = 0; i <= Z.n(); ++i)
      coords.push_back(sample_nonzero(split_seed(seed, uint64_t(s) * 8191 + i),
                                      Int(10007), Z.field()));
    out.emplace_back(std::move(coords));
  }
  return out;
}

DualityReport bmss_check(const PointSet& Z, int d, int m,
                         const std::vector<ProjectivePoint>& samples,
                         const DetectOptions& opts) {
  DetectOptions o = opts;
  o.want_forms = true;
  DetectionCell cell = detect(Z, d, m, DetectMode::hybrid, o);
  if (!cell.unexpected)
    throw not_unexpected_error("bmss_check needs an unexpected cell");
  if (cell.adim != 1)
    throw error("bmss_check needs a unique form (adim 1), got adim " +
                std::to_string(cell.adim));
  if (cell.kernel_forms.empty())
    throw kernel_deficient_error("no certified kernel form available");

  DualityReport report;
  report.form = cell.kernel_forms[0].star();
  auto [adeg, xdeg] = report.form.bidegree();
  report.a_degree = adeg;
  report.x_degree = xdeg;
  report.diag_mult_in_a = diagonal_multiplicity(report.form, Block::a);
  report.diag_mult_in_x = diagonal_multiplicity(report.form, Block::x);
  report.swap_relation = swap_relation(report.form);

  const FieldSpecPtr& field = Z.field();
  const bool odd = m % 2 != 0;
  bool all_match = true, all_sign = true;
  for (const auto& P0 : samples) {
    std::map<VarRef, FieldScalar> at_a;
    for (int i = 0; i <= Z.n(); ++i) at_a[{Block::a, i}] = P0.coords()[size_t(i)];
    SparsePoly H = report.form.evaluate(at_a);
    SparsePoly T = tangent_cone(H, P0, m);
    SparsePoly SW = report.form.swap_blocks().evaluate(at_a);
    if (SW.is_zero()) {
      all_match = all_sign = false;
      continue;
    }
    SparsePoly expected = odd ? -SW : SW;
    if (T == expected) {
      continue;  // exact (-1)^m match
    }
    all_sign = false;
    // up-to-scalar comparison
    if (T.monic() != SW.monic()) all_match = false;
  }
  report.tangent_cone_match = all_match;
  report.sign_matches_parity = all_match && all_sign;
  report.samples_checked = int(samples.size());
  return report;
}

std::vector<ProjectivePoint> base_locus_check(const SparsePoly& F,
                                              const PointSet& candidates) {
  if (F.is_zero()) throw error("base locus of the zero form");
  auto coeffs = F.coefficients_by_a();
  std::vector<ProjectivePoint> passing;
  std::map<VarRef, FieldScalar> assign;
  for (const auto& z : candidates.points()) {
    for (int i = 0; i <= candidates.n(); ++i)
      assign[{Block::x, i}] = z.coords()[size_t(i)];
    bool all_vanish = true;
    for (const auto& [amono, cx] : coeffs) {
      if (!cx.evaluate(assign).is_zero()) {
        all_vanish = false;
        break;
      }
    }
    if (all_vanish) passing.push_back(z);
  }
  return passing;
}

}  // namespace unx

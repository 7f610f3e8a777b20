#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "unx/duality.hpp"
#include "unx/prng.hpp"

using namespace unx;

namespace {
const FieldSpecPtr Q = FieldSpec::rationals();

SparsePoly xvar(int n, int i) { return SparsePoly::variable(n, Q, {Block::x, i}); }
SparsePoly avar(int n, int i) { return SparsePoly::variable(n, Q, {Block::a, i}); }

// The Example 4.5 quartic, built termwise from the printed coefficients.
SparsePoly b3_quartic() {
  const int n = 2;
  SparsePoly F(n, Q);
  auto term = [&](long c, int a0, int a1, int a2, int x0, int x1, int x2) {
    F.add_term(Monomial({a0, a1, a2}, {x0, x1, x2}), FieldScalar(Rat(c), Q));
  };
  term(1, 0, 0, 3, 3, 1, 0);   // a2^3 x0^3 x1
  term(-1, 0, 0, 3, 1, 3, 0);  // -a2^3 x0 x1^3
  term(-1, 0, 3, 0, 3, 0, 1);  // -a1^3 x0^3 x2
  term(3, 1, 2, 0, 2, 1, 1);   // 3 a0 a1^2 x0^2 x1 x2
  term(-3, 1, 0, 2, 2, 1, 1);  // -3 a0 a2^2 x0^2 x1 x2
  term(-3, 2, 1, 0, 1, 2, 1);  // -3 a0^2 a1 x0 x1^2 x2
  term(3, 0, 1, 2, 1, 2, 1);   // 3 a1 a2^2 x0 x1^2 x2
  term(1, 3, 0, 0, 0, 3, 1);   // a0^3 x1^3 x2
  term(3, 2, 0, 1, 1, 1, 2);   // 3 a0^2 a2 x0 x1 x2^2
  term(-3, 0, 2, 1, 1, 1, 2);  // -3 a1^2 a2 x0 x1 x2^2
  term(1, 0, 3, 0, 1, 0, 3);   // a1^3 x0 x2^3
  term(-1, 3, 0, 0, 0, 1, 3);  // -a0^3 x1 x2^3
  return F;
}

}  // namespace

TEST_CASE("tangent cone of a smooth conic at a point") {
  const int n = 2;
  SparsePoly H = xvar(n, 1) * xvar(n, 1) - xvar(n, 0) * xvar(n, 2);
  ProjectivePoint P({FieldScalar::one(Q), FieldScalar::zero(Q), FieldScalar::zero(Q)});
  SparsePoly T = tangent_cone(H, P, 1);
  CHECK(T.monic() == xvar(n, 2).monic());  // -x2 up to scalar
  CHECK(T == -xvar(n, 2));                 // the formula gives exactly -x2
  CHECK(tangent_cone_via_shift(H, P, 1) == T);
}

TEST_CASE("order-zero tangent cone is the value") {
  const int n = 1;
  SparsePoly H = xvar(n, 0) + xvar(n, 1);
  ProjectivePoint P({FieldScalar::one(Q), FieldScalar(Rat(2), Q)});
  SparsePoly T = tangent_cone(H, P, 0);
  CHECK(T == SparsePoly::constant(n, FieldScalar(Rat(3), Q)));
}

TEST_CASE("multiplicity mismatches are rejected") {
  const int n = 1;
  SparsePoly H = xvar(n, 0) * xvar(n, 1);
  ProjectivePoint P({FieldScalar::one(Q), FieldScalar::zero(Q)});
  // multiplicity of x0 x1 at [1:0] is 1, not 2 or 0
  CHECK_THROWS_AS(tangent_cone(H, P, 2), multiplicity_mismatch_error);
  CHECK_THROWS_AS(tangent_cone(H, P, 0), multiplicity_mismatch_error);
}

TEST_CASE("tangent cone cross-check on random singular forms") {
  uint64_t state = 314;
  int checked = 0;
  while (checked < 50) {
    const int n = 2;
    const int m = 1 + int(splitmix64(state) % 2);  // multiplicity 1 or 2
    const int deg = 3 + int(splitmix64(state) % 2);
    ProjectivePoint P({FieldScalar::one(Q),
                       FieldScalar(Rat(long(splitmix64(state) % 5) - 2), Q),
                       FieldScalar(Rat(long(splitmix64(state) % 5) - 2), Q)});
    // force multiplicity >= m at P: sum of products of m linear forms
    // vanishing at P times random complementary monomials
    SparsePoly L1 = xvar(n, 1) - xvar(n, 0).scaled(P.coords()[1]);
    SparsePoly L2 = xvar(n, 2) - xvar(n, 0).scaled(P.coords()[2]);
    SparsePoly H(n, Q);
    for (int parts = 0; parts < 3; ++parts) {
      SparsePoly piece = SparsePoly::constant(n, FieldScalar(Rat(long(splitmix64(state) % 7) - 3), Q));
      for (int k = 0; k < m; ++k) piece = piece * (splitmix64(state) % 2 ? L1 : L2);
      for (int k = 0; k < deg - m; ++k) {
        int which = int(splitmix64(state) % 3);
        piece = piece * xvar(n, which);
      }
      H = H + piece;
    }
    if (H.is_zero()) continue;
    SparsePoly direct(n, Q), shifted(n, Q);
    try {
      direct = tangent_cone(H, P, m);
      shifted = tangent_cone_via_shift(H, P, m);
    } catch (const multiplicity_mismatch_error&) {
      continue;  // multiplicity jumped above m; resample
    }
    CHECK(direct == shifted);
    CHECK(direct.x_degree() == m);
    ++checked;
  }
}

TEST_CASE("swap relation classification") {
  const int n = 1;
  SparsePoly sym = avar(n, 0) * xvar(n, 0) + avar(n, 1) * xvar(n, 1);
  CHECK(swap_relation(sym) == SwapRelation::symmetric);
  SparsePoly anti = avar(n, 0) * xvar(n, 1) - avar(n, 1) * xvar(n, 0);
  CHECK(swap_relation(anti) == SwapRelation::antisymmetric);
  CHECK(swap_relation(avar(n, 0) * xvar(n, 1)) == SwapRelation::neither);

  // involution-consistency: the class of swap_blocks(F) equals that of F
  for (const SparsePoly& f : {sym, anti}) {
    CHECK(swap_relation(f.swap_blocks()) == swap_relation(f));
  }
}

TEST_CASE("diagonal multiplicity of the printed B3 quartic is 3 in both blocks") {
  SparsePoly F = b3_quartic();
  CHECK(diagonal_multiplicity(F, Block::a) == 3);
  CHECK(diagonal_multiplicity(F, Block::x) == 3);
  SparsePoly minor = avar(1, 0) * xvar(1, 1) - avar(1, 1) * xvar(1, 0);
  CHECK(diagonal_multiplicity(minor, Block::a) == 1);
  CHECK(diagonal_multiplicity(minor, Block::x) == 1);
}

TEST_CASE("extracted B3 form equals the printed quartic exactly") {
  PointSet b3 = root_system(RootFamily::B, 3);
  auto forms = extract_form(b3, 4, 3, 1);
  REQUIRE(forms.size() == 1);
  CHECK(forms[0].poly == b3_quartic());
}

TEST_CASE("B3 bmss check at the paper's sample point") {
  PointSet b3 = root_system(RootFamily::B, 3);
  std::vector<ProjectivePoint> samples;
  samples.emplace_back(std::vector<FieldScalar>{
      FieldScalar(Rat(-6), Q), FieldScalar(Rat(-5), Q), FieldScalar(Rat(4), Q)});
  for (auto& p : bmss_sample_points(b3, 2, 7)) samples.push_back(p);
  DualityReport rep = bmss_check(b3, 4, 3, samples);
  CHECK(rep.a_degree == 3);
  CHECK(rep.x_degree == 4);
  CHECK(rep.diag_mult_in_a == 3);
  CHECK(rep.diag_mult_in_x == 3);
  CHECK(rep.tangent_cone_match);
  CHECK(rep.sign_matches_parity);  // (-1)^3: the tangent cone is -F*(x, a)
  CHECK(rep.samples_checked == 3);
}

TEST_CASE("base locus of the printed quartic contains Z_B3") {
  SparsePoly F = b3_quartic();
  PointSet b3 = root_system(RootFamily::B, 3);
  auto passing = base_locus_check(F, b3);
  CHECK(passing.size() == size_t(b3.size()));

  // a random rational point is not in the base locus
  PointSet pool(2, Q, "pool");
  pool.add({FieldScalar::one(Q), FieldScalar(Rat(17, 3), Q), FieldScalar(Rat(-8, 5), Q)});
  CHECK(base_locus_check(F, pool).empty());
}

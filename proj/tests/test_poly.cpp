#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "unx/poly.hpp"
#include "unx/prng.hpp"

using namespace unx;

namespace {

const FieldSpecPtr Q = FieldSpec::rationals();

SparsePoly var(int n, Block b, int i) { return SparsePoly::variable(n, Q, {b, i}); }

SparsePoly random_poly(int n, int max_terms, uint64_t& state) {
  SparsePoly f(n, Q);
  int terms = int(splitmix64(state) % uint64_t(max_terms)) + 1;
  for (int t = 0; t < terms; ++t) {
    Monomial m = Monomial::unit(n);
    for (int i = 0; i <= n; ++i) {
      m.a_exp[size_t(i)] = int(splitmix64(state) % 3);
      m.x_exp[size_t(i)] = int(splitmix64(state) % 3);
    }
    long c = long(splitmix64(state) % 11) - 5;
    f.add_term(m, FieldScalar(Rat(c), Q));
  }
  return f;
}

}  // namespace

TEST_CASE("ring arithmetic basics") {
  const int n = 1;
  SparsePoly x0 = var(n, Block::x, 0), x1 = var(n, Block::x, 1);
  CHECK((x0 + x1) * (x0 - x1) == x0 * x0 - x1 * x1);
  SparsePoly f = x0 * x0 + x1;
  CHECK(f * SparsePoly::constant(n, FieldScalar::one(Q)) == f);
  CHECK((f - f).is_zero());
}

TEST_CASE("hand-expanded square of a 2x2 minor") {
  const int n = 1;
  SparsePoly a0 = var(n, Block::a, 0), a1 = var(n, Block::a, 1);
  SparsePoly x0 = var(n, Block::x, 0), x1 = var(n, Block::x, 1);
  SparsePoly minor = a0 * x1 - a1 * x0;
  SparsePoly sq = minor * minor;
  SparsePoly expected = a0 * a0 * x1 * x1 -
                        (a0 * a1 * x0 * x1).scaled(FieldScalar(Rat(2), Q)) +
                        a1 * a1 * x0 * x0;
  CHECK(sq == expected);
  CHECK(sq.is_bihomogeneous());
  CHECK(sq.bidegree() == std::pair(2, 2));
}

TEST_CASE("ring axioms and bidegree additivity on random polynomials") {
  uint64_t state = 5;
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + int(splitmix64(state) % 2);
    SparsePoly f = random_poly(n, 4, state);
    SparsePoly g = random_poly(n, 4, state);
    SparsePoly h = random_poly(n, 4, state);
    CHECK(f * (g + h) == f * g + f * h);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f + g == g + f);
    if (!f.is_zero() && !g.is_zero() && !(f * g).is_zero()) {
      CHECK((f * g).a_degree() <= f.a_degree() + g.a_degree());
      CHECK((f * g).x_degree() == f.x_degree() + g.x_degree());
    }
  }
}

TEST_CASE("partial derivatives and the differentiation action") {
  const int n = 3;
  SparsePoly x0 = var(n, Block::x, 0), x1 = var(n, Block::x, 1), x3 = var(n, Block::x, 3);
  SparsePoly target = x0 * x0 * x0 * x1 * x1 * x3;  // x0^3 x1^2 x3

  SparsePoly d0 = target.partial_derivative({Block::x, 0});
  CHECK(d0 == (x0 * x0 * x1 * x1 * x3).scaled(FieldScalar(Rat(3), Q)));

  // (2 x0^2 x1 + x3) . (x0^3 x1^2 x3) = 24 x0 x1 x3 + x0^3 x1^2
  SparsePoly op = (x0 * x0 * x1).scaled(FieldScalar(Rat(2), Q)) + x3;
  SparsePoly result = target.apply_diff_operator(op);
  SparsePoly expected = (x0 * x1 * x3).scaled(FieldScalar(Rat(24), Q)) + x0 * x0 * x0 * x1 * x1;
  CHECK(result == expected);

  CHECK(x0.partial_derivative({Block::a, 0}).is_zero());
  CHECK((x0 * x0).partial_derivative({Block::a, 0}).is_zero());
}

TEST_CASE("evaluation") {
  const int n = 1;
  SparsePoly a0 = var(n, Block::a, 0), a1 = var(n, Block::a, 1);
  SparsePoly x0 = var(n, Block::x, 0), x1 = var(n, Block::x, 1);
  SparsePoly f = a0 * x1 - a1 * x0;
  SparsePoly g = f.evaluate({{{Block::a, 0}, FieldScalar::one(Q)},
                             {{Block::a, 1}, FieldScalar(Rat(2), Q)}});
  CHECK(g == x1 - x0.scaled(FieldScalar(Rat(2), Q)));

  SparsePoly h = x0 * x0 + x1 * x1;
  SparsePoly c = h.evaluate({{{Block::x, 0}, FieldScalar(Rat(3), Q)},
                             {{Block::x, 1}, FieldScalar(Rat(4), Q)}});
  CHECK(c == SparsePoly::constant(n, FieldScalar(Rat(25), Q)));
}

TEST_CASE("evaluate commutes with differentiation in untouched variables") {
  uint64_t state = 17;
  for (int i = 0; i < 200; ++i) {
    SparsePoly f = random_poly(1, 5, state);
    // differentiate in x0, evaluate at x1
    FieldScalar v(Rat(long(splitmix64(state) % 7) - 3), Q);
    std::map<VarRef, FieldScalar> assign{{{Block::x, 1}, v}};
    SparsePoly left = f.partial_derivative({Block::x, 0}).evaluate(assign);
    SparsePoly right = f.evaluate(assign).partial_derivative({Block::x, 0});
    CHECK(left == right);
  }
}

TEST_CASE("content in a and star normalization") {
  const int n = 1;
  SparsePoly a0 = var(n, Block::a, 0), a1 = var(n, Block::a, 1);
  SparsePoly x0 = var(n, Block::x, 0), x1 = var(n, Block::x, 1);

  CHECK((a0 * a0 * x0 + a0 * a1 * x1).content_in_a() == a0);
  CHECK((x0 + x1).content_in_a() == SparsePoly::constant(n, FieldScalar::one(Q)));
  CHECK((a0 * a1 * x0 * x0).content_in_a() == a0 * a1);

  SparsePoly minor = a0 * x1 - a1 * x0;
  CHECK((a0 * minor).star() == minor.star());
  CHECK(minor.star() == minor.monic());  // content-free: star only rescales

  uint64_t state = 23;
  for (int i = 0; i < 100; ++i) {
    SparsePoly f = random_poly(2, 4, state);
    if (f.is_zero()) continue;
    SparsePoly s = f.star();
    CHECK(s.content_in_a() == SparsePoly::constant(2, FieldScalar::one(Q)));
    CHECK(s.star() == s);  // idempotent
  }
}

TEST_CASE("diagonal shift") {
  const int n = 1;
  SparsePoly a0 = var(n, Block::a, 0), a1 = var(n, Block::a, 1);
  SparsePoly x0 = var(n, Block::x, 0), x1 = var(n, Block::x, 1);
  SparsePoly minor = a0 * x1 - a1 * x0;
  SparsePoly shifted = minor.diagonal_shift();
  // (x0+e0)x1 - (x1+e1)x0 = e0 x1 - e1 x0, min e-degree 1
  CHECK(shifted.min_a_degree() == 1);
  SparsePoly e0x1_minus_e1x0 =
      var(n, Block::a, 0) * x1 - var(n, Block::a, 1) * x0;  // e in a-slot
  CHECK(shifted == e0x1_minus_e1x0);

  CHECK((x0 * x1).diagonal_shift().min_a_degree() == 0);

  uint64_t state = 31;
  for (int i = 0; i < 200; ++i) {
    SparsePoly f = random_poly(1, 4, state);
    if (f.is_zero()) continue;
    SparsePoly s = f.diagonal_shift();
    // total degree is preserved termwise
    int fmax = -1, smax = -1;
    for (const auto& [m, c] : f.terms()) fmax = std::max(fmax, m.a_degree() + m.x_degree());
    for (const auto& [m, c] : s.terms()) smax = std::max(smax, m.a_degree() + m.x_degree());
    CHECK(fmax == smax);
  }

  // constructed order-m vanishing: f = (a0 x1 - a1 x0)^m * junk
  uint64_t st2 = 41;
  for (int m = 1; m <= 3; ++m) {
    SparsePoly f = (a0 * x1 - a1 * x0).pow(m) * (x0 + x1.scaled(FieldScalar(Rat(m), Q)));
    CHECK(f.diagonal_shift().min_a_degree() == m);
  }
}

TEST_CASE("swap blocks") {
  const int n = 1;
  SparsePoly a0 = var(n, Block::a, 0), a1 = var(n, Block::a, 1);
  SparsePoly x0 = var(n, Block::x, 0), x1 = var(n, Block::x, 1);
  CHECK((a0 * x1).swap_blocks() == a1 * x0);
  uint64_t state = 51;
  for (int i = 0; i < 100; ++i) {
    SparsePoly f = random_poly(2, 5, state);
    CHECK(f.swap_blocks().swap_blocks() == f);
  }
}

TEST_CASE("identify merges a variable into another") {
  const int n = 1;
  SparsePoly a1 = var(n, Block::a, 1), x1 = var(n, Block::x, 1);
  SparsePoly f = x1 * x1 + a1 * x1;
  SparsePoly g = f.identify({Block::x, 1}, {Block::a, 1});
  CHECK(g == a1 * a1 + a1 * a1);  // both terms collapse to a1^2 -> 2 a1^2
}

TEST_CASE("exact division and gcd") {
  const int n = 1;
  SparsePoly a0 = var(n, Block::a, 0), a1 = var(n, Block::a, 1);
  SparsePoly f = (a0 + a1) * (a0 - a1);
  CHECK(SparsePoly::divide_exact(f, a0 + a1) == a0 - a1);
  CHECK_THROWS_AS(SparsePoly::divide_exact(a0, a1), error);

  CHECK(SparsePoly::gcd((a0 + a1) * (a0 + a1) * a1, (a0 + a1) * a1 * a1) ==
        (a0 + a1) * a1);
}

TEST_CASE("gcd divides both inputs and contains common factors") {
  uint64_t state = 71;
  for (int i = 0; i < 80; ++i) {
    SparsePoly u = random_poly(1, 3, state);
    SparsePoly v = random_poly(1, 3, state);
    SparsePoly w = random_poly(1, 2, state);
    if (u.is_zero() || v.is_zero() || w.is_zero()) continue;
    SparsePoly g = SparsePoly::gcd(u * w, v * w);
    CHECK_NOTHROW(SparsePoly::divide_exact(u * w, g));
    CHECK_NOTHROW(SparsePoly::divide_exact(v * w, g));
    CHECK_NOTHROW(SparsePoly::divide_exact(g, SparsePoly::gcd(g, w)));
    CHECK(SparsePoly::gcd(g, w).monic() == w.monic());
  }
}

TEST_CASE("canonical term order and printing") {
  const int n = 1;
  SparsePoly x0 = var(n, Block::x, 0), x1 = var(n, Block::x, 1);
  SparsePoly a0 = var(n, Block::a, 0);
  SparsePoly f = x1 + x0 * x0 + a0 * x1;
  // descending: x0^2 > a0*x1 (x-deg ties: a-deg ordering) ... x0^2 first
  CHECK(f.leading_monomial().x_exp[0] == 2);
  CHECK(f.to_string() == "1*x0^2 + 1*a0*x1 + 1*x1");
  CHECK(SparsePoly(n, Q).to_string() == "0");
}

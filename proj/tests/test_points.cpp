#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "unx/points.hpp"

using namespace unx;

namespace {
const FieldSpecPtr Q = FieldSpec::rationals();

FieldScalar fs(long v) { return FieldScalar(Rat(v), Q); }
}  // namespace

TEST_CASE("projective canonicalization identifies scalar multiples") {
  ProjectivePoint p({fs(0), fs(2), fs(4)});
  CHECK(p.coords()[0].is_zero());
  CHECK(p.coords()[1].is_one());
  CHECK(p.coords()[2] == fs(2));
  ProjectivePoint q({fs(0), fs(-3), fs(-6)});
  CHECK(p == q);
  CHECK_THROWS_AS(ProjectivePoint({fs(0), fs(0)}), error);

  PointSet Z(1, Q, "dedup");
  Z.add({fs(1), fs(2)});
  Z.add({fs(-1), fs(-2)});
  Z.add({fs(2), fs(4)});
  CHECK(Z.size() == 1);
}

TEST_CASE("root system cardinalities") {
  CHECK(root_system(RootFamily::B, 3).size() == 9);
  for (int r = 3; r <= 7; ++r) CHECK(root_system(RootFamily::B, r).size() == r * r);
  for (int r = 3; r <= 7; ++r)
    CHECK(root_system(RootFamily::D, r).size() == r * (r - 1));
  CHECK(root_system(RootFamily::E8, 8).size() == 120);
  CHECK(root_system(RootFamily::E7, 7).size() == 63);
  CHECK(root_system(RootFamily::E6, 6).size() == 36);
  CHECK(root_system(RootFamily::F4, 4).size() == 24);
  CHECK(root_system(RootFamily::H3, 3).size() == 15);
  CHECK(root_system(RootFamily::H4, 4).size() == 60);
  // the literal A construction keeps the projected unit vectors, so
  // |Z_A(rank)| is binom(rank+1, 2), not the binom(rank, 2) of the text
  for (int r = 3; r <= 7; ++r)
    CHECK(root_system(RootFamily::A, r).size() == (r + 1) * r / 2);
  CHECK_THROWS_AS(root_system(RootFamily::F4, 5), error);
  CHECK_THROWS_AS(root_system(RootFamily::H3, 4), error);
}

TEST_CASE("B and D vectors have squared sum 1 or 2 before projectivization") {
  // generators emit representatives with entries in {0, +-1}; check the
  // defining norm windows on the canonical forms
  for (int r : {3, 4, 5}) {
    PointSet B = root_system(RootFamily::B, r);
    for (const auto& p : B.points()) {
      Rat norm(0);
      for (const auto& c : p.coords()) norm += c.c0() * c.c0();
      CHECK((norm == 1 || norm == 2));
    }
    PointSet D = root_system(RootFamily::D, r);
    for (const auto& p : D.points()) {
      Rat norm(0);
      for (const auto& c : p.coords()) norm += c.c0() * c.c0();
      CHECK(norm == 2);
    }
  }
}

TEST_CASE("H3 and H4 live in the right quadratic fields") {
  PointSet h3 = root_system(RootFamily::H3, 3);
  CHECK(h3.field()->kind() == FieldKind::quadratic);
  CHECK(h3.field()->p() == 0);
  CHECK(h3.field()->q() == 5);
  PointSet h4 = root_system(RootFamily::H4, 4);
  CHECK(h4.field()->p() == 1);
  CHECK(h4.field()->q() == 1);
}

TEST_CASE("fermat dual points") {
  PointSet Z = fermat_supersolvable_duals();
  CHECK(Z.size() == 12);
  const FieldSpecPtr K = Z.field();
  // contains [1:0:0], dual of the factor x
  bool has_e0 = false;
  for (const auto& p : Z.points())
    if (p.coords()[0].is_one() && p.coords()[1].is_zero() && p.coords()[2].is_zero())
      has_e0 = true;
  CHECK(has_e0);
  // x^3 - y^3 really factors as (x-y)(x-wy)(x-w^2y) over t^2 = -t - 1
  SparsePoly x = SparsePoly::variable(2, K, {Block::x, 0});
  SparsePoly y = SparsePoly::variable(2, K, {Block::x, 1});
  FieldScalar w = FieldScalar::t(K);
  SparsePoly prod = (x - y) * (x - y.scaled(w)) * (x - y.scaled(w * w));
  CHECK(prod == x * x * x - y * y * y);
  // hence the dual of x - w y, canonicalized, is in Z
  ProjectivePoint dual({FieldScalar::one(K), -w, FieldScalar::zero(K)});
  bool found = false;
  for (const auto& p : Z.points()) found = found || p == dual;
  CHECK(found);
}

TEST_CASE("twisted cubic points satisfy the quadric equations") {
  PointSet Z = twisted_cubic_points(10);
  CHECK(Z.size() == 10);
  for (const auto& p : Z.points()) {
    const auto& c = p.coords();
    CHECK(c[0] * c[2] == c[1] * c[1]);
    CHECK(c[0] * c[3] == c[1] * c[2]);
    CHECK(c[1] * c[3] == c[2] * c[2]);
  }
  CHECK(twisted_cubic_points(31).size() == 31);
  // seeded variant still gives distinct points on the curve
  PointSet S = twisted_cubic_points(8, 99);
  CHECK(S.size() == 8);
}

TEST_CASE("dualize maps points to linear forms") {
  PointSet Z(2, Q, "unit");
  Z.add({fs(1), fs(0), fs(0)});
  Z.add({fs(1), fs(1), fs(1)});
  auto forms = dualize(Z);
  REQUIRE(forms.size() == 2);
  CHECK(forms[0] == SparsePoly::variable(2, Q, {Block::x, 0}));
  SparsePoly sum = SparsePoly::variable(2, Q, {Block::x, 0}) +
                   SparsePoly::variable(2, Q, {Block::x, 1}) +
                   SparsePoly::variable(2, Q, {Block::x, 2});
  CHECK(forms[1] == sum);

  // Z_B3 dualizes to x, y, z, x+-y, x+-z, y+-z
  auto b3 = dualize(root_system(RootFamily::B, 3));
  CHECK(b3.size() == 9);
  for (const auto& f : b3) CHECK(f.x_degree() == 1);
}

TEST_CASE("JSON round trip") {
  PointSet Z = root_system(RootFamily::F4, 4);
  std::string path = "f4_roundtrip_test.json";
  save_pointset(Z, path, PointFormat::json);
  PointSet back = load_pointset(path, PointFormat::json);
  CHECK(back.size() == Z.size());
  CHECK(back.n() == Z.n());
  for (int i = 0; i < Z.size(); ++i)
    CHECK(back.points()[size_t(i)] == Z.points()[size_t(i)]);
  std::remove(path.c_str());
}

TEST_CASE("CSV round trip incl. quadratic fields") {
  PointSet Z = root_system(RootFamily::H3, 3);
  std::string path = "h3_roundtrip_test.csv";
  save_pointset(Z, path, PointFormat::csv);
  PointSet back = load_pointset(path, PointFormat::csv);
  CHECK(back.size() == 15);
  for (int i = 0; i < Z.size(); ++i)
    CHECK(back.points()[size_t(i)] == Z.points()[size_t(i)]);
  std::remove(path.c_str());

  // B4 CSV loads with 16 points
  PointSet b4 = root_system(RootFamily::B, 4);
  save_pointset(b4, "b4_test.csv", PointFormat::csv);
  CHECK(load_pointset("b4_test.csv", PointFormat::csv).size() == 16);
  std::remove("b4_test.csv");
}

TEST_CASE("malformed rows are reported with their line") {
  {
    std::ofstream out("bad_test.csv");
    out << "1,0,0\n1,oops,0\n";
  }
  try {
    load_pointset("bad_test.csv", PointFormat::csv);
    CHECK(false);
  } catch (const parse_error& e) {
    CHECK(e.line == 2);
  }
  std::remove("bad_test.csv");
}

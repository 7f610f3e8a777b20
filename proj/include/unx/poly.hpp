#ifndef UNX_POLY_HPP
#define UNX_POLY_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "unx/field.hpp"

namespace unx {

/// The two variable blocks of the bi-graded ring K[a_0..a_n][x_0..x_n].
enum class Block { a, x };

struct VarRef {
  Block block;
  int index;
  bool operator==(const VarRef& o) const { return block == o.block && index == o.index; }
  bool operator<(const VarRef& o) const {
    if (block != o.block) return block < o.block;
    return index < o.index;
  }
};

/// Exponent pair (a-block, x-block), each of length n+1.
struct Monomial {
  std::vector<int> a_exp, x_exp;

  Monomial() = default;
  Monomial(std::vector<int> a, std::vector<int> x)
      : a_exp(std::move(a)), x_exp(std::move(x)) {}
  static Monomial unit(int n) {
    return Monomial(std::vector<int>(n + 1, 0), std::vector<int>(n + 1, 0));
  }

  int a_degree() const;
  int x_degree() const;
  int exponent(VarRef v) const {
    return v.block == Block::a ? a_exp[v.index] : x_exp[v.index];
  }
  int& exponent(VarRef v) {
    return v.block == Block::a ? a_exp[v.index] : x_exp[v.index];
  }
  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;           // this | o
  Monomial divided_by(const Monomial& o) const;    // this / o
  bool operator==(const Monomial& o) const {
    return a_exp == o.a_exp && x_exp == o.x_exp;
  }
  std::string to_string() const;  // "a0^2*x1" style; empty for the unit
};

/// Canonical term order: graded lexicographic on the x-block
/// (x_0 > x_1 > ...), then on the a-block.  Used descending, so the
/// first term of a polynomial is the canonical leading term.
struct MonomialGreater {
  bool operator()(const Monomial& l, const Monomial& r) const;
};

/// Sparse multivariate polynomial over a FieldScalar field with the two
/// blocks a and x.  Values are immutable in spirit: all operations
/// return new polynomials, so sharing across threads is safe.
class SparsePoly {
 public:
  using TermMap = std::map<Monomial, FieldScalar, MonomialGreater>;

  SparsePoly(int n, FieldSpecPtr field) : n_(n), field_(std::move(field)) {}
  static SparsePoly constant(int n, const FieldScalar& c);
  static SparsePoly variable(int n, const FieldSpecPtr& field, VarRef v);
  static SparsePoly single(int n, const Monomial& m, const FieldScalar& c);

  int n() const { return n_; }
  const FieldSpecPtr& field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  /// Accumulate c on monomial m, dropping the term if it cancels.
  void add_term(const Monomial& m, const FieldScalar& c);

  SparsePoly operator+(const SparsePoly& o) const;
  SparsePoly operator-(const SparsePoly& o) const;
  SparsePoly operator*(const SparsePoly& o) const;
  SparsePoly operator-() const;
  SparsePoly scaled(const FieldScalar& c) const;
  SparsePoly pow(int e) const;
  bool operator==(const SparsePoly& o) const;
  bool operator!=(const SparsePoly& o) const { return !(*this == o); }

  int a_degree() const;  // max over terms; -1 for the zero polynomial
  int x_degree() const;
  int min_a_degree() const;  // -1 for zero
  bool is_bihomogeneous() const;
  std::pair<int, int> bidegree() const;  // requires a nonzero bihomogeneous input

  const Monomial& leading_monomial() const;
  const FieldScalar& leading_coefficient() const;
  /// Scales so the canonically-first coefficient is 1.
  SparsePoly monic() const;

  SparsePoly partial_derivative(VarRef v) const;
  /// Differentiation action of `op` (a polynomial in the x variables)
  /// on this polynomial: each monomial of op acts as a higher partial.
  SparsePoly apply_diff_operator(const SparsePoly& op) const;

  SparsePoly evaluate(const std::map<VarRef, FieldScalar>& assignment) const;
  /// Substitutes variable `from` by variable `to` (exponent transfer).
  SparsePoly identify(VarRef from, VarRef to) const;

  /// gcd over K[a] of the x-coefficients; leading coefficient 1.
  SparsePoly content_in_a() const;
  /// this / content_in_a, then scaled to leading coefficient 1.
  SparsePoly star() const;
  /// Substitutes a_i -> x_i + e_i; the returned polynomial stores the
  /// e exponents in the a slot.  Its min_a_degree is the multiplicity
  /// in the a variables at the point a = x.
  SparsePoly diagonal_shift() const;
  SparsePoly swap_blocks() const;

  /// Coefficient of each x-monomial as a polynomial in a (and vice versa).
  std::map<Monomial, SparsePoly, MonomialGreater> coefficients_by_x() const;
  std::map<Monomial, SparsePoly, MonomialGreater> coefficients_by_a() const;

  std::string to_string() const;  // canonical order, "coef*a0^i*..*x0^j*.." terms

  /// Exact multivariate division; throws unx::error when not exact.
  static SparsePoly divide_exact(const SparsePoly& f, const SparsePoly& g);
  /// Multivariate gcd (monomial content + subresultant PRS), leading
  /// coefficient normalized to 1.
  static SparsePoly gcd(const SparsePoly& f, const SparsePoly& g);

 private:
  void require_compatible(const SparsePoly& o, const char* op) const;
  int n_;
  FieldSpecPtr field_;
  TermMap terms_;
};

}  // namespace unx

#endif

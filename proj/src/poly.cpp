#include "unx/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace unx {

namespace {

int vec_sum(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

// Falling-factorial coefficient of d/dx^e applied to x^g: g!/(g-e)!.
Rat diff_factor(int g, int e) {
  Rat r(1);
  for (int i = 0; i < e; ++i) r *= (g - i);
  return r;
}

}  // namespace

int Monomial::a_degree() const { return vec_sum(a_exp); }
int Monomial::x_degree() const { return vec_sum(x_exp); }

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r = *this;
  for (size_t i = 0; i < r.a_exp.size(); ++i) r.a_exp[i] += o.a_exp[i];
  for (size_t i = 0; i < r.x_exp.size(); ++i) r.x_exp[i] += o.x_exp[i];
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (size_t i = 0; i < a_exp.size(); ++i)
    if (a_exp[i] > o.a_exp[i]) return false;
  for (size_t i = 0; i < x_exp.size(); ++i)
    if (x_exp[i] > o.x_exp[i]) return false;
  return true;
}

Monomial Monomial::divided_by(const Monomial& o) const {
  Monomial r = *this;
  for (size_t i = 0; i < r.a_exp.size(); ++i) r.a_exp[i] -= o.a_exp[i];
  for (size_t i = 0; i < r.x_exp.size(); ++i) r.x_exp[i] -= o.x_exp[i];
  return r;
}

std::string Monomial::to_string() const {
  std::ostringstream out;
  bool first = true;
  auto emit = [&](char name, int i, int e) {
    if (e == 0) return;
    if (!first) out << "*";
    first = false;
    out << name << i;
    if (e > 1) out << "^" << e;
  };
  for (size_t i = 0; i < a_exp.size(); ++i) emit('a', int(i), a_exp[i]);
  for (size_t i = 0; i < x_exp.size(); ++i) emit('x', int(i), x_exp[i]);
  return out.str();
}

bool MonomialGreater::operator()(const Monomial& l, const Monomial& r) const {
  int lx = l.x_degree(), rx = r.x_degree();
  if (lx != rx) return lx > rx;
  for (size_t i = 0; i < l.x_exp.size(); ++i)
    if (l.x_exp[i] != r.x_exp[i]) return l.x_exp[i] > r.x_exp[i];
  int la = l.a_degree(), ra = r.a_degree();
  if (la != ra) return la > ra;
  for (size_t i = 0; i < l.a_exp.size(); ++i)
    if (l.a_exp[i] != r.a_exp[i]) return l.a_exp[i] > r.a_exp[i];
  return false;
}

SparsePoly SparsePoly::constant(int n, const FieldScalar& c) {
  SparsePoly p(n, c.spec());
  p.add_term(Monomial::unit(n), c);
  return p;
}

SparsePoly SparsePoly::variable(int n, const FieldSpecPtr& field, VarRef v) {
  SparsePoly p(n, field);
  Monomial m = Monomial::unit(n);
  m.exponent(v) = 1;
  p.add_term(m, FieldScalar::one(field));
  return p;
}

SparsePoly SparsePoly::single(int n, const Monomial& m, const FieldScalar& c) {
  SparsePoly p(n, c.spec());
  p.add_term(m, c);
  return p;
}

void SparsePoly::add_term(const Monomial& m, const FieldScalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void SparsePoly::require_compatible(const SparsePoly& o, const char* op) const {
  if (n_ != o.n_)
    throw error(std::string("ambient dimension mismatch in ") + op);
  if (!(field_ == o.field_ || *field_ == *o.field_))
    throw field_mismatch_error(std::string("mixed-field polynomials in ") + op);
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  require_compatible(o, "add");
  SparsePoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const {
  require_compatible(o, "sub");
  SparsePoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly r(n_, field_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

SparsePoly SparsePoly::scaled(const FieldScalar& c) const {
  SparsePoly r(n_, field_);
  if (c.is_zero()) return r;
  for (const auto& [m, coef] : terms_) r.terms_.emplace(m, coef * c);
  return r;
}

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
  require_compatible(o, "mul");
  SparsePoly r(n_, field_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
  return r;
}

SparsePoly SparsePoly::pow(int e) const {
  if (e < 0) throw error("negative polynomial power");
  SparsePoly r = constant(n_, FieldScalar::one(field_));
  SparsePoly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = (e >>= 1) ? base * base : base;
  }
  return r;
}

bool SparsePoly::operator==(const SparsePoly& o) const {
  if (n_ != o.n_ || terms_.size() != o.terms_.size()) return false;
  auto it = terms_.begin(), jt = o.terms_.begin();
  for (; it != terms_.end(); ++it, ++jt)
    if (!(it->first == jt->first) || it->second != jt->second) return false;
  return true;
}

int SparsePoly::a_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.a_degree());
  return d;
}

int SparsePoly::x_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.x_degree());
  return d;
}

int SparsePoly::min_a_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int ad = m.a_degree();
    if (d < 0 || ad < d) d = ad;
  }
  return d;
}

bool SparsePoly::is_bihomogeneous() const {
  if (terms_.empty()) return true;
  auto [a0, x0] = std::pair(terms_.begin()->first.a_degree(),
                            terms_.begin()->first.x_degree());
  for (const auto& [m, c] : terms_)
    if (m.a_degree() != a0 || m.x_degree() != x0) return false;
  return true;
}

std::pair<int, int> SparsePoly::bidegree() const {
  if (terms_.empty()) throw error("bidegree of the zero polynomial");
  if (!is_bihomogeneous()) throw error("bidegree of a non-bihomogeneous polynomial");
  return {terms_.begin()->first.a_degree(), terms_.begin()->first.x_degree()};
}

const Monomial& SparsePoly::leading_monomial() const {
  if (terms_.empty()) throw error("leading term of the zero polynomial");
  return terms_.begin()->first;
}

const FieldScalar& SparsePoly::leading_coefficient() const {
  if (terms_.empty()) throw error("leading term of the zero polynomial");
  return terms_.begin()->second;
}

SparsePoly SparsePoly::monic() const {
  if (terms_.empty()) return *this;
  return scaled(leading_coefficient().inv());
}

SparsePoly SparsePoly::partial_derivative(VarRef v) const {
  SparsePoly r(n_, field_);
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(v);
    if (e == 0) continue;
    Monomial d = m;
    d.exponent(v) = e - 1;
    r.add_term(d, c * FieldScalar(Rat(e), field_));
  }
  return r;
}

SparsePoly SparsePoly::apply_diff_operator(const SparsePoly& op) const {
  require_compatible(op, "apply_diff_operator");
  if (op.a_degree() > 0) throw error("differential operator must live in the x block");
  SparsePoly r(n_, field_);
  for (const auto& [mu, cop] : op.terms_) {
    for (const auto& [m, c] : terms_) {
      Rat factor(1);
      bool vanished = false;
      Monomial d = m;
      for (size_t i = 0; i < mu.x_exp.size() && !vanished; ++i) {
        int e = mu.x_exp[i], g = m.x_exp[i];
        if (e > g) {
          vanished = true;
        } else if (e > 0) {
          factor *= diff_factor(g, e);
          d.x_exp[i] = g - e;
        }
      }
      if (!vanished) r.add_term(d, c * cop * FieldScalar(factor, field_));
    }
  }
  return r;
}

SparsePoly SparsePoly::evaluate(const std::map<VarRef, FieldScalar>& assignment) const {
  SparsePoly r(n_, field_);
  for (const auto& [m, c] : terms_) {
    FieldScalar coef = c;
    Monomial reduced = m;
    for (const auto& [v, value] : assignment) {
      int e = m.exponent(v);
      if (e == 0) continue;
      FieldScalar p = FieldScalar::one(field_);
      for (int i = 0; i < e; ++i) p *= value;
      coef *= p;
      reduced.exponent(v) = 0;
      if (coef.is_zero()) break;
    }
    r.add_term(reduced, coef);
  }
  return r;
}

SparsePoly SparsePoly::identify(VarRef from, VarRef to) const {
  if (from == to) return *this;
  SparsePoly r(n_, field_);
  for (const auto& [m, c] : terms_) {
    Monomial moved = m;
    moved.exponent(to) += moved.exponent(from);
    moved.exponent(from) = 0;
    r.add_term(moved, c);
  }
  return r;
}

SparsePoly SparsePoly::diagonal_shift() const {
  SparsePoly r(n_, field_);
  for (const auto& [m, c] : terms_) {
    // expand prod_i (x_i + e_i)^{alpha_i}; delta walks the sub-exponents
    std::vector<int> delta(m.a_exp.size(), 0);
    while (true) {
      Rat mult(1);
      for (size_t i = 0; i < delta.size(); ++i)
        mult *= Rat(binom(m.a_exp[i], delta[i]));
      Monomial out = Monomial::unit(n_);
      out.a_exp = delta;
      out.x_exp = m.x_exp;
      for (size_t i = 0; i < delta.size(); ++i)
        out.x_exp[i] += m.a_exp[i] - delta[i];
      r.add_term(out, c * FieldScalar(mult, field_));
      // next multi-index delta <= alpha
      size_t k = 0;
      for (; k < delta.size(); ++k) {
        if (delta[k] < m.a_exp[k]) {
          ++delta[k];
          break;
        }
        delta[k] = 0;
      }
      if (k == delta.size()) break;
    }
  }
  return r;
}

SparsePoly SparsePoly::swap_blocks() const {
  SparsePoly r(n_, field_);
  for (const auto& [m, c] : terms_)
    r.terms_.emplace(Monomial(m.x_exp, m.a_exp), c);
  return r;
}

std::map<Monomial, SparsePoly, MonomialGreater> SparsePoly::coefficients_by_x() const {
  std::map<Monomial, SparsePoly, MonomialGreater> out;
  for (const auto& [m, c] : terms_) {
    Monomial xpart(std::vector<int>(n_ + 1, 0), m.x_exp);
    Monomial apart(m.a_exp, std::vector<int>(n_ + 1, 0));
    auto [it, fresh] = out.try_emplace(xpart, SparsePoly(n_, field_));
    it->second.add_term(apart, c);
  }
  return out;
}

std::map<Monomial, SparsePoly, MonomialGreater> SparsePoly::coefficients_by_a() const {
  std::map<Monomial, SparsePoly, MonomialGreater> out;
  for (const auto& [m, c] : terms_) {
    Monomial apart(m.a_exp, std::vector<int>(n_ + 1, 0));
    Monomial xpart(std::vector<int>(n_ + 1, 0), m.x_exp);
    auto [it, fresh] = out.try_emplace(apart, SparsePoly(n_, field_));
    it->second.add_term(xpart, c);
  }
  return out;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    std::string mono = m.to_string();
    if (mono.empty())
      out << c.to_string();
    else
      out << c.to_string() << "*" << mono;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Exact division and multivariate gcd (monomial content first, then
// subresultant PRS in the last active variable, recursing on coefficients).
// ---------------------------------------------------------------------------

SparsePoly SparsePoly::divide_exact(const SparsePoly& f, const SparsePoly& g) {
  f.require_compatible(g, "divide_exact");
  if (g.is_zero()) throw division_by_zero_error("polynomial division by zero");
  SparsePoly q(f.n_, f.field_);
  SparsePoly r = f;
  const Monomial& gm = g.leading_monomial();
  const FieldScalar& gc = g.leading_coefficient();
  while (!r.is_zero()) {
    const Monomial& rm = r.leading_monomial();
    if (!gm.divides(rm)) throw error("inexact polynomial division");
    Monomial m = rm.divided_by(gm);
    FieldScalar c = r.leading_coefficient() / gc;
    q.add_term(m, c);
    r = r - g * SparsePoly::single(f.n_, m, c);
  }
  return q;
}

namespace {

std::vector<VarRef> all_vars(int n) {
  std::vector<VarRef> vars;
  for (int i = 0; i <= n; ++i) vars.push_back({Block::x, i});
  for (int i = 0; i <= n; ++i) vars.push_back({Block::a, i});
  return vars;
}

int degree_in(const SparsePoly& f, VarRef v) {
  int d = -1;
  for (const auto& [m, c] : f.terms()) d = std::max(d, m.exponent(v));
  return d;
}

// Coefficient of v^e in f, viewed univariately in v.
SparsePoly coeff_of(const SparsePoly& f, VarRef v, int e) {
  SparsePoly out(f.n(), f.field());
  for (const auto& [m, c] : f.terms()) {
    if (m.exponent(v) != e) continue;
    Monomial r = m;
    r.exponent(v) = 0;
    out.add_term(r, c);
  }
  return out;
}

SparsePoly times_var_power(const SparsePoly& f, VarRef v, int e) {
  SparsePoly out(f.n(), f.field());
  for (const auto& [m, c] : f.terms()) {
    Monomial r = m;
    r.exponent(v) += e;
    out.add_term(r, c);
  }
  return out;
}

// Divides out the per-variable minimum exponent; returns the content monomial.
Monomial strip_monomial_content(SparsePoly& f) {
  Monomial content = Monomial::unit(f.n());
  if (f.is_zero()) return content;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    if (first) {
      content = m;
      first = false;
      continue;
    }
    for (size_t i = 0; i < content.a_exp.size(); ++i)
      content.a_exp[i] = std::min(content.a_exp[i], m.a_exp[i]);
    for (size_t i = 0; i < content.x_exp.size(); ++i)
      content.x_exp[i] = std::min(content.x_exp[i], m.x_exp[i]);
  }
  if (content.a_degree() == 0 && content.x_degree() == 0) return content;
  SparsePoly reduced(f.n(), f.field());
  for (const auto& [m, c] : f.terms()) reduced.add_term(m.divided_by(content), c);
  f = reduced;
  return content;
}

SparsePoly gcd_impl(SparsePoly f, SparsePoly g);

// gcd of the univariate-view coefficients of f with respect to v.
SparsePoly coefficient_content(const SparsePoly& f, VarRef v) {
  SparsePoly acc(f.n(), f.field());
  for (int e = 0; e <= degree_in(f, v); ++e) {
    SparsePoly c = coeff_of(f, v, e);
    if (c.is_zero()) continue;
    acc = acc.is_zero() ? c : gcd_impl(acc, c);
    if (!acc.is_zero() && acc.term_count() == 1 && acc.leading_monomial().a_degree() == 0 &&
        acc.leading_monomial().x_degree() == 0)
      break;  // content already trivial
  }
  return acc;
}

// lc(g)^k * f reduced modulo g in variable v (textbook pseudo-remainder).
SparsePoly pseudo_remainder(const SparsePoly& f, const SparsePoly& g, VarRef v) {
  int dg = degree_in(g, v);
  SparsePoly lcg = coeff_of(g, v, dg);
  SparsePoly r = f;
  int df = degree_in(f, v);
  int steps = df - dg + 1;
  while (!r.is_zero() && degree_in(r, v) >= dg) {
    int dr = degree_in(r, v);
    SparsePoly lcr = coeff_of(r, v, dr);
    r = r * lcg - times_var_power(lcr * g, v, dr - dg);
    --steps;
  }
  // pad so the total lc(g) power is exactly df-dg+1, as the PRS expects
  for (; steps > 0; --steps) r = r * lcg;
  return r;
}

SparsePoly gcd_impl(SparsePoly f, SparsePoly g) {
  const int n = f.n();
  const FieldSpecPtr field = f.field();
  const SparsePoly one = SparsePoly::constant(n, FieldScalar::one(field));
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;

  Monomial mcf = strip_monomial_content(f);
  Monomial mcg = strip_monomial_content(g);
  Monomial mc = mcf;
  for (size_t i = 0; i < mc.a_exp.size(); ++i)
    mc.a_exp[i] = std::min(mc.a_exp[i], mcg.a_exp[i]);
  for (size_t i = 0; i < mc.x_exp.size(); ++i)
    mc.x_exp[i] = std::min(mc.x_exp[i], mcg.x_exp[i]);
  SparsePoly mono = SparsePoly::single(n, mc, FieldScalar::one(field));

  // main variable: the lexicographically last one active in either input
  VarRef main{Block::a, 0};
  bool have_main = false;
  for (VarRef v : all_vars(n))
    if (degree_in(f, v) > 0 || degree_in(g, v) > 0) {
      main = v;
      have_main = true;
    }
  if (!have_main) return mono;  // both inputs were monomials

  if (degree_in(f, main) < degree_in(g, main)) std::swap(f, g);
  if (degree_in(g, main) == 0) {
    // g is a coefficient-only polynomial in the main variable
    SparsePoly c = gcd_impl(coefficient_content(f, main), g);
    return mono * c;
  }

  SparsePoly cf = coefficient_content(f, main);
  SparsePoly cg = coefficient_content(g, main);
  SparsePoly fp = SparsePoly::divide_exact(f, cf);
  SparsePoly gp = SparsePoly::divide_exact(g, cg);
  SparsePoly cont = gcd_impl(cf, cg);

  // primitive PRS on the primitive parts: each pseudo-remainder is
  // reduced by its coefficient content, which keeps degrees minimal and
  // every division exact by construction
  while (true) {
    if (degree_in(gp, main) == 0) {
      gp = one;
      break;
    }
    SparsePoly rem = pseudo_remainder(fp, gp, main);
    if (rem.is_zero()) break;
    rem = SparsePoly::divide_exact(rem, coefficient_content(rem, main));
    fp = gp;
    gp = rem;
  }
  if (degree_in(gp, main) > 0)
    gp = SparsePoly::divide_exact(gp, coefficient_content(gp, main));
  return mono * cont * gp;
}

}  // namespace

SparsePoly SparsePoly::gcd(const SparsePoly& f, const SparsePoly& g) {
  f.require_compatible(g, "gcd");
  if (f.is_zero() && g.is_zero()) throw error("gcd(0, 0) is undefined");
  return gcd_impl(f, g).monic();
}

SparsePoly SparsePoly::content_in_a() const {
  if (is_zero()) throw error("content of the zero polynomial");
  SparsePoly acc(n_, field_);
  for (const auto& [xm, coef] : coefficients_by_x()) {
    acc = acc.is_zero() ? coef : gcd(acc, coef);
    if (acc.term_count() == 1 && acc.leading_monomial().a_degree() == 0) break;
  }
  return acc.monic();
}

SparsePoly SparsePoly::star() const {
  if (is_zero()) throw error("star of the zero polynomial");
  return divide_exact(*this, content_in_a()).monic();
}

}  // namespace unx

#include "unx/field.hpp"

#include "unx/prng.hpp"

namespace unx {

std::string FieldSpec::describe() const {
  if (kind_ == FieldKind::rationals) return "QQ";
  return "QQ[t]/(t^2 - (" + rat_to_string(p_) + ")t - (" + rat_to_string(q_) + "))";
}

FieldSpecPtr FieldSpec::rationals() {
  static const FieldSpecPtr instance(
      new FieldSpec(FieldKind::rationals, Rat(0), Rat(0)));
  return instance;
}

FieldSpecPtr FieldSpec::quadratic(const Rat& p, const Rat& q) {
  Rat pc = p, qc = q;
  if (pc.get_den() == 0 || qc.get_den() == 0)
    throw division_by_zero_error("zero denominator in field parameters");
  pc.canonicalize();
  qc.canonicalize();
  // t^2 - p t - q is irreducible over Q iff the discriminant p^2 + 4q
  // is not a rational square.
  Rat disc = pc * pc + 4 * qc;
  if (rat_is_square(disc)) {
    throw error("t^2 - (" + rat_to_string(pc) + ")t - (" + rat_to_string(qc) +
                ") is reducible over QQ");
  }
  return FieldSpecPtr(new FieldSpec(FieldKind::quadratic, pc, qc));
}

namespace {
void canonicalize_checked(Rat& r) {
  if (r.get_den() == 0) throw division_by_zero_error("zero denominator");
  r.canonicalize();
}
}  // namespace

FieldScalar::FieldScalar(Rat c0, Rat c1, FieldSpecPtr spec)
    : c0_(std::move(c0)), c1_(std::move(c1)), spec_(std::move(spec)) {
  canonicalize_checked(c0_);
  canonicalize_checked(c1_);
  if (c1_ != 0 && spec_->is_rationals())
    throw error("nonzero t-component in a rational scalar");
}

FieldScalar FieldScalar::t(const FieldSpecPtr& spec) {
  if (spec->is_rationals()) throw error("t does not exist over QQ");
  return FieldScalar(canonical_tag{}, Rat(0), Rat(1), spec);
}

void FieldScalar::require_same_field(const FieldScalar& o, const char* op) const {
  if (!same_field(o))
    throw field_mismatch_error(std::string("mixed-field operands in ") + op + ": " +
                               spec_->describe() + " vs " + o.spec_->describe());
}

FieldScalar FieldScalar::operator+(const FieldScalar& o) const {
  require_same_field(o, "add");
  return FieldScalar(canonical_tag{}, c0_ + o.c0_, c1_ + o.c1_, spec_);
}

FieldScalar FieldScalar::operator-(const FieldScalar& o) const {
  require_same_field(o, "sub");
  return FieldScalar(canonical_tag{}, c0_ - o.c0_, c1_ - o.c1_, spec_);
}

FieldScalar FieldScalar::operator*(const FieldScalar& o) const {
  require_same_field(o, "mul");
  // (a + b t)(c + d t) = (ac + bd q) + (ad + bc + bd p) t  with t^2 = p t + q.
  if (c1_ == 0 && o.c1_ == 0)
    return FieldScalar(canonical_tag{}, c0_ * o.c0_, Rat(0), spec_);
  Rat bd = c1_ * o.c1_;
  return FieldScalar(canonical_tag{}, c0_ * o.c0_ + bd * spec_->q(),
                     c0_ * o.c1_ + c1_ * o.c0_ + bd * spec_->p(), spec_);
}

FieldScalar FieldScalar::inv() const {
  if (is_zero()) throw division_by_zero_error("inverse of zero");
  if (c1_ == 0) return FieldScalar(canonical_tag{}, 1 / c0_, Rat(0), spec_);
  // conj(c0 + c1 t) = (c0 + c1 p) - c1 t;  N(x) = x * conj(x) in Q.
  Rat conj0 = c0_ + c1_ * spec_->p();
  Rat norm = c0_ * conj0 - c1_ * c1_ * spec_->q();
  if (norm == 0) throw division_by_zero_error("zero norm in quadratic inverse");
  return FieldScalar(canonical_tag{}, conj0 / norm, -c1_ / norm, spec_);
}

std::string FieldScalar::to_string() const {
  if (c1_ == 0) return rat_to_string(c0_);
  return "(" + rat_to_string(c0_) + ")+(" + rat_to_string(c1_) + ")t";
}

FieldScalar FieldScalar::from_string(const std::string& s, const FieldSpecPtr& spec) {
  if (s.empty()) throw error("empty scalar literal");
  if (s == "t") return t(spec);
  if (s[0] == '(') {
    // "(c0)+(c1)t"
    auto close0 = s.find(')');
    if (close0 == std::string::npos) throw error("bad scalar literal: '" + s + "'");
    auto open1 = s.find('(', close0);
    auto close1 = s.rfind(')');
    if (open1 == std::string::npos || close1 == std::string::npos ||
        close1 <= open1 || s.substr(close0 + 1, open1 - close0 - 1) != "+" ||
        s.substr(close1 + 1) != "t")
      throw error("bad scalar literal: '" + s + "'");
    Rat c0 = rat_from_string(s.substr(1, close0 - 1));
    Rat c1 = rat_from_string(s.substr(open1 + 1, close1 - open1 - 1));
    return FieldScalar(c0, c1, spec);
  }
  return FieldScalar(rat_from_string(s), spec);
}

FieldScalar sample_nonzero(uint64_t seed, const Int& bound, const FieldSpecPtr& spec) {
  if (bound < 2) throw error("sample_nonzero requires bound >= 2");
  uint64_t state = seed;
  // Rejection-free 128-bit-ish reduction: draw enough 64-bit words to
  // cover the bound, reduce mod bound, shift into [1, bound].
  Int acc = 0;
  size_t words = (mpz_sizeinbase(bound.get_mpz_t(), 2) + 63) / 64 + 1;
  for (size_t i = 0; i < words; ++i) {
    acc <<= 64;
    uint64_t w = splitmix64(state);
    Int word;
    mpz_import(word.get_mpz_t(), 1, 1, sizeof(w), 0, 0, &w);
    acc += word;
  }
  Int value = acc % bound + 1;
  return FieldScalar(Rat(value), spec);
}

}  // namespace unx

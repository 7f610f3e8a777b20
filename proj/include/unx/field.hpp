#ifndef UNX_FIELD_HPP
#define UNX_FIELD_HPP

#include <cstdint>
#include <memory>
#include <string>

#include "unx/rational.hpp"

namespace unx {

enum class FieldKind { rationals, quadratic };

/// The coefficient field: either Q itself or a quadratic extension
/// Q[t]/(t^2 - p*t - q).  Construction rejects reducible minimal
/// polynomials (p^2 + 4q a rational square).
class FieldSpec {
 public:
  FieldKind kind() const { return kind_; }
  const Rat& p() const { return p_; }
  const Rat& q() const { return q_; }
  bool is_rationals() const { return kind_ == FieldKind::rationals; }

  bool operator==(const FieldSpec& o) const {
    return kind_ == o.kind_ && p_ == o.p_ && q_ == o.q_;
  }
  bool operator!=(const FieldSpec& o) const { return !(*this == o); }

  std::string describe() const;

  /// Shared spec for Q; all rational scalars alias one instance.
  static std::shared_ptr<const FieldSpec> rationals();
  /// Q[t]/(t^2 - p*t - q); throws unx::error when reducible over Q.
  static std::shared_ptr<const FieldSpec> quadratic(const Rat& p, const Rat& q);

 private:
  FieldSpec(FieldKind kind, Rat p, Rat q)
      : kind_(kind), p_(std::move(p)), q_(std::move(q)) {}
  FieldKind kind_;
  Rat p_, q_;
};

using FieldSpecPtr = std::shared_ptr<const FieldSpec>;

/// An element c0 + c1*t of the field (c1 identically 0 over Q).
/// Values are immutable and safe to share across threads.
class FieldScalar {
 public:
  FieldScalar() : c0_(0), c1_(0), spec_(FieldSpec::rationals()) {}
  explicit FieldScalar(FieldSpecPtr spec) : c0_(0), c1_(0), spec_(std::move(spec)) {}
  FieldScalar(Rat c0, FieldSpecPtr spec)
      : FieldScalar(std::move(c0), Rat(0), std::move(spec)) {}
  FieldScalar(Rat c0, Rat c1, FieldSpecPtr spec);

  static FieldScalar zero(const FieldSpecPtr& spec) { return FieldScalar(spec); }
  static FieldScalar one(const FieldSpecPtr& spec) { return FieldScalar(Rat(1), spec); }
  /// The extension generator t; throws over Q.
  static FieldScalar t(const FieldSpecPtr& spec);

  const Rat& c0() const { return c0_; }
  const Rat& c1() const { return c1_; }
  const FieldSpecPtr& spec() const { return spec_; }

  bool is_zero() const { return c0_ == 0 && c1_ == 0; }
  bool is_one() const { return c0_ == 1 && c1_ == 0; }
  bool is_rational_value() const { return c1_ == 0; }

  FieldScalar operator-() const {
    return FieldScalar(canonical_tag{}, -c0_, -c1_, spec_);
  }
  FieldScalar operator+(const FieldScalar& o) const;
  FieldScalar operator-(const FieldScalar& o) const;
  FieldScalar operator*(const FieldScalar& o) const;
  FieldScalar& operator+=(const FieldScalar& o) { return *this = *this + o; }
  FieldScalar& operator-=(const FieldScalar& o) { return *this = *this - o; }
  FieldScalar& operator*=(const FieldScalar& o) { return *this = *this * o; }

  /// Multiplicative inverse via the conjugate/norm; throws on zero.
  FieldScalar inv() const;
  FieldScalar operator/(const FieldScalar& o) const { return *this * o.inv(); }

  bool operator==(const FieldScalar& o) const {
    return c0_ == o.c0_ && c1_ == o.c1_ && same_field(o);
  }
  bool operator!=(const FieldScalar& o) const { return !(*this == o); }

  bool same_field(const FieldScalar& o) const {
    return spec_ == o.spec_ || *spec_ == *o.spec_;
  }

  /// "num/den" over Q; "(c0)+(c1)t" with nonzero c1 over extensions.
  std::string to_string() const;
  static FieldScalar from_string(const std::string& s, const FieldSpecPtr& spec);

 private:
  struct canonical_tag {};
  // fast path for arithmetic results, which GMP already canonicalizes
  FieldScalar(canonical_tag, Rat c0, Rat c1, FieldSpecPtr spec)
      : c0_(std::move(c0)), c1_(std::move(c1)), spec_(std::move(spec)) {}
  void require_same_field(const FieldScalar& o, const char* op) const;
  Rat c0_, c1_;
  FieldSpecPtr spec_;
};

/// Deterministic pseudo-random integer-valued scalar in [1, bound],
/// rational-valued even over extensions so specialized matrices stay
/// cheap.  Same (seed, bound) always yields the same value.
FieldScalar sample_nonzero(uint64_t seed, const Int& bound, const FieldSpecPtr& spec);

}  // namespace unx

#endif

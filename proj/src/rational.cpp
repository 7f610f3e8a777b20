#include "unx/rational.hpp"

namespace unx {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw error("empty rational literal");
  // mpq_class(str) aborts on garbage, so validate with mpq_set_str first.
  mpq_t tmp;
  mpq_init(tmp);
  if (mpq_set_str(tmp, s.c_str(), 10) != 0) {
    mpq_clear(tmp);
    throw error("invalid rational literal: '" + s + "'");
  }
  if (mpz_sgn(mpq_denref(tmp)) == 0) {
    mpq_clear(tmp);
    throw division_by_zero_error("zero denominator in '" + s + "'");
  }
  mpq_canonicalize(tmp);
  Rat r(tmp);
  mpq_clear(tmp);
  return r;
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

bool rat_is_square(const Rat& r) {
  if (sgn(r) < 0) return false;
  return mpz_perfect_square_p(r.get_num().get_mpz_t()) &&
         mpz_perfect_square_p(r.get_den().get_mpz_t());
}

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace unx

#include "orbicensus/rational.hpp"

#include "orbicensus/error.hpp"

namespace orbi {

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::Precondition, "rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.value_ == 0) throw Error(ErrorCode::Precondition, "division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::parse(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw Error(ErrorCode::Syntax, "not a rational: '" + text + "'");
  if (q.get_den() == 0) throw Error(ErrorCode::Syntax, "zero denominator: '" + text + "'");
  return Rational(q);
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::optional<std::int64_t> to_int64(const Integer& z) {
  if (!z.fits_slong_p()) return std::nullopt;
  return static_cast<std::int64_t>(z.get_si());
}

Integer binomial(std::int64_t top, std::int64_t k) {
  if (k < 0) return 0;
  if (top >= 0) {
    if (k > top) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(k));
    return r;
  }
  // C(-a, k) = (-1)^k C(a+k-1, k)
  Integer r = binomial(-top + k - 1, k);
  return (k % 2 == 0) ? r : Integer(-r);
}

Integer ipow(const Integer& base, unsigned exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

}  // namespace orbi

#include "abshift/real.hpp"

#include <algorithm>
#include <string>

#include "abshift/error.hpp"

namespace abshift {
namespace {

mpfr_prec_t clamp_bits(long bits) {
  return static_cast<mpfr_prec_t>(std::clamp<long>(bits, MPFR_PREC_MIN, MPFR_PREC_MAX));
}

long joint(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

std::partial_ordering from_cmp(int c) {
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

}  // namespace

Real::Real(long bits) {
  mpfr_init2(v_, clamp_bits(bits));
  mpfr_set_zero(v_, 1);
}

Real::Real(long value, long bits) {
  mpfr_init2(v_, clamp_bits(bits));
  mpfr_set_si(v_, value, MPFR_RNDN);
}

Real::Real(double value, long bits) {
  mpfr_init2(v_, clamp_bits(bits));
  mpfr_set_d(v_, value, MPFR_RNDN);
}

Real Real::parse(std::string_view text, long bits) {
  Real r(bits);
  std::string s(text);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(r.v_, s.c_str(), &end, 0, MPFR_RNDN);
  if (end == nullptr || end == s.c_str() || *end != '\0' || !r.is_finite()) {
    throw Error(ErrorKind::Domain, "not a real literal: '" + s + "'");
  }
  return r;
}

Real Real::ratio(long p, long q, long bits) {
  if (q == 0) throw Error(ErrorKind::Domain, "zero denominator");
  Real r(bits);
  mpq_t t;
  mpq_init(t);
  mpq_set_si(t, p, 1);
  mpz_set_si(mpq_denref(t), q);
  mpq_canonicalize(t);
  mpfr_set_q(r.v_, t, MPFR_RNDN);
  mpq_clear(t);
  return r;
}

Real Real::pow2(long exponent, long bits) {
  Real r(1L, bits);
  mpfr_mul_2si(r.v_, r.v_, exponent, MPFR_RNDN);
  return r;
}

Real::Real(const Real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::with_precision(long bits) const {
  Real r(bits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

std::string Real::to_decimal(int digits) const {
  if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string Real::to_hex() const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%Ra", v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

#define ABSHIFT_COMPOUND(op, fn)                                     \
  Real& Real::operator op(const Real& o) {                           \
    if (o.precision() > precision()) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN); \
    fn(v_, v_, o.v_, MPFR_RNDN);                                     \
    return *this;                                                    \
  }
ABSHIFT_COMPOUND(+=, mpfr_add)
ABSHIFT_COMPOUND(-=, mpfr_sub)
ABSHIFT_COMPOUND(*=, mpfr_mul)
ABSHIFT_COMPOUND(/=, mpfr_div)
#undef ABSHIFT_COMPOUND

Real& Real::operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
Real& Real::operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
Real& Real::operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
Real& Real::operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

Real operator-(const Real& a) {
  Real r(a.precision());
  mpfr_neg(r.v_, a.v_, MPFR_RNDN);
  return r;
}

#define ABSHIFT_BINARY(op, fn)                     \
  Real operator op(const Real& a, const Real& b) { \
    Real r(joint(a, b));                           \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);               \
    return r;                                      \
  }
ABSHIFT_BINARY(+, mpfr_add)
ABSHIFT_BINARY(-, mpfr_sub)
ABSHIFT_BINARY(*, mpfr_mul)
ABSHIFT_BINARY(/, mpfr_div)
#undef ABSHIFT_BINARY

Real operator+(const Real& a, long b) { Real r(a.precision()); mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
Real operator-(const Real& a, long b) { Real r(a.precision()); mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
Real operator*(const Real& a, long b) { Real r(a.precision()); mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
Real operator/(const Real& a, long b) { Real r(a.precision()); mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
Real operator+(long a, const Real& b) { return b + a; }
Real operator-(long a, const Real& b) { Real r(b.precision()); mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN); return r; }
Real operator*(long a, const Real& b) { return b * a; }
Real operator/(long a, const Real& b) { Real r(b.precision()); mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN); return r; }

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  return from_cmp(mpfr_cmp(a.v_, b.v_));
}

std::partial_ordering operator<=>(const Real& a, long b) {
  if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
  return from_cmp(mpfr_cmp_si(a.v_, b));
}

#define ABSHIFT_UNARY(name, call)        \
  Real name(const Real& a) {             \
    Real r(a.precision());               \
    call;                                \
    return r;                            \
  }
ABSHIFT_UNARY(abs, mpfr_abs(r.v_, a.v_, MPFR_RNDN))
ABSHIFT_UNARY(floor, mpfr_floor(r.v_, a.v_))
ABSHIFT_UNARY(ceil, mpfr_ceil(r.v_, a.v_))
ABSHIFT_UNARY(round, mpfr_round(r.v_, a.v_))
ABSHIFT_UNARY(sqrt, mpfr_sqrt(r.v_, a.v_, MPFR_RNDN))
ABSHIFT_UNARY(log, mpfr_log(r.v_, a.v_, MPFR_RNDN))
ABSHIFT_UNARY(exp, mpfr_exp(r.v_, a.v_, MPFR_RNDN))
#undef ABSHIFT_UNARY

Real pow(const Real& base, long exponent) {
  Real r(base.precision());
  mpfr_pow_si(r.v_, base.v_, exponent, MPFR_RNDN);
  return r;
}

Real pow(const Real& base, const Real& exponent) {
  Real r(joint(base, exponent));
  mpfr_pow(r.v_, base.v_, exponent.v_, MPFR_RNDN);
  return r;
}

Real ldexp(const Real& a, long e) {
  Real r(a.precision());
  mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
  return r;
}

}  // namespace abshift

#pragma once

// Owning MPFR value with a per-value precision.
//
// Binary operations round to the larger of the two operand precisions, so a
// computation started at some precision stays there without any global
// default. Mixed operations with integers are exact in the integer operand.

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace abshift {

class Real {
 public:
  static constexpr long kDefaultBits = 256;

  explicit Real(long bits = kDefaultBits);
  Real(long value, long bits);
  Real(double value, long bits);

  // Decimal or hex-float literal ("0.1", "-3/7" is not accepted).
  static Real parse(std::string_view text, long bits);
  // p/q rounded once to the target precision.
  static Real ratio(long p, long q, long bits);
  static Real pow2(long exponent, long bits);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }
  // Copy rounded (or widened exactly) to `bits`.
  Real with_precision(long bits) const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long_floor() const { return mpfr_get_si(v_, MPFR_RNDD); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  // `digits` significant decimal digits in scientific notation.
  std::string to_decimal(int digits) const;
  // Exact hexadecimal float, e.g. "0x1.34p+2".
  std::string to_hex() const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator+=(long o);
  Real& operator-=(long o);
  Real& operator*=(long o);
  Real& operator/=(long o);

  friend Real operator-(const Real& a);
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator+(const Real& a, long b);
  friend Real operator-(const Real& a, long b);
  friend Real operator*(const Real& a, long b);
  friend Real operator/(const Real& a, long b);
  friend Real operator+(long a, const Real& b);
  friend Real operator-(long a, const Real& b);
  friend Real operator*(long a, const Real& b);
  friend Real operator/(long a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b);

  friend Real abs(const Real& a);
  friend Real floor(const Real& a);
  friend Real ceil(const Real& a);
  friend Real round(const Real& a);
  friend Real sqrt(const Real& a);
  friend Real log(const Real& a);
  friend Real exp(const Real& a);
  friend Real pow(const Real& base, long exponent);
  friend Real pow(const Real& base, const Real& exponent);
  // a * 2^e, exact.
  friend Real ldexp(const Real& a, long e);
  friend Real min(const Real& a, const Real& b) { return a < b ? a : b; }
  friend Real max(const Real& a, const Real& b) { return a < b ? b : a; }

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace abshift

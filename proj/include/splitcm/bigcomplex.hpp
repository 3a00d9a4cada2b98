#pragma once

#include <mpfr.h>

#include <complex>
#include <cstdint>
#include <string>

namespace splitcm {

/// Bits needed to carry `digits` significant decimal digits.
mpfr_prec_t digits_to_bits(int digits);
int bits_to_digits(mpfr_prec_t bits);

/// Arbitrary-precision real. Owns one mpfr_t; binary operations produce a
/// result at the larger of the operand precisions, rounded to nearest.
class Real {
 public:
  explicit Real(mpfr_prec_t bits = 64);
  Real(long value, mpfr_prec_t bits);
  Real(double value, mpfr_prec_t bits);
  Real(const std::string& decimal, mpfr_prec_t bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  Real with_precision(mpfr_prec_t bits) const;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  static Real pi(mpfr_prec_t bits);

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(long k);
  Real& operator/=(long k);

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator*(Real a, long k) { return a *= k; }
  friend Real operator*(long k, Real a) { return a *= k; }
  friend Real operator/(Real a, long k) { return a /= k; }
  Real operator-() const;

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int compare(const Real& o) const { return mpfr_cmp(v_, o.v_); }
  friend bool operator<(const Real& a, const Real& b) { return a.compare(b) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return a.compare(b) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return a.compare(b) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return a.compare(b) >= 0; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Nearest integer; throws ResourceError if it does not fit in 64 bits.
  std::int64_t round_to_i64() const;
  /// Decimal scientific notation with `digits` significant digits.
  std::string to_string(int digits) const;
  /// log10(|x|), -infinity for zero.
  double log10_abs() const;

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, const Real& y);

/// Arbitrary-precision complex number tagged with the number of decimal
/// digits the value is meant to carry.
class BigComplex {
 public:
  BigComplex() : re_(64), im_(64), digits_(15) {}
  BigComplex(Real re, Real im, int digits);
  BigComplex(long re, int digits);
  static BigComplex from_string(const std::string& re, const std::string& im, int digits);

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  int digits() const { return digits_; }
  mpfr_prec_t precision() const { return re_.precision(); }

  /// Copy rounded to a (usually smaller) number of digits.
  BigComplex rounded(int digits) const;
  BigComplex with_digits(int digits) const;

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);
  BigComplex& operator*=(const Real& r);
  BigComplex& operator*=(long k);

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  friend BigComplex operator*(BigComplex a, const Real& r) { return a *= r; }
  friend BigComplex operator*(BigComplex a, long k) { return a *= k; }
  BigComplex operator-() const;

  BigComplex conj() const;
  Real norm() const;  // |z|^2
  Real abs() const;
  Real arg() const;

  /// |this - other| < 10^(-exponent)
  bool near(const BigComplex& other, int exponent) const;
  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
  std::string to_string() const;

 private:
  Real re_;
  Real im_;
  int digits_;
};

BigComplex exp(const BigComplex& z);
/// exp(2*pi*i*x)
BigComplex exp_2pi_i(const Real& x);
/// e_n(k) = exp(2*pi*i*k/n) for integers.
BigComplex root_of_unity(std::int64_t k, std::int64_t n, int digits);
BigComplex sqrt(const BigComplex& z);  // principal branch

}  // namespace splitcm

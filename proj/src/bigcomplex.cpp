#include "splitcm/bigcomplex.hpp"

#include "splitcm/arith.hpp"
#include "splitcm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace splitcm {

mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(std::max(digits, 1) * 3.3219280948873623)) + 8;
}

int bits_to_digits(mpfr_prec_t bits) {
  return static_cast<int>(std::floor(static_cast<double>(bits - 8) / 3.3219280948873623));
}

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(long value, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_si(v_, value, MPFR_RNDN);
}

Real::Real(double value, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, value, MPFR_RNDN);
}

Real::Real(const std::string& decimal, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0 && !mpfr_number_p(v_)) {
    mpfr_clear(v_);
    throw InputError("not a decimal number: '" + decimal + "'");
  }
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::with_precision(mpfr_prec_t bits) const {
  Real r(bits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

Real Real::pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

namespace {

// Widen `a` in place so it can absorb an operand of precision `bits`.
void widen(mpfr_ptr a, mpfr_prec_t bits) {
  if (mpfr_get_prec(a) < bits) mpfr_prec_round(a, bits, MPFR_RNDN);
}

}  // namespace

Real& Real::operator+=(const Real& o) {
  widen(v_, o.precision());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  widen(v_, o.precision());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  widen(v_, o.precision());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  widen(v_, o.precision());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(long k) {
  mpfr_mul_si(v_, v_, k, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(long k) {
  mpfr_div_si(v_, v_, k, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

std::int64_t Real::round_to_i64() const {
  if (!mpfr_number_p(v_)) throw ResourceError("cannot round a non-finite value");
  Real r(precision());
  mpfr_round(r.v_, v_);
  if (!mpfr_fits_slong_p(r.v_, MPFR_RNDN)) throw ResourceError("value too large to round to a 64-bit integer");
  return mpfr_get_si(r.v_, MPFR_RNDN);
}

std::string Real::to_string(int digits) const {
  if (mpfr_zero_p(v_)) return "0";
  std::unique_ptr<char, void (*)(char*)> buf(nullptr, [](char* p) { mpfr_free_str(p); });
  mpfr_exp_t exponent = 0;
  buf.reset(mpfr_get_str(nullptr, &exponent, 10, static_cast<std::size_t>(std::max(digits, 1)), v_, MPFR_RNDN));
  std::string mant(buf.get());
  std::string sign;
  if (!mant.empty() && mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  // mantissa m_1 m_2 ... with value 0.m_1 m_2... * 10^exponent
  std::string out = sign + mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  out += "e" + std::to_string(static_cast<long>(exponent) - 1);
  return out;
}

double Real::log10_abs() const {
  if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log10(std::fabs(m)) + static_cast<double>(e) * 0.30102999566398120;
}

Real abs(const Real& x) {
  Real r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  Real r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real exp(const Real& x) {
  Real r(x.precision());
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real log(const Real& x) {
  Real r(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real sin(const Real& x) {
  Real r(x.precision());
  mpfr_sin(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real cos(const Real& x) {
  Real r(x.precision());
  mpfr_cos(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------------------

BigComplex::BigComplex(Real re, Real im, int digits) : re_(std::move(re)), im_(std::move(im)), digits_(digits) {
  const auto bits = std::max(re_.precision(), im_.precision());
  if (re_.precision() < bits) re_ = re_.with_precision(bits);
  if (im_.precision() < bits) im_ = im_.with_precision(bits);
}

BigComplex::BigComplex(long re, int digits)
    : re_(re, digits_to_bits(digits)), im_(0L, digits_to_bits(digits)), digits_(digits) {}

BigComplex BigComplex::from_string(const std::string& re, const std::string& im, int digits) {
  const auto bits = digits_to_bits(digits);
  return {Real(re, bits), Real(im, bits), digits};
}

BigComplex BigComplex::rounded(int digits) const {
  const auto bits = digits_to_bits(digits);
  return {re_.with_precision(bits), im_.with_precision(bits), digits};
}

BigComplex BigComplex::with_digits(int digits) const {
  BigComplex r = *this;
  r.digits_ = digits;
  return r;
}

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  digits_ = std::min(digits_, o.digits_);
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  digits_ = std::min(digits_, o.digits_);
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  Real re = re_ * o.re_ - im_ * o.im_;
  Real im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  digits_ = std::min(digits_, o.digits_);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& o) {
  Real den = o.norm();
  if (den.is_zero()) throw InputError("complex division by zero");
  Real re = (re_ * o.re_ + im_ * o.im_) / den;
  Real im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  digits_ = std::min(digits_, o.digits_);
  return *this;
}

BigComplex& BigComplex::operator*=(const Real& r) {
  re_ *= r;
  im_ *= r;
  return *this;
}

BigComplex& BigComplex::operator*=(long k) {
  re_ *= k;
  im_ *= k;
  return *this;
}

BigComplex BigComplex::operator-() const { return {-re_, -im_, digits_}; }

BigComplex BigComplex::conj() const { return {re_, -im_, digits_}; }

Real BigComplex::norm() const { return re_ * re_ + im_ * im_; }

Real BigComplex::abs() const { return splitcm::sqrt(norm()); }

Real BigComplex::arg() const { return atan2(im_, re_); }

bool BigComplex::near(const BigComplex& other, int exponent) const {
  Real d = (*this - other).abs();
  if (d.is_zero()) return true;
  return d.log10_abs() < -static_cast<double>(exponent);
}

std::string BigComplex::to_string() const {
  return re_.to_string(digits_) + (im_.sign() < 0 ? " - " : " + ") + splitcm::abs(im_).to_string(digits_) + "i";
}

BigComplex exp(const BigComplex& z) {
  Real m = exp(z.re());
  Real s(z.precision()), c(z.precision());
  mpfr_sin_cos(s.get(), c.get(), z.im().get(), MPFR_RNDN);
  return {m * c, m * s, z.digits()};
}

BigComplex exp_2pi_i(const Real& x) {
  Real t = Real::pi(x.precision()) * 2L * x;
  Real s(x.precision()), c(x.precision());
  mpfr_sin_cos(s.get(), c.get(), t.get(), MPFR_RNDN);
  return {std::move(c), std::move(s), bits_to_digits(x.precision())};
}

BigComplex root_of_unity(std::int64_t k, std::int64_t n, int digits) {
  if (n <= 0) throw InputError("root_of_unity: order must be positive");
  const auto bits = digits_to_bits(digits);
  Real x(mod(k, n), bits);
  x /= static_cast<long>(n);
  return exp_2pi_i(x).with_digits(digits);
}

BigComplex sqrt(const BigComplex& z) {
  // principal branch: sqrt((|z|+re)/2) + i*sign(im)*sqrt((|z|-re)/2)
  Real r = z.abs();
  Real a = sqrt((r + z.re()) / 2L);
  Real b = sqrt((r - z.re()) / 2L);
  if (z.im().sign() < 0) b = -b;
  return {std::move(a), std::move(b), z.digits()};
}

}  // namespace splitcm

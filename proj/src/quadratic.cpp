#include "splitcm/quadratic.hpp"

#include "splitcm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace splitcm {

void validate_discriminant(std::int64_t d) {
  if (d >= 0) throw InputError("discriminant must be negative, got " + std::to_string(d));
  if (mod(d, 4) != 0 && mod(d, 4) != 1)
    throw InputError("discriminant must be 0 or 1 mod 4, got " + std::to_string(d));
  if (d == -3 || d == -4) throw InputError("discriminants -3 and -4 are not supported");
}

std::int64_t QuadForm::discriminant() const {
  return checked_add(checked_mul(b, b), -checked_mul(4, checked_mul(a, c)));
}

bool QuadForm::is_primitive() const { return gcd(gcd(a, b), c) == 1; }

bool QuadForm::is_reduced() const {
  if (!(std::abs(b) <= a && a <= c)) return false;
  if ((std::abs(b) == a || a == c) && b < 0) return false;
  return true;
}

std::int64_t QuadForm::evaluate(std::int64_t x, std::int64_t y) const {
  return checked_add(checked_add(checked_mul(a, checked_mul(x, x)), checked_mul(b, checked_mul(x, y))),
                     checked_mul(c, checked_mul(y, y)));
}

std::string QuadForm::to_string() const {
  std::ostringstream os;
  os << '[' << a << ',' << b << ',' << c << ']';
  return os.str();
}

QuadForm transform(const QuadForm& f, const Mat2& m) {
  const auto [p, q, r, s] = m;
  QuadForm g;
  g.a = f.evaluate(p, r);
  g.c = f.evaluate(q, s);
  g.b = checked_add(checked_add(checked_mul(2 * f.a, checked_mul(p, q)), checked_mul(f.b, p * s + q * r)),
                    checked_mul(2 * f.c, checked_mul(r, s)));
  return g;
}

std::vector<QuadForm> reduced_forms(std::int64_t d) {
  validate_discriminant(d);
  std::vector<QuadForm> out;
  for (std::int64_t a = 1; 3 * a * a <= -d; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      const std::int64_t num = b * b - d;
      if (num % (4 * a) != 0) continue;
      QuadForm f{a, b, num / (4 * a)};
      if (f.is_reduced() && f.is_primitive()) out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t class_number(std::int64_t d) { return static_cast<std::int64_t>(reduced_forms(d).size()); }

namespace {

Mat2 compose(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

// floor division for b / (2a) style rounding
std::int64_t floor_div(std::int64_t x, std::int64_t y) {
  std::int64_t q = x / y;
  if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
  return q;
}

}  // namespace

Reduction reduce_form_with_transform(const QuadForm& f) {
  if (f.a <= 0 || f.discriminant() >= 0)
    throw InputError("reduce_form needs a positive definite form, got " + f.to_string());
  QuadForm g = f;
  Mat2 m{1, 0, 0, 1};
  for (;;) {
    // translate x -> x + k y so that b lands in (-a, a]
    const std::int64_t k = floor_div(g.a - g.b, 2 * g.a);
    if (k != 0) {
      const Mat2 t{1, k, 0, 1};
      g = transform(g, t);
      m = compose(m, t);
    }
    if (g.a > g.c || (g.a == g.c && g.b < 0)) {
      const Mat2 s{0, -1, 1, 0};
      g = transform(g, s);
      m = compose(m, s);
      continue;
    }
    break;
  }
  return {g, m};
}

QuadForm reduce_form(const QuadForm& f) { return reduce_form_with_transform(f).form; }

QuadIdeal::QuadIdeal(std::int64_t a, std::int64_t b, std::int64_t d) : a_(a), b_(b), d_(d) {
  if (a <= 0) throw InputError("ideal norm must be positive");
  b_ = mod(b + a - 1, 2 * a) - a + 1;  // (-a, a]
  if (mod(checked_mul(b_, b_) - d, 4 * a) != 0)
    throw InputError("b^2 != d mod 4a for ideal (" + std::to_string(a) + ", " + std::to_string(b) + ")");
}

std::string QuadIdeal::to_string() const {
  return "(" + std::to_string(a_) + ", " + std::to_string(b_) + ")";
}

QuadIdeal unit_ideal(std::int64_t d) { return {1, mod(d, 2), d}; }

QuadIdeal ideal_of_form(const QuadForm& f) {
  if (f.a <= 0) throw InputError("form must be positive definite: " + f.to_string());
  return {f.a, f.b, f.discriminant()};
}

QuadForm form_of_ideal(const QuadIdeal& I) {
  return {I.a(), I.b(), (I.b() * I.b() - I.d()) / (4 * I.a())};
}

QuadIdeal conjugate(const QuadIdeal& I) { return {I.a(), -I.b(), I.d()}; }

namespace {

// (p + q sqrt d) / 2
struct Half {
  Int p, q;
};

Half half_mul(const Half& x, const Half& y, std::int64_t d) {
  return {(x.p * y.p + x.q * y.q * d) / 2, (x.p * y.q + x.q * y.p) / 2};
}

}  // namespace

IdealProduct ideal_product(const QuadIdeal& x, const QuadIdeal& y) {
  if (x.d() != y.d()) throw InputError("ideal_product: discriminants differ");
  const std::int64_t d = x.d();
  const std::array<Half, 2> gx{Half{2 * Int(x.a()), 0}, Half{-Int(x.b()), 1}};
  const std::array<Half, 2> gy{Half{2 * Int(y.a()), 0}, Half{-Int(y.b()), 1}};
  std::vector<Half> gens;
  for (const auto& s : gx)
    for (const auto& t : gy) gens.push_back(half_mul(s, t, d));

  // Hermite form {(A, 0), (B, C)}: C = gcd of q-parts, A generates the q = 0 part.
  Int A = 0;
  Half pivot{0, 0};
  for (const auto& g : gens) {
    Half cur = g;
    while (cur.q != 0) {
      const Int f = pivot.q / cur.q;
      Half r{pivot.p - f * cur.p, pivot.q - f * cur.q};
      pivot = cur;
      cur = r;
    }
    A = boost::multiprecision::gcd(A, cur.p);
  }
  if (pivot.q < 0) pivot = {-pivot.p, -pivot.q};
  const Int C = pivot.q;
  A = abs(A);
  if (C == 0 || A == 0 || A % (2 * C) != 0 || pivot.p % C != 0)
    throw InternalError("ideal_product: unexpected module shape");
  const Int content = C;
  const Int a = A / (2 * C);
  const Int b = -pivot.p / C;
  const std::int64_t a64 = to_i64(a);
  const std::int64_t b64 = to_i64(b % (2 * a));
  return {to_i64(content), QuadIdeal(a64, b64, d)};
}

QuadIdeal prime_ideal_above(std::int64_t D, std::int64_t N) {
  validate_discriminant(D);
  const std::string msg = "N must satisfy N ≡ 3 mod 4 and split in O_K";
  if (!is_prime(N)) throw InputError(msg + " (N = " + std::to_string(N) + " is not prime)");
  if (kronecker(D, N) != 1) throw SplitError(msg + " (N = " + std::to_string(N) + " does not split)");
  if (mod(N, 4) != 3) throw InputError(msg + " (N = " + std::to_string(N) + ")");
  const auto r = sqrt_mod_prime(mod(D, N), N);
  if (!r) throw InternalError("no square root although N splits");
  std::int64_t best = -1;
  for (std::int64_t cand : {*r, N - *r, *r + N, 2 * N - *r}) {
    if (cand <= 0 || mod(cand - D, 2) != 0) continue;
    if (mod(checked_mul(cand, cand) - D, 4 * N) != 0) continue;
    if (best < 0 || cand < best) best = cand;
  }
  if (best < 0) throw InternalError("no root of b^2 = D mod 4N");
  return {N, best, D};
}

bool is_admissible_level(std::int64_t D, std::int64_t N) {
  return N > 3 && is_prime(N) && mod(N, 4) == 3 && kronecker(D, N) == 1;
}

std::vector<std::int64_t> admissible_levels(std::int64_t D, std::int64_t nmax) {
  std::vector<std::int64_t> out;
  for (std::int64_t N = 7; N <= nmax; N += 4)
    if (is_admissible_level(D, N)) out.push_back(N);
  return out;
}

bool HeegnerPoint::is_valid() const {
  return a1 > 0 && N > 0 && mod(checked_mul(b1, b1) - D, checked_mul(4, checked_mul(a1, N))) == 0;
}

std::int64_t HeegnerPoint::root() const { return mod(b1, 2 * N); }

BigComplex HeegnerPoint::value(int digits) const {
  const auto bits = digits_to_bits(digits);
  const long den = static_cast<long>(checked_mul(2 * a1, N));
  Real re(static_cast<long>(-b1), bits);
  re /= den;
  Real im = sqrt(Real(static_cast<long>(-D), bits));
  im /= den;
  return {std::move(re), std::move(im), digits};
}

double HeegnerPoint::imag() const { return std::sqrt(static_cast<double>(-D)) / (2.0 * a1 * N); }

}  // namespace splitcm

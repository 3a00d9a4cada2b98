#include "splitcm/hecke.hpp"

#include "splitcm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

namespace splitcm {

std::string to_string(EtaConvention c) { return c == EtaConvention::Ideal ? "ideal" : "squared"; }

std::string to_string(PointConvention c) { return c == PointConvention::Direct ? "direct" : "conjugate"; }

EtaConvention parse_eta_convention(const std::string& s) {
  if (s == "ideal") return EtaConvention::Ideal;
  if (s == "squared") return EtaConvention::Squared;
  throw InputError("unknown eta convention '" + s + "' (expected ideal or squared)");
}

HeckeContext HeckeContext::make(std::int64_t D, std::int64_t N, int digits, std::optional<std::int64_t> b1) {
  validate_discriminant(D);
  if (mod(D, 4) != 1 || !is_prime(-D))
    throw InputError("D must be minus a prime, D = 1 mod 4, got " + std::to_string(D));
  if (digits < 10 || digits > 5000) throw InputError("precision must be between 10 and 5000 digits");
  const QuadIdeal prime = prime_ideal_above(D, N);
  if (N <= 3) throw InputError("N must be larger than 3");
  HeckeContext ctx;
  ctx.D = D;
  ctx.N = N;
  ctx.digits = digits;
  ctx.classRep = unit_ideal(D);
  ctx.b1 = prime.b();
  if (b1) {
    if (mod(*b1, 2) != 1 || mod(checked_mul(*b1, *b1) - D, 4 * N) != 0)
      throw InputError("b1 = " + std::to_string(*b1) + " is not an odd root of b^2 = D mod 4N");
    ctx.b1 = *b1;
  }
  return ctx;
}

std::int64_t HeckeContext::point_root() const { return point == PointConvention::Direct ? b1 : -b1; }

std::int64_t HeckeContext::conductor_root() const { return mod(-point_root(), N); }

QuadIdeal HeckeContext::point_prime() const { return {N, point_root(), D}; }

std::int64_t HeckeContext::class_number_D() const { return class_number(D); }

std::string HeckeContext::key() const {
  return "D=" + std::to_string(D) + ";N=" + std::to_string(N) + ";b1=" + std::to_string(b1) +
         ";bOK=" + std::to_string(bOK) + ";rep=" + classRep.to_string() + ";prec=" + std::to_string(digits) +
         ";eta=" + to_string(eta) + ";point=" + to_string(point);
}

bool KElem::in_ok() const {
  const Rat n = 2 * y;
  const Rat m = x + y;
  return denominator(n) == 1 && denominator(m) == 1;
}

Rat KElem::norm(std::int64_t D) const { return x * x - Rat(D) * y * y; }

BigComplex KElem::embed(std::int64_t D, int digits) const {
  const auto bits = digits_to_bits(digits);
  auto to_real = [&](const Rat& r) {
    Real v(bits);
    mpfr_set_q(v.get(), r.backend().data(), MPFR_RNDN);
    return v;
  };
  Real re = to_real(x);
  Real im = to_real(y) * sqrt(Real(static_cast<long>(-D), bits));
  return {std::move(re), std::move(im), digits};
}

HeegnerPoint heegner_point(const HeckeContext& ctx, const QuadIdeal& a) {
  if (gcd(a.norm(), ctx.N) != 1)
    throw InputError("ideal norm " + std::to_string(a.norm()) + " is not coprime to N = " + std::to_string(ctx.N));
  const IdealProduct p = ideal_product(a, ctx.point_prime());
  if (p.content != 1 || p.primitive.a() % ctx.N != 0) throw InternalError("heegner_point: product is not primitive");
  return {p.primitive.a() / ctx.N, p.primitive.b(), ctx.D, ctx.N};
}

int chi(const HeckeContext& ctx, const KElem& alpha) {
  if (!alpha.in_ok()) throw InputError("chi: element is not in O_K");
  // 2*mu = 2x + 2y*s mod N
  const Int N = ctx.N;
  const Int tx = numerator(Rat(2 * alpha.x));
  const Int ty = numerator(Rat(2 * alpha.y));
  Int twice = (tx + ty * ctx.conductor_root()) % N;
  if (twice < 0) twice += N;
  const std::int64_t mu = mod(to_i64(twice) * inverse_mod(2, ctx.N), ctx.N);
  return jacobi(mu, ctx.N);
}

BigComplex psi_principal(const HeckeContext& ctx, const KElem& alpha) {
  if (alpha.x == 0 && alpha.y == 0) throw InputError("psi of the zero ideal");
  const int c = chi(ctx, alpha);
  BigComplex z = alpha.embed(ctx.D, ctx.digits);
  z *= static_cast<long>(c);
  return z;
}

std::optional<KElem> ideal_generator(const QuadIdeal& a) {
  const QuadForm g{a.a(), -a.b(), (a.b() * a.b() - a.d()) / (4 * a.a())};
  const Reduction red = reduce_form_with_transform(g);
  if (red.form.a != 1) return std::nullopt;
  const Int x = red.transform[0];
  const Int y = red.transform[2];
  return KElem{Rat(x * a.a()) - Rat(y * a.b(), 2), Rat(y, 2)};
}

std::optional<KElem> ideal_generator_search(const QuadIdeal& a, std::int64_t bOK) {
  const std::int64_t D = a.d();
  const std::int64_t na = a.norm();
  const auto nmax = static_cast<std::int64_t>(2.0 * std::sqrt(static_cast<double>(na) / -D)) + 1;
  const auto mmax = static_cast<std::int64_t>(std::sqrt(static_cast<double>(na))) + nmax + 1;
  for (std::int64_t n = -nmax; n <= nmax; ++n) {
    for (std::int64_t m = -mmax; m <= mmax; ++m) {
      // m + n(-bOK + sqrt D)/2
      KElem e{Rat(m) - Rat(n * bOK, 2), Rat(n, 2)};
      if (e.norm(D) != na) continue;
      // membership in a Z + ((-b + sqrt D)/2) Z
      const Rat t = 2 * e.y;
      const Rat s = (e.x + t * Rat(a.b(), 2)) / na;
      if (denominator(s) == 1) return e;
    }
  }
  return std::nullopt;
}

BigComplex psi_ideal(const HeckeContext& ctx, const QuadIdeal& a) {
  if (class_number(ctx.D) != 1)
    throw UnsupportedError("psi on non-principal ideals needs h(D) = 1; h(" + std::to_string(ctx.D) +
                           ") = " + std::to_string(class_number(ctx.D)));
  const auto gen = ideal_generator(a);
  if (!gen) throw InternalError("no generator found for " + a.to_string());
  return psi_principal(ctx, *gen);
}

std::complex<double> psi_ideal_double(const HeckeContext& ctx, std::int64_t content, const QuadIdeal& a) {
  const std::int64_t N = ctx.N;
  if (content % N == 0) return 0.0;
  const QuadForm g{a.a(), -a.b(), (a.b() * a.b() - a.d()) / (4 * a.a())};
  const Reduction red = reduce_form_with_transform(g);
  if (red.form.a != 1) throw UnsupportedError("psi_ideal_double: ideal is not principal");
  const std::int64_t p = red.transform[0];
  const std::int64_t r = red.transform[2];
  // 2 alpha = (2pa - rb) + r sqrt D
  const std::int64_t twoX = checked_add(checked_mul(2 * p, a.a()), -checked_mul(r, a.b()));
  const std::int64_t mu2 = mod(mod(twoX, N) + mod(r, N) * ctx.conductor_root(), N);
  const int c = jacobi(mu2 * ((N + 1) / 2) % N, N) * jacobi(content, N);
  const double sq = std::sqrt(static_cast<double>(-ctx.D));
  return static_cast<double>(c * content) * std::complex<double>(0.5 * twoX, 0.5 * r * sq);
}

namespace {

std::vector<std::int64_t> crt_merge(const std::vector<std::int64_t>& xs, std::int64_t m1,
                                    const std::vector<std::int64_t>& ys, std::int64_t m2) {
  std::vector<std::int64_t> out;
  const std::int64_t inv = inverse_mod(mod(m1, m2), m2);
  for (auto x : xs)
    for (auto y : ys) {
      const std::int64_t t = mod(checked_mul(mod(y - x, m2), inv), m2);
      out.push_back(x + m1 * t);
    }
  return out;
}

// Roots of b^2 = D mod p^e.
std::vector<std::int64_t> roots_prime_power(std::int64_t D, std::int64_t p, int e) {
  std::int64_t pe = 1;
  for (int i = 0; i < e; ++i) pe *= p;
  std::vector<std::int64_t> out;
  if (p == 2 || D % p == 0) {
    // lift one bit (or digit) at a time; the candidate set stays tiny
    std::vector<std::int64_t> cur{0};
    std::int64_t mk = 1;
    for (int k = 1; k <= e; ++k) {
      const std::int64_t next = mk * p;
      std::vector<std::int64_t> lifted;
      for (auto s : cur)
        for (std::int64_t j = 0; j < p; ++j) {
          const std::int64_t c = s + j * mk;
          if (mod(checked_mul(c, c) - D, next) == 0) lifted.push_back(c);
        }
      cur = std::move(lifted);
      mk = next;
      if (cur.empty()) break;
    }
    return cur;
  }
  const auto r0 = sqrt_mod_prime(mod(D, p), p);
  if (!r0) return out;
  std::int64_t r = *r0;
  std::int64_t mk = p;
  for (int k = 2; k <= e; ++k) {
    const std::int64_t next = mk * p;
    const std::int64_t f = mod(checked_mul(r, r) - D, next);
    r = mod(r - checked_mul(f, inverse_mod(mod(2 * r, next), next)) % next, next);
    mk = next;
  }
  out.push_back(r);
  if (mod(-r, pe) != r) out.push_back(mod(-r, pe));
  return out;
}

std::vector<std::int64_t> roots_from_factors(std::int64_t D, std::int64_t a,
                                             const std::vector<std::pair<std::int64_t, int>>& factors) {
  // modulus 4a = 2^(v+2) * odd part
  int v2 = 0;
  for (const auto& [p, e] : factors)
    if (p == 2) v2 = e;
  std::vector<std::int64_t> acc = roots_prime_power(D, 2, v2 + 2);
  std::int64_t m = std::int64_t{1} << (v2 + 2);
  for (const auto& [p, e] : factors) {
    if (p == 2 || acc.empty()) continue;
    auto rs = roots_prime_power(D, p, e);
    std::int64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    acc = crt_merge(acc, m, rs, pe);
    m *= pe;
  }
  std::set<std::int64_t> bs;
  for (auto b : acc) bs.insert(mod(b + a - 1, 2 * a) - a + 1);
  return {bs.begin(), bs.end()};
}

}  // namespace

std::vector<std::int64_t> primitive_ideal_roots(std::int64_t D, std::int64_t a) {
  validate_discriminant(D);
  if (a <= 0) throw InputError("norm must be positive");
  std::vector<std::pair<std::int64_t, int>> factors;
  std::int64_t n = a;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) factors.emplace_back(p, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  return roots_from_factors(D, a, factors);
}

void for_each_ideal(std::int64_t D, std::int64_t maxNorm,
                    const std::function<void(std::int64_t, const QuadIdeal&)>& fn) {
  validate_discriminant(D);
  if (maxNorm < 1) return;
  if (maxNorm > 400'000'000) throw ResourceError("ideal enumeration beyond norm 4e8 is not supported");
  std::vector<std::int32_t> spf(static_cast<std::size_t>(maxNorm) + 1, 0);
  for (std::int64_t i = 2; i <= maxNorm; ++i) {
    if (spf[i] != 0) continue;
    for (std::int64_t j = i; j <= maxNorm; j += i)
      if (spf[j] == 0) spf[j] = static_cast<std::int32_t>(i);
  }
  std::vector<std::pair<std::int64_t, int>> factors;
  for (std::int64_t a = 1; a <= maxNorm; ++a) {
    factors.clear();
    for (std::int64_t n = a; n > 1;) {
      const std::int64_t p = spf[n];
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      factors.emplace_back(p, e);
    }
    for (auto b : roots_from_factors(D, a, factors)) {
      const QuadIdeal I(a, b, D);
      for (std::int64_t m = 1; m * m * a <= maxNorm; ++m) fn(m, I);
    }
  }
}

std::vector<IdealEntry> enumerate_ideals(std::int64_t D, std::int64_t maxNorm) {
  std::vector<IdealEntry> out;
  for_each_ideal(D, maxNorm, [&](std::int64_t m, const QuadIdeal& I) { out.push_back({m, I}); });
  std::stable_sort(out.begin(), out.end(), [](const IdealEntry& x, const IdealEntry& y) { return x.norm() < y.norm(); });
  return out;
}

}  // namespace splitcm

#include "splitcm/theta.hpp"

#include "splitcm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

namespace splitcm {

namespace {

constexpr double kLn10 = 2.302585092994046;
constexpr std::int64_t kPointBudget = 50'000'000;

// log of an upper bound for sum_{k > T} (2 sqrt((k+shift)/lambda) + 1)^2 exp(-rate k)
double log_tail_bound(double T, double rate, double lambda, double shift) {
  auto logf = [&](double k) {
    const double s = 2.0 * std::sqrt((k + shift) / lambda) + 1.0;
    return 2.0 * std::log(s) - rate * k;
  };
  const double k0 = T + 1.0;
  // successive terms shrink at least by rho once k0 is past the polynomial bump
  const double rho = std::exp(-rate) * (1.0 + 1.0 / k0) * (1.0 + 1.0 / k0);
  if (rho >= 1.0) return std::numeric_limits<double>::infinity();
  return logf(k0) - std::log1p(-rho);
}

// smallest T with the tail below 10^-targetDigits
std::int64_t tail_cutoff(double rate, double lambda, double shift, int targetDigits) {
  const double goal = -targetDigits * kLn10;
  double lo = 0, hi = 1;
  while (log_tail_bound(hi, rate, lambda, shift) > goal) {
    hi *= 2;
    if (hi > 1e15) throw ResourceError("theta truncation does not converge");
  }
  while (hi - lo > 1) {
    const double mid = std::floor((lo + hi) / 2);
    if (log_tail_bound(mid, rate, lambda, shift) > goal)
      lo = mid;
    else
      hi = mid;
  }
  return static_cast<std::int64_t>(hi);
}

double min_eigenvalue(double a, double b, double c) {
  // of [[a, b], [b, c]]
  return 0.5 * (a + c - std::sqrt((a - c) * (a - c) + 4 * b * b));
}

BigComplex pow_int(const BigComplex& q, std::int64_t e) {
  BigComplex r(1L, q.digits());
  r = BigComplex(r.re().with_precision(q.precision()), r.im().with_precision(q.precision()), q.digits());
  BigComplex base = q;
  while (e > 0) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

BigComplex two_pi_i_times(const BigComplex& z) {
  // 2 pi i z
  const Real twoPi = Real::pi(z.precision()) * 2L;
  return {-(z.im() * twoPi), z.re() * twoPi, z.digits()};
}

void check_budget(std::int64_t points, const char* what) {
  if (points > kPointBudget)
    throw ResourceError(std::string(what) + ": needs about " + std::to_string(points) +
                        " lattice points, budget is " + std::to_string(kPointBudget));
}

}  // namespace

Sym2 SplitCMPoint::z(int digits) const {
  const BigComplex t = tau.value(digits);
  return {t * static_cast<long>(2 * Q.a), t * static_cast<long>(Q.b), t * static_cast<long>(2 * Q.c)};
}

int guard_digits(double imTau) { return 20 + static_cast<int>(std::ceil(std::log10(1.0 + 1.0 / imTau))); }

std::int64_t theta_truncation(const QuadForm& Q, double imTau, int digits) {
  if (imTau <= 0) throw InputError("theta needs Im(tau) > 0");
  if (Q.a <= 0 || Q.discriminant() >= 0) throw InputError("theta needs a positive definite form");
  const double lambda = min_eigenvalue(Q.a, 0.5 * Q.b, Q.c);
  return tail_cutoff(2 * M_PI * imTau, lambda, 0.0, digits + 10);
}

BigComplex theta_form_truncated(const QuadForm& Q, const BigComplex& tau, int digits, std::int64_t T) {
  if (tau.im().sign() <= 0) throw InputError("theta needs Im(tau) > 0");
  const double N = static_cast<double>(-Q.discriminant());
  const auto mMax = static_cast<std::int64_t>(std::sqrt(4.0 * Q.c * T / N)) + 1;
  check_budget(static_cast<std::int64_t>(2 * M_PI * T / std::sqrt(N)) + 2 * mMax, "theta_form");
  std::map<std::int64_t, std::int64_t> counts;
  for (std::int64_t m = -mMax; m <= mMax; ++m) {
    // c n^2 + b m n + a m^2 <= T
    const double disc = static_cast<double>(Q.b * m) * (Q.b * m) - 4.0 * Q.c * (Q.a * m * m - T);
    if (disc < 0) continue;
    const double r = std::sqrt(disc);
    const auto nLo = static_cast<std::int64_t>(std::floor((-Q.b * m - r) / (2.0 * Q.c))) - 1;
    const auto nHi = static_cast<std::int64_t>(std::ceil((-Q.b * m + r) / (2.0 * Q.c))) + 1;
    for (std::int64_t n = nLo; n <= nHi; ++n) {
      const std::int64_t v = Q.evaluate(m, n);
      if (v <= T) ++counts[v];
    }
  }
  const int work = digits + guard_digits(tau.im().to_double());
  const BigComplex t = tau.rounded(work);
  const BigComplex q = exp(two_pi_i_times(t));
  BigComplex sum(0L, work);
  sum = sum.rounded(work);
  BigComplex power = pow_int(q, 0);
  std::int64_t last = 0;
  std::map<std::int64_t, BigComplex> gapCache;
  for (const auto& [k, cnt] : counts) {
    const std::int64_t gap = k - last;
    if (gap > 0) {
      auto it = gapCache.find(gap);
      if (it == gapCache.end()) it = gapCache.emplace(gap, pow_int(q, gap)).first;
      power *= it->second;
      last = k;
    }
    sum += power * static_cast<long>(cnt);
  }
  return sum.rounded(work).with_digits(digits);
}

BigComplex theta_form(const QuadForm& Q, const BigComplex& tau, int digits) {
  const double y = tau.im().to_double();
  const std::int64_t T = theta_truncation(Q, y, digits + guard_digits(y));
  return theta_form_truncated(Q, tau, digits, T);
}

BigComplex theta_form(const QuadForm& Q, const HeegnerPoint& tau, int digits) {
  if (!tau.is_valid()) throw InputError("invalid Heegner point");
  const int work = digits + guard_digits(tau.imag());
  return theta_form(Q, tau.value(work), digits);
}

BigComplex symplectic_theta(const Sym2& z, int digits) {
  const double y11 = z[0].im().to_double(), y12 = z[1].im().to_double(), y22 = z[2].im().to_double();
  const double lambda = min_eigenvalue(y11, y12, y22);
  if (!(lambda > 0) || y11 <= 0) throw InputError("symplectic theta needs Im(z) positive definite");
  const int work = digits + guard_digits(lambda);
  // terms are exp(-pi x^T Y x); shells of unit width in x^T Y x
  const std::int64_t T = tail_cutoff(M_PI, lambda, 1.0, work + 10);
  const double det = y11 * y22 - y12 * y12;
  const auto mMax = static_cast<std::int64_t>(std::sqrt(T * y22 / det)) + 1;
  const auto nMax = static_cast<std::int64_t>(std::sqrt(T * y11 / det)) + 1;
  check_budget((2 * mMax + 1) * (2 * nMax + 1), "symplectic_theta");

  std::vector<BigComplex> zz;
  for (const auto& e : z) zz.push_back(e.rounded(work));
  const Real pi = Real::pi(zz[0].precision());
  BigComplex sum(0L, work);
  sum = sum.rounded(work);
  for (std::int64_t m = -mMax; m <= mMax; ++m) {
    for (std::int64_t n = -nMax; n <= nMax; ++n) {
      const double quad = y11 * m * m + 2 * y12 * m * n + y22 * n * n;
      if (quad > T + 1.0) continue;
      BigComplex w = zz[0] * static_cast<long>(m * m);
      w += zz[1] * static_cast<long>(2 * m * n);
      w += zz[2] * static_cast<long>(n * n);
      // exp(pi i w)
      BigComplex arg(-(w.im() * pi), w.re() * pi, work);
      sum += exp(arg);
    }
  }
  return sum.with_digits(digits);
}

BigComplex symplectic_theta_splitcm(const SplitCMPoint& p, int digits) {
  if (p.Q.discriminant() != -p.tau.N) throw InputError("form discriminant must be -N");
  if (!p.tau.is_valid()) throw InputError("invalid Heegner point");
  const int work = digits + guard_digits(p.tau.imag());
  return symplectic_theta(p.z(work), digits);
}

BigComplex dedekind_eta(const BigComplex& z, int digits) {
  if (z.im().sign() <= 0) throw InputError("eta needs Im(z) > 0");
  const double y = z.im().to_double();
  const int work = digits + guard_digits(y);
  const BigComplex zw = z.rounded(work);
  const BigComplex q = exp(two_pi_i_times(zw));
  const double rate = 2 * M_PI * y;
  BigComplex sum = pow_int(q, 0);
  BigComplex qk = pow_int(q, 0);
  BigComplex minus = pow_int(q, 0);  // q^{k(3k-1)/2}
  for (std::int64_t k = 1;; ++k) {
    // q^{(k)(3k-1)/2} = q^{(k-1)(3k-4)/2} * q^{3k-2}
    const BigComplex qkm1 = qk;
    qk *= q;
    minus *= qkm1 * qkm1 * qkm1 * q;
    BigComplex plus = minus * qk;
    BigComplex term = minus + plus;
    if (k % 2) sum -= term; else sum += term;
    if (rate * static_cast<double>(k * (3 * k - 1) / 2) > (work + 10) * kLn10) break;
    if (k > 10'000'000) throw ResourceError("eta series does not converge");
  }
  const BigComplex w = two_pi_i_times(zw);
  const BigComplex pref = exp(BigComplex(w.re() / 24L, w.im() / 24L, work));
  return (pref * sum).with_digits(digits);
}

BigComplex eta_of_ideal(std::int64_t D, std::int64_t a, std::int64_t b, int digits) {
  const HeegnerPoint p{a, b, D, 1};
  if (mod(checked_mul(b, b) - D, 4 * a) != 0) throw InputError("eta_of_ideal: b^2 != D mod 4a");
  const int work = digits + guard_digits(p.imag());
  const BigComplex tau = p.value(work);
  const BigComplex e = root_of_unity(mod(checked_mul(a, b + 3), 48), 48, work);
  return (e * dedekind_eta(tau, work)).with_digits(digits);
}

BigComplex eta_norm_factor(const HeckeContext& ctx) {
  if (class_number(ctx.D) != 1)
    throw UnsupportedError("eta normalization is only defined here for h(D) = 1");
  const HeegnerPoint P = heegner_point(ctx, ctx.classRep);
  const int digits = ctx.digits;
  if (ctx.eta == EtaConvention::Ideal) {
    return eta_of_ideal(ctx.D, P.a1 * P.N, P.b1, digits) * eta_of_ideal(ctx.D, 1, ctx.bOK, digits);
  }
  const std::int64_t b = P.b1;
  const std::int64_t e = mod(checked_mul(2 * ctx.N, checked_mul(b + 3, b + 3) % 48), 48);
  const int work = digits + guard_digits(P.imag());
  const HeegnerPoint ok{1, ctx.bOK, ctx.D, 1};
  BigComplex r = root_of_unity(e, 48, work) * dedekind_eta(P.value(work), work) *
                 dedekind_eta(ok.value(work), work);
  return r.with_digits(digits);
}

BigComplex theta_at_point(const HeckeContext& ctx, const QuadForm& Q) {
  if (Q.discriminant() != -ctx.N)
    throw InputError("form " + Q.to_string() + " does not have discriminant -" + std::to_string(ctx.N));
  const HeegnerPoint P = heegner_point(ctx, ctx.classRep);
  return symplectic_theta_splitcm({Q, P}, ctx.digits + 10);
}

BigComplex theta_hat(const HeckeContext& ctx, const QuadForm& Q) {
  BigComplex th = theta_at_point(ctx, Q);
  BigComplex den = eta_norm_factor(ctx);
  if (!ctx.classRep.is_unit_ideal()) den *= psi_ideal(ctx, conjugate(ctx.classRep));
  return (th / den).with_digits(ctx.digits);
}

}  // namespace splitcm

#include "splitcm/arith.hpp"

#include "splitcm/errors.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

namespace splitcm {

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  return std::gcd(a, b);
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("64-bit overflow in integer product");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceError("64-bit overflow in integer sum");
  return r;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = static_cast<std::uint64_t>(n) - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == static_cast<std::uint64_t>(n) - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == static_cast<std::uint64_t>(n) - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int jacobi(std::int64_t a, std::int64_t n) {
  if (n <= 0 || n % 2 == 0) throw InputError("jacobi: modulus must be odd and positive");
  a = mod(a, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

int kronecker(std::int64_t d, std::int64_t n) {
  if (n <= 0) throw InputError("kronecker: n must be positive");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (d % 2 == 0) return 0;
    std::int64_t r = mod(d, 8);
    if (r == 3 || r == 5) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(d, n);
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1 != 0) {
    std::int64_t q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw InputError("inverse_mod: not invertible");
  return mod(x, m);
}

std::optional<std::int64_t> sqrt_mod_prime(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (p == 2) return a;
  if (a == 0) return 0;
  if (jacobi(a, p) != 1) return std::nullopt;
  const auto up = static_cast<std::uint64_t>(p);
  if (p % 4 == 3) return static_cast<std::int64_t>(powmod(a, (up + 1) / 4, up));
  // Tonelli-Shanks
  std::uint64_t q = up - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (jacobi(static_cast<std::int64_t>(z), p) != -1) ++z;
  std::uint64_t m = s, c = powmod(z, q, up), t = powmod(a, q, up), r = powmod(a, (q + 1) / 2, up);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, up);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, up);
    m = i;
    c = mulmod(b, b, up);
    t = mulmod(t, c, up);
    r = mulmod(r, b, up);
  }
  return static_cast<std::int64_t>(r);
}

bool is_square(std::int64_t n) {
  if (n < 0) return false;
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  for (std::int64_t k = std::max<std::int64_t>(0, r - 2); k <= r + 2; ++k) {
    if (k * k == n) return true;
  }
  return false;
}

Int to_int(const Rat& r) {
  if (boost::multiprecision::denominator(r) != 1) throw InternalError("expected an integral rational, got " + to_string(r));
  return boost::multiprecision::numerator(r);
}

std::int64_t to_i64(const Int& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw ResourceError("integer does not fit in 64 bits: " + v.str());
  }
  return v.convert_to<std::int64_t>();
}

std::string to_string(const Rat& r) {
  return r.str();
}

}  // namespace splitcm

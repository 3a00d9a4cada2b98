#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace splitcm {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

/// Least non-negative residue.
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t gcd(std::int64_t a, std::int64_t b);

/// a*b, throwing ResourceError on 64-bit overflow.
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);

/// Deterministic for all 64-bit inputs.
bool is_prime(std::int64_t n);

/// Jacobi symbol (a|n) for odd n > 0.
int jacobi(std::int64_t a, std::int64_t n);

/// Kronecker symbol (d|n), n > 0.
int kronecker(std::int64_t d, std::int64_t n);

/// Modular inverse of a mod m (gcd must be 1).
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

/// A square root of a modulo an odd prime p, if one exists.
std::optional<std::int64_t> sqrt_mod_prime(std::int64_t a, std::int64_t p);

/// Exact integer square root test.
bool is_square(std::int64_t n);

Int to_int(const Rat& r);  // requires an integral value
std::int64_t to_i64(const Int& v);  // throws ResourceError when out of range
std::string to_string(const Rat& r);

}  // namespace splitcm

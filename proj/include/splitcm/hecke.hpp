#pragma once

#include "splitcm/arith.hpp"
#include "splitcm/bigcomplex.hpp"
#include "splitcm/quadratic.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace splitcm {

/// Normalization of the eta product dividing theta values.
///  ideal:   e48(a(b+3)) eta((-b+sqrt D)/(2a)) for the point's ideal and for O_K
///  squared: e48(N(b1+3)^2)^2 eta(tau) eta((-1+sqrt D)/2)
enum class EtaConvention { Ideal, Squared };

/// Which prime above N gives the Heegner point.
///  direct:    tau = (-b1 + sqrt D)/(2N), the form [N, b1, c1] of the prime (N, b1)
///  conjugate: tau from the conjugate prime, root -b1
enum class PointConvention { Direct, Conjugate };

std::string to_string(EtaConvention c);
std::string to_string(PointConvention c);
EtaConvention parse_eta_convention(const std::string& s);

/// Everything convention-sensitive about one (D, N) computation.
struct HeckeContext {
  std::int64_t D = 0;
  std::int64_t N = 0;
  std::int64_t b1 = 0;
  std::int64_t bOK = 1;
  QuadIdeal classRep{1, 1, -7};
  int digits = 80;
  EtaConvention eta = EtaConvention::Ideal;
  PointConvention point = PointConvention::Direct;

  /// Validates D and N and fills b1 from prime_ideal_above unless given.
  static HeckeContext make(std::int64_t D, std::int64_t N, int digits = 80,
                           std::optional<std::int64_t> b1 = std::nullopt);

  /// b of the Heegner point attached to O_K.
  std::int64_t point_root() const;
  /// sqrt D mod N as seen by the character.
  std::int64_t conductor_root() const;
  /// Prime ideal (N, point_root) carrying the Heegner point.
  QuadIdeal point_prime() const;
  std::int64_t class_number_D() const;
  std::string key() const;
};

/// x + y sqrt D with rational x, y.
struct KElem {
  Rat x;
  Rat y;

  bool in_ok() const;
  Rat norm(std::int64_t D) const;
  BigComplex embed(std::int64_t D, int digits) const;
};

HeegnerPoint heegner_point(const HeckeContext& ctx, const QuadIdeal& a);

int chi(const HeckeContext& ctx, const KElem& alpha);
BigComplex psi_principal(const HeckeContext& ctx, const KElem& alpha);

/// A generator of a principal ideal, via reduction of its norm form.
std::optional<KElem> ideal_generator(const QuadIdeal& a);

/// Generator by bounded search over m + n(-bOK + sqrt D)/2 of norm N(a).
std::optional<KElem> ideal_generator_search(const QuadIdeal& a, std::int64_t bOK = 1);

BigComplex psi_ideal(const HeckeContext& ctx, const QuadIdeal& a);

/// psi(content * a) in double precision, h(D) = 1 only.
std::complex<double> psi_ideal_double(const HeckeContext& ctx, std::int64_t content, const QuadIdeal& a);

/// Roots b in (-a, a] of b^2 = D mod 4a, i.e. the primitive ideals of norm a.
std::vector<std::int64_t> primitive_ideal_roots(std::int64_t D, std::int64_t a);

/// Calls fn(content, primitive) for every nonzero ideal content * primitive of
/// norm at most maxNorm, each exactly once.
void for_each_ideal(std::int64_t D, std::int64_t maxNorm,
                    const std::function<void(std::int64_t, const QuadIdeal&)>& fn);

struct IdealEntry {
  std::int64_t content;
  QuadIdeal primitive;
  std::int64_t norm() const { return content * content * primitive.norm(); }
};
std::vector<IdealEntry> enumerate_ideals(std::int64_t D, std::int64_t maxNorm);

}  // namespace splitcm

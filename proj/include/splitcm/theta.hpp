#pragma once

#include "splitcm/bigcomplex.hpp"
#include "splitcm/hecke.hpp"
#include "splitcm/quadratic.hpp"

#include <array>
#include <cstdint>

namespace splitcm {

/// Symmetric 2x2 complex matrix (z11, z12, z22).
using Sym2 = std::array<BigComplex, 3>;

/// [[2a, b], [b, 2c]] * tau for a form of discriminant -N and a Heegner point.
struct SplitCMPoint {
  QuadForm Q;
  HeegnerPoint tau;

  Sym2 z(int digits) const;
};

/// Extra working digits that absorb cancellation when Im(tau) is small.
int guard_digits(double imTau);

/// Largest value T of the form with sum_{Q > T} |q|^Q below 10^-(digits+10).
std::int64_t theta_truncation(const QuadForm& Q, double imTau, int digits);

/// Sum over (m, n) of q^Q(m, n), q = exp(2 pi i tau).
BigComplex theta_form(const QuadForm& Q, const BigComplex& tau, int digits);
BigComplex theta_form(const QuadForm& Q, const HeegnerPoint& tau, int digits);
/// Same with an explicit truncation T (for tail-stability checks).
BigComplex theta_form_truncated(const QuadForm& Q, const BigComplex& tau, int digits, std::int64_t T);

/// Sum over x in Z^2 of exp(pi i x^T z x).
BigComplex symplectic_theta(const Sym2& z, int digits);
BigComplex symplectic_theta_splitcm(const SplitCMPoint& p, int digits);

BigComplex dedekind_eta(const BigComplex& z, int digits);

/// e48(a(b+3)) eta((-b + sqrt D)/(2a))
BigComplex eta_of_ideal(std::int64_t D, std::int64_t a, std::int64_t b, int digits);

BigComplex eta_norm_factor(const HeckeContext& ctx);

/// theta(Q tau) / (eta factor * psi(conj a)).
BigComplex theta_hat(const HeckeContext& ctx, const QuadForm& Q);

/// theta(Q tau) at the context's Heegner point, without normalization.
BigComplex theta_at_point(const HeckeContext& ctx, const QuadForm& Q);

}  // namespace splitcm

#pragma once

#include "splitcm/bigcomplex.hpp"
#include "splitcm/hecke.hpp"

#include <string>

namespace splitcm::test {

inline BigComplex cx(double re, double im, int digits) {
  const auto bits = digits_to_bits(digits + 10);
  return BigComplex(Real(re, bits), Real(im, bits), digits);
}

inline BigComplex cx(const std::string& re, const std::string& im, int digits) {
  return BigComplex::from_string(re, im, digits + 10);
}

/// |a - b| < 10^-exponent
inline bool close(const BigComplex& a, const BigComplex& b, int exponent) { return a.near(b, exponent); }

inline HeckeContext conjugate_ctx(std::int64_t D, std::int64_t N, int digits = 40) {
  HeckeContext ctx = HeckeContext::make(D, N, digits);
  ctx.point = PointConvention::Conjugate;
  return ctx;
}

}  // namespace splitcm::test

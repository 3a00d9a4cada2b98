#pragma once

#include "splitcm/arith.hpp"
#include "splitcm/bigcomplex.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace splitcm {

/// Throws InputError unless d < 0, d = 0 or 1 mod 4 and d is not -3 or -4.
void validate_discriminant(std::int64_t d);

/// Positive definite binary form a*x^2 + b*x*y + c*y^2.
struct QuadForm {
  std::int64_t a = 1;
  std::int64_t b = 0;
  std::int64_t c = 1;

  std::int64_t discriminant() const;
  bool is_primitive() const;
  bool is_reduced() const;
  std::int64_t evaluate(std::int64_t x, std::int64_t y) const;
  std::string to_string() const;

  friend bool operator==(const QuadForm&, const QuadForm&) = default;
  friend auto operator<=>(const QuadForm& x, const QuadForm& y) = default;
};

/// Row-major 2x2 integer matrix [[p, q], [r, s]] acting on column vectors.
using Mat2 = std::array<std::int64_t, 4>;

/// f(p*x + q*y, r*x + s*y)
QuadForm transform(const QuadForm& f, const Mat2& m);

/// Reduced forms of discriminant d sorted by (a, b).
std::vector<QuadForm> reduced_forms(std::int64_t d);
std::int64_t class_number(std::int64_t d);

QuadForm reduce_form(const QuadForm& f);

struct Reduction {
  QuadForm form;
  Mat2 transform;  // in SL2(Z), with form == transform(input, transform)
};
Reduction reduce_form_with_transform(const QuadForm& f);

/// Primitive ideal a*Z + ((-b + sqrt d)/2)*Z with b taken in (-a, a].
class QuadIdeal {
 public:
  QuadIdeal(std::int64_t a, std::int64_t b, std::int64_t d);

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t d() const { return d_; }
  std::int64_t norm() const { return a_; }
  bool is_unit_ideal() const { return a_ == 1; }
  std::string to_string() const;

  friend bool operator==(const QuadIdeal&, const QuadIdeal&) = default;

 private:
  std::int64_t a_;
  std::int64_t b_;
  std::int64_t d_;
};

QuadIdeal unit_ideal(std::int64_t d);
QuadIdeal ideal_of_form(const QuadForm& f);
QuadForm form_of_ideal(const QuadIdeal& I);
QuadIdeal conjugate(const QuadIdeal& I);

struct IdealProduct {
  std::int64_t content;
  QuadIdeal primitive;
};
IdealProduct ideal_product(const QuadIdeal& x, const QuadIdeal& y);

/// The prime (N, b1) above N, b1 the smallest positive root of b^2 = D mod 4N
/// with b = D mod 2.
QuadIdeal prime_ideal_above(std::int64_t D, std::int64_t N);

/// True when N is a prime, N = 3 mod 4, N > 3 and N splits in O_K.
bool is_admissible_level(std::int64_t D, std::int64_t N);
std::vector<std::int64_t> admissible_levels(std::int64_t D, std::int64_t nmax);

/// tau = (-b1 + sqrt D) / (2 a1 N)
struct HeegnerPoint {
  std::int64_t a1;
  std::int64_t b1;
  std::int64_t D;
  std::int64_t N;

  bool is_valid() const;
  /// b1 mod 2N, in [0, 2N)
  std::int64_t root() const;
  BigComplex value(int digits) const;
  double imag() const;
};

}  // namespace splitcm

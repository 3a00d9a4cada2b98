#include "splitcm/arith.hpp"
#include "splitcm/errors.hpp"
#include "splitcm/quadratic.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

using namespace splitcm;

namespace {

// Brute-force reduced forms straight from the inequalities.
std::vector<QuadForm> brute_reduced(std::int64_t d) {
  std::vector<QuadForm> out;
  for (std::int64_t a = 1; 3 * a * a <= -d; ++a)
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      const std::int64_t num = b * b - d;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (gcd(gcd(a, b), c) != 1) continue;
      out.push_back({a, b, c});
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::int64_t> represented(const QuadForm& f, std::int64_t bound) {
  std::set<std::int64_t> s;
  for (std::int64_t x = -20; x <= 20; ++x)
    for (std::int64_t y = -20; y <= 20; ++y) {
      const std::int64_t v = f.evaluate(x, y);
      if (v <= bound) s.insert(v);
    }
  return s;
}

}  // namespace

TEST_CASE("arith helpers") {
  CHECK(is_prime(191));
  CHECK_FALSE(is_prime(221));
  CHECK(kronecker(-7, 11) == 1);
  CHECK(kronecker(-7, 13) == -1);
  CHECK(kronecker(-7, 2) == 1);
  CHECK(jacobi(9, 11) == 1);
  CHECK(inverse_mod(3, 11) == 4);
  CHECK(mod(-3, 7) == 4);
  for (std::int64_t p : {11, 23, 43, 191}) {
    for (std::int64_t a = 1; a < p; ++a) {
      const auto r = sqrt_mod_prime(a, p);
      CHECK(r.has_value() == (jacobi(a, p) == 1));
      if (r) CHECK(mod(*r * *r, p) == a);
    }
  }
  CHECK_THROWS_AS(checked_mul(INT64_MAX / 2, 3), ResourceError);
}

TEST_CASE("reduced forms agree with brute force enumeration") {
  for (std::int64_t d : {-7, -11, -23, -71, -191, -223, -247, -1019}) {
    if (mod(d, 4) != 1) continue;
    CHECK(reduced_forms(d) == brute_reduced(d));
  }
  CHECK(reduced_forms(-7) == std::vector<QuadForm>{{1, 1, 2}});
  CHECK(class_number(-7) == 1);
  CHECK(reduced_forms(-23) == std::vector<QuadForm>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}});
  CHECK(class_number(-23) == 3);
  CHECK(reduced_forms(-71).size() == 7);
}

TEST_CASE("discriminant validation") {
  CHECK_THROWS_AS(validate_discriminant(-3), InputError);
  CHECK_THROWS_AS(validate_discriminant(-4), InputError);
  CHECK_THROWS_AS(validate_discriminant(5), InputError);
  CHECK_THROWS_AS(validate_discriminant(-6), InputError);
  CHECK_NOTHROW(validate_discriminant(-7));
}

TEST_CASE("form reduction") {
  CHECK(reduce_form({1, 1, 2}) == QuadForm{1, 1, 2});
  CHECK(reduce_form({3, 1, 2}) == QuadForm{2, -1, 3});
  CHECK(reduce_form({6, -1, 1}) == QuadForm{1, 1, 6});
  CHECK_THROWS_AS(reduce_form({-1, 1, 6}), InputError);
  CHECK_THROWS_AS(reduce_form({1, 5, 1}), InputError);

  const QuadForm f{3, 1, 2};
  const QuadForm g = reduce_form(f);
  CHECK(represented(f, 30) == represented(g, 30));
  const Reduction r = reduce_form_with_transform({97, 131, 46});
  CHECK(r.form.is_reduced());
  CHECK(transform(QuadForm{97, 131, 46}, r.transform) == r.form);
  CHECK(r.transform[0] * r.transform[3] - r.transform[1] * r.transform[2] == 1);
}

TEST_CASE("ideals and forms") {
  CHECK(ideal_of_form({1, 1, 2}) == unit_ideal(-7));
  CHECK(ideal_of_form({1, 1, 2}).is_unit_ideal());
  const QuadIdeal I = ideal_of_form({2, 1, 3});
  CHECK(I.a() == 2);
  CHECK(I.b() == 1);
  CHECK(form_of_ideal(I) == QuadForm{2, 1, 3});
  CHECK_THROWS_AS(QuadIdeal(3, 1, -7), InputError);
}

TEST_CASE("ideal products") {
  const QuadIdeal y(2, 1, -23);
  const IdealProduct p = ideal_product(unit_ideal(-23), y);
  CHECK(p.content == 1);
  CHECK(p.primitive == y);

  const QuadIdeal n(11, 9, -7);
  const IdealProduct nn = ideal_product(n, conjugate(n));
  CHECK(nn.content == 11);
  CHECK(nn.primitive.is_unit_ideal());

  const IdealProduct c = ideal_product(QuadIdeal(2, 1, -23), QuadIdeal(2, -1, -23));
  CHECK(c.content == 2);
  CHECK(reduce_form(form_of_ideal(c.primitive)) == QuadForm{1, 1, 6});

  // (2,1)^3 is principal in the class group of order 3.
  const IdealProduct sq = ideal_product(QuadIdeal(2, 1, -23), QuadIdeal(2, 1, -23));
  CHECK(sq.content == 1);
  CHECK(sq.primitive.norm() == 4);
  const IdealProduct cube = ideal_product(sq.primitive, QuadIdeal(2, 1, -23));
  CHECK(reduce_form(form_of_ideal(cube.primitive)) == QuadForm{1, 1, 6});

  CHECK_THROWS_AS(ideal_product(unit_ideal(-7), unit_ideal(-23)), InputError);
}

TEST_CASE("composition matches the norm multiplicativity of ideals") {
  const std::int64_t d = -71;
  for (const auto& f : reduced_forms(d))
    for (const auto& g : reduced_forms(d)) {
      const IdealProduct p = ideal_product(ideal_of_form(f), ideal_of_form(g));
      CHECK(p.content * p.content * p.primitive.norm() == f.a * g.a);
    }
}

TEST_CASE("prime above N") {
  const QuadIdeal p = prime_ideal_above(-7, 11);
  CHECK(p.a() == 11);
  CHECK(mod(p.b(), 22) == 9);
  CHECK(mod(81 + 7, 44) == 0);
  CHECK(kronecker(-7, 13) == -1);
  CHECK_THROWS_AS(prime_ideal_above(-7, 13), SplitError);
  try {
    prime_ideal_above(-7, 13);
  } catch (const SplitError& e) {
    CHECK(std::string(e.what()).find("N must satisfy N ≡ 3 mod 4 and split in O_K") == 0);
  }
  CHECK_THROWS_AS(prime_ideal_above(-7, 29), InputError);  // splits, but 29 = 1 mod 4
  CHECK_THROWS_AS(prime_ideal_above(-7, 15), InputError);
  const QuadIdeal q = prime_ideal_above(-11, 23);
  CHECK(mod(q.b(), 46) == 9);
}

TEST_CASE("admissible levels") {
  CHECK(admissible_levels(-7, 200) ==
        std::vector<std::int64_t>{11, 23, 43, 67, 71, 79, 107, 127, 151, 163, 179, 191});
  CHECK(admissible_levels(-11, 250) ==
        std::vector<std::int64_t>{23, 31, 47, 59, 67, 71, 103, 163, 179, 191, 199, 223});
}

TEST_CASE("Heegner point") {
  const HeegnerPoint h{1, 9, -7, 11};
  CHECK(h.is_valid());
  CHECK(h.imag() == doctest::Approx(std::sqrt(7.0) / 22));
  const BigComplex z = h.value(30);
  CHECK(z.re().to_double() == doctest::Approx(-9.0 / 22));
  CHECK_FALSE(HeegnerPoint{1, 7, -7, 11}.is_valid());
}

#include "splitcm/errors.hpp"
#include "splitcm/quadratic.hpp"
#include "splitcm/theta.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace splitcm;

namespace {

const char* kTheta3PiSquared = "1.1803405990160962260453379405584885872337166348814";
const char* kTheta3TwoPiSquared = "1.0074837203450847061633838366787676981138548241859";
const char* kEtaI = "0.7682254223260566590025941795761806445178669144648";

BigComplex imaginary(double t, int digits) { return test::cx(0.0, t, digits); }

}  // namespace

TEST_CASE("theta series of a form") {
  const int d = 40;
  CHECK(test::close(theta_form({1, 0, 1}, imaginary(0.5, d), d), test::cx(kTheta3PiSquared, "0", d), 38));
  CHECK(test::close(theta_form({1, 0, 1}, imaginary(1.0, d), d), test::cx(kTheta3TwoPiSquared, "0", d), 38));
  CHECK(test::close(theta_form({1, 1, 6}, imaginary(20.0, d), d), test::cx(1, 0, d), 30));
  CHECK(test::close(theta_form({2, 1, 3}, test::cx("0", "0.333333333333333333333333333333333333333333333333333", d), d),
                    test::cx("1.034531150113413393649361902220230326430321067241", "0", d), 38));
}

TEST_CASE("theta at a Heegner point") {
  const int d = 40;
  const HeegnerPoint tau{1, 9, -7, 11};
  const BigComplex v = theta_form({1, 1, 3}, tau, d);
  CHECK(test::close(v,
                    test::cx("0.28986904267527244965941836606009559091274730645595",
                             "-0.86415412629426789208872869329163843110327033463387", d),
                    38));
}

TEST_CASE("equivalent forms give equal theta values") {
  const int d = 30;
  const BigComplex tau = test::cx(0.1234, 0.4321, d);
  const QuadForm f{3, 1, 2};
  const BigComplex a = theta_form(f, tau, d);
  const BigComplex b = theta_form(reduce_form(f), tau, d);
  CHECK(test::close(a, b, 28));
  CHECK(test::close(theta_form({6, -1, 1}, tau, d), theta_form({1, 1, 6}, tau, d), 28));
}

TEST_CASE("symplectic theta") {
  const int d = 40;
  const auto bits = digits_to_bits(d + 10);
  const Sym2 z{BigComplex(Real(0L, bits), Real(1L, bits), d), BigComplex(Real(0L, bits), Real(0L, bits), d),
               BigComplex(Real(0L, bits), Real(1L, bits), d)};
  CHECK(test::close(symplectic_theta(z, d), test::cx(kTheta3PiSquared, "0", d), 38));

  const Sym2 bad{BigComplex(Real(0L, bits), Real(-1L, bits), d), BigComplex(Real(0L, bits), Real(0L, bits), d),
                 BigComplex(Real(0L, bits), Real(1L, bits), d)};
  CHECK_THROWS_AS(symplectic_theta(bad, d), InputError);

  for (const QuadForm& Q : reduced_forms(-23)) {
    const SplitCMPoint p{Q, {1, prime_ideal_above(-7, 23).b(), -7, 23}};
    REQUIRE(p.tau.is_valid());
    CHECK(test::close(symplectic_theta_splitcm(p, d), theta_form(Q, p.tau, d), d - 2));
  }
}

TEST_CASE("truncation bound") {
  const QuadForm Q{1, 1, 6};
  const HeegnerPoint P{1, prime_ideal_above(-7, 23).b(), -7, 23};
  REQUIRE(P.is_valid());
  const std::int64_t T = theta_truncation(Q, P.imag(), 40);
  CHECK(T > 0);
  const BigComplex tau = P.value(50);
  const BigComplex a = theta_form_truncated(Q, tau, 40, T);
  const BigComplex b = theta_form_truncated(Q, tau, 40, 2 * T);
  CHECK(test::close(a, b, 40));
}

TEST_CASE("Dedekind eta") {
  const int d = 40;
  CHECK(test::close(dedekind_eta(imaginary(1.0, d), d), test::cx(kEtaI, "0", d), 38));
  const BigComplex z = imaginary(2.0, d);
  const BigComplex shifted = dedekind_eta(z + BigComplex(1L, d), d);
  CHECK(test::close(shifted, root_of_unity(1, 24, d) * dedekind_eta(z, d), 38));
  const BigComplex inv = dedekind_eta(BigComplex(-1L, d) / z, d);
  const BigComplex factor = sqrt(-(BigComplex(Real(0L, 200), Real(1L, 200), d) * z));
  CHECK(test::close(inv, factor * dedekind_eta(z, d), d - 2));
  CHECK_THROWS_AS(dedekind_eta(imaginary(-1.0, d), d), InputError);
  CHECK_THROWS_AS(dedekind_eta(imaginary(0.0, d), d), InputError);
}

TEST_CASE("eta normalization") {
  HeckeContext ctx = HeckeContext::make(-7, 11, 40);
  ctx.eta = EtaConvention::Squared;
  const BigComplex f = eta_norm_factor(ctx);
  CHECK(test::close(f,
                    test::cx("0.8933139474936183660913739935796503494682055389589",
                             "-0.18104310841967244511838270096600885842720111364922", 40),
                    36));
  ctx.eta = EtaConvention::Ideal;
  const BigComplex g = eta_norm_factor(ctx);
  CHECK_FALSE(g.abs().is_zero());
  CHECK(std::abs(g.abs().to_double() - f.abs().to_double()) < 1e-12);

  const HeckeContext h3 = HeckeContext::make(-23, 47, 30);
  CHECK_THROWS_AS(eta_norm_factor(h3), UnsupportedError);
}

TEST_CASE("normalized theta values are integers") {
  const HeckeContext ctx = HeckeContext::make(-7, 11, 40);
  const BigComplex t = theta_hat(ctx, {1, 1, 3});
  CHECK(std::abs(std::abs(t.re().to_double()) - 1.0) < 1e-30);
  CHECK(std::abs(t.im().to_double()) < 1e-30);

  const HeckeContext c23 = HeckeContext::make(-11, 23, 40);
  std::vector<std::int64_t> values;
  for (const QuadForm& Q : reduced_forms(-23)) {
    const BigComplex v = theta_hat(c23, Q);
    CHECK(std::abs(v.im().to_double()) < 1e-30);
    values.push_back(std::llround(std::abs(v.re().to_double())));
  }
  std::sort(values.begin(), values.end());
  CHECK(values == std::vector<std::int64_t>{0, 0, 2});

  CHECK(test::close(theta_hat(c23, {2, 1, 3}), theta_hat(c23, {3, -1, 2}), 35));
}

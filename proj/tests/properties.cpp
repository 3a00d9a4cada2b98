#include "properties.hpp"

#include "splitcm/arith.hpp"
#include "splitcm/cli.hpp"
#include "splitcm/quadratic.hpp"
#include "splitcm/quaternion.hpp"
#include "splitcm/theta.hpp"

#include <filesystem>
#include <random>
#include <sstream>

namespace splitcm::props {

namespace {

Mat2 random_sl2(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> step(-3, 3), pick(0, 1);
  Mat2 m{1, 0, 0, 1};
  for (int i = 0; i < 6; ++i) {
    const std::int64_t k = step(rng);
    const Mat2 e = pick(rng) ? Mat2{1, k, 0, 1} : Mat2{1, 0, k, 1};
    m = {m[0] * e[0] + m[1] * e[2], m[0] * e[1] + m[1] * e[3], m[2] * e[0] + m[3] * e[2], m[2] * e[1] + m[3] * e[3]};
  }
  return m;
}

BigComplex point(double re, double im, int digits) {
  const auto bits = digits_to_bits(digits + 10);
  return BigComplex(Real(re, bits), Real(im, bits), digits);
}

}  // namespace

Outcome form_reduction(unsigned seed) {
  Outcome o{"form reduction idempotence and class invariance", true, ""};
  std::mt19937_64 rng(seed);
  const int digits = 30;
  int checked = 0;
  for (std::int64_t d : {-23, -71, -191, -223}) {
    const auto forms = reduced_forms(d);
    for (int i = 0; i < 25; ++i) {
      const QuadForm f = forms[rng() % forms.size()];
      const QuadForm g = transform(f, random_sl2(rng));
      const QuadForm r = reduce_form(g);
      if (reduce_form(r) != r || r != f) {
        o.ok = false;
        o.detail = g.to_string() + " reduced to " + r.to_string() + ", expected " + f.to_string();
        return o;
      }
      if (i % 5 == 0) {
        const BigComplex tau = point(0.1 * (i % 7), 0.8 + 0.05 * i, digits);
        if (!theta_form(g, tau, digits).near(theta_form(f, tau, digits), digits - 2)) {
          o.ok = false;
          o.detail = "theta value differs between " + g.to_string() + " and " + f.to_string();
          return o;
        }
      }
      ++checked;
    }
  }
  o.detail = std::to_string(checked) + " random equivalent forms";
  return o;
}

Outcome eta_transformation(unsigned seed) {
  Outcome o{"eta transformation law", true, ""};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.6, 2.0);
  const int digits = 40;
  const BigComplex one(1L, digits);
  const BigComplex minusOne(-1L, digits);
  const BigComplex i = point(0.0, 1.0, digits);
  for (int k = 0; k < 10; ++k) {
    const BigComplex z = point(re(rng), im(rng), digits);
    const BigComplex ez = dedekind_eta(z, digits);
    const BigComplex shift = dedekind_eta(z + one, digits);
    const BigComplex inv = dedekind_eta(minusOne / z, digits);
    const bool t = shift.near(root_of_unity(1, 24, digits) * ez, digits - 2);
    const bool s = inv.near(sqrt(-(i * z)) * ez, digits - 2);
    if (!t || !s) {
      o.ok = false;
      o.detail = "failed at z = " + z.to_string();
      return o;
    }
  }
  o.detail = "10 random points, T and S";
  return o;
}

Outcome nrd_multiplicativity(unsigned seed) {
  Outcome o{"nrd multiplicativity", true, ""};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 9);
  const QuatAlgebra alg = QuatAlgebra::for_level(-11, 23);
  auto random = [&] {
    return QuatElem(alg, {Rat(num(rng)) / den(rng), Rat(num(rng)) / den(rng), Rat(num(rng)) / den(rng),
                          Rat(num(rng)) / den(rng)});
  };
  for (int k = 0; k < 100; ++k) {
    const QuatElem x = random(), y = random();
    if ((x * y).nrd() != x.nrd() * y.nrd()) {
      o.ok = false;
      o.detail = "x = " + x.to_string() + ", y = " + y.to_string();
      return o;
    }
  }
  o.detail = "100 random pairs";
  return o;
}

Outcome theta_tail_doubling(unsigned seed) {
  Outcome o{"theta tail doubling", true, ""};
  std::mt19937_64 rng(seed);
  const int digits = 60;
  int checked = 0;
  for (const auto& [D, N] : std::vector<std::pair<std::int64_t, std::int64_t>>{{-7, 11}, {-7, 71}, {-11, 191}}) {
    const QuadIdeal p = prime_ideal_above(D, N);
    const HeegnerPoint tau{1, p.b(), D, N};
    const auto forms = reduced_forms(-N);
    for (int k = 0; k < 3; ++k) {
      const QuadForm Q = forms[rng() % forms.size()];
      const std::int64_t T = theta_truncation(Q, tau.imag(), digits);
      const BigComplex z = tau.value(digits + guard_digits(tau.imag()));
      const BigComplex a = theta_form_truncated(Q, z, digits, T);
      const BigComplex b = theta_form_truncated(Q, z, digits, 2 * T);
      if (!a.near(b, digits)) {
        o.ok = false;
        o.detail = "tail not honest for " + Q.to_string() + " at N = " + std::to_string(N);
        return o;
      }
      ++checked;
    }
  }
  o.detail = std::to_string(checked) + " forms, doubling T changes values by < 1e-" + std::to_string(digits);
  return o;
}

Outcome cache_determinism() {
  Outcome o{"cache determinism", true, ""};
  const auto dir = std::filesystem::temp_directory_path() / "splitcm-determinism";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  auto run = [&](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::make_pair(code, out.str());
  };
  for (const std::string fmt : {"csv", "json"}) {
    std::vector<std::string> outputs;
    for (int k = 0; k < 2; ++k) {
      const auto cache = dir / ("cold-" + fmt + std::to_string(k) + ".json");
      const auto [code, out] = run({"table", "--disc", "-11", "--nmax", "100", "--prec", "40", "--out", fmt,
                                    "--cache", cache.string()});
      if (code != 0) {
        o.ok = false;
        o.detail = "table exited with " + std::to_string(code);
        return o;
      }
      outputs.push_back(out);
    }
    const auto warm = run({"table", "--disc", "-11", "--nmax", "100", "--prec", "40", "--out", fmt, "--cache",
                           (dir / ("cold-" + fmt + "0.json")).string()});
    if (outputs[0] != outputs[1] || warm.second != outputs[0]) {
      o.ok = false;
      o.detail = fmt + " output differs between runs";
      return o;
    }
  }
  std::filesystem::remove_all(dir);
  o.detail = "two cold runs and one warm run byte-identical (csv, json)";
  return o;
}

std::vector<Outcome> all() {
  return {form_reduction(), eta_transformation(), nrd_multiplicativity(), theta_tail_doubling(), cache_determinism()};
}

}  // namespace splitcm::props

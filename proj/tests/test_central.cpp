#include "splitcm/central.hpp"
#include "splitcm/errors.hpp"
#include "splitcm/theta.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace splitcm;

namespace {

struct Row {
  std::int64_t absTheta, count, hEps;
  friend bool operator==(const Row&, const Row&) = default;
};

std::vector<Row> unsigned_rows(const Classification& c) {
  std::vector<Row> out;
  for (const auto& r : c.rows) out.push_back({r.absTheta, r.count, std::abs(r.hEps)});
  return out;
}

}  // namespace

TEST_CASE("class discovery") {
  ClassRepository r7(-7);
  r7.discover({11});
  CHECK(r7.size() == 1);
  CHECK(r7.mass() == Rat(1, 4));
  CHECK(r7.complete());

  ClassRepository r11(-11);
  r11.discover({23});
  CHECK(r11.size() == 2);
  CHECK(r11.mass() == Rat(5, 12));

  ClassRepository partial(-11);
  CHECK_THROWS_AS(partial.discover({67}), IncompleteClassListError);
  CHECK(partial.size() == 1);
  CHECK(discover_classes(-11, {23, 31}).size() == 2);
}

TEST_CASE("classification rows") {
  const Classification c11 = classify(HeckeContext::make(-7, 11, 40));
  REQUIRE(c11.rows.size() == 1);
  CHECK(c11.rows[0].absTheta == 1);
  CHECK(c11.rows[0].count == 1);
  CHECK(std::abs(c11.rows[0].hEps) == 1);

  const Classification c23 = classify(HeckeContext::make(-11, 23, 40));
  CHECK(unsigned_rows(c23) == std::vector<Row>{{0, 2, 2}, {2, 1, 1}});
  CHECK(c23.rows[0].hEps == 2);
  CHECK(c23.rows[1].hEps == 1);

  const Classification c67 = classify(HeckeContext::make(-11, 67, 40));
  CHECK(unsigned_rows(c67) == std::vector<Row>{{0, 0, 0}, {2, 1, 1}});

  for (const auto& c : {c11, c23, c67}) {
    std::int64_t total = 0, totalR = 0;
    for (const auto& r : c.rows) {
      total += r.count;
      totalR += r.hR;
      CHECK(r.hR == 2 * r.count);
      CHECK(r.hR == r.hRDirect);
      CHECK(std::abs(r.hEps) <= r.count);
    }
    CHECK(total == class_number(-c.ctx.N));
    CHECK(totalR == 2 * class_number(-c.ctx.N));
  }
}

TEST_CASE("L-value") {
  const HeckeContext ctx = HeckeContext::make(-7, 11, 40);
  const LValue L = l_value(ctx);
  CHECK(test::close(L.value,
                    test::cx("0.27457144311888217677379663566112593828660870266977",
                             "-0.81854910529221068686629590342488720183038315105434", 40),
                    36));
  CHECK(L.diff.log10_abs() < -35);
  // Bound by the embedding counts.
  const Classification c = classify(ctx);
  double bound = 0;
  for (const auto& r : c.rows) bound += static_cast<double>(r.absTheta * r.hR);
  bound *= M_PI * L.etaFactor.abs().to_double() / (2 * std::sqrt(11.0));
  CHECK(L.value.abs().to_double() <= bound + 1e-12);
}

TEST_CASE("Dirichlet series oracle") {
  const HeckeContext ctx = HeckeContext::make(-7, 11, 30);
  const std::complex<double> L = l_value(ctx).value.to_complex();
  const std::complex<double> o3 = oracle_l_value(ctx, 1e3);
  const std::complex<double> o4 = oracle_l_value(ctx, 1e4);
  const std::complex<double> o5 = oracle_l_value(ctx, 1e5);
  CHECK(std::abs(o5 - L) / std::abs(L) < 1e-2);
  // The smoothed series settles well before X = 1e3.
  CHECK(std::abs(o4 - o3) < 1e-10);
  CHECK(std::abs(o5 - o4) < 1e-10);
  CHECK(std::abs(oracle_l_value(ctx, 2e3) - o3) < 1e-10);
  CHECK_THROWS_AS(oracle_l_value(HeckeContext::make(-23, 47, 30), 1e3), UnsupportedError);
}

TEST_CASE("table levels") {
  TableOptions opts;
  opts.digits = 30;
  const Table t = make_table(-11, 100, opts);
  CHECK(t.errors.empty());
  std::vector<std::int64_t> levels;
  for (const auto& l : t.levels) levels.push_back(l.ctx.N);
  CHECK(levels == std::vector<std::int64_t>{23, 31, 47, 59, 67, 71});
  CHECK(t.rows().size() == 12);
  CHECK_THROWS_AS(make_table(-11, 10, opts), InputError);
}

TEST_CASE("squared eta convention is rejected by the integrality trap") {
  HeckeContext ctx = HeckeContext::make(-7, 11, 30);
  ctx.eta = EtaConvention::Squared;
  CHECK_THROWS_AS(classify(ctx), ConventionError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "properties.hpp"

using namespace splitcm;

namespace {

void require(const props::Outcome& o) {
  INFO(o.detail);
  CHECK(o.ok);
}

}  // namespace

TEST_CASE("form reduction idempotence and class invariance") { require(props::form_reduction()); }
TEST_CASE("eta transformation law at random points") { require(props::eta_transformation()); }
TEST_CASE("nrd is multiplicative") { require(props::nrd_multiplicativity()); }
TEST_CASE("theta tail doubling is stable") { require(props::theta_tail_doubling()); }
TEST_CASE("identical runs give byte-identical output") { require(props::cache_determinism()); }

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fuzzmet/ext_real.hpp"

using namespace fuzz;

TEST_CASE("construction and basic accessors") {
  ExtReal zero;
  CHECK(zero.finite());
  CHECK(zero.value() == 0.0);

  ExtReal x(1.5);
  CHECK(x.finite());
  CHECK(x.value() == 1.5);

  ExtReal inf = ExtReal::infinity();
  CHECK_FALSE(inf.finite());
  CHECK(std::isinf(inf.value()));
}

TEST_CASE("negative and NaN inputs are rejected") {
  CHECK_THROWS_AS(ExtReal(-1.0), std::domain_error);
  CHECK_THROWS_AS(ExtReal(-1e-300), std::domain_error);
  CHECK_THROWS_AS(ExtReal(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(ExtReal(-std::numeric_limits<double>::infinity()),
                  std::domain_error);
}

TEST_CASE("comparisons treat infinity as the top element") {
  ExtReal inf = ExtReal::infinity();
  CHECK(ExtReal(0.0) < ExtReal(1.0));
  CHECK(ExtReal(1e308) < inf);
  CHECK(inf == ExtReal::infinity());
  CHECK(inf <= inf);
  CHECK(inf >= ExtReal(3.0));
  CHECK_FALSE(inf < inf);
  CHECK(ExtReal(2.0) != inf);
}

TEST_CASE("addition saturates at infinity and never produces NaN") {
  ExtReal inf = ExtReal::infinity();
  CHECK(ExtReal(1.0) + ExtReal(2.5) == ExtReal(3.5));
  CHECK((inf + ExtReal(5.0)) == inf);
  CHECK((ExtReal(5.0) + inf) == inf);
  ExtReal both = inf + inf;
  CHECK_FALSE(both.finite());
  CHECK_FALSE(std::isnan(both.value()));
}

TEST_CASE("min and max with mixed finiteness") {
  ExtReal inf = ExtReal::infinity();
  CHECK(ext_min(inf, ExtReal(2.0)) == ExtReal(2.0));
  CHECK(ext_max(inf, ExtReal(2.0)) == inf);
  CHECK(ext_min(ExtReal(0.25), ExtReal(0.5)) == ExtReal(0.25));
  CHECK(ext_max(inf, inf) == inf);
}

TEST_CASE("text output") {
  CHECK(to_string(ExtReal::infinity()) == "+inf");
  CHECK(to_string(ExtReal(0.5)) == "0.5");
  CHECK(to_string(ExtReal(0.0)) == "0");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "+inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_double(-0.25) == "-0.25");

  std::ostringstream os;
  os << ExtReal(1.25) << " " << ExtReal::infinity();
  CHECK(os.str() == "1.25 +inf");
}

TEST_CASE("format_double round-trips random values exactly") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-12, 12);
  for (int i = 0; i < 2000; ++i) {
    double x = mant(rng) * std::pow(10.0, expo(rng));
    CHECK(std::stod(format_double(x)) == x);
  }
}

#include "nhmc/core.hpp"
#include "nhmc/report.hpp"

#include <doctest.h>

#include <charconv>
#include <cmath>
#include <limits>

using namespace nhmc;

TEST_CASE("doubles round-trip through their shortest form") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1e-300) == "1e-300");
  for (double x : {0.1, 1.0 / 3.0, 0.7 * 0.7 * 0.7, 6.02e23, -2.5e-17}) {
    const std::string s = format_double(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == x);
  }
  CHECK_THROWS_AS(format_double(std::nan("")), Error);
  CHECK_THROWS_AS(format_double(std::numeric_limits<double>::infinity()), Error);
}

TEST_CASE("CSV table rendering") {
  CsvTable t({"n", "value", "label"});
  t.add_row({std::int64_t{-3}, 0.25, std::string("plain")});
  t.add_row({std::int64_t{4}, Cell{}, std::string("has,comma \"q\"")});
  CHECK(t.rows() == 2);
  CHECK(t.str() == "n,value,label\n-3,0.25,plain\n4,,\"has,comma \"\"q\"\"\"\n");
  CHECK_THROWS_AS(t.add_row({std::int64_t{1}}), Error);
}

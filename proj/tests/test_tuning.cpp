#include <doctest.h>

#include <stdexcept>

#include "csr5/tuning.hpp"

using namespace csr5;

TEST_CASE("select_omega: default and hints") {
  CHECK(select_omega() == 4);
  CHECK(select_omega(8) == 8);
  CHECK(select_omega(32) == 32);
  CHECK_THROWS_AS(select_omega(0), std::invalid_argument);
}

TEST_CASE("select_sigma: piecewise rule") {
  const TuningParams gpu{.omega = 32, .sigma = 16, .r = 4, .s = 32, .t = 256, .u = 4};
  CHECK(select_sigma(2.0, gpu) == 4);
  CHECK(select_sigma(10.0, gpu) == 10);
  CHECK(select_sigma(100.0, gpu) == 32);
  CHECK(select_sigma(1000.0, gpu) == 4);
  CHECK(select_sigma(4.0, gpu) == 4);     // boundary: <= r
  CHECK(select_sigma(32.0, gpu) == 32);   // boundary: <= s, rounded
  CHECK(select_sigma(256.0, gpu) == 32);  // boundary: <= t
}

TEST_CASE("select_sigma: fixed value wins") {
  const TuningParams p{};
  CHECK(select_sigma(1000.0, p, 16) == 16);
}

TEST_CASE("tuning validation") {
  CHECK_NOTHROW(TuningParams{}.validate());
  CHECK_THROWS_AS((TuningParams{.omega = 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((TuningParams{.omega = 1, .sigma = 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((TuningParams{.r = 10, .s = 5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((TuningParams{.u = 0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((TuningParams{.omega = 1, .sigma = 2}.validate()));
}

#include <doctest.h>

#include <stdexcept>

#include "csr5/synthetic.hpp"

using namespace csr5;

TEST_CASE("regular: even split") {
  const CsrMatrix a = generate_synthetic(SyntheticKind::regular, 4, 10, 8, 1);
  REQUIRE(a.m == 4);
  for (index_t i = 0; i < 4; ++i) CHECK(a.row_ptr[i + 1] - a.row_ptr[i] == 2);
}

TEST_CASE("regular: remainder goes to the leading rows") {
  const CsrMatrix a = generate_synthetic(SyntheticKind::regular, 4, 10, 9, 1);
  CHECK(a.row_ptr[1] - a.row_ptr[0] == 3);
  CHECK(a.nnz() == 9);
}

TEST_CASE("one-long-row: default fraction 0.15") {
  const CsrMatrix a = generate_synthetic(SyntheticKind::one_long_row, 100, 200, 1000, 5);
  index_t longest = 0;
  for (index_t i = 0; i < a.m; ++i)
    longest = std::max(longest, a.row_ptr[i + 1] - a.row_ptr[i]);
  CHECK(longest == 150);
  CHECK(a.nnz() == 1000);
}

TEST_CASE("one-long-row: configurable fraction") {
  const CsrMatrix a = generate_synthetic(SyntheticKind::one_long_row, 50, 400, 1000, 5, 0.3);
  index_t longest = 0;
  for (index_t i = 0; i < a.m; ++i)
    longest = std::max(longest, a.row_ptr[i + 1] - a.row_ptr[i]);
  CHECK(longest == 300);
}

TEST_CASE("same seed, same matrix; different seed, different values") {
  for (auto kind : {SyntheticKind::regular, SyntheticKind::one_long_row,
                    SyntheticKind::random_skew}) {
    const CsrMatrix a = generate_synthetic(kind, 30, 40, 200, 42);
    const CsrMatrix b = generate_synthetic(kind, 30, 40, 200, 42);
    CHECK(a == b);
    const CsrMatrix c = generate_synthetic(kind, 30, 40, 200, 43);
    CHECK(a.val != c.val);
  }
}

TEST_CASE("random kind hits the nnz target and produces empty rows") {
  const CsrMatrix a = generate_synthetic(SyntheticKind::random_skew, 200, 50, 400, 9);
  CHECK(a.nnz() == 400);
  bool has_empty = false;
  for (index_t i = 0; i < a.m; ++i)
    if (a.row_ptr[i] == a.row_ptr[i + 1]) has_empty = true;
  CHECK(has_empty);
}

TEST_CASE("infeasible targets are rejected") {
  CHECK_THROWS_AS(generate_synthetic(SyntheticKind::regular, 2, 2, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_synthetic(SyntheticKind::one_long_row, 10, 4, 100, 1),
                  std::invalid_argument);
}

TEST_CASE("kind names round-trip") {
  CHECK(parse_synthetic_kind("regular") == SyntheticKind::regular);
  CHECK(parse_synthetic_kind("one-long-row") == SyntheticKind::one_long_row);
  CHECK(parse_synthetic_kind("random") == SyntheticKind::random_skew);
  CHECK(synthetic_kind_name(SyntheticKind::one_long_row) == "one-long-row");
  CHECK_THROWS_AS(parse_synthetic_kind("dense"), std::invalid_argument);
}

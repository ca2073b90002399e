#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "twsusp/error.hpp"
#include "twsusp/intlat.hpp"

using namespace twsusp;

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    IntMatrix a = oracle::random_matrix(rng, n, n, 20);
    CHECK(determinant(a) == oracle::cofactor_det(a));
  }
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(determinant(IntMatrix(0, 0)) == 1);
}

TEST_CASE("snf invariant factors match determinantal divisors") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix a = oracle::random_matrix(rng, r, c, 12);
    SnfDecomposition d = snf(a);
    CHECK(d.left * a * d.right == d.diag);
    CHECK(is_unimodular(d.left));
    CHECK(is_unimodular(d.right));
    CHECK(d.invariant_factors() == oracle::invariant_factors_by_minors(a));
  }
}

TEST_CASE("snf of a known matrix") {
  IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  CHECK(snf(a).invariant_factors() == to_int_vector({2, 6, 12}));
  CHECK(snf(IntMatrix(2, 3)).invariant_factors() == to_int_vector({0, 0}));
}

TEST_CASE("unimodular inverse") {
  IntMatrix u{{2, 1}, {1, 1}};
  CHECK(u * unimodular_inverse(u) == IntMatrix::identity(2));
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}), Error);
}

TEST_CASE("unimodular extension keeps the top rows") {
  std::mt19937 rng(3);
  int built = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 1 + rng() % 3, m = k + rng() % 3;
    IntMatrix a = oracle::random_matrix(rng, k, m, 6);
    const bool generating = oracle::invariant_factors_by_minors(a).back() == 1;
    if (!generating) {
      CHECK_THROWS_AS(unimodular_extension(a), Error);
      continue;
    }
    IntMatrix ext = unimodular_extension(a);
    CHECK(ext.rows() == m);
    CHECK(ext.row_block(0, k) == a);
    CHECK(abs(oracle::cofactor_det(ext)) == 1);
    ++built;
  }
  CHECK(built > 20);
}

TEST_CASE("unimodular extension errors") {
  try {
    unimodular_extension(IntMatrix{{1, 0}, {0, 1}, {1, 1}});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
  try {
    unimodular_extension(IntMatrix{{2, 4}});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotGenerating);
  }
}

TEST_CASE("primitivity and basis extension") {
  CHECK(is_primitive(to_int_vector({3, 5})));
  CHECK_FALSE(is_primitive(to_int_vector({4, 6})));
  CHECK(divisibility(to_int_vector({4, -6, 10})) == 2);
  CHECK_THROWS_AS(is_primitive(to_int_vector({0, 0})), Error);
  CHECK(extends_to_basis({to_int_vector({1, 0}), to_int_vector({1, 1})}, 2));
  CHECK_FALSE(extends_to_basis({to_int_vector({1, 1}), to_int_vector({1, -1})}, 2));
  CHECK(extends_to_basis({to_int_vector({2, 3, 0})}, 3));
  CHECK_THROWS_AS(extends_to_basis({}, 2), Error);
}

TEST_CASE("big entries stay exact") {
  IntMatrix a(2, 2);
  a(0, 0) = Integer("123456789012345678901234567890");
  a(0, 1) = 1;
  a(1, 0) = 1;
  a(1, 1) = 0;
  CHECK(determinant(a) == -1);
  CHECK(to_string(to_int_vector({1, -2})) == "(1,-2)");
}

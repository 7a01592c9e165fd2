#include <catch2/catch_amalgamated.hpp>

#include "altic/gf.hpp"
#include "oracles.hpp"

using namespace altic;

TEST_CASE("field construction rejects bad orders") {
  CHECK_THROWS_AS(Field(0), FieldTooSmall);
  CHECK_THROWS_AS(Field(1), FieldTooSmall);
  CHECK_THROWS_AS(Field(2), FieldTooSmall);
  CHECK_THROWS_AS(Field(4), NonPrimeField);
  CHECK_THROWS_AS(Field(9), NonPrimeField);
  CHECK_THROWS_AS(Field(91), NonPrimeField);  // 7 * 13
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 31u, 101u}) {
    CHECK(Field(p).p() == p);
  }
}

TEST_CASE("basic arithmetic over GF(5)") {
  const Field f(5);
  CHECK(f.add(3, 4) == 2);
  CHECK(f.sub(1, 3) == 3);
  CHECK(f.neg(0) == 0);
  CHECK(f.neg(2) == 3);
  CHECK(f.mul(3, 4) == 2);
  CHECK(f.pow(2, 3) == 3);
  CHECK(f.pow(4, 0) == 1);
  CHECK(f.reduce(12) == 2);
  CHECK(f.inv(2) == 3);
  CHECK(Field(3).inv(2) == 2);
}

TEST_CASE("inverse is total on nonzero elements and involutive") {
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 31u}) {
    const Field f(p);
    CHECK_THROWS_AS(f.inv(0), ZeroInverse);
    for (Fe a = 1; a < p; ++a) {
      const Fe b = f.inv(a);
      CHECK(f.mul(a, b) == 1);
      CHECK(f.inv(b) == a);
      CHECK(b == test::brute_inv(p, a));
    }
  }
}

TEST_CASE("bits per symbol") {
  CHECK(Field(4294967291u).p() == 4294967291u);  // largest 32-bit prime works
  CHECK(Field(3).bits_per_symbol() == Catch::Approx(1.584962500721156));
  CHECK(Field(5).bits_per_symbol() == Catch::Approx(2.321928094887362));
}

TEST_CASE("solver reproduces hand-computed systems") {
  {
    const Field f(5);
    Matrix a(2, 2);
    a.at(0, 0) = 2;
    a.at(1, 1) = 3;
    const auto x = solve_linear_system(f, a, {4, 1});
    CHECK(x == std::vector<Fe>{2, 2});
  }
  {
    const Field f(3);
    Matrix a(2, 2);
    a.at(0, 0) = 1;
    a.at(0, 1) = 1;
    a.at(1, 0) = 1;
    a.at(1, 1) = 2;
    const auto x = solve_linear_system(f, a, {0, 1});
    CHECK(x == std::vector<Fe>{2, 1});
  }
}

TEST_CASE("solver handles identity and throws on singular input") {
  const Field f(5);
  const std::vector<Fe> b = {4, 0, 3};
  CHECK(solve_linear_system(f, Matrix::identity(3), b) == b);

  Matrix s(2, 2);
  s.at(0, 0) = 1;
  s.at(0, 1) = 2;
  s.at(1, 0) = 2;
  s.at(1, 1) = 4;  // second row is twice the first
  CHECK_THROWS_AS(solve_linear_system(f, s, {1, 1}), SingularMatrix);

  CHECK_THROWS_AS(solve_linear_system(f, Matrix(3, 3), {0, 0, 0}),
                  SingularMatrix);
  CHECK_THROWS_AS(solve_linear_system(f, Matrix(2, 3), {0, 0}),
                  SingularMatrix);
}

TEST_CASE("rank examples") {
  const Field f(5);
  CHECK(rank(f, Matrix::identity(4)) == 4);
  CHECK(rank(f, Matrix::identity(9)) == 9);
  CHECK(rank(f, Matrix(3, 3)) == 0);
  CHECK(rank(Field(3), Matrix(3, 3)) == 0);
  Matrix m(3, 3);
  for (std::size_t c = 0; c < 3; ++c) {
    m.at(0, c) = 1;
    m.at(1, c) = 2;  // multiple of row 0
    m.at(2, c) = static_cast<Fe>(c);
  }
  CHECK(rank(f, m) == 2);

  Matrix prop(2, 2);
  prop.at(0, 0) = 1;
  prop.at(0, 1) = 2;
  prop.at(1, 0) = 2;
  prop.at(1, 1) = 4;
  CHECK(rank(f, prop) == 1);
}

TEST_CASE("solve and rank agree with enumeration on all 2x2 GF(3) systems") {
  const Field f(3);
  int singular = 0, regular = 0;
  for (int bits = 0; bits < 81; ++bits) {
    int v = bits;
    Matrix a(2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        a.at(i, j) = static_cast<Fe>(v % 3);
        v /= 3;
      }
    }
    REQUIRE(rank(f, a) == test::brute_rank(f, a));
    for (int bv = 0; bv < 9; ++bv) {
      const std::vector<Fe> b = {static_cast<Fe>(bv % 3),
                                 static_cast<Fe>(bv / 3)};
      const auto expect = test::brute_solve(f, a, b);
      if (expect) {
        ++regular;
        REQUIRE(solve_linear_system(f, a, b) == *expect);
      } else {
        ++singular;
        REQUIRE_THROWS_AS(solve_linear_system(f, a, b), SingularMatrix);
      }
    }
  }
  CHECK(regular == 48 * 9);  // |GL_2(GF(3))| = 48 matrices, 9 right sides
  CHECK(singular == (81 - 48) * 9);
}

TEST_CASE("rank matches enumeration on random 3x3 matrices over GF(5)") {
  const Field f(5);
  Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    const Matrix a = test::random_matrix(rng, f, 3, 3);
    REQUIRE(rank(f, a) == test::brute_rank(f, a));
  }
}

TEST_CASE("planted solutions are recovered exactly") {
  Rng rng(99);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const Field f(p);
    for (std::size_t n = 1; n <= 9; ++n) {
      for (int rep = 0; rep < 38; ++rep) {
        const Matrix a = test::random_invertible(rng, f, n);
        const std::vector<Fe> x = test::random_vector(rng, f, n);
        const std::vector<Fe> b = mat_vec(f, a, x);
        REQUIRE(solve_linear_system(f, a, b) == x);
      }
    }
  }
}

TEST_CASE("matrix-vector product example") {
  const Field f(7);
  Matrix a(2, 3);
  a.at(0, 0) = 1;
  a.at(0, 1) = 2;
  a.at(0, 2) = 3;
  a.at(1, 0) = 4;
  a.at(1, 1) = 5;
  a.at(1, 2) = 6;
  CHECK(mat_vec(f, a, {1, 1, 1}) == std::vector<Fe>{6, 1});
}

#include <doctest.h>

#include "drazinkit/genpairs.hpp"
#include "drazinkit/matrix.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace drazinkit;
using testutil::q;
using testutil::qdiag;

namespace {

const FieldDescriptor Q = FieldDescriptor::rationals();
const FieldDescriptor F5 = FieldDescriptor::prime(5);

/// Random matrix of prescribed rank r as a product (rows x r)(r x cols).
Matrix random_of_rank(const FieldDescriptor& f, std::size_t rows, std::size_t cols, std::size_t r, Rng& rng) {
  if (r == 0) return Matrix(f, rows, cols);
  Matrix left = random_matrix(f, rows, r, rng);
  Matrix right = random_matrix(f, r, cols, rng);
  return left * right;
}

}  // namespace

TEST_SUITE("matrix") {
  TEST_CASE("arithmetic examples") {
    const Matrix n = q({{"0", "1"}, {"0", "0"}});
    CHECK(n * qdiag({1, 2}) == q({{"0", "2"}, {"0", "0"}}));
    const Matrix a = q({{"1", "-2/3"}, {"5", "0"}});
    CHECK(a + Matrix(Q, 2, 2) == a);
    CHECK(Matrix::identity(Q, 2) * a == a);
    CHECK(mat_arith(a, a, MatOp::Sub).is_zero());
    CHECK(mat_arith(a, a, MatOp::Add) == testutil::qs("2") * a);
    CHECK(mat_arith(n, qdiag({1, 2}), MatOp::Mul) == q({{"0", "2"}, {"0", "0"}}));
    CHECK(mat_pow(n, 2).is_zero());
    CHECK(mat_pow(a, 0) == Matrix::identity(Q, 2));
    CHECK(mat_pow(qdiag({2, 3}), 3) == qdiag({8, 27}));
    CHECK(a.to_string() == "[[1,-2/3],[5,0]]");
  }

  TEST_CASE("shape and field errors") {
    CHECK_THROWS_AS(Matrix(Q, 0, 2), Error);
    const Matrix a(Q, 2, 3);
    const Matrix b(Q, 2, 3);
    try {
      (void)(a * b);
      FAIL("expected ShapeMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ShapeMismatch);
    }
    try {
      (void)(Matrix(Q, 2, 2) + Matrix(F5, 2, 2));
      FAIL("expected FieldMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::FieldMismatch);
    }
    CHECK_THROWS_AS(mat_pow(a, 2), Error);
  }

  TEST_CASE("rank examples") {
    CHECK(rank(Matrix::identity(Q, 2)) == 2);
    CHECK(rank(Matrix(Q, 3, 3)) == 0);
    CHECK(rank(q({{"1", "2"}, {"2", "4"}})) == 1);
  }

  TEST_CASE("inverse examples") {
    CHECK(inverse(q({{"2", "0"}, {"0", "1/2"}})) == q({{"1/2", "0"}, {"0", "2"}}));
    CHECK(inverse(q({{"1", "1"}, {"0", "1"}})) == q({{"1", "-1"}, {"0", "1"}}));
    const Matrix m = q({{"-1", "1"}, {"0", "-2"}});
    const Matrix inv = inverse(m);
    CHECK(inv == q({{"-1", "-1/2"}, {"0", "-1/2"}}));
    CHECK(m * inv == Matrix::identity(Q, 2));
    try {
      (void)inverse(q({{"1", "2"}, {"2", "4"}}));
      FAIL("expected Singular");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Singular);
      CHECK(e.values() == std::vector<std::uint64_t>{1});
    }
  }

  TEST_CASE("inner inverse examples") {
    CHECK(inner_inverse(Matrix(Q, 2, 2)).is_zero());
    CHECK(inner_inverse(Matrix::identity(Q, 3)) == Matrix::identity(Q, 3));
    const Matrix a = q({{"2", "0"}, {"0", "0"}});
    const Matrix g = inner_inverse(a);
    CHECK(g == q({{"1/2", "0"}, {"0", "0"}}));
    CHECK(a * g * a == a);
  }

  TEST_CASE("rref transform invariant, 500 random matrices per field") {
    for (const FieldDescriptor& f : {Q, F5}) {
      Rng rng(f.modulus() + 1);
      for (int i = 0; i < 500; ++i) {
        const std::size_t rows = static_cast<std::size_t>(rng.between(1, 5));
        const std::size_t cols = static_cast<std::size_t>(rng.between(1, 5));
        const std::size_t r = static_cast<std::size_t>(rng.between(0, static_cast<long long>(std::min(rows, cols))));
        const Matrix a = i % 2 == 0 ? random_matrix(f, rows, cols, rng) : random_of_rank(f, rows, cols, r, rng);
        for (PivotOrder order : {PivotOrder::TopDown, PivotOrder::BottomUp}) {
          const RrefResult res = rref_rank(a, order);
          CHECK(res.transform * a == res.reduced);
          CHECK(rank(res.transform) == rows);
          CHECK(res.pivot_columns.size() == res.rank);
          // Reduced row echelon shape: leading ones, zero columns elsewhere.
          for (std::size_t k = 0; k < res.rank; ++k) {
            const std::size_t pc = res.pivot_columns[k];
            for (std::size_t row = 0; row < rows; ++row) {
              CHECK(res.reduced(row, pc) == (row == k ? Scalar::one(f) : Scalar::zero(f)));
            }
            if (k > 0) CHECK(res.pivot_columns[k - 1] < pc);
          }
          for (std::size_t row = res.rank; row < rows; ++row) {
            for (std::size_t c = 0; c < cols; ++c) CHECK(res.reduced(row, c).is_zero());
          }
        }
        CHECK(rank(a) == rank(a.transpose()));
        if (i % 2 == 1) CHECK(rank(a) <= r);
      }
    }
  }

  TEST_CASE("inner inverse contract across all ranks") {
    for (const FieldDescriptor& f : {Q, F5}) {
      Rng rng(f.modulus() + 2);
      for (int i = 0; i < 200; ++i) {
        const std::size_t rows = static_cast<std::size_t>(rng.between(1, 5));
        const std::size_t cols = static_cast<std::size_t>(rng.between(1, 5));
        const std::size_t r = static_cast<std::size_t>(i % (std::min(rows, cols) + 1));
        const Matrix a = random_of_rank(f, rows, cols, r, rng);
        for (PivotOrder order : {PivotOrder::TopDown, PivotOrder::BottomUp}) {
          const Matrix g = inner_inverse(a, order);
          CHECK(g.rows() == cols);
          CHECK(g.cols() == rows);
          CHECK(a * g * a == a);
        }
      }
    }
  }

  TEST_CASE("inverse of inverse, checked against an independent elimination") {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
      const std::size_t n = static_cast<std::size_t>(rng.between(1, 6));
      const Matrix s = random_invertible(Q, n, rng);
      const Matrix inv = inverse(s);
      CHECK(inverse(inv) == s);
      CHECK(s * inv == Matrix::identity(Q, n));
      CHECK(inv == oracle::from_q(*oracle::q_inverse(oracle::to_q(s))));
      const Matrix s5 = random_invertible(F5, n, rng);
      CHECK(inverse(inverse(s5)) == s5);
      CHECK(inverse(s5) * s5 == Matrix::identity(F5, n));
    }
  }

  TEST_CASE("direct sum and transpose") {
    const Matrix a = q({{"1", "2"}, {"3", "4"}});
    const Matrix d = direct_sum(a, qdiag({5}));
    CHECK(d == q({{"1", "2", "0"}, {"3", "4", "0"}, {"0", "0", "5"}}));
    CHECK(a.transpose() == q({{"1", "3"}, {"2", "4"}}));
  }
}

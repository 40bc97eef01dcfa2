#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "drazinkit/scalar.hpp"

namespace drazinkit {

/// Dense row-major matrix over a single exact field.
class Matrix {
 public:
  /// Zero matrix. Both dimensions must be positive.
  Matrix(const FieldDescriptor& field, std::size_t rows, std::size_t cols);

  static Matrix identity(const FieldDescriptor& field, std::size_t n);
  static Matrix diagonal(const FieldDescriptor& field, const std::vector<Scalar>& diag);
  static Matrix diagonal(const FieldDescriptor& field, std::initializer_list<long long> diag);
  static Matrix from_ints(const FieldDescriptor& field,
                          std::initializer_list<std::initializer_list<long long>> rows);
  /// Rows of scalar text ("n" or "n/d").
  static Matrix from_strings(const FieldDescriptor& field,
                             const std::vector<std::vector<std::string>>& rows);

  const FieldDescriptor& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  const Scalar& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  /// Throws FieldMismatch if `value` is not from this matrix's field.
  void set(std::size_t r, std::size_t c, const Scalar& value);

  bool is_zero() const;
  Matrix transpose() const;

  Matrix& operator+=(const Matrix& y);
  Matrix& operator-=(const Matrix& y);

  friend Matrix operator+(Matrix x, const Matrix& y) { return x += y; }
  friend Matrix operator-(Matrix x, const Matrix& y) { return x -= y; }
  friend Matrix operator*(const Matrix& x, const Matrix& y);
  friend Matrix operator*(const Scalar& s, const Matrix& x);
  friend Matrix operator-(const Matrix& x);

  friend bool operator==(const Matrix& x, const Matrix& y);

  /// One-line debug rendering, e.g. "[[1,0],[0,1/2]]".
  std::string to_string() const;

 private:
  FieldDescriptor field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> entries_;
};

enum class MatOp { Add, Sub, Mul };

/// Checked arithmetic; throws FieldMismatch or ShapeMismatch.
Matrix mat_arith(const Matrix& x, const Matrix& y, MatOp op);

/// a^e for square a; a^0 = I.
Matrix mat_pow(const Matrix& a, std::uint64_t e);

/// Block-diagonal direct sum diag(x, y).
Matrix direct_sum(const Matrix& x, const Matrix& y);

/// Row search direction used when choosing the pivot in each column. Either
/// order picks the first nonzero entry it meets; BottomUp exists so that two
/// genuinely different inner inverses can be produced for the same input.
enum class PivotOrder { TopDown, BottomUp };

struct RrefResult {
  Matrix reduced;
  std::size_t rank;
  /// Invertible, with transform * a == reduced.
  Matrix transform;
  /// Column of the leading one in each of the first `rank` rows.
  std::vector<std::size_t> pivot_columns;
};

RrefResult rref_rank(const Matrix& a, PivotOrder order = PivotOrder::TopDown);
std::size_t rank(const Matrix& a);

/// Throws Singular (values = {rank}) when a is not invertible.
Matrix inverse(const Matrix& a);

/// A {1}-inverse G (cols x rows) with a*G*a == a.
///
/// Built from the reduced form T*a = R: row i of T is placed in row
/// pivot_columns[i] of G for every pivot row i, all other rows of G are zero.
/// Columns of a at pivot positions equal T^{-1} e_i, so a*G*a = T^{-1} R = a.
/// The result depends only on the pivoting order.
Matrix inner_inverse(const Matrix& a, PivotOrder order = PivotOrder::TopDown);

}  // namespace drazinkit

#include "drazinkit/matrix.hpp"

#include <utility>

namespace drazinkit {

namespace {

std::string shape(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

void require_same_field(const Matrix& x, const Matrix& y) {
  if (!(x.field() == y.field())) {
    throw Error(ErrorCode::FieldMismatch,
                "matrices over different fields: " + x.field().name() + " vs " + y.field().name());
  }
}

void require_same_shape(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "shape " + shape(x) + " vs " + shape(y));
  }
}

void require_square(const Matrix& a, const char* what) {
  if (!a.is_square()) throw Error(ErrorCode::ShapeMismatch, std::string(what) + " needs a square matrix, got " + shape(a));
}

}  // namespace

Matrix::Matrix(const FieldDescriptor& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::ShapeMismatch, "matrix dimensions must be positive");
  }
  entries_.assign(rows * cols, Scalar::zero(field));
}

Matrix Matrix::identity(const FieldDescriptor& field, std::size_t n) {
  Matrix m(field, n, n);
  const Scalar one = Scalar::one(field);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = one;
  return m;
}

Matrix Matrix::diagonal(const FieldDescriptor& field, const std::vector<Scalar>& diag) {
  Matrix m(field, diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
  return m;
}

Matrix Matrix::diagonal(const FieldDescriptor& field, std::initializer_list<long long> diag) {
  std::vector<Scalar> values;
  values.reserve(diag.size());
  for (long long v : diag) values.push_back(Scalar::from_int(field, v));
  return diagonal(field, values);
}

Matrix Matrix::from_ints(const FieldDescriptor& field,
                         std::initializer_list<std::initializer_list<long long>> rows) {
  const std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  Matrix m(field, rows.size(), cols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols) throw Error(ErrorCode::ShapeMismatch, "ragged rows");
    std::size_t c = 0;
    for (long long v : row) m.entries_[r * cols + c++] = Scalar::from_int(field, v);
    ++r;
  }
  return m;
}

Matrix Matrix::from_strings(const FieldDescriptor& field, const std::vector<std::vector<std::string>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::ShapeMismatch, "ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m.entries_[r * cols + c] = Scalar::parse(field, rows[r][c]);
  }
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& value) {
  if (!(value.field() == field_)) {
    throw Error(ErrorCode::FieldMismatch, "entry from " + value.field().name() + " in a matrix over " + field_.name());
  }
  entries_[r * cols_ + c] = value;
}

bool Matrix::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.entries_[c * rows_ + r] = entries_[r * cols_ + c];
  }
  return t;
}

Matrix& Matrix::operator+=(const Matrix& y) {
  require_same_field(*this, y);
  require_same_shape(*this, y);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += y.entries_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& y) {
  require_same_field(*this, y);
  require_same_shape(*this, y);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= y.entries_[i];
  return *this;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  require_same_field(x, y);
  if (x.cols_ != y.rows_) {
    throw Error(ErrorCode::ShapeMismatch, "cannot multiply " + shape(x) + " by " + shape(y));
  }
  Matrix out(x.field_, x.rows_, y.cols_);
  for (std::size_t i = 0; i < x.rows_; ++i) {
    for (std::size_t k = 0; k < x.cols_; ++k) {
      const Scalar& xik = x.entries_[i * x.cols_ + k];
      if (xik.is_zero()) continue;
      for (std::size_t j = 0; j < y.cols_; ++j) {
        const Scalar& ykj = y.entries_[k * y.cols_ + j];
        if (ykj.is_zero()) continue;
        out.entries_[i * y.cols_ + j] += xik * ykj;
      }
    }
  }
  return out;
}

Matrix operator*(const Scalar& s, const Matrix& x) {
  if (!(s.field() == x.field_)) {
    throw Error(ErrorCode::FieldMismatch, "scalar from " + s.field().name() + " times matrix over " + x.field_.name());
  }
  Matrix out = x;
  for (auto& e : out.entries_) e = s * e;
  return out;
}

Matrix operator-(const Matrix& x) {
  Matrix out = x;
  for (auto& e : out.entries_) e = -e;
  return out;
}

bool operator==(const Matrix& x, const Matrix& y) {
  return x.field_ == y.field_ && x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.entries_ == y.entries_;
}

std::string Matrix::to_string() const {
  std::string out = "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    out += r == 0 ? "[" : ",[";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c != 0) out += ",";
      out += entries_[r * cols_ + c].to_string();
    }
    out += "]";
  }
  return out + "]";
}

Matrix mat_arith(const Matrix& x, const Matrix& y, MatOp op) {
  switch (op) {
    case MatOp::Add: return x + y;
    case MatOp::Sub: return x - y;
    case MatOp::Mul: return x * y;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown matrix op");
}

Matrix mat_pow(const Matrix& a, std::uint64_t e) {
  require_square(a, "mat_pow");
  Matrix result = Matrix::identity(a.field(), a.rows());
  Matrix base = a;
  while (e != 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e != 0) base = base * base;
  }
  return result;
}

Matrix direct_sum(const Matrix& x, const Matrix& y) {
  require_same_field(x, y);
  Matrix out(x.field(), x.rows() + y.rows(), x.cols() + y.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) out.set(r, c, x(r, c));
  }
  for (std::size_t r = 0; r < y.rows(); ++r) {
    for (std::size_t c = 0; c < y.cols(); ++c) out.set(x.rows() + r, x.cols() + c, y(r, c));
  }
  return out;
}

RrefResult rref_rank(const Matrix& a, PivotOrder order) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  // Work on plain row vectors; rows are swapped wholesale.
  std::vector<std::vector<Scalar>> red(m, std::vector<Scalar>(n));
  std::vector<std::vector<Scalar>> tr(m, std::vector<Scalar>(m, Scalar::zero(a.field())));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) red[r][c] = a(r, c);
    tr[r][r] = Scalar::one(a.field());
  }

  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t pivot = m;
    if (order == PivotOrder::TopDown) {
      for (std::size_t r = row; r < m; ++r) {
        if (!red[r][col].is_zero()) {
          pivot = r;
          break;
        }
      }
    } else {
      for (std::size_t r = m; r-- > row;) {
        if (!red[r][col].is_zero()) {
          pivot = r;
          break;
        }
      }
    }
    if (pivot == m) continue;
    std::swap(red[row], red[pivot]);
    std::swap(tr[row], tr[pivot]);

    const Scalar inv = red[row][col].inverse();
    for (auto& e : red[row]) e *= inv;
    for (auto& e : tr[row]) e *= inv;

    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || red[r][col].is_zero()) continue;
      const Scalar factor = red[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        if (!red[row][c].is_zero()) red[r][c] -= factor * red[row][c];
      }
      for (std::size_t c = 0; c < m; ++c) {
        if (!tr[row][c].is_zero()) tr[r][c] -= factor * tr[row][c];
      }
    }
    pivots.push_back(col);
    ++row;
  }

  Matrix reduced(a.field(), m, n);
  Matrix transform(a.field(), m, m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) reduced.set(r, c, red[r][c]);
    for (std::size_t c = 0; c < m; ++c) transform.set(r, c, tr[r][c]);
  }
  return RrefResult{std::move(reduced), pivots.size(), std::move(transform), std::move(pivots)};
}

std::size_t rank(const Matrix& a) { return rref_rank(a).rank; }

Matrix inverse(const Matrix& a) {
  require_square(a, "inverse");
  RrefResult rr = rref_rank(a);
  if (rr.rank != a.rows()) {
    throw Error(ErrorCode::Singular, "matrix is singular (rank " + std::to_string(rr.rank) + " of " + std::to_string(a.rows()) + ")",
                {rr.rank});
  }
  return std::move(rr.transform);
}

Matrix inner_inverse(const Matrix& a, PivotOrder order) {
  const RrefResult rr = rref_rank(a, order);
  Matrix g(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < rr.rank; ++i) {
    for (std::size_t c = 0; c < a.rows(); ++c) g.set(rr.pivot_columns[i], c, rr.transform(i, c));
  }
  return g;
}

}  // namespace drazinkit

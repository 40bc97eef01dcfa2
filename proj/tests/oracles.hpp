#pragma once

// Reference computations that avoid the library's elimination and Drazin
// code paths. They are slow and only meant for small inputs.

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "drazinkit/genpairs.hpp"
#include "drazinkit/matrix.hpp"

namespace oracle {

using drazinkit::FieldDescriptor;
using drazinkit::Matrix;
using drazinkit::Scalar;

// ---- rational matrices as nested vectors ---------------------------------

using QMat = std::vector<std::vector<mpq_class>>;

inline QMat to_q(const Matrix& m) {
  QMat out(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c).rational();
  }
  return out;
}

inline Matrix from_q(const QMat& q) {
  const FieldDescriptor f = FieldDescriptor::rationals();
  Matrix m(f, q.size(), q[0].size());
  for (std::size_t r = 0; r < q.size(); ++r) {
    for (std::size_t c = 0; c < q[0].size(); ++c) {
      m.set(r, c, Scalar::from_fraction(f, q[r][c].get_num(), q[r][c].get_den()));
    }
  }
  return m;
}

inline QMat q_mul(const QMat& x, const QMat& y) {
  QMat out(x.size(), std::vector<mpq_class>(y[0].size(), 0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t k = 0; k < y.size(); ++k) {
      for (std::size_t j = 0; j < y[0].size(); ++j) out[i][j] += x[i][k] * y[k][j];
    }
  }
  return out;
}

/// Gauss-Jordan on [x | I] with partial search for a nonzero pivot.
inline std::optional<QMat> q_inverse(QMat x) {
  const std::size_t n = x.size();
  QMat inv(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && x[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(x[piv], x[col]);
    std::swap(inv[piv], inv[col]);
    const mpq_class s = x[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      x[col][j] /= s;
      inv[col][j] /= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || x[r][col] == 0) continue;
      const mpq_class f = x[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        x[r][j] -= f * x[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

/// Closed form for 2x2 matrices over any field: adjugate/det when invertible;
/// for rank one a^2 = tr(a) a, so a^D = a / tr(a)^2 (or 0 when tr(a) = 0).
inline Matrix drazin_2x2(const Matrix& a) {
  const FieldDescriptor f = a.field();
  const Scalar det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  Matrix out(f, 2, 2);
  if (!det.is_zero()) {
    const Scalar inv = det.inverse();
    out.set(0, 0, a(1, 1) * inv);
    out.set(0, 1, -a(0, 1) * inv);
    out.set(1, 0, -a(1, 0) * inv);
    out.set(1, 1, a(0, 0) * inv);
    return out;
  }
  const Scalar tr = a(0, 0) + a(1, 1);
  if (tr.is_zero()) return out;
  const Scalar s = (tr * tr).inverse();
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) out.set(r, c, a(r, c) * s);
  }
  return out;
}

// ---- residue matrices as flat vectors ------------------------------------

struct Fp {
  std::uint64_t p;
  std::size_t n;

  using M = std::vector<std::uint64_t>;

  M mul(const M& x, const M& y) const {
    M out(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < n; ++k) acc += x[i * n + k] * y[k * n + j];
        out[i * n + j] = acc % p;
      }
    }
    return out;
  }
  M pow(const M& x, std::size_t e) const {
    M out(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) out[i * n + i] = 1;
    for (std::size_t k = 0; k < e; ++k) out = mul(out, x);
    return out;
  }
  M from(const Matrix& m) const {
    M out(n * n);
    for (std::size_t i = 0; i < n * n; ++i) out[i] = m(i / n, i % n).residue();
    return out;
  }
  Matrix to(const M& x) const {
    const FieldDescriptor f = FieldDescriptor::prime(p);
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n * n; ++i) m.set(i / n, i % n, Scalar::from_int(f, static_cast<long long>(x[i])));
    return m;
  }
  /// Every matrix in lexicographic order of its row-major entries.
  std::vector<M> all() const {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < n * n; ++i) count *= p;
    std::vector<M> out;
    out.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      M m(n * n);
      std::uint64_t rest = idx;
      for (std::size_t cell = n * n; cell-- > 0;) {
        m[cell] = rest % p;
        rest /= p;
      }
      out.push_back(std::move(m));
    }
    return out;
  }
};

/// The unique X with XaX = X, aX = Xa and a^n = a^(n+1) X, found by trying
/// every matrix. n >= index always, so k = n is a valid exponent.
inline Matrix brute_drazin(const Matrix& a) {
  const Fp fp{a.field().modulus(), a.rows()};
  const Fp::M am = fp.from(a);
  const Fp::M an = fp.pow(am, fp.n);
  const Fp::M an1 = fp.mul(an, am);
  std::optional<Fp::M> found;
  for (const Fp::M& x : fp.all()) {
    if (fp.mul(am, x) != fp.mul(x, am)) continue;
    if (fp.mul(fp.mul(x, am), x) != x) continue;
    if (fp.mul(an1, x) != an) continue;
    if (found) throw std::logic_error("two Drazin inverses");
    found = x;
  }
  if (!found) throw std::logic_error("no Drazin inverse");
  return fp.to(*found);
}

/// Direct product checks, independent of find_violation().
inline bool relation_holds(const Fp& fp, const Fp::M& a, const Fp::M& b, drazinkit::RelationType type,
                           std::uint64_t lambda) {
  const Fp::M ab = fp.mul(a, b);
  const Fp::M ba = fp.mul(b, a);
  switch (type) {
    case drazinkit::RelationType::LambdaCommute: {
      Fp::M scaled = ba;
      for (auto& e : scaled) e = e * lambda % fp.p;
      return ab == scaled;
    }
    case drazinkit::RelationType::CrossCube:
      return fp.mul(fp.pow(a, 3), b) == ba && fp.mul(fp.pow(b, 3), a) == ab;
    case drazinkit::RelationType::SwappedCube:
      return fp.mul(a, fp.pow(b, 3)) == ba && fp.mul(b, fp.pow(a, 3)) == ab;
  }
  return false;
}

inline bool is_zero(const Fp::M& m) {
  for (auto e : m) {
    if (e != 0) return false;
  }
  return true;
}

}  // namespace oracle

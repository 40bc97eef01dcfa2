#include "drazinkit/theorems.hpp"

#include <algorithm>

namespace drazinkit {

Matrix invert_one_minus_nilpotent(const Matrix& u, std::size_t bound) {
  if (!u.is_square()) throw Error(ErrorCode::ShapeMismatch, "Neumann inverse needs a square matrix");
  const std::size_t limit = std::max<std::size_t>(bound, 1);
  Matrix sum = Matrix::identity(u.field(), u.rows());
  Matrix power = u;
  std::vector<std::uint64_t> ranks;
  for (std::size_t m = 1; m <= limit; ++m) {
    // power == u^m, sum == Σ_{i<m} u^i
    if (power.is_zero()) return sum;
    ranks.push_back(rank(power));
    sum += power;
    power = power * u;
  }
  throw Error(ErrorCode::NotNilpotentWithinBound,
              "u^m != 0 for every m <= " + std::to_string(limit), std::move(ranks));
}

Theorem23Report evaluate_thm23(const Matrix& a, const Matrix& b, const Scalar& lambda) {
  const RelationKind rel = RelationKind::lambda_commute(lambda);
  if (auto v = find_violation(a, b, rel)) {
    throw Error(ErrorCode::PreconditionViolated,
                "pair violates " + v->equation + " at entry (" + std::to_string(v->row) + "," + std::to_string(v->col) + ")");
  }
  const FieldDescriptor& field = a.field();
  const std::size_t n = a.rows();
  const Matrix identity = Matrix::identity(field, n);

  const DrazinData a_data = drazin_inverse(a);
  const DrazinData b_data = drazin_inverse(b);
  const Matrix& ad = a_data.d;
  const Matrix& bd = b_data.d;
  const Matrix& a_pi = a_data.pi;
  const Matrix& b_pi = b_data.pi;
  const Matrix diff = a - b;

  Matrix w = a * ad * diff * b * bd;
  DrazinData w_data = drazin_inverse(w);
  Matrix neumann_b = invert_one_minus_nilpotent(b * b_pi * ad, b_data.index);
  Matrix neumann_a = invert_one_minus_nilpotent(bd * a * a_pi, a_data.index);
  Matrix x = w_data.d + ad * neumann_b * b_pi - a_pi * neumann_a * bd;

  DrazinData direct = drazin_inverse(diff);
  const bool match = x == direct.d;
  const bool commutes = x * diff == diff * x;
  const bool reflexive = x * diff * x == x;
  const Matrix residual = diff - diff * diff * x;
  const bool decomposes = residual == a * a_pi * b_pi - b * b_pi * a_pi + w * w_data.pi;
  auto degree = nilpotency_degree(residual, n);

  return Theorem23Report{std::move(w),        std::move(w_data), std::move(neumann_b), std::move(neumann_a),
                         a_data.index,        b_data.index,      std::move(x),         std::move(direct),
                         match,               commutes,          reflexive,            degree,
                         decomposes};
}

Theorem36Report evaluate_thm36(const Matrix& a, const Matrix& b) {
  const FieldDescriptor& field = a.field();
  if (field.characteristic() == 2) {
    throw Error(ErrorCode::CharacteristicTwo, "the (a+b)^D formula needs 2 to be a unit; field is F2");
  }
  return evaluate_thm36_with_coefficient(a, b, Scalar::from_int(field, 8).inverse());
}

Theorem36Report evaluate_thm36_with_coefficient(const Matrix& a, const Matrix& b, const Scalar& coefficient) {
  const FieldDescriptor& field = a.field();
  if (field.characteristic() == 2) {
    throw Error(ErrorCode::CharacteristicTwo, "the (a+b)^D formula needs 2 to be a unit; field is F2");
  }
  if (auto v = find_violation(a, b, RelationKind::cross_cube())) {
    throw Error(ErrorCode::PreconditionViolated,
                "pair violates " + v->equation + " at entry (" + std::to_string(v->row) + "," + std::to_string(v->col) + ")");
  }
  const std::size_t n = a.rows();
  const Matrix identity = Matrix::identity(field, n);
  const DrazinData a_data = drazin_inverse(a);
  const DrazinData b_data = drazin_inverse(b);
  const Matrix& ad = a_data.d;
  const Matrix& bd = b_data.d;
  const Matrix aad = a * ad;
  const Matrix bbd = b * bd;
  const Scalar three = Scalar::from_int(field, 3);

  const Matrix a3 = mat_pow(a, 3);
  const Matrix b3 = mat_pow(b, 3);
  Matrix m1 = coefficient * (bbd * (three * a3 + three * b3 - a - b) * aad);
  Matrix m2 = ad * (identity - bbd);
  Matrix m3 = (identity - aad) * bd;
  Matrix m = m1 + m2 + m3;

  const Matrix sum = a + b;
  DrazinData direct = drazin_inverse(sum);
  const bool match = m == direct.d;
  const bool commutes = m * sum == sum * m;
  const bool reflexive = m * sum * m == m;
  const Matrix a_core_free = a * a_data.pi;
  const Matrix b_core_free = b * b_data.pi;
  const bool orthogonal = (a_core_free * b_core_free).is_zero() && (b_core_free * a_core_free).is_zero();
  const Matrix residual = sum - sum * sum * m;
  const bool decomposes = residual == a_core_free + b_core_free;
  auto degree = nilpotency_degree(residual, n);

  return Theorem36Report{coefficient, std::move(m1), std::move(m2), std::move(m3), std::move(m), std::move(direct),
                         match,       commutes,      reflexive,     orthogonal,    degree,        decomposes};
}

}  // namespace drazinkit

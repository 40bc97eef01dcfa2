#include "drazinkit/drazin.hpp"

namespace drazinkit {

namespace {

void require_square(const Matrix& a) {
  if (!a.is_square()) {
    throw Error(ErrorCode::ShapeMismatch,
                "Drazin inverse needs a square matrix, got " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

[[noreturn]] void certification_failed(const Matrix& a, const std::string& what) {
  throw Error(ErrorCode::InternalCertificationFailure, "Drazin certificate failed (" + what + ") for " + a.to_string());
}

}  // namespace

std::size_t compute_index(const Matrix& a) {
  require_square(a);
  Matrix power = Matrix::identity(a.field(), a.rows());
  std::size_t previous = a.rows();
  for (std::size_t k = 0;; ++k) {
    power = power * a;
    const std::size_t next = rank(power);
    if (next == previous) return k;
    previous = next;
  }
}

DrazinData drazin_inverse(const Matrix& a, PivotOrder order) {
  require_square(a);
  const std::size_t n = a.rows();
  const std::size_t index = compute_index(a);
  const std::size_t l = index == 0 ? 1 : index;

  const Matrix a_l = mat_pow(a, l);
  const Matrix a_2l1 = a_l * a_l * a;
  const Matrix d = a_l * inner_inverse(a_2l1, order) * a_l;
  const Matrix identity = Matrix::identity(a.field(), n);
  const Matrix ad = a * d;
  Matrix pi = identity - ad;

  if (!certify(a, d, index)) certification_failed(a, "defining equations");
  if (!(pi * pi == pi) || !(pi * a == a * pi)) certification_failed(a, "projector");
  const Matrix core_free = a * pi;
  if (!mat_pow(core_free, l).is_zero()) certification_failed(a, "nilpotent part");
  if (index >= 1) {
    // Minimality: the nilpotent part is still nonzero one power earlier, and
    // the third equation fails at index - 1.
    if (mat_pow(core_free, index - 1).is_zero()) certification_failed(a, "nilpotent degree");
    if (mat_pow(a, index - 1) == mat_pow(a, index) * d) certification_failed(a, "index minimality");
  }
  return DrazinData{a, d, index, std::move(pi), index <= 1};
}

DrazinData group_inverse(const Matrix& a) {
  require_square(a);
  const std::size_t index = compute_index(a);
  if (index > 1) {
    throw Error(ErrorCode::IndexTooLarge, "group inverse needs index <= 1, got " + std::to_string(index), {index});
  }
  return drazin_inverse(a);
}

bool certify(const Matrix& a, const Matrix& cand, std::size_t k) {
  require_square(a);
  if (cand.rows() != a.rows() || cand.cols() != a.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "candidate shape differs from the matrix shape");
  }
  if (!(a.field() == cand.field())) throw Error(ErrorCode::FieldMismatch, "candidate over a different field");
  if (!(cand * a * cand == cand)) return false;
  if (!(a * cand == cand * a)) return false;
  const Matrix a_k = mat_pow(a, k);
  return a_k == a_k * a * cand;
}

std::optional<std::size_t> nilpotency_degree(const Matrix& m, std::size_t cap) {
  Matrix power = m;
  for (std::size_t k = 1; k <= cap; ++k) {
    if (power.is_zero()) return k;
    power = power * m;
  }
  return std::nullopt;
}

}  // namespace drazinkit

#pragma once

#include <cstddef>
#include <optional>

#include "drazinkit/matrix.hpp"

namespace drazinkit {

/// The Drazin inverse of `source` together with its index and spectral
/// projector. Instances returned by drazin_inverse() are already certified:
///   d*a*d = d,  a*d = d*a,  a^index = a^(index+1)*d,
///   pi = I - a*d is idempotent and commutes with a,
///   (a*pi)^index = 0 and index is minimal.
struct DrazinData {
  Matrix source;
  Matrix d;
  std::size_t index;
  Matrix pi;
  bool is_group;
};

/// Smallest k >= 0 with rank(a^k) == rank(a^(k+1)), using a^0 = I. The zero
/// matrix has index 1; only invertible matrices have index 0.
std::size_t compute_index(const Matrix& a);

/// Computes a^D = a^l * G * a^l with G an inner inverse of a^(2l+1) and
/// l = max(index, 1), then certifies the result. Throws
/// InternalCertificationFailure if any defining equation fails.
DrazinData drazin_inverse(const Matrix& a, PivotOrder order = PivotOrder::TopDown);

/// Same as drazin_inverse() but throws IndexTooLarge (values = {index}) when
/// the index exceeds 1.
DrazinData group_inverse(const Matrix& a);

/// True iff cand*a*cand = cand, a*cand = cand*a and a^k = a^(k+1)*cand.
bool certify(const Matrix& a, const Matrix& cand, std::size_t k);

/// Smallest k >= 1 with m^k = 0, searching k <= cap; nullopt if m is not
/// nilpotent within the cap. The zero matrix has degree 1.
std::optional<std::size_t> nilpotency_degree(const Matrix& m, std::size_t cap);

}  // namespace drazinkit

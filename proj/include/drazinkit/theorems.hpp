#pragma once

#include <cstddef>
#include <optional>

#include "drazinkit/drazin.hpp"
#include "drazinkit/matrix.hpp"
#include "drazinkit/relations.hpp"

namespace drazinkit {

/// Σ_{i<m} u^i for the smallest m <= max(bound, 1) with u^m = 0, i.e. the
/// finite geometric inverse of I - u. Throws NotNilpotentWithinBound with the
/// ranks of u^1 .. u^max(bound,1) when no such m exists.
Matrix invert_one_minus_nilpotent(const Matrix& u, std::size_t bound);

/// Closed form for (a - b)^D of a λ-commuting pair, with every intermediate
/// and the direct Drazin inverse of a - b it is checked against.
struct Theorem23Report {
  Matrix w;                  ///< a a^D (a - b) b b^D
  DrazinData w_data;
  Matrix neumann_b;          ///< (I - b b^π a^D)^{-1}, truncated at ind(b)
  Matrix neumann_a;          ///< (I - b^D a a^π)^{-1}, truncated at ind(a)
  std::size_t index_a;       ///< s
  std::size_t index_b;       ///< t
  Matrix x;                  ///< w^D + a^D N_b b^π - a^π N_a b^D
  DrazinData direct;         ///< (a - b)^D computed without the formula
  bool match;                ///< x == direct.d entrywise
  bool commutes;             ///< x (a-b) == (a-b) x
  bool reflexive;            ///< x (a-b) x == x
  /// Degree of (a-b) - (a-b)^2 x, searched up to the dimension.
  std::optional<std::size_t> residual_nilpotency_degree;
  /// (a-b) - (a-b)^2 x == a a^π b^π - b b^π a^π + w w^π
  bool residual_decomposes;
};

/// Throws PreconditionViolated if ab != λ ba, ZeroLambda for λ = 0.
Theorem23Report evaluate_thm23(const Matrix& a, const Matrix& b, const Scalar& lambda);

/// Closed form for (a + b)^D of a cross-cube pair.
struct Theorem36Report {
  Scalar coefficient;        ///< 1/8 unless a mutated coefficient was supplied
  Matrix m1;                 ///< coefficient * b b^D (3a^3 + 3b^3 - a - b) a a^D
  Matrix m2;                 ///< a^D (I - b b^D)
  Matrix m3;                 ///< (I - a a^D) b^D
  Matrix m;                  ///< m1 + m2 + m3
  DrazinData direct;         ///< (a + b)^D computed without the formula
  bool match;                ///< m == direct.d entrywise
  bool commutes;             ///< m (a+b) == (a+b) m
  bool reflexive;            ///< m (a+b) m == m
  bool orthogonal;           ///< a a^π b b^π == b b^π a a^π == 0
  std::optional<std::size_t> residual_nilpotency_degree;
  /// (a+b) - (a+b)^2 m == a a^π + b b^π
  bool residual_decomposes;
};

/// Throws CharacteristicTwo over F_2 (checked first) and PreconditionViolated
/// if the pair is not cross-cube.
Theorem36Report evaluate_thm36(const Matrix& a, const Matrix& b);

/// evaluate_thm36() with the leading 1/8 replaced by `coefficient`. Used to
/// confirm that the equivalence check can fail.
Theorem36Report evaluate_thm36_with_coefficient(const Matrix& a, const Matrix& b, const Scalar& coefficient);

}  // namespace drazinkit

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "drazinkit/drazin.hpp"
#include "drazinkit/matrix.hpp"

namespace drazinkit {

enum class RelationType {
  LambdaCommute,  ///< ab = λ·ba, λ ≠ 0
  CrossCube,      ///< a³b = ba and b³a = ab
  SwappedCube,    ///< ab³ = ba and ba³ = ab
};

class RelationKind {
 public:
  /// Throws ZeroLambda for λ = 0.
  static RelationKind lambda_commute(const Scalar& lambda);
  static RelationKind cross_cube() { return RelationKind{RelationType::CrossCube}; }
  static RelationKind swapped_cube() { return RelationKind{RelationType::SwappedCube}; }

  RelationType type() const noexcept { return type_; }
  /// Throws InvalidArgument unless type() is LambdaCommute.
  const Scalar& lambda() const;
  /// "lambda-commute", "cross-cube" or "swapped-cube".
  std::string name() const;
  /// Inverse of name(); λ is required for "lambda-commute".
  static RelationKind from_name(const std::string& name, const std::optional<Scalar>& lambda);

  friend bool operator==(const RelationKind&, const RelationKind&) = default;

 private:
  explicit RelationKind(RelationType type, std::optional<Scalar> lambda = std::nullopt)
      : type_(type), lambda_(std::move(lambda)) {}

  RelationType type_;
  std::optional<Scalar> lambda_;
};

/// First entry at which one of the defining equations fails.
struct RelationViolation {
  std::string equation;
  std::size_t row;
  std::size_t col;
  std::string lhs;
  std::string rhs;
};

/// Throws ShapeMismatch / FieldMismatch for incompatible inputs.
std::optional<RelationViolation> find_violation(const Matrix& a, const Matrix& b, const RelationKind& rel);
bool check_relation(const Matrix& a, const Matrix& b, const RelationKind& rel);

/// When a and b are both invertible and ab = λba, taking determinants forces
/// λ^n = 1. Returns nullopt unless both matrices are invertible.
std::optional<bool> lambda_determinant_consistent(const Matrix& a, const Matrix& b, const Scalar& lambda);

struct IdentityItem {
  std::string id;
  Matrix lhs;
  Matrix rhs;
  bool pass;
};

struct IdentityReport {
  RelationKind relation;
  /// Sorted by id. all_pass covers exactly these items.
  std::vector<IdentityItem> items;
  bool all_pass;
  /// Informational checks that do not gate all_pass.
  std::vector<IdentityItem> diagnostics;

  const IdentityItem* find(const std::string& id) const;
};

/// Exponent limit for the 3^i powers in the cube identities: 4 over Q, 8 over F_p.
std::size_t default_cube_exponent_bound(const FieldDescriptor& field) noexcept;

// Every suite re-checks its hypothesis and throws PreconditionViolated when
// the pair does not satisfy it. Items are evaluated independently; a failing
// item never hides the ones after it.

/// ab^i = λ^i b^i a, a^i b = λ^i b a^i, (ab)^i = λ^{-i(i-1)/2} a^i b^i and
/// (ba)^i = λ^{i(i-1)/2} b^i a^i for i = 1..i_max.
IdentityReport lemma21_suite(const Matrix& a, const Matrix& b, const Scalar& lambda, std::size_t i_max);

/// Drazin inverses of a λ-commuting pair.
IdentityReport lemma22_suite(const Matrix& a, const Matrix& b, const Scalar& lambda);

/// Power-shifting identities of a cross-cube pair for i = 1..i_max. Throws
/// ExponentOverflow when i_max exceeds `exponent_bound` (0 selects the field
/// default).
IdentityReport lemma31_suite(const Matrix& a, const Matrix& b, std::size_t i_max, std::size_t exponent_bound = 0);

/// Drazin-inverse identities of a cross-cube pair.
IdentityReport lemma32_suite(const Matrix& a, const Matrix& b);

/// Identities of a swapped-cube pair, including the group inverses of ab and ba.
IdentityReport lemma33_suite(const Matrix& a, const Matrix& b);

/// The two product chains for a^D b^D and b^D a^D of a cross-cube pair.
IdentityReport lemma34_suite(const Matrix& a, const Matrix& b);

/// The eight power-reduction identities of a cross-cube pair at exponents i, j.
IdentityReport lemma35_suite(const Matrix& a, const Matrix& b, std::size_t i, std::size_t j);

}  // namespace drazinkit

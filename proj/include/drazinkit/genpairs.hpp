#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "drazinkit/matrix.hpp"
#include "drazinkit/relations.hpp"

namespace drazinkit {

/// Seeded source of small integers. Uses only the raw mt19937_64 stream so the
/// sequence is identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [lo, hi].
  long long between(long long lo, long long hi);
  /// Nonzero integer in [-bound, bound], also nonzero in `field`.
  Scalar nonzero(const FieldDescriptor& field, long long bound);

 private:
  std::mt19937_64 engine_;
};

/// Dense matrix with entries in [-bound, bound].
Matrix random_matrix(const FieldDescriptor& field, std::size_t rows, std::size_t cols, Rng& rng, long long bound = 3);
/// L*U with unit-diagonal triangular factors, entries in [-2, 2].
Matrix random_invertible(const FieldDescriptor& field, std::size_t n, Rng& rng);
/// S (C ⊕ N) S^{-1} with C invertible upper-triangular and N strictly upper
/// triangular, so ranks, indices and nilpotent degrees all vary with the seed.
Matrix random_core_nilpotent(const FieldDescriptor& field, std::size_t n, Rng& rng);
/// S diag(t) S^{-1} with t_i in {-1, 0, 1}.
Matrix random_tripotent(const FieldDescriptor& field, std::size_t n, Rng& rng);

/// Construction recipe for a pair satisfying one of the hypotheses.
///
/// Descriptor grammar (the text form used in corpus files and by the CLI):
///   WeightedShift(n)            a = upper shift, b = diag(1, λ, ..., λ^(n-1))
///   ClockShift(n)               a = cyclic shift, b = diag(1, λ, ...); needs λ^n = 1
///   DiagTripotents(n)           random diagonal tripotents from the seed
///   DiagTripotents(+-0:-++)     explicit diagonals, '+' = 1, '-' = -1, '0' = 0
///   ScalarTimesIdentity(n,+|-)  a = ±I (cube) or a = cI (λ = 1), b seeded
///   TrivialZeroB(n)             seeded a, b = 0
///   DirectSum(F,F)              block-diagonal pair
///   Conjugated(F,seed)          (S a S^-1, S b S^-1) for a seeded invertible S
///   Transposed(F)               (a^T, b^T); turns cross-cube into swapped-cube
///   DrazinPair(F)               (a^D, b^D); turns cross-cube into swapped-cube
///   ExhaustiveHit(p,n,k)        k-th nontrivial hit of the exhaustive search
class PairFamily {
 public:
  struct WeightedShift { std::size_t n; };
  struct ClockShift { std::size_t n; };
  struct DiagTripotents {
    std::size_t n;
    std::string pattern;  ///< empty: drawn from the seed
  };
  struct ScalarTimesIdentity {
    std::size_t n;
    int sign;
  };
  struct TrivialZeroB { std::size_t n; };
  struct DirectSum {
    std::shared_ptr<const PairFamily> left;
    std::shared_ptr<const PairFamily> right;
  };
  struct Conjugated {
    std::shared_ptr<const PairFamily> inner;
    std::uint64_t seed;
  };
  struct Transposed { std::shared_ptr<const PairFamily> inner; };
  struct DrazinPair { std::shared_ptr<const PairFamily> inner; };
  struct ExhaustiveHit {
    std::uint64_t p;
    std::size_t n;
    std::size_t ordinal;
  };

  using Variant = std::variant<WeightedShift, ClockShift, DiagTripotents, ScalarTimesIdentity, TrivialZeroB, DirectSum,
                               Conjugated, Transposed, DrazinPair, ExhaustiveHit>;

  template <class T>
    requires(!std::is_same_v<std::decay_t<T>, PairFamily> && std::is_constructible_v<Variant, T>)
  PairFamily(T&& v) : v_(std::forward<T>(v)) {}  // NOLINT(google-explicit-constructor)

  static PairFamily direct_sum(PairFamily left, PairFamily right);
  static PairFamily conjugated(PairFamily inner, std::uint64_t seed);
  static PairFamily transposed(PairFamily inner);
  static PairFamily drazin_pair(PairFamily inner);

  /// Throws ParseError with the offending character offset.
  static PairFamily parse(const std::string& text);
  std::string to_string() const;

  const Variant& variant() const noexcept { return v_; }

 private:
  Variant v_;
};

using MatrixPair = std::pair<Matrix, Matrix>;

/// ab = λ ba. Throws ZeroLambda, or IncompatibleFamily for families that
/// cannot realize the relation at this λ.
MatrixPair gen_lambda_pair(const PairFamily& family, const Scalar& lambda, std::uint64_t seed);
/// a^3 b = ba and b^3 a = ab.
MatrixPair gen_cube_pair(const PairFamily& family, const FieldDescriptor& field, std::uint64_t seed);
/// ab^3 = ba and ba^3 = ab.
MatrixPair gen_swapped_pair(const PairFamily& family, const FieldDescriptor& field, std::uint64_t seed);
/// Dispatches on rel.type().
MatrixPair gen_pair(const PairFamily& family, const RelationKind& rel, const FieldDescriptor& field,
                    std::uint64_t seed);

inline constexpr std::uint64_t kDefaultSearchBudget = 100'000'000;

struct SearchSpec {
  std::uint64_t p;
  std::size_t n;
  RelationKind relation;
  /// Restricts entries to these residues; all of F_p when empty.
  std::optional<std::vector<std::uint64_t>> entry_bound = std::nullopt;
  /// Drops hits with b = 0 or ab = 0.
  bool require_nontrivial = true;
  std::size_t jobs = 1;
  std::uint64_t budget = kDefaultSearchBudget;
};

/// Number of (a, b) pairs a SearchSpec enumerates, saturating at UINT64_MAX.
std::uint64_t search_space_size(const SearchSpec& spec);

/// Every pair in the space that satisfies the relation, ordered
/// lexicographically by (a entries, b entries) in row-major residue order.
/// The output does not depend on `jobs`. Throws BudgetExceeded (values =
/// {space size}) when the space exceeds the budget.
std::vector<MatrixPair> exhaustive_search(const SearchSpec& spec);

struct CorpusEntry {
  Matrix a;
  Matrix b;
  RelationKind relation;
  std::string family;
  std::uint64_t seed;
};

/// λ-commuting pairs. Over F_p with p <= 7: every nonzero λ plus a sample of
/// exhaustive hits. Otherwise λ in {2, 3, 1/2, -1, 1}; the last two admit the
/// families with both matrices invertible or a = cI.
std::vector<CorpusEntry> default_lambda_corpus(const FieldDescriptor& field);
/// Cross-cube pairs; over F_p also every nontrivial exhaustive hit with n <= 2.
std::vector<CorpusEntry> default_cube_corpus(const FieldDescriptor& field);
/// Swapped-cube pairs derived from the cube corpus (transposes and Drazin
/// pairs), plus exhaustive swapped-cube hits with n <= 2 over F_p.
std::vector<CorpusEntry> default_swapped_corpus(const FieldDescriptor& field);

}  // namespace drazinkit

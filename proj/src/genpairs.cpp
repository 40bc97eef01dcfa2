#include "drazinkit/genpairs.hpp"

#include <cctype>

#include "drazinkit/drazin.hpp"

namespace drazinkit {

long long Rng::between(long long lo, long long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long long>(engine_() % span);
}

Scalar Rng::nonzero(const FieldDescriptor& field, long long bound) {
  for (;;) {
    const long long v = between(-bound, bound);
    if (v == 0) continue;
    Scalar s = Scalar::from_int(field, v);
    if (!s.is_zero()) return s;
  }
}

Matrix random_matrix(const FieldDescriptor& field, std::size_t rows, std::size_t cols, Rng& rng, long long bound) {
  Matrix m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, Scalar::from_int(field, rng.between(-bound, bound)));
  }
  return m;
}

Matrix random_invertible(const FieldDescriptor& field, std::size_t n, Rng& rng) {
  Matrix lower = Matrix::identity(field, n);
  Matrix upper = Matrix::identity(field, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < r; ++c) {
      lower.set(r, c, Scalar::from_int(field, rng.between(-2, 2)));
      upper.set(c, r, Scalar::from_int(field, rng.between(-2, 2)));
    }
  }
  return lower * upper;
}

Matrix random_core_nilpotent(const FieldDescriptor& field, std::size_t n, Rng& rng) {
  const auto core = static_cast<std::size_t>(rng.between(0, static_cast<long long>(n)));
  Matrix block(field, n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (r < core) block.set(r, r, rng.nonzero(field, 3));
    const std::size_t end = r < core ? core : n;
    for (std::size_t c = r + 1; c < end; ++c) block.set(r, c, Scalar::from_int(field, rng.between(-2, 2)));
  }
  const Matrix s = random_invertible(field, n, rng);
  return s * block * inverse(s);
}

Matrix random_tripotent(const FieldDescriptor& field, std::size_t n, Rng& rng) {
  Matrix diag(field, n, n);
  for (std::size_t i = 0; i < n; ++i) diag.set(i, i, Scalar::from_int(field, rng.between(-1, 1)));
  const Matrix s = random_invertible(field, n, rng);
  return s * diag * inverse(s);
}

// ---------------------------------------------------------------------------
// Descriptors

PairFamily PairFamily::direct_sum(PairFamily left, PairFamily right) {
  return PairFamily{DirectSum{std::make_shared<const PairFamily>(std::move(left)),
                              std::make_shared<const PairFamily>(std::move(right))}};
}

PairFamily PairFamily::conjugated(PairFamily inner, std::uint64_t seed) {
  return PairFamily{Conjugated{std::make_shared<const PairFamily>(std::move(inner)), seed}};
}

PairFamily PairFamily::transposed(PairFamily inner) {
  return PairFamily{Transposed{std::make_shared<const PairFamily>(std::move(inner))}};
}

PairFamily PairFamily::drazin_pair(PairFamily inner) {
  return PairFamily{DrazinPair{std::make_shared<const PairFamily>(std::move(inner))}};
}

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

class DescriptorParser {
 public:
  explicit DescriptorParser(const std::string& text) : text_(text) {}

  PairFamily parse_all() {
    PairFamily f = family();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError,
                "family descriptor \"" + text_ + "\": " + what + " at offset " + std::to_string(pos_), {pos_});
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    if (start == pos_) fail("expected a family name");
    return text_.substr(start, pos_ - start);
  }

  std::uint64_t number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer");
    return std::stoull(text_.substr(start, pos_ - start));
  }

  std::size_t dimension() {
    const std::uint64_t n = number();
    if (n == 0) fail("dimension must be positive");
    return static_cast<std::size_t>(n);
  }

  /// Token made of '+', '-', '0' and ':'.
  std::string pattern() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::string_view("+-0:").find(text_[pos_]) != std::string_view::npos) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  PairFamily family() {
    const std::string name = word();
    expect('(');
    PairFamily result = [&]() -> PairFamily {
      if (name == "WeightedShift") return PairFamily::WeightedShift{dimension()};
      if (name == "ClockShift") return PairFamily::ClockShift{dimension()};
      if (name == "TrivialZeroB") return PairFamily::TrivialZeroB{dimension()};
      if (name == "DiagTripotents") {
        skip_space();
        const std::size_t save = pos_;
        const std::string pat = pattern();
        if (pat.find(':') == std::string::npos) {
          pos_ = save;
          return PairFamily::DiagTripotents{dimension(), ""};
        }
        const auto colon = pat.find(':');
        if (colon == 0 || colon * 2 + 1 != pat.size() || pat.find(':', colon + 1) != std::string::npos) {
          fail("tripotent pattern needs two equal-length diagonals separated by ':'");
        }
        return PairFamily::DiagTripotents{colon, pat};
      }
      if (name == "ScalarTimesIdentity") {
        const std::size_t n = dimension();
        expect(',');
        skip_space();
        if (pos_ >= text_.size() || (text_[pos_] != '+' && text_[pos_] != '-')) fail("expected '+' or '-'");
        const int sign = text_[pos_++] == '+' ? 1 : -1;
        return PairFamily::ScalarTimesIdentity{n, sign};
      }
      if (name == "DirectSum") {
        PairFamily left = family();
        expect(',');
        return PairFamily::direct_sum(std::move(left), family());
      }
      if (name == "Conjugated") {
        PairFamily inner = family();
        expect(',');
        return PairFamily::conjugated(std::move(inner), number());
      }
      if (name == "Transposed") return PairFamily::transposed(family());
      if (name == "DrazinPair") return PairFamily::drazin_pair(family());
      if (name == "ExhaustiveHit") {
        const std::uint64_t p = number();
        expect(',');
        const std::size_t n = dimension();
        expect(',');
        return PairFamily::ExhaustiveHit{p, n, static_cast<std::size_t>(number())};
      }
      fail("unknown family \"" + name + "\"");
    }();
    expect(')');
    return result;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

PairFamily PairFamily::parse(const std::string& text) { return DescriptorParser(text).parse_all(); }

std::string PairFamily::to_string() const {
  return std::visit(
      Overloaded{
          [](const WeightedShift& f) { return "WeightedShift(" + std::to_string(f.n) + ")"; },
          [](const ClockShift& f) { return "ClockShift(" + std::to_string(f.n) + ")"; },
          [](const DiagTripotents& f) {
            return "DiagTripotents(" + (f.pattern.empty() ? std::to_string(f.n) : f.pattern) + ")";
          },
          [](const ScalarTimesIdentity& f) {
            return "ScalarTimesIdentity(" + std::to_string(f.n) + (f.sign < 0 ? ",-)" : ",+)");
          },
          [](const TrivialZeroB& f) { return "TrivialZeroB(" + std::to_string(f.n) + ")"; },
          [](const DirectSum& f) { return "DirectSum(" + f.left->to_string() + "," + f.right->to_string() + ")"; },
          [](const Conjugated& f) { return "Conjugated(" + f.inner->to_string() + "," + std::to_string(f.seed) + ")"; },
          [](const Transposed& f) { return "Transposed(" + f.inner->to_string() + ")"; },
          [](const DrazinPair& f) { return "DrazinPair(" + f.inner->to_string() + ")"; },
          [](const ExhaustiveHit& f) {
            return "ExhaustiveHit(" + std::to_string(f.p) + "," + std::to_string(f.n) + "," + std::to_string(f.ordinal) +
                   ")";
          },
      },
      v_);
}

// ---------------------------------------------------------------------------
// Generators

namespace {

std::uint64_t child_seed(std::uint64_t seed, std::uint64_t salt) {
  // splitmix64 finalizer
  std::uint64_t z = seed + salt * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31U);
}

[[noreturn]] void incompatible(const PairFamily& family, const std::string& why) {
  throw Error(ErrorCode::IncompatibleFamily, family.to_string() + ": " + why);
}

Matrix tripotent_diagonal(const FieldDescriptor& field, std::string_view signs) {
  Matrix m(field, signs.size(), signs.size());
  for (std::size_t i = 0; i < signs.size(); ++i) {
    m.set(i, i, Scalar::from_int(field, signs[i] == '+' ? 1 : (signs[i] == '-' ? -1 : 0)));
  }
  return m;
}

MatrixPair exhaustive_hit(const PairFamily& family, const PairFamily::ExhaustiveHit& f, const RelationKind& rel,
                          const FieldDescriptor& field) {
  if (!field.is_prime_field() || field.modulus() != f.p) incompatible(family, "field must be F" + std::to_string(f.p));
  SearchSpec spec{f.p, f.n, rel};
  auto hits = exhaustive_search(spec);
  if (f.ordinal >= hits.size()) {
    incompatible(family, "only " + std::to_string(hits.size()) + " nontrivial hits exist");
  }
  return std::move(hits[f.ordinal]);
}

/// Shared structure of all three generators; `base` realizes the leaf
/// families that depend on the relation.
template <class Leaf>
MatrixPair generate(const PairFamily& family, const RelationKind& rel, const FieldDescriptor& field, std::uint64_t seed,
                    Leaf&& base) {
  return std::visit(
      Overloaded{
          [&](const PairFamily::DirectSum& f) -> MatrixPair {
            auto [la, lb] = generate(*f.left, rel, field, child_seed(seed, 1), base);
            auto [ra, rb] = generate(*f.right, rel, field, child_seed(seed, 2), base);
            return {direct_sum(la, ra), direct_sum(lb, rb)};
          },
          [&](const PairFamily::Conjugated& f) -> MatrixPair {
            auto [a, b] = generate(*f.inner, rel, field, seed, base);
            Rng rng(f.seed);
            const Matrix s = random_invertible(field, a.rows(), rng);
            const Matrix s_inv = inverse(s);
            return {s * a * s_inv, s * b * s_inv};
          },
          [&](const PairFamily::ExhaustiveHit& f) -> MatrixPair { return exhaustive_hit(family, f, rel, field); },
          [&](const PairFamily::TrivialZeroB& f) -> MatrixPair {
            Rng rng(seed);
            return {random_core_nilpotent(field, f.n, rng), Matrix(field, f.n, f.n)};
          },
          [&](const auto&) -> MatrixPair { return base(family, seed); },
      },
      family.variant());
}

MatrixPair certified(MatrixPair pair, const PairFamily& family, const RelationKind& rel) {
  if (auto v = find_violation(pair.first, pair.second, rel)) {
    throw Error(ErrorCode::InternalCertificationFailure,
                family.to_string() + " emitted a pair violating " + v->equation);
  }
  return pair;
}

MatrixPair cube_leaf(const PairFamily& family, const FieldDescriptor& field, std::uint64_t seed) {
  return std::visit(
      Overloaded{
          [&](const PairFamily::DiagTripotents& f) -> MatrixPair {
            if (!f.pattern.empty()) {
              const auto colon = f.pattern.find(':');
              return {tripotent_diagonal(field, std::string_view(f.pattern).substr(0, colon)),
                      tripotent_diagonal(field, std::string_view(f.pattern).substr(colon + 1))};
            }
            Rng rng(seed);
            std::string a_signs;
            std::string b_signs;
            for (std::size_t i = 0; i < f.n; ++i) a_signs += "+-0"[rng.between(0, 2)];
            for (std::size_t i = 0; i < f.n; ++i) b_signs += "+-0"[rng.between(0, 2)];
            return {tripotent_diagonal(field, a_signs), tripotent_diagonal(field, b_signs)};
          },
          [&](const PairFamily::ScalarTimesIdentity& f) -> MatrixPair {
            Rng rng(seed);
            const Matrix a = Scalar::from_int(field, f.sign) * Matrix::identity(field, f.n);
            return {a, random_tripotent(field, f.n, rng)};
          },
          [&](const PairFamily::DrazinPair&) -> MatrixPair { incompatible(family, "produces swapped-cube pairs"); },
          [&](const PairFamily::Transposed&) -> MatrixPair { incompatible(family, "produces swapped-cube pairs"); },
          [&](const auto&) -> MatrixPair { incompatible(family, "not a cross-cube family"); },
      },
      family.variant());
}

}  // namespace

MatrixPair gen_lambda_pair(const PairFamily& family, const Scalar& lambda, std::uint64_t seed) {
  const RelationKind rel = RelationKind::lambda_commute(lambda);
  const FieldDescriptor field = lambda.field();
  auto leaf = [&](const PairFamily& f, std::uint64_t seed) -> MatrixPair {
    return std::visit(
        Overloaded{
            [&](const PairFamily::WeightedShift& w) -> MatrixPair {
              Matrix a(field, w.n, w.n);
              Matrix b(field, w.n, w.n);
              for (std::size_t i = 0; i < w.n; ++i) {
                if (i + 1 < w.n) a.set(i, i + 1, Scalar::one(field));
                b.set(i, i, lambda.pow(static_cast<long long>(i)));
              }
              return {a, b};
            },
            [&](const PairFamily::ClockShift& c) -> MatrixPair {
              if (!lambda.pow(static_cast<long long>(c.n)).is_one()) {
                incompatible(f, "needs lambda^n = 1, lambda = " + lambda.to_string());
              }
              Matrix a(field, c.n, c.n);
              Matrix b(field, c.n, c.n);
              for (std::size_t i = 0; i < c.n; ++i) {
                a.set(i, (i + 1) % c.n, Scalar::one(field));
                b.set(i, i, lambda.pow(static_cast<long long>(i)));
              }
              return {a, b};
            },
            [&](const PairFamily::ScalarTimesIdentity& s) -> MatrixPair {
              if (!lambda.is_one()) incompatible(f, "a scalar multiple of I only lambda-commutes for lambda = 1");
              Rng rng(seed);
              const Scalar c = Scalar::from_int(field, s.sign) * rng.nonzero(field, 3);
              return {c * Matrix::identity(field, s.n), random_core_nilpotent(field, s.n, rng)};
            },
            [&](const auto&) -> MatrixPair { incompatible(f, "not a lambda-commuting family"); },
        },
        f.variant());
  };
  return certified(generate(family, rel, field, seed, leaf), family, rel);
}

MatrixPair gen_cube_pair(const PairFamily& family, const FieldDescriptor& field, std::uint64_t seed) {
  const RelationKind rel = RelationKind::cross_cube();
  auto leaf = [&](const PairFamily& f, std::uint64_t leaf_seed) { return cube_leaf(f, field, leaf_seed); };
  return certified(generate(family, rel, field, seed, leaf), family, rel);
}

MatrixPair gen_swapped_pair(const PairFamily& family, const FieldDescriptor& field, std::uint64_t seed) {
  const RelationKind rel = RelationKind::swapped_cube();
  auto leaf = [&](const PairFamily& f, std::uint64_t seed) -> MatrixPair {
    return std::visit(
        Overloaded{
            [&](const PairFamily::Transposed& t) -> MatrixPair {
              auto [a, b] = gen_cube_pair(*t.inner, field, seed);
              return {a.transpose(), b.transpose()};
            },
            [&](const PairFamily::DrazinPair& d) -> MatrixPair {
              auto [a, b] = gen_cube_pair(*d.inner, field, seed);
              return {drazin_inverse(a).d, drazin_inverse(b).d};
            },
            // Commuting tripotent families satisfy both cube relations.
            [&](const PairFamily::DiagTripotents&) -> MatrixPair { return cube_leaf(f, field, seed); },
            [&](const PairFamily::ScalarTimesIdentity&) -> MatrixPair { return cube_leaf(f, field, seed); },
            [&](const auto&) -> MatrixPair { incompatible(f, "not a swapped-cube family"); },
        },
        f.variant());
  };
  return certified(generate(family, rel, field, seed, leaf), family, rel);
}

MatrixPair gen_pair(const PairFamily& family, const RelationKind& rel, const FieldDescriptor& field,
                    std::uint64_t seed) {
  switch (rel.type()) {
    case RelationType::LambdaCommute: return gen_lambda_pair(family, rel.lambda(), seed);
    case RelationType::CrossCube: return gen_cube_pair(family, field, seed);
    case RelationType::SwappedCube: return gen_swapped_pair(family, field, seed);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown relation");
}

}  // namespace drazinkit

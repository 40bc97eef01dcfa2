#include <string>

#include "drazinkit/genpairs.hpp"

namespace drazinkit {

namespace {

PairFamily parse_family(const std::string& text) { return PairFamily::parse(text); }

std::vector<Scalar> corpus_lambdas(const FieldDescriptor& field) {
  std::vector<Scalar> out;
  if (field.is_rationals()) {
    for (const char* text : {"2", "3", "1/2", "-1", "1"}) out.push_back(Scalar::parse(field, text));
    return out;
  }
  if (field.modulus() <= 7) {
    for (std::uint64_t r = 1; r < field.modulus(); ++r) out.push_back(Scalar::from_int(field, static_cast<long long>(r)));
    return out;
  }
  for (const char* text : {"2", "3", "1/2", "-1", "1"}) out.push_back(Scalar::parse(field, text));
  return out;
}

// Largest n <= 2 whose exhaustive space fits the default budget.
std::size_t search_dimension(std::uint64_t p, const RelationKind& rel) {
  for (std::size_t n = 2; n >= 1; --n) {
    if (search_space_size(SearchSpec{p, n, rel}) <= kDefaultSearchBudget) return n;
  }
  return 0;
}

// Appends every hit, or an evenly spaced sample of at most `limit` per dimension.
void append_hits(std::vector<CorpusEntry>& out, const FieldDescriptor& field, const RelationKind& rel,
                 std::size_t limit = 0) {
  const std::size_t max_n = search_dimension(field.modulus(), rel);
  for (std::size_t n = 1; n <= max_n; ++n) {
    auto hits = exhaustive_search(SearchSpec{field.modulus(), n, rel});
    const std::size_t stride = limit == 0 || hits.size() <= limit ? 1 : (hits.size() + limit - 1) / limit;
    for (std::size_t k = 0; k < hits.size(); k += stride) {
      const std::string family = "ExhaustiveHit(" + std::to_string(field.modulus()) + "," + std::to_string(n) + "," +
                                 std::to_string(k) + ")";
      out.push_back(CorpusEntry{std::move(hits[k].first), std::move(hits[k].second), rel, family, 0});
    }
  }
}

struct Recipe {
  std::string family;
  std::uint64_t seed;
};

std::vector<Recipe> lambda_recipes() {
  std::vector<Recipe> out;
  for (int n = 2; n <= 5; ++n) out.push_back({"WeightedShift(" + std::to_string(n) + ")", 0});
  for (int n = 2; n <= 5; ++n) {
    for (int s = 1; s <= 4; ++s) out.push_back({"Conjugated(WeightedShift(" + std::to_string(n) + ")," + std::to_string(s) + ")", 0});
  }
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    out.push_back({"DirectSum(WeightedShift(2),TrivialZeroB(1))", seed});
    out.push_back({"DirectSum(TrivialZeroB(1),WeightedShift(1))", seed});
    for (int n = 2; n <= 4; ++n) out.push_back({"TrivialZeroB(" + std::to_string(n) + ")", seed});
    out.push_back({"Conjugated(DirectSum(WeightedShift(2),TrivialZeroB(1))," + std::to_string(seed + 4) + ")", seed});
  }
  out.push_back({"DirectSum(WeightedShift(2),WeightedShift(3))", 0});
  out.push_back({"DirectSum(WeightedShift(3),TrivialZeroB(2))", 3});
  return out;
}

// Families that only exist for special λ; tried and skipped when incompatible.
std::vector<Recipe> lambda_special_recipes() {
  std::vector<Recipe> out;
  for (int n = 1; n <= 4; ++n) {
    out.push_back({"ClockShift(" + std::to_string(n) + ")", 0});
    out.push_back({"Conjugated(ClockShift(" + std::to_string(n) + "),7)", 0});
  }
  out.push_back({"DirectSum(ClockShift(2),TrivialZeroB(1))", 5});
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    out.push_back({"ScalarTimesIdentity(3,+)", seed});
    out.push_back({"ScalarTimesIdentity(2,-)", seed});
  }
  return out;
}

std::vector<Recipe> cube_recipes() {
  std::vector<Recipe> out;
  out.push_back({"DiagTripotents(+-0:-++)", 0});
  out.push_back({"DiagTripotents(+++:+-0)", 0});
  for (int n = 1; n <= 5; ++n) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) out.push_back({"DiagTripotents(" + std::to_string(n) + ")", seed});
  }
  for (int n = 2; n <= 4; ++n) {
    out.push_back({"ScalarTimesIdentity(" + std::to_string(n) + ",+)", static_cast<std::uint64_t>(n)});
    out.push_back({"ScalarTimesIdentity(" + std::to_string(n) + ",-)", static_cast<std::uint64_t>(n + 10)});
  }
  for (int n = 1; n <= 4; ++n) out.push_back({"TrivialZeroB(" + std::to_string(n) + ")", static_cast<std::uint64_t>(n)});
  for (int s = 1; s <= 4; ++s) {
    out.push_back({"Conjugated(DiagTripotents(3)," + std::to_string(s) + ")", static_cast<std::uint64_t>(s)});
    out.push_back({"Conjugated(ScalarTimesIdentity(3,-)," + std::to_string(s) + ")", static_cast<std::uint64_t>(s)});
  }
  out.push_back({"DirectSum(DiagTripotents(2),ScalarTimesIdentity(2,+))", 1});
  out.push_back({"DirectSum(TrivialZeroB(2),DiagTripotents(2))", 2});
  out.push_back({"DirectSum(ScalarTimesIdentity(1,-),TrivialZeroB(2))", 3});
  out.push_back({"Conjugated(DirectSum(DiagTripotents(2),TrivialZeroB(2)),9)", 4});
  return out;
}

}  // namespace

std::vector<CorpusEntry> default_lambda_corpus(const FieldDescriptor& field) {
  std::vector<CorpusEntry> out;
  for (const Scalar& lambda : corpus_lambdas(field)) {
    const RelationKind rel = RelationKind::lambda_commute(lambda);
    for (const Recipe& r : lambda_recipes()) {
      auto [a, b] = gen_lambda_pair(parse_family(r.family), lambda, r.seed);
      out.push_back(CorpusEntry{std::move(a), std::move(b), rel, r.family, r.seed});
    }
    for (const Recipe& r : lambda_special_recipes()) {
      try {
        auto [a, b] = gen_lambda_pair(parse_family(r.family), lambda, r.seed);
        out.push_back(CorpusEntry{std::move(a), std::move(b), rel, r.family, r.seed});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::IncompatibleFamily) throw;
      }
    }
    if (field.is_prime_field()) append_hits(out, field, rel, 24);
  }
  return out;
}

std::vector<CorpusEntry> default_cube_corpus(const FieldDescriptor& field) {
  std::vector<CorpusEntry> out;
  const RelationKind rel = RelationKind::cross_cube();
  for (const Recipe& r : cube_recipes()) {
    auto [a, b] = gen_cube_pair(parse_family(r.family), field, r.seed);
    out.push_back(CorpusEntry{std::move(a), std::move(b), rel, r.family, r.seed});
  }
  if (field.is_prime_field()) append_hits(out, field, rel);
  return out;
}

std::vector<CorpusEntry> default_swapped_corpus(const FieldDescriptor& field) {
  std::vector<CorpusEntry> out;
  const RelationKind rel = RelationKind::swapped_cube();
  for (const Recipe& r : cube_recipes()) {
    for (const char* wrap : {"Transposed", "DrazinPair"}) {
      const std::string family = std::string(wrap) + "(" + r.family + ")";
      auto [a, b] = gen_swapped_pair(parse_family(family), field, r.seed);
      out.push_back(CorpusEntry{std::move(a), std::move(b), rel, family, r.seed});
    }
  }
  if (field.is_prime_field()) append_hits(out, field, rel);
  return out;
}

}  // namespace drazinkit

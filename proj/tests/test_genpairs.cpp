#include <functional>
#include <set>

#include <doctest.h>

#include "drazinkit/drazin.hpp"
#include "drazinkit/genpairs.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace drazinkit;
using testutil::qs;

namespace {

const FieldDescriptor Q = FieldDescriptor::rationals();
const FieldDescriptor F5 = FieldDescriptor::prime(5);

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

bool is_tripotent(const Matrix& m) { return mat_pow(m, 3) == m; }

}  // namespace

TEST_SUITE("genpairs") {
  TEST_CASE("weighted shift example") {
    const auto [a, b] = gen_lambda_pair(PairFamily::WeightedShift{3}, qs("2"), 0);
    CHECK(a == testutil::q({{"0", "1", "0"}, {"0", "0", "1"}, {"0", "0", "0"}}));
    CHECK(b == testutil::qdiag({1, 2, 4}));
    CHECK(a * b == qs("2") * (b * a));
  }

  TEST_CASE("explicit tripotent diagonals") {
    const auto [a, b] = gen_cube_pair(PairFamily::parse("DiagTripotents(+-0:-++)"), Q, 0);
    CHECK(a == testutil::qdiag({1, -1, 0}));
    CHECK(b == testutil::qdiag({-1, 1, 1}));
  }

  TEST_CASE("generation is deterministic in the seed") {
    const PairFamily fam = PairFamily::parse("Conjugated(DirectSum(WeightedShift(2),TrivialZeroB(2)),3)");
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      CHECK(gen_lambda_pair(fam, qs("3"), seed) == gen_lambda_pair(fam, qs("3"), seed));
    }
    const PairFamily cube = PairFamily::parse("DiagTripotents(4)");
    CHECK(gen_cube_pair(cube, F5, 9) == gen_cube_pair(cube, F5, 9));
    CHECK(default_cube_corpus(Q).size() == default_cube_corpus(Q).size());
  }

  TEST_CASE("generator errors") {
    CHECK(code_of([] { (void)gen_lambda_pair(PairFamily::WeightedShift{2}, qs("0"), 0); }) == ErrorCode::ZeroLambda);
    // (0,0) needs lambda^n = 1.
    CHECK(code_of([] { (void)gen_lambda_pair(PairFamily::ClockShift{3}, qs("2"), 0); }) ==
          ErrorCode::IncompatibleFamily);
    CHECK(code_of([] { (void)gen_cube_pair(PairFamily::WeightedShift{2}, Q, 0); }) == ErrorCode::IncompatibleFamily);
    CHECK(code_of([] { (void)gen_cube_pair(PairFamily::ExhaustiveHit{5, 2, 0}, Q, 0); }) ==
          ErrorCode::IncompatibleFamily);
    CHECK(code_of([] { (void)gen_cube_pair(PairFamily::ExhaustiveHit{3, 1, 99}, FieldDescriptor::prime(3), 0); }) ==
          ErrorCode::IncompatibleFamily);
  }

  TEST_CASE("descriptor text round trip") {
    for (const char* text :
         {"WeightedShift(3)", "ClockShift(2)", "DiagTripotents(4)", "DiagTripotents(+-0:-++)",
          "ScalarTimesIdentity(3,-)", "ScalarTimesIdentity(2,+)", "TrivialZeroB(1)",
          "DirectSum(WeightedShift(2),TrivialZeroB(1))", "Conjugated(DiagTripotents(3),17)",
          "Transposed(DiagTripotents(2))", "DrazinPair(Conjugated(ScalarTimesIdentity(3,-),2))",
          "ExhaustiveHit(3,2,56)"}) {
      CAPTURE(text);
      CHECK(PairFamily::parse(text).to_string() == text);
    }
    for (const char* bad : {"", "WeightedShift", "WeightedShift(", "WeightedShift(x)", "Unknown(2)",
                            "DirectSum(WeightedShift(2))", "DiagTripotents(+x:+)",
                            "ScalarTimesIdentity(2,*)"}) {
      CAPTURE(bad);
      CHECK(code_of([&] { (void)PairFamily::parse(bad); }) == ErrorCode::ParseError);
    }
  }

  TEST_CASE("pinned cross-cube hit") {
    const FieldDescriptor f3 = FieldDescriptor::prime(3);
    const auto [a, b] = gen_cube_pair(PairFamily::ExhaustiveHit{3, 2, 56}, f3, 0);
    CHECK(a == testutil::fp(3, {{"0", "1"}, {"2", "0"}}));
    CHECK(b == testutil::fp(3, {{"1", "1"}, {"1", "2"}}));
  }

  TEST_CASE("every default corpus entry satisfies its relation") {
    for (const FieldDescriptor& f : {Q, F5, FieldDescriptor::prime(7), FieldDescriptor::prime(2)}) {
      CAPTURE(f.name());
      for (const auto& corpus : {default_lambda_corpus(f), default_cube_corpus(f), default_swapped_corpus(f)}) {
        CHECK_FALSE(corpus.empty());
        for (const CorpusEntry& e : corpus) {
          CHECK(e.a.field() == f);
          CHECK(check_relation(e.a, e.b, e.relation));
          CHECK_NOTHROW((void)PairFamily::parse(e.family));
        }
      }
    }
  }

  TEST_CASE("lambda corpus covers the index combinations") {
    for (const FieldDescriptor& f : {Q, F5}) {
      CAPTURE(f.name());
      std::set<std::pair<std::size_t, std::size_t>> seen;
      std::set<std::string> lambdas;
      for (const CorpusEntry& e : default_lambda_corpus(f)) {
        seen.insert({compute_index(e.a), compute_index(e.b)});
        lambdas.insert(e.relation.lambda().to_string());
      }
      for (auto want : {std::pair<std::size_t, std::size_t>{2, 0}, {0, 0}, {1, 1}, {2, 1}}) {
        CAPTURE(want.first);
        CAPTURE(want.second);
        CHECK(seen.count(want) == 1);
      }
      CHECK(lambdas.size() >= 3);
    }
  }

  TEST_CASE("cube corpus covers the structural cases") {
    for (const FieldDescriptor& f : {Q, F5}) {
      CAPTURE(f.name());
      bool a_invertible = false;
      bool a_tripotent_singular = false;
      bool b_low_index = false;
      bool b_zero = false;
      bool nondiagonal = false;
      for (const CorpusEntry& e : default_cube_corpus(f)) {
        a_invertible |= compute_index(e.a) == 0;
        a_tripotent_singular |= is_tripotent(e.a) && compute_index(e.a) == 1 && !e.a.is_zero();
        b_low_index |= compute_index(e.b) <= 1 && !e.b.is_zero();
        b_zero |= e.b.is_zero();
        nondiagonal |= e.a * e.b != e.b * e.a;
      }
      CHECK(a_invertible);
      CHECK(a_tripotent_singular);
      CHECK(b_low_index);
      CHECK(b_zero);
      if (!f.is_rationals()) CHECK(nondiagonal);
    }
  }

  TEST_CASE("n = 1 search matches a hand enumeration") {
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL}) {
      for (RelationType t : {RelationType::CrossCube, RelationType::SwappedCube}) {
        const RelationKind rel = t == RelationType::CrossCube ? RelationKind::cross_cube() : RelationKind::swapped_cube();
        std::vector<std::pair<std::uint64_t, std::uint64_t>> expected;
        for (std::uint64_t a = 0; a < p; ++a) {
          for (std::uint64_t b = 1; b < p; ++b) {
            if (a * b % p == 0) continue;
            const std::uint64_t ab = a * b % p;
            const bool ok = t == RelationType::CrossCube ? (a * a % p * a % p * b % p == ab && b * b % p * b % p * a % p == ab)
                                                         : (a * b % p * b % p * b % p == ab && b * a % p * a % p * a % p == ab);
            if (ok) expected.push_back({a, b});
          }
        }
        const auto hits = exhaustive_search(SearchSpec{p, 1, rel});
        REQUIRE(hits.size() == expected.size());
        for (std::size_t i = 0; i < hits.size(); ++i) {
          CHECK(hits[i].first(0, 0).residue() == expected[i].first);
          CHECK(hits[i].second(0, 0).residue() == expected[i].second);
        }
      }
    }
    CHECK(exhaustive_search(SearchSpec{3, 1, RelationKind::cross_cube()}).size() == 4);
  }

  TEST_CASE("p = 3, n = 2 search is complete and ordered") {
    const oracle::Fp fp{3, 2};
    const auto all = fp.all();
    const FieldDescriptor f3 = FieldDescriptor::prime(3);
    struct Case {
      RelationKind rel;
      RelationType type;
      std::uint64_t lambda;
    };
    for (const Case& c : {Case{RelationKind::cross_cube(), RelationType::CrossCube, 0},
                          Case{RelationKind::swapped_cube(), RelationType::SwappedCube, 0},
                          Case{RelationKind::lambda_commute(Scalar::from_int(f3, 2)), RelationType::LambdaCommute, 2}}) {
      CAPTURE(c.rel.name());
      std::vector<std::pair<oracle::Fp::M, oracle::Fp::M>> expected;
      for (const auto& a : all) {
        for (const auto& b : all) {
          if (oracle::is_zero(b) || oracle::is_zero(fp.mul(a, b))) continue;
          if (oracle::relation_holds(fp, a, b, c.type, c.lambda)) expected.push_back({a, b});
        }
      }
      const auto hits = exhaustive_search(SearchSpec{3, 2, c.rel});
      REQUIRE(hits.size() == expected.size());
      for (std::size_t i = 0; i < hits.size(); ++i) {
        CHECK(fp.from(hits[i].first) == expected[i].first);
        CHECK(fp.from(hits[i].second) == expected[i].second);
      }
      if (c.type == RelationType::CrossCube) CHECK(hits.size() == 340);
    }
  }

  TEST_CASE("search results do not depend on the worker count") {
    for (std::uint64_t p : {3ULL, 5ULL}) {
      SearchSpec one{p, 2, RelationKind::cross_cube()};
      SearchSpec many = one;
      many.jobs = 8;
      CHECK(exhaustive_search(one) == exhaustive_search(many));
    }
    SearchSpec lam{5, 2, RelationKind::lambda_commute(Scalar::from_int(F5, 3))};
    SearchSpec lam_many = lam;
    lam_many.jobs = 3;
    CHECK(exhaustive_search(lam) == exhaustive_search(lam_many));
  }

  TEST_CASE("search options and limits") {
    CHECK(exhaustive_search(SearchSpec{5, 2, RelationKind::cross_cube()}).size() == 1384);
    CHECK(search_space_size(SearchSpec{5, 2, RelationKind::cross_cube()}) == 390625);
    CHECK(search_space_size(SearchSpec{101, 3, RelationKind::cross_cube()}) == UINT64_MAX);

    SearchSpec restricted{7, 2, RelationKind::cross_cube()};
    restricted.entry_bound = std::vector<std::uint64_t>{0, 1, 6};
    CHECK(search_space_size(restricted) == 6561);
    for (const auto& [a, b] : exhaustive_search(restricted)) {
      for (std::size_t i = 0; i < 4; ++i) {
        const auto ra = a(i / 2, i % 2).residue();
        const auto rb = b(i / 2, i % 2).residue();
        CHECK((ra == 0 || ra == 1 || ra == 6));
        CHECK((rb == 0 || rb == 1 || rb == 6));
      }
    }

    SearchSpec trivial{3, 1, RelationKind::cross_cube()};
    trivial.require_nontrivial = false;
    // Every (a, 0) and (0, b) pair qualifies: 3 + 3 - 1 trivial hits on top of 4.
    CHECK(exhaustive_search(trivial).size() == 9);

    // Over F2 the search is permitted; only the sum formula refuses that field.
    CHECK_FALSE(exhaustive_search(SearchSpec{2, 2, RelationKind::cross_cube()}).empty());
    // In dimension one, ab = 2ba forces ab = 0.
    CHECK(exhaustive_search(SearchSpec{5, 1, RelationKind::lambda_commute(Scalar::from_int(F5, 2))}).empty());

    SearchSpec big{5, 3, RelationKind::cross_cube()};
    big.budget = 1000;
    try {
      (void)exhaustive_search(big);
      FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BudgetExceeded);
      REQUIRE(e.values().size() == 1);
      CHECK(e.values()[0] == 3814697265625ULL);
    }
    CHECK(code_of([] { (void)exhaustive_search(SearchSpec{4, 2, RelationKind::cross_cube()}); }) ==
          ErrorCode::InvalidArgument);
    CHECK(code_of([] { (void)exhaustive_search(SearchSpec{3, 4, RelationKind::cross_cube()}); }) ==
          ErrorCode::InvalidArgument);
    CHECK(code_of([] {
            (void)exhaustive_search(SearchSpec{5, 2, RelationKind::lambda_commute(Scalar::from_int(Q, 2))});
          }) != ErrorCode::BudgetExceeded);
  }
}

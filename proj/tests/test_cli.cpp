#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "cli.hpp"
#include "drazinkit/json_io.hpp"

using drazinkit::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  const int code = drazinkit::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

const char* kNilpotent = R"({"field":"Q","entries":[["0","1"],["0","0"]]})";

const char* kTripotentPair = R"({
  "a": {"field":"Q","entries":[["1","0","0"],["0","-1","0"],["0","0","0"]]},
  "b": {"field":"Q","entries":[["-1","0","0"],["0","1","0"],["0","0","1"]]}
})";

const char* kWeightedShift = R"({
  "a": {"field":"Q","entries":[["0","1"],["0","0"]]},
  "b": {"field":"Q","entries":[["1","0"],["0","2"]]},
  "relation": "lambda-commute", "lambda": "2"
})";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("compute on a nilpotent matrix") {
    const Result r = invoke({"compute"}, kNilpotent);
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["index"] == 2);
    CHECK(j["d"]["entries"] == Json::parse(R"([["0","0"],["0","0"]])"));
    CHECK(j["is_group"] == false);
    // The pair form {"a": ...} is accepted as well.
    CHECK(invoke({"compute"}, std::string(R"({"a":)") + kNilpotent + "}").out == r.out);
  }

  TEST_CASE("sum formula on the tripotent pair") {
    const Result r = invoke({"thm36"}, kTripotentPair);
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["match"] == true);
    CHECK(j["m"]["entries"] == Json::parse(R"([["0","0","0"],["0","0","0"],["0","0","1"]])"));
    const Result mutated = invoke({"thm36", "--m1-coefficient", "1/4"}, kTripotentPair);
    CHECK(mutated.code == 0);  // m1 vanishes on this pair, so the coefficient is irrelevant
  }

  TEST_CASE("difference formula on the weighted shift") {
    const Result r = invoke({"thm23"}, kWeightedShift);
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["x"]["entries"] == Json::parse(R"([["-1","-1/2"],["0","-1/2"]])"));
  }

  TEST_CASE("precondition violations exit 3 and name the entry") {
    const Result r = invoke({"thm23", "--lambda", "3"}, kWeightedShift);
    CHECK(r.code == 3);
    CHECK(r.out.empty());
    const Json e = Json::parse(r.err);
    CHECK(e["error"] == "PreconditionViolated");
    CHECK(e["message"].get<std::string>().find("entry") != std::string::npos);

    CHECK(invoke({"thm23", "--lambda", "0"}, kWeightedShift).code == 3);
    CHECK(invoke({"thm36"}, R"({"a":{"field":{"Fp":2},"entries":[["1"]]},"b":{"field":{"Fp":2},"entries":[["1"]]}})")
              .code == 3);
    const Result f2 = invoke({"selftest", "--mod", "2"});
    CHECK(f2.code == 0);
    CHECK(f2.err.find("T3.6: skipped") != std::string::npos);
  }

  TEST_CASE("malformed input exits 2 with a position") {
    const Result broken = invoke({"compute"}, R"({"field":"Q","entries":[["0","1"],)");
    CHECK(broken.code == 2);
    const Json e = Json::parse(broken.err);
    CHECK(e["error"] == "ParseError");
    CHECK(e["message"].get<std::string>().find("byte") != std::string::npos);

    const Result bad_scalar = invoke({"compute"}, R"({"field":"Q","entries":[["0","x"],["0","0"]]})");
    CHECK(bad_scalar.code == 2);
    CHECK(Json::parse(bad_scalar.err)["message"].get<std::string>().rfind("/entries/0/1:", 0) == 0);

    CHECK(invoke({"compute"}, R"({"field":"Q","entries":[["0","1"]]})").code == 2);  // not square
    CHECK(invoke({"compute", "--no-such-flag"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"compute", "--input", "/nonexistent/file.json"}).code == 2);
    CHECK(invoke({"gen", "--relation", "cross-cube", "--family", "DiagTripotents("}).code == 2);
  }

  TEST_CASE("check-relation and lemmas") {
    const Result ok = invoke({"check-relation"}, kWeightedShift);
    CHECK(ok.code == 0);
    CHECK(Json::parse(ok.out)["holds"] == true);
    const Result no = invoke({"check-relation", "--lambda", "3"}, kWeightedShift);
    CHECK(no.code == 1);
    CHECK(Json::parse(no.out)["holds"] == false);

    for (const char* which : {"section-2"}) {
      const Result r = invoke({"lemmas", "--which", which}, kWeightedShift);
      CHECK(r.code == 0);
    }
    CHECK(invoke({"lemmas", "--which", "section-3"}, kTripotentPair).code == 0);
    CHECK(invoke({"lemmas", "--which", "lemma-3.3"}, kTripotentPair).code == 0);
    CHECK(invoke({"lemmas", "--which", "section-3"}, kWeightedShift).code == 3);
    CHECK(invoke({"lemmas", "--which", "nonsense"}, kWeightedShift).code == 2);
  }

  TEST_CASE("selftest over Q and F5") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"selftest"}, std::vector<std::string>{"selftest", "--field", "Fp", "--mod", "5"}}) {
      const Result r = invoke(args);
      CHECK(r.code == 0);
      const Json j = Json::parse(r.out);
      CHECK(j["all_pass"] == true);
      std::vector<std::string> names;
      for (const Json& s : j["suites"]) names.push_back(s["suite"]);
      CHECK(names == std::vector<std::string>{"L2.1", "L2.2", "L3.1", "L3.2", "L3.3", "L3.4", "L3.5", "T2.3", "T3.6"});
      for (const std::string& name : names) CHECK(r.err.find(name + ": pass") != std::string::npos);
    }
  }

  TEST_CASE("mutated coefficient fails the sum-formula suite only") {
    const Result r = invoke({"selftest", "--m1-coefficient", "1/4"});
    CHECK(r.code == 1);
    const Json j = Json::parse(r.out);
    CHECK(j["all_pass"] == false);
    for (const Json& s : j["suites"]) {
      CHECK((s["status"] == "pass") == (s["suite"] != "T3.6"));
      if (s["suite"] == "T3.6") CHECK(s.contains("first_failure"));
    }
    CHECK(r.err.find("T3.6: FAIL") != std::string::npos);
  }

  TEST_CASE("output is byte-identical across runs and worker counts") {
    CHECK(invoke({"gen", "--relation", "cross-cube"}).out == invoke({"gen", "--relation", "cross-cube"}).out);
    CHECK(invoke({"gen", "--relation", "lambda-commute", "--lambda", "2", "--family", "Conjugated(WeightedShift(3),5)",
                  "--count", "3"})
              .out == invoke({"gen", "--relation", "lambda-commute", "--lambda", "2", "--family",
                              "Conjugated(WeightedShift(3),5)", "--count", "3"})
                          .out);
    const Result one = invoke({"search", "--mod", "3", "--dim", "2", "--relation", "cross-cube", "--jobs", "1"});
    const Result eight = invoke({"search", "--mod", "3", "--dim", "2", "--relation", "cross-cube", "--jobs", "8"});
    CHECK(one.code == 0);
    CHECK(one.out == eight.out);
    CHECK(Json::parse(one.out).size() == 340);
    CHECK(invoke({"search", "--mod", "5", "--dim", "3", "--relation", "cross-cube", "--budget", "10"}).code == 3);
  }

  TEST_CASE("generated corpus feeds back into the verifiers") {
    const Result gen = invoke({"gen", "--relation", "cross-cube", "--family", "Conjugated(DiagTripotents(3),2)",
                               "--count", "2", "--seed", "7"});
    REQUIRE(gen.code == 0);
    const Json corpus = Json::parse(gen.out);
    REQUIRE(corpus.size() == 2);
    for (const Json& entry : corpus) CHECK(invoke({"thm36"}, entry.dump()).code == 0);
  }

  TEST_CASE("--output writes the document to a file") {
    const auto path = std::filesystem::temp_directory_path() / "drazinkit_cli_output_test.json";
    const Result r = invoke({"compute", "--output", path.string()}, kNilpotent);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream file(path);
    std::stringstream buf;
    buf << file.rdbuf();
    CHECK(buf.str() == invoke({"compute"}, kNilpotent).out);
    std::filesystem::remove(path);
  }
}

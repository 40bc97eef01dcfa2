#include "cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "drazinkit/json_io.hpp"

namespace drazinkit::cli {

namespace {

struct Options {
  std::string input = "-";
  std::string output;
  std::string field = "Q";
  std::uint64_t mod = 0;
  std::string lambda;
  std::uint64_t seed = 1;
  std::size_t count = 1;
  std::size_t i_max = 3;
  std::size_t jobs = 1;
  std::uint64_t budget = kDefaultSearchBudget;
  std::size_t dim = 2;
  std::string relation;
  std::string family;
  std::string which;
  std::string entries;
  bool allow_trivial = false;
  std::string m1_coefficient;
};

/// Result of one command: the stdout document and the exit code.
struct Outcome {
  Json doc;
  int code = kOk;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::FieldMismatch:
      return kMalformedInput;
    case ErrorCode::PreconditionViolated:
    case ErrorCode::ZeroLambda:
    case ErrorCode::CharacteristicTwo:
    case ErrorCode::IncompatibleFamily:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::ExponentOverflow:
    case ErrorCode::DivisionByZero:
    case ErrorCode::Singular:
    case ErrorCode::IndexTooLarge:
      return kPreconditionViolation;
    case ErrorCode::InternalCertificationFailure:
    case ErrorCode::NotNilpotentWithinBound:
      return kMismatch;
  }
  return kMismatch;
}

FieldDescriptor resolve_field(const Options& o, bool field_given) {
  if (o.field == "Q") {
    if (o.mod != 0 && !field_given) return FieldDescriptor::prime(o.mod);
    if (o.mod != 0) throw Error(ErrorCode::InvalidArgument, "--mod conflicts with --field Q");
    return FieldDescriptor::rationals();
  }
  if (o.field == "Fp") {
    if (o.mod == 0) throw Error(ErrorCode::InvalidArgument, "--field Fp needs --mod p");
    return FieldDescriptor::prime(o.mod);
  }
  if (o.field.size() > 1 && o.field[0] == 'F') {
    try {
      return FieldDescriptor::prime(std::stoull(o.field.substr(1)));
    } catch (const std::logic_error&) {
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown field \"" + o.field + "\"; use Q, Fp with --mod, or F<p>");
}

Json read_json(const Options& o, std::istream& in) {
  std::string text;
  if (o.input == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  } else {
    std::ifstream file(o.input, std::ios::binary);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot open input file " + o.input);
    std::ostringstream buf;
    buf << file.rdbuf();
    text = buf.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what(), {e.byte});
  }
}

std::optional<Scalar> flag_lambda(const Options& o, const FieldDescriptor& field) {
  if (o.lambda.empty()) return std::nullopt;
  return Scalar::parse(field, o.lambda);
}

/// The relation from --relation/--lambda, falling back to the input file.
RelationKind resolve_relation(const Options& o, const PairInput& pair, std::optional<RelationType> expected) {
  const FieldDescriptor field = pair.a.field();
  std::optional<RelationKind> rel;
  if (!o.relation.empty()) {
    std::optional<Scalar> lambda = flag_lambda(o, field);
    if (!lambda && pair.relation && pair.relation->type() == RelationType::LambdaCommute) lambda = pair.relation->lambda();
    rel = RelationKind::from_name(o.relation, lambda);
  } else if (!o.lambda.empty() && (!expected || *expected == RelationType::LambdaCommute)) {
    rel = RelationKind::lambda_commute(*flag_lambda(o, field));
  } else if (pair.relation) {
    rel = pair.relation;
  } else if (expected && *expected != RelationType::LambdaCommute) {
    rel = *expected == RelationType::CrossCube ? RelationKind::cross_cube() : RelationKind::swapped_cube();
  }
  if (!rel) throw Error(ErrorCode::InvalidArgument, "no relation given; use --relation/--lambda or a \"relation\" field");
  if (expected && rel->type() != *expected) {
    throw Error(ErrorCode::PreconditionViolated, "this command needs a different relation than " + rel->name());
  }
  return *rel;
}

/// Applies `one` to a single pair or to every pair of an array. Arrays yield
/// {"results": [...]} and fail if any element fails.
Outcome for_pairs(const Json& input, const std::function<Outcome(const PairInput&)>& one) {
  if (!input.is_array()) return one(pair_from_json(input));
  Outcome all{Json::object(), kOk};
  Json results = Json::array();
  for (std::size_t i = 0; i < input.size(); ++i) {
    Outcome r = one(pair_from_json(input[i], "/" + std::to_string(i)));
    if (r.code != kOk) all.code = r.code;
    results.push_back(std::move(r.doc));
  }
  all.doc["results"] = std::move(results);
  return all;
}

Json violation_to_json(const std::optional<RelationViolation>& v) {
  if (!v) return nullptr;
  return Json{{"equation", v->equation}, {"row", v->row}, {"col", v->col}, {"lhs", v->lhs}, {"rhs", v->rhs}};
}

Outcome cmd_compute(const Options& o, std::istream& in) {
  const Json j = read_json(o, in);
  const Json& m = j.is_object() && j.contains("a") && !j.contains("entries") ? j["a"] : j;
  return {drazin_to_json(drazin_inverse(matrix_from_json(m, &m == &j ? "" : "/a"))), kOk};
}

Outcome cmd_check_relation(const Options& o, std::istream& in) {
  return for_pairs(read_json(o, in), [&](const PairInput& p) {
    const RelationKind rel = resolve_relation(o, p, std::nullopt);
    auto v = find_violation(p.a, p.b, rel);
    Json doc;
    relation_to_json(doc, rel);
    doc["holds"] = !v.has_value();
    doc["violation"] = violation_to_json(v);
    if (rel.type() == RelationType::LambdaCommute) {
      auto consistent = lambda_determinant_consistent(p.a, p.b, rel.lambda());
      doc["determinant_consistent"] = consistent ? Json(*consistent) : Json(nullptr);
    }
    return Outcome{std::move(doc), v ? kMismatch : kOk};
  });
}

std::vector<IdentityReport> section2_reports(const Matrix& a, const Matrix& b, const Scalar& lambda, std::size_t i_max) {
  return {lemma21_suite(a, b, lambda, i_max), lemma22_suite(a, b, lambda)};
}

std::vector<IdentityReport> section3_reports(const Matrix& a, const Matrix& b, std::size_t i_max) {
  std::vector<IdentityReport> out{lemma31_suite(a, b, i_max), lemma32_suite(a, b), lemma34_suite(a, b)};
  for (std::size_t i = 0; i <= i_max; ++i) {
    for (std::size_t j = 0; j <= i_max; ++j) out.push_back(lemma35_suite(a, b, i, j));
  }
  return out;
}

Outcome cmd_lemmas(const Options& o, std::istream& in) {
  if (o.which != "section-2" && o.which != "section-3" && o.which != "lemma-3.3") {
    throw Error(ErrorCode::InvalidArgument, "--which must be section-2, section-3 or lemma-3.3");
  }
  return for_pairs(read_json(o, in), [&](const PairInput& p) {
    std::vector<IdentityReport> reports;
    if (o.which == "section-2") {
      const RelationKind rel = resolve_relation(o, p, RelationType::LambdaCommute);
      reports = section2_reports(p.a, p.b, rel.lambda(), o.i_max);
    } else if (o.which == "section-3") {
      resolve_relation(o, p, RelationType::CrossCube);
      reports = section3_reports(p.a, p.b, o.i_max);
    } else {
      resolve_relation(o, p, RelationType::SwappedCube);
      reports.push_back(lemma33_suite(p.a, p.b));
    }
    Json doc{{"reports", Json::array()}};
    bool all_pass = true;
    for (const IdentityReport& r : reports) {
      all_pass = all_pass && r.all_pass;
      Json rj = report_to_json(r);
      doc["reports"].push_back(std::move(rj));
    }
    doc["all_pass"] = all_pass;
    return Outcome{std::move(doc), all_pass ? kOk : kMismatch};
  });
}

Outcome cmd_thm23(const Options& o, std::istream& in) {
  return for_pairs(read_json(o, in), [&](const PairInput& p) {
    const RelationKind rel = resolve_relation(o, p, RelationType::LambdaCommute);
    Json doc = thm23_to_json(evaluate_thm23(p.a, p.b, rel.lambda()));
    doc["lambda"] = scalar_to_json(rel.lambda());
    const bool ok = doc["match"].get<bool>();
    return Outcome{std::move(doc), ok ? kOk : kMismatch};
  });
}

Outcome cmd_thm36(const Options& o, std::istream& in) {
  return for_pairs(read_json(o, in), [&](const PairInput& p) {
    if (p.relation && p.relation->type() != RelationType::CrossCube) {
      throw Error(ErrorCode::PreconditionViolated, "thm36 needs a cross-cube pair, input says " + p.relation->name());
    }
    const Theorem36Report r = o.m1_coefficient.empty()
                                  ? evaluate_thm36(p.a, p.b)
                                  : evaluate_thm36_with_coefficient(p.a, p.b, Scalar::parse(p.a.field(), o.m1_coefficient));
    return Outcome{thm36_to_json(r), r.match ? kOk : kMismatch};
  });
}

Outcome cmd_gen(const Options& o, const FieldDescriptor& field) {
  if (o.relation.empty()) throw Error(ErrorCode::InvalidArgument, "gen needs --relation");
  Json out = Json::array();
  if (o.family.empty()) {
    std::vector<CorpusEntry> corpus;
    if (o.relation == "lambda-commute") {
      const auto lambda = flag_lambda(o, field);
      for (CorpusEntry& e : default_lambda_corpus(field)) {
        if (!lambda || e.relation.lambda() == *lambda) corpus.push_back(std::move(e));
      }
    } else if (o.relation == "cross-cube") {
      corpus = default_cube_corpus(field);
    } else if (o.relation == "swapped-cube") {
      corpus = default_swapped_corpus(field);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown relation \"" + o.relation + "\"");
    }
    for (const CorpusEntry& e : corpus) out.push_back(corpus_entry_to_json(e));
    return {std::move(out), kOk};
  }
  const RelationKind rel = RelationKind::from_name(o.relation, flag_lambda(o, field));
  const PairFamily family = PairFamily::parse(o.family);
  for (std::size_t k = 0; k < o.count; ++k) {
    const std::uint64_t seed = o.seed + k;
    auto [a, b] = gen_pair(family, rel, field, seed);
    out.push_back(corpus_entry_to_json(CorpusEntry{std::move(a), std::move(b), rel, family.to_string(), seed}));
  }
  return {std::move(out), kOk};
}

std::vector<std::uint64_t> parse_entry_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidArgument, "--entries expects comma-separated residues, got \"" + item + "\"");
    }
  }
  return out;
}

Outcome cmd_search(const Options& o, std::ostream& err) {
  if (o.mod == 0) throw Error(ErrorCode::InvalidArgument, "search needs --mod p");
  const FieldDescriptor field = FieldDescriptor::prime(o.mod);
  if (o.relation.empty()) throw Error(ErrorCode::InvalidArgument, "search needs --relation");
  SearchSpec spec{o.mod, o.dim, RelationKind::from_name(o.relation, flag_lambda(o, field))};
  if (!o.entries.empty()) spec.entry_bound = parse_entry_list(o.entries);
  spec.require_nontrivial = !o.allow_trivial;
  spec.jobs = o.jobs;
  spec.budget = o.budget;
  const auto hits = exhaustive_search(spec);
  // Ordinals only name reproducible ExhaustiveHit families for the default space.
  const bool canonical = !spec.entry_bound && spec.require_nontrivial;
  Json out = Json::array();
  for (std::size_t k = 0; k < hits.size(); ++k) {
    const std::string tag = std::to_string(o.mod) + "," + std::to_string(o.dim) + "," + std::to_string(k) + ")";
    out.push_back(corpus_entry_to_json(CorpusEntry{hits[k].first, hits[k].second, spec.relation,
                                                   (canonical ? "ExhaustiveHit(" : "SearchHit(") + tag, 0}));
  }
  err << "search: " << hits.size() << " hits in a space of " << search_space_size(spec) << " pairs\n";
  return {std::move(out), kOk};
}

// ---- selftest ------------------------------------------------------------

struct Tally {
  std::string suite;
  std::size_t pairs = 0;
  std::size_t passed = 0;
  std::size_t diagnostic_failures = 0;
  std::optional<std::string> skipped = std::nullopt;
  Json first_failure = nullptr;

  void record(bool ok, const CorpusEntry& e, Json detail) {
    ++pairs;
    if (ok) {
      ++passed;
    } else if (first_failure.is_null()) {
      first_failure = corpus_entry_to_json(e);
      first_failure["report"] = std::move(detail);
    }
  }
  bool ok() const { return skipped || passed == pairs; }
};

Json tally_to_json(const Tally& t) {
  Json j{{"suite", t.suite}, {"pairs", t.pairs}, {"passed", t.passed}, {"diagnostic_failures", t.diagnostic_failures}};
  j["status"] = t.skipped ? "skipped" : (t.ok() ? "pass" : "fail");
  if (t.skipped) j["reason"] = *t.skipped;
  if (!t.first_failure.is_null()) j["first_failure"] = t.first_failure;
  return j;
}

void record_report(Tally& t, const CorpusEntry& e, const IdentityReport& r) {
  for (const IdentityItem& d : r.diagnostics) t.diagnostic_failures += d.pass ? 0 : 1;
  t.record(r.all_pass, e, report_to_json(r));
}

bool residual_ok(const std::optional<std::size_t>& degree, std::size_t n) { return degree && *degree <= n; }

Outcome cmd_selftest(const Options& o, const FieldDescriptor& field, std::ostream& err) {
  const auto lambda_corpus = default_lambda_corpus(field);
  const auto cube_corpus = default_cube_corpus(field);
  const auto swapped_corpus = default_swapped_corpus(field);

  Tally l21{"L2.1"}, l22{"L2.2"}, l31{"L3.1"}, l32{"L3.2"}, l33{"L3.3"}, l34{"L3.4"}, l35{"L3.5"}, t23{"T2.3"},
      t36{"T3.6"};
  for (const CorpusEntry& e : lambda_corpus) {
    const Scalar& lambda = e.relation.lambda();
    record_report(l21, e, lemma21_suite(e.a, e.b, lambda, o.i_max));
    record_report(l22, e, lemma22_suite(e.a, e.b, lambda));
    const Theorem23Report r = evaluate_thm23(e.a, e.b, lambda);
    t23.record(r.match && r.commutes && r.reflexive && residual_ok(r.residual_nilpotency_degree, e.a.rows()), e,
               thm23_to_json(r));
  }
  std::optional<Scalar> coefficient;
  if (!o.m1_coefficient.empty()) coefficient = Scalar::parse(field, o.m1_coefficient);
  if (field.characteristic() == 2) t36.skipped = "characteristic two";
  for (const CorpusEntry& e : cube_corpus) {
    record_report(l31, e, lemma31_suite(e.a, e.b, o.i_max));
    record_report(l32, e, lemma32_suite(e.a, e.b));
    record_report(l34, e, lemma34_suite(e.a, e.b));
    bool ok35 = true;
    Json failing35 = nullptr;
    for (std::size_t i = 0; i <= o.i_max; ++i) {
      for (std::size_t j = 0; j <= o.i_max; ++j) {
        const IdentityReport r = lemma35_suite(e.a, e.b, i, j);
        if (!r.all_pass && ok35) failing35 = report_to_json(r);
        ok35 = ok35 && r.all_pass;
      }
    }
    l35.record(ok35, e, std::move(failing35));
    if (t36.skipped) continue;
    const Theorem36Report r =
        coefficient ? evaluate_thm36_with_coefficient(e.a, e.b, *coefficient) : evaluate_thm36(e.a, e.b);
    t36.record(r.match && r.commutes && r.reflexive && residual_ok(r.residual_nilpotency_degree, e.a.rows()), e,
               thm36_to_json(r));
  }
  for (const CorpusEntry& e : swapped_corpus) record_report(l33, e, lemma33_suite(e.a, e.b));

  Json suites = Json::array();
  bool all_pass = true;
  for (const Tally* t : {&l21, &l22, &l31, &l32, &l33, &l34, &l35, &t23, &t36}) {
    all_pass = all_pass && t->ok();
    suites.push_back(tally_to_json(*t));
    err << t->suite << ": ";
    if (t->skipped) {
      err << "skipped (" << *t->skipped << ")\n";
    } else {
      err << (t->ok() ? "pass" : "FAIL") << " " << t->passed << "/" << t->pairs << " pairs\n";
    }
  }
  Json doc{{"field", field_to_json(field)}, {"i_max", o.i_max}, {"suites", std::move(suites)}, {"all_pass", all_pass}};
  if (coefficient) doc["m1_coefficient"] = scalar_to_json(*coefficient);
  return {std::move(doc), all_pass ? kOk : kMismatch};
}

void emit(const Options& o, const Json& doc, std::ostream& out) {
  const std::string text = dump_canonical(doc);
  if (o.output.empty() || o.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file || !(file << text)) throw Error(ErrorCode::InvalidArgument, "cannot write output file " + o.output);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact Drazin inverses and identity checks for commuting-type matrix pairs", "drazinkit"};
  app.require_subcommand(1);

  CLI::Option* field_opt = nullptr;
  auto add_field = [&](CLI::App* sub) {
    field_opt = sub->add_option("--field", o.field, "Q, Fp (with --mod) or F<p>");
    sub->add_option("--mod", o.mod, "prime modulus for --field Fp");
  };
  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--input", o.input, "JSON input file, - for stdin");
    sub->add_option("--output", o.output, "write the JSON document here instead of stdout");
  };

  CLI::App* compute = app.add_subcommand("compute", "Drazin inverse, index and spectral projector of a matrix");
  add_io(compute);

  CLI::App* check = app.add_subcommand("check-relation", "test a pair against a relation");
  add_io(check);
  check->add_option("--relation", o.relation, "lambda-commute, cross-cube or swapped-cube");
  check->add_option("--lambda", o.lambda, "lambda for lambda-commute");

  CLI::App* lemmas = app.add_subcommand("lemmas", "run the identity suites on a pair");
  add_io(lemmas);
  lemmas->add_option("--which", o.which, "section-2, section-3 or lemma-3.3")->required();
  lemmas->add_option("--lambda", o.lambda, "lambda for section-2");
  lemmas->add_option("--i-max", o.i_max, "largest power exponent");

  CLI::App* thm23 = app.add_subcommand("thm23", "closed form for (a-b)^D of a lambda-commuting pair");
  add_io(thm23);
  thm23->add_option("--lambda", o.lambda, "lambda, if the input does not carry one");

  CLI::App* thm36 = app.add_subcommand("thm36", "closed form for (a+b)^D of a cross-cube pair");
  add_io(thm36);
  thm36->add_option("--m1-coefficient", o.m1_coefficient, "replace the 1/8 coefficient (mutation testing)");

  CLI::App* gen = app.add_subcommand("gen", "generate pairs from a family, or the default corpus");
  gen->add_option("--output", o.output, "write the JSON document here instead of stdout");
  add_field(gen);
  CLI::Option* gen_field = field_opt;
  gen->add_option("--relation", o.relation, "lambda-commute, cross-cube or swapped-cube")->required();
  gen->add_option("--lambda", o.lambda, "lambda for lambda-commute");
  gen->add_option("--family", o.family, "family descriptor, e.g. Conjugated(WeightedShift(3),2)");
  gen->add_option("--seed", o.seed, "first seed");
  gen->add_option("--count", o.count, "number of pairs");

  CLI::App* search = app.add_subcommand("search", "exhaustive search over small matrices mod p");
  search->add_option("--output", o.output, "write the JSON document here instead of stdout");
  search->add_option("--mod", o.mod, "prime modulus")->required();
  search->add_option("--dim", o.dim, "matrix dimension, 1..3");
  search->add_option("--relation", o.relation, "lambda-commute, cross-cube or swapped-cube")->required();
  search->add_option("--lambda", o.lambda, "lambda for lambda-commute");
  search->add_option("--entries", o.entries, "comma-separated residues allowed as entries");
  search->add_flag("--allow-trivial", o.allow_trivial, "keep hits with b = 0 or ab = 0");
  search->add_option("--jobs", o.jobs, "worker threads");
  search->add_option("--budget", o.budget, "largest search space to accept");

  CLI::App* selftest = app.add_subcommand("selftest", "run every suite over the default corpus");
  selftest->add_option("--output", o.output, "write the JSON document here instead of stdout");
  add_field(selftest);
  CLI::Option* selftest_field = field_opt;
  selftest->add_option("--i-max", o.i_max, "largest power exponent");
  selftest->add_option("--m1-coefficient", o.m1_coefficient, "replace the 1/8 coefficient (mutation testing)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << dump_canonical(Json{{"error", "ParseError"}, {"message", e.what()}, {"values", Json::array()}});
    return kMalformedInput;
  }

  try {
    Outcome r;
    if (*compute) {
      r = cmd_compute(o, in);
    } else if (*check) {
      r = cmd_check_relation(o, in);
    } else if (*lemmas) {
      r = cmd_lemmas(o, in);
    } else if (*thm23) {
      r = cmd_thm23(o, in);
    } else if (*thm36) {
      r = cmd_thm36(o, in);
    } else if (*gen) {
      r = cmd_gen(o, resolve_field(o, gen_field->count() > 0));
    } else if (*search) {
      r = cmd_search(o, err);
    } else {
      r = cmd_selftest(o, resolve_field(o, selftest_field->count() > 0), err);
    }
    emit(o, r.doc, out);
    return r.code;
  } catch (const Error& e) {
    err << dump_canonical(error_to_json(e));
    return exit_code_for(e.code());
  } catch (const Json::exception& e) {
    err << dump_canonical(Json{{"error", "ParseError"}, {"message", e.what()}, {"values", Json::array()}});
    return kMalformedInput;
  }
}

}  // namespace drazinkit::cli

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "drazinkit/drazin.hpp"
#include "drazinkit/genpairs.hpp"
#include "drazinkit/matrix.hpp"
#include "drazinkit/relations.hpp"
#include "drazinkit/theorems.hpp"

namespace drazinkit {

using Json = nlohmann::json;

// Every *_from_json function throws Error(ParseError) whose message starts
// with the JSON pointer of the offending value, e.g. "/a/entries/1/0: ...".

Json field_to_json(const FieldDescriptor& field);
FieldDescriptor field_from_json(const Json& j, const std::string& path = "");

/// Scalars travel as their canonical text; plain JSON integers are accepted on input.
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, const FieldDescriptor& field, const std::string& path = "");

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& path = "");

Json drazin_to_json(const DrazinData& data);

/// {"relation": name, "lambda"?: s}
void relation_to_json(Json& out, const RelationKind& rel);
/// Reads "relation" and "lambda" from `obj`; nullopt when "relation" is absent.
std::optional<RelationKind> relation_from_json(const Json& obj, const FieldDescriptor& field,
                                               const std::string& path = "");

Json report_to_json(const IdentityReport& report);
Json thm23_to_json(const Theorem23Report& report);
Json thm36_to_json(const Theorem36Report& report);

/// A pair as read from an input file; relation and provenance are optional.
struct PairInput {
  Matrix a;
  Matrix b;
  std::optional<RelationKind> relation;
};

PairInput pair_from_json(const Json& j, const std::string& path = "");

Json corpus_entry_to_json(const CorpusEntry& entry);
/// Accepts either a single pair object or an array of them.
std::vector<PairInput> pairs_from_json(const Json& j);

Json error_to_json(const Error& e);

/// Sorted keys, two-space indent, trailing newline.
std::string dump_canonical(const Json& j);

}  // namespace drazinkit

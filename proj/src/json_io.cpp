#include "drazinkit/json_io.hpp"

namespace drazinkit {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, (path.empty() ? "/" : path) + ": " + what);
}

const Json& member(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) bad(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(path, std::string("missing \"") + key + "\"");
  return *it;
}

std::size_t dimension(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) bad(path, "expected a positive integer");
  return j.get<std::size_t>();
}

Json item_witness(const IdentityItem& item) {
  return Json{{"id", item.id}, {"lhs", matrix_to_json(item.lhs)}, {"rhs", matrix_to_json(item.rhs)}};
}

Json optional_degree(const std::optional<std::size_t>& degree) {
  return degree ? Json(*degree) : Json(nullptr);
}

}  // namespace

Json field_to_json(const FieldDescriptor& field) {
  if (field.is_rationals()) return "Q";
  return Json{{"Fp", field.modulus()}};
}

FieldDescriptor field_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() == "Q") return FieldDescriptor::rationals();
    bad(path, "unknown field \"" + j.get<std::string>() + "\"");
  }
  const Json& p = member(j, "Fp", path);
  if (!p.is_number_integer() || (!p.is_number_unsigned() && p.get<long long>() < 0)) bad(path + "/Fp", "expected a prime");
  try {
    return FieldDescriptor::prime(p.get<std::uint64_t>());
  } catch (const Error& e) {
    bad(path + "/Fp", e.what());
  }
}

Json scalar_to_json(const Scalar& s) { return s.to_string(); }

Scalar scalar_from_json(const Json& j, const FieldDescriptor& field, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      return Scalar::parse(field, std::to_string(j.get<std::uint64_t>()));
    }
    return Scalar::from_int(field, j.get<long long>());
  }
  if (!j.is_string()) bad(path, "expected a scalar string such as \"3\" or \"-1/2\"");
  try {
    return Scalar::parse(field, j.get<std::string>());
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

Json matrix_to_json(const Matrix& m) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    entries.push_back(std::move(row));
  }
  return Json{{"field", field_to_json(m.field())}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Matrix matrix_from_json(const Json& j, const std::string& path) {
  const FieldDescriptor field = field_from_json(member(j, "field", path), path + "/field");
  const Json& entries = member(j, "entries", path);
  if (!entries.is_array() || entries.empty()) bad(path + "/entries", "expected a nonempty array of rows");
  const std::size_t rows = j.contains("rows") ? dimension(j["rows"], path + "/rows") : entries.size();
  if (!entries[0].is_array() || entries[0].empty()) bad(path + "/entries/0", "expected a nonempty row");
  const std::size_t cols = j.contains("cols") ? dimension(j["cols"], path + "/cols") : entries[0].size();
  if (entries.size() != rows) {
    bad(path + "/entries", "has " + std::to_string(entries.size()) + " rows, expected " + std::to_string(rows));
  }
  Matrix m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_path = path + "/entries/" + std::to_string(r);
    const Json& row = entries[r];
    if (!row.is_array() || row.size() != cols) bad(row_path, "expected a row of " + std::to_string(cols) + " scalars");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, scalar_from_json(row[c], field, row_path + "/" + std::to_string(c)));
  }
  return m;
}

Json drazin_to_json(const DrazinData& data) {
  return Json{{"d", matrix_to_json(data.d)},
              {"index", data.index},
              {"pi", matrix_to_json(data.pi)},
              {"is_group", data.is_group}};
}

void relation_to_json(Json& out, const RelationKind& rel) {
  out["relation"] = rel.name();
  if (rel.type() == RelationType::LambdaCommute) out["lambda"] = scalar_to_json(rel.lambda());
}

std::optional<RelationKind> relation_from_json(const Json& obj, const FieldDescriptor& field, const std::string& path) {
  if (!obj.is_object() || !obj.contains("relation")) return std::nullopt;
  const Json& name = obj["relation"];
  if (!name.is_string()) bad(path + "/relation", "expected a relation name");
  std::optional<Scalar> lambda;
  if (obj.contains("lambda")) lambda = scalar_from_json(obj["lambda"], field, path + "/lambda");
  try {
    return RelationKind::from_name(name.get<std::string>(), lambda);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ZeroLambda) throw;
    bad(path + "/relation", e.what());
  }
}

Json report_to_json(const IdentityReport& report) {
  Json out;
  relation_to_json(out, report.relation);
  Json items = Json::array();
  Json witnesses = Json::array();
  for (const IdentityItem& item : report.items) {
    items.push_back(Json{{"id", item.id}, {"pass", item.pass}});
    if (!item.pass) witnesses.push_back(item_witness(item));
  }
  Json diagnostics = Json::array();
  for (const IdentityItem& item : report.diagnostics) {
    Json d{{"id", item.id}, {"pass", item.pass}};
    if (!item.pass) d["witness"] = item_witness(item);
    diagnostics.push_back(std::move(d));
  }
  out["items"] = std::move(items);
  out["all_pass"] = report.all_pass;
  out["witnesses"] = std::move(witnesses);
  out["diagnostics"] = std::move(diagnostics);
  return out;
}

Json thm23_to_json(const Theorem23Report& r) {
  return Json{{"w", matrix_to_json(r.w)},
              {"w_drazin", drazin_to_json(r.w_data)},
              {"neumann_b", matrix_to_json(r.neumann_b)},
              {"neumann_a", matrix_to_json(r.neumann_a)},
              {"index_a", r.index_a},
              {"index_b", r.index_b},
              {"x", matrix_to_json(r.x)},
              {"direct", drazin_to_json(r.direct)},
              {"match", r.match},
              {"commutes", r.commutes},
              {"reflexive", r.reflexive},
              {"residual_nilpotency_degree", optional_degree(r.residual_nilpotency_degree)},
              {"residual_decomposes", r.residual_decomposes}};
}

Json thm36_to_json(const Theorem36Report& r) {
  return Json{{"coefficient", scalar_to_json(r.coefficient)},
              {"m1", matrix_to_json(r.m1)},
              {"m2", matrix_to_json(r.m2)},
              {"m3", matrix_to_json(r.m3)},
              {"m", matrix_to_json(r.m)},
              {"direct", drazin_to_json(r.direct)},
              {"match", r.match},
              {"commutes", r.commutes},
              {"reflexive", r.reflexive},
              {"orthogonal", r.orthogonal},
              {"residual_nilpotency_degree", optional_degree(r.residual_nilpotency_degree)},
              {"residual_decomposes", r.residual_decomposes}};
}

PairInput pair_from_json(const Json& j, const std::string& path) {
  Matrix a = matrix_from_json(member(j, "a", path), path + "/a");
  Matrix b = matrix_from_json(member(j, "b", path), path + "/b");
  if (!(a.field() == b.field())) bad(path + "/b/field", "a and b are over different fields");
  auto rel = relation_from_json(j, a.field(), path);
  return PairInput{std::move(a), std::move(b), std::move(rel)};
}

Json corpus_entry_to_json(const CorpusEntry& entry) {
  Json out{{"a", matrix_to_json(entry.a)},
           {"b", matrix_to_json(entry.b)},
           {"provenance", Json{{"family", entry.family}, {"seed", entry.seed}}}};
  relation_to_json(out, entry.relation);
  return out;
}

std::vector<PairInput> pairs_from_json(const Json& j) {
  std::vector<PairInput> out;
  if (!j.is_array()) {
    out.push_back(pair_from_json(j));
    return out;
  }
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(pair_from_json(j[i], "/" + std::to_string(i)));
  return out;
}

Json error_to_json(const Error& e) {
  return Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}, {"values", e.values()}};
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace drazinkit

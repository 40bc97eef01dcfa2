#include "drazinkit/relations.hpp"

#include <algorithm>

namespace drazinkit {

RelationKind RelationKind::lambda_commute(const Scalar& lambda) {
  if (lambda.is_zero()) throw Error(ErrorCode::ZeroLambda, "lambda must be nonzero");
  return RelationKind{RelationType::LambdaCommute, lambda};
}

const Scalar& RelationKind::lambda() const {
  if (!lambda_) throw Error(ErrorCode::InvalidArgument, name() + " relation carries no lambda");
  return *lambda_;
}

std::string RelationKind::name() const {
  switch (type_) {
    case RelationType::LambdaCommute: return "lambda-commute";
    case RelationType::CrossCube: return "cross-cube";
    case RelationType::SwappedCube: return "swapped-cube";
  }
  return "unknown";
}

RelationKind RelationKind::from_name(const std::string& name, const std::optional<Scalar>& lambda) {
  if (name == "lambda-commute") {
    if (!lambda) throw Error(ErrorCode::InvalidArgument, "lambda-commute relation needs a lambda");
    return lambda_commute(*lambda);
  }
  if (name == "cross-cube") return cross_cube();
  if (name == "swapped-cube") return swapped_cube();
  throw Error(ErrorCode::InvalidArgument, "unknown relation \"" + name + "\"");
}

namespace {

void require_pair(const Matrix& a, const Matrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "relations need two square matrices of the same size");
  }
  if (!(a.field() == b.field())) throw Error(ErrorCode::FieldMismatch, "a and b live in different fields");
}

std::optional<RelationViolation> compare(const std::string& equation, const Matrix& lhs, const Matrix& rhs) {
  for (std::size_t r = 0; r < lhs.rows(); ++r) {
    for (std::size_t c = 0; c < lhs.cols(); ++c) {
      if (!(lhs(r, c) == rhs(r, c))) {
        return RelationViolation{equation, r, c, lhs(r, c).to_string(), rhs(r, c).to_string()};
      }
    }
  }
  return std::nullopt;
}

void require_relation(const Matrix& a, const Matrix& b, const RelationKind& rel, const char* suite) {
  if (auto v = find_violation(a, b, rel)) {
    throw Error(ErrorCode::PreconditionViolated, std::string(suite) + ": pair violates " + rel.name() + " at " +
                                                     v->equation + " entry (" + std::to_string(v->row) + "," +
                                                     std::to_string(v->col) + ")");
  }
}

/// Collects items, then sorts them once at the end.
class ReportBuilder {
 public:
  explicit ReportBuilder(RelationKind rel) : relation_(std::move(rel)) {}

  void add(std::string id, Matrix lhs, Matrix rhs) {
    const bool pass = lhs == rhs;
    items_.push_back(IdentityItem{std::move(id), std::move(lhs), std::move(rhs), pass});
  }

  void add_diagnostic(std::string id, Matrix lhs, Matrix rhs) {
    const bool pass = lhs == rhs;
    diagnostics_.push_back(IdentityItem{std::move(id), std::move(lhs), std::move(rhs), pass});
  }

  IdentityReport finish() && {
    auto by_id = [](const IdentityItem& x, const IdentityItem& y) { return x.id < y.id; };
    std::sort(items_.begin(), items_.end(), by_id);
    std::sort(diagnostics_.begin(), diagnostics_.end(), by_id);
    const bool all = std::all_of(items_.begin(), items_.end(), [](const IdentityItem& it) { return it.pass; });
    return IdentityReport{std::move(relation_), std::move(items_), all, std::move(diagnostics_)};
  }

 private:
  RelationKind relation_;
  std::vector<IdentityItem> items_;
  std::vector<IdentityItem> diagnostics_;
};

std::string indexed(const std::string& base, std::size_t i) { return base + ".i" + std::to_string(i); }

}  // namespace

std::optional<RelationViolation> find_violation(const Matrix& a, const Matrix& b, const RelationKind& rel) {
  require_pair(a, b);
  switch (rel.type()) {
    case RelationType::LambdaCommute:
      if (!(rel.lambda().field() == a.field())) throw Error(ErrorCode::FieldMismatch, "lambda from a different field");
      if (rel.lambda().is_zero()) throw Error(ErrorCode::ZeroLambda, "lambda must be nonzero");
      return compare("ab = lambda*ba", a * b, rel.lambda() * (b * a));
    case RelationType::CrossCube: {
      if (auto v = compare("a^3 b = ba", mat_pow(a, 3) * b, b * a)) return v;
      return compare("b^3 a = ab", mat_pow(b, 3) * a, a * b);
    }
    case RelationType::SwappedCube: {
      if (auto v = compare("a b^3 = ba", a * mat_pow(b, 3), b * a)) return v;
      return compare("b a^3 = ab", b * mat_pow(a, 3), a * b);
    }
  }
  return std::nullopt;
}

bool check_relation(const Matrix& a, const Matrix& b, const RelationKind& rel) {
  return !find_violation(a, b, rel).has_value();
}

std::optional<bool> lambda_determinant_consistent(const Matrix& a, const Matrix& b, const Scalar& lambda) {
  require_pair(a, b);
  const std::size_t n = a.rows();
  if (rank(a) != n || rank(b) != n) return std::nullopt;
  return lambda.pow(static_cast<long long>(n)).is_one();
}

const IdentityItem* IdentityReport::find(const std::string& id) const {
  for (const auto& item : items) {
    if (item.id == id) return &item;
  }
  for (const auto& item : diagnostics) {
    if (item.id == id) return &item;
  }
  return nullptr;
}

std::size_t default_cube_exponent_bound(const FieldDescriptor& field) noexcept {
  return field.is_rationals() ? 4 : 8;
}

IdentityReport lemma21_suite(const Matrix& a, const Matrix& b, const Scalar& lambda, std::size_t i_max) {
  const RelationKind rel = RelationKind::lambda_commute(lambda);
  require_relation(a, b, rel, "suite L2.1");
  ReportBuilder report(rel);
  const Matrix ab = a * b;
  const Matrix ba = b * a;
  for (std::size_t i = 1; i <= i_max; ++i) {
    const Matrix a_i = mat_pow(a, i);
    const Matrix b_i = mat_pow(b, i);
    const Scalar lambda_i = lambda.pow(static_cast<long long>(i));
    // Σ_{k=1}^{i-1} k; the k = 0 term of the alternative form vanishes.
    const auto triangle = static_cast<long long>(i * (i - 1) / 2);
    report.add(indexed("L2.1-1a", i), a * b_i, lambda_i * (b_i * a));
    report.add(indexed("L2.1-1b", i), a_i * b, lambda_i * (b * a_i));
    report.add(indexed("L2.1-2a", i), mat_pow(ab, i), lambda.pow(-triangle) * (a_i * b_i));
    report.add(indexed("L2.1-2b", i), mat_pow(ba, i), lambda.pow(triangle) * (b_i * a_i));
  }
  return std::move(report).finish();
}

IdentityReport lemma22_suite(const Matrix& a, const Matrix& b, const Scalar& lambda) {
  const RelationKind rel = RelationKind::lambda_commute(lambda);
  require_relation(a, b, rel, "suite L2.2");
  ReportBuilder report(rel);
  const Matrix ad = drazin_inverse(a).d;
  const Matrix bd = drazin_inverse(b).d;
  const Matrix abd = drazin_inverse(a * b).d;
  const Scalar inv = lambda.inverse();
  report.add("L2.2-1", ad * b, inv * (b * ad));
  report.add("L2.2-2", a * bd, inv * (bd * a));
  report.add("L2.2-3a", abd, bd * ad);
  report.add("L2.2-3b", abd, inv * (ad * bd));
  report.add("L2.2-aux-a", a * ad * b, b * a * ad);
  report.add("L2.2-aux-b", a * b * bd, b * bd * a);
  return std::move(report).finish();
}

IdentityReport lemma31_suite(const Matrix& a, const Matrix& b, std::size_t i_max, std::size_t exponent_bound) {
  const RelationKind rel = RelationKind::cross_cube();
  require_relation(a, b, rel, "suite L3.1");
  const std::size_t bound = exponent_bound == 0 ? default_cube_exponent_bound(a.field()) : exponent_bound;
  if (i_max > bound) {
    throw Error(ErrorCode::ExponentOverflow,
                "i_max " + std::to_string(i_max) + " exceeds the 3^i exponent bound " + std::to_string(bound), {bound});
  }
  ReportBuilder report(rel);
  const Matrix ab = a * b;
  const Matrix ba = b * a;
  std::uint64_t three_pow = 1;
  for (std::size_t i = 1; i <= i_max; ++i) {
    three_pow *= 3;
    const Matrix a_i = mat_pow(a, i);
    const Matrix b_i = mat_pow(b, i);
    report.add(indexed("L3.1-1a", i), b * a_i, mat_pow(a, 3 * i) * b);
    report.add(indexed("L3.1-1b", i), b_i * a, mat_pow(a, three_pow) * b_i);
    report.add(indexed("L3.1-2a", i), a * b_i, mat_pow(b, 3 * i) * a);
    report.add(indexed("L3.1-2b", i), a_i * b, mat_pow(b, three_pow) * a_i);
    report.add(indexed("L3.1-3a", i), ab, mat_pow(a, 26 * i) * ab * mat_pow(b, 2 * i));
    report.add(indexed("L3.1-3b", i), ba, mat_pow(b, 26 * i) * ba * mat_pow(a, 2 * i));
  }
  return std::move(report).finish();
}

IdentityReport lemma32_suite(const Matrix& a, const Matrix& b) {
  const RelationKind rel = RelationKind::cross_cube();
  require_relation(a, b, rel, "suite L3.2");
  ReportBuilder report(rel);
  const Matrix ad = drazin_inverse(a).d;
  const Matrix bd = drazin_inverse(b).d;
  const Matrix aad = a * ad;
  const Matrix bbd = b * bd;
  report.add("L3.2-1a", mat_pow(ad, 3) * b, b * ad);
  report.add("L3.2-1b", mat_pow(bd, 3) * a, a * bd);
  report.add("L3.2-2a", aad * b, b * aad);
  report.add("L3.2-2b", aad * bd, bd * aad);
  report.add("L3.2-3a", bbd * a, a * bbd);
  report.add("L3.2-3b", bbd * ad, ad * bbd);
  report.add("L3.2-4a", a * bd, bd * mat_pow(a, 3));
  // Mirror of 4a under a <-> b. The form a^D b = a^D b^3 fails on
  // noncommuting pairs and is kept only as a diagnostic.
  report.add("L3.2-4b", b * ad, ad * mat_pow(b, 3));
  report.add_diagnostic("L3.2-4b-literal", ad * b, ad * mat_pow(b, 3));
  report.add("L3.2-5a", ad * bd, bd * mat_pow(ad, 3));
  report.add("L3.2-5b", bd * ad, ad * mat_pow(bd, 3));
  report.add("L3.2-6a", ad * bd, bd * ad * mat_pow(b, 2));
  report.add("L3.2-6b", bd * ad, ad * bd * mat_pow(a, 2));
  return std::move(report).finish();
}

IdentityReport lemma33_suite(const Matrix& a, const Matrix& b) {
  const RelationKind rel = RelationKind::swapped_cube();
  require_relation(a, b, rel, "suite L3.3");
  ReportBuilder report(rel);
  const Matrix ad = drazin_inverse(a).d;
  const Matrix bd = drazin_inverse(b).d;
  report.add("L3.3-1", ad * bd, mat_pow(b, 3) * a);
  report.add("L3.3-2", bd * ad, mat_pow(a, 3) * b);
  report.add("L3.3-aux-a", ad * b, b * mat_pow(ad, 3));
  report.add("L3.3-aux-b", bd * a, a * mat_pow(bd, 3));

  // (ab)^# = b^D a^D: the Drazin inverse of ab must match, and the third
  // defining equation must already hold at k = 1 (index at most 1).
  auto add_sharp = [&](const std::string& id, const Matrix& product, const Matrix& expected) {
    report.add(id, drazin_inverse(product).d, expected);
    report.add(id + "-index", product, product * product * expected);
  };
  add_sharp("L3.3-sharp-ab", a * b, bd * ad);
  add_sharp("L3.3-sharp-ba", b * a, ad * bd);
  return std::move(report).finish();
}

IdentityReport lemma34_suite(const Matrix& a, const Matrix& b) {
  const RelationKind rel = RelationKind::cross_cube();
  require_relation(a, b, rel, "suite L3.4");
  ReportBuilder report(rel);
  const Matrix ad = drazin_inverse(a).d;
  const Matrix bd = drazin_inverse(b).d;
  const Matrix adbd = ad * bd;
  const Matrix bdad = bd * ad;
  const Matrix a2 = mat_pow(a, 2);
  const Matrix b2 = mat_pow(b, 2);
  report.add("L3.4-1a", adbd, mat_pow(bd, 3) * ad);
  report.add("L3.4-1b", adbd, bdad * a2);
  report.add("L3.4-1c", adbd, b2 * bd * ad);
  report.add("L3.4-1d", adbd, a2 * ad * b2 * bd);
  report.add("L3.4-2a", bdad, mat_pow(ad, 3) * bd);
  report.add("L3.4-2b", bdad, adbd * b2);
  report.add("L3.4-2c", bdad, a2 * ad * bd);
  report.add("L3.4-2d", bdad, b2 * bd * a2 * ad);
  return std::move(report).finish();
}

IdentityReport lemma35_suite(const Matrix& a, const Matrix& b, std::size_t i, std::size_t j) {
  const RelationKind rel = RelationKind::cross_cube();
  require_relation(a, b, rel, "suite L3.5");
  ReportBuilder report(rel);
  const Matrix ad = drazin_inverse(a).d;
  const Matrix bd = drazin_inverse(b).d;
  const Matrix aad = a * ad;
  const Matrix bbd = b * bd;
  const Matrix identity = Matrix::identity(a.field(), a.rows());
  const Matrix zero(a.field(), a.rows(), a.cols());
  const Matrix base = aad * mat_pow(a, i) * mat_pow(b, j) * bbd;
  report.add("L3.5-1", aad * mat_pow(a, 4 + i) * mat_pow(b, j) * bbd, base);
  report.add("L3.5-2", aad * mat_pow(a, 2 + i) * mat_pow(b, 2 + j) * bbd, base);
  report.add("L3.5-3", aad * a * bbd, ad * mat_pow(bd, 2));
  report.add("L3.5-4", aad * mat_pow(a, 3) * bbd, ad * bbd);
  report.add("L3.5-5", aad * mat_pow(a, 2) * b * bbd, aad * bd);
  report.add("L3.5-6", aad * a * mat_pow(b, 2) * bbd, ad * bbd);
  report.add("L3.5-7", a * b * (identity - aad), zero);
  report.add("L3.5-8", b * a * (identity - bbd), zero);
  return std::move(report).finish();
}

}  // namespace drazinkit

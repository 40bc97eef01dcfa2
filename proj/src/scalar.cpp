#include "drazinkit/scalar.hpp"

#include <array>
#include <cctype>

namespace drazinkit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::InternalCertificationFailure: return "InternalCertificationFailure";
    case ErrorCode::IndexTooLarge: return "IndexTooLarge";
    case ErrorCode::ZeroLambda: return "ZeroLambda";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ExponentOverflow: return "ExponentOverflow";
    case ErrorCode::NotNilpotentWithinBound: return "NotNilpotentWithinBound";
    case ErrorCode::CharacteristicTwo: return "CharacteristicTwo";
    case ErrorCode::IncompatibleFamily: return "IncompatibleFamily";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1U;
  }
  return result;
}

std::uint64_t reduce_mpz(const mpz_class& value, std::uint64_t m) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), m);
  return r.get_ui();
}

}  // namespace

void require_same_field(const Scalar& x, const Scalar& y) {
  if (x.modulus_or_zero() != y.modulus_or_zero()) {
    throw Error(ErrorCode::FieldMismatch,
                "scalars from different fields: " + x.field().name() + " vs " + y.field().name());
  }
}

std::uint64_t Scalar::modulus_or_zero() const noexcept {
  if (const auto* r = std::get_if<Residue>(&rep_)) return r->modulus;
  return 0;
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // Jim Sinclair's base set is exact below 2^64.
  constexpr std::array<std::uint64_t, 7> bases{2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  for (std::uint64_t base : bases) {
    std::uint64_t a = base % n;
    if (a == 0) continue;
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldDescriptor FieldDescriptor::prime(std::uint64_t p) {
  if (!is_prime(p)) {
    throw Error(ErrorCode::InvalidArgument, "field modulus " + std::to_string(p) + " is not prime");
  }
  return FieldDescriptor{p};
}

std::string FieldDescriptor::name() const {
  return is_rationals() ? std::string("Q") : "F" + std::to_string(modulus_);
}

Scalar Scalar::zero(const FieldDescriptor& field) { return from_int(field, 0); }

Scalar Scalar::one(const FieldDescriptor& field) { return from_int(field, 1); }

Scalar Scalar::from_int(const FieldDescriptor& field, long long value) {
  if (field.is_rationals()) return Scalar{mpq_class(static_cast<signed long>(value))};
  const std::uint64_t p = field.modulus();
  if (value >= 0) return Scalar{Residue{static_cast<std::uint64_t>(value) % p, p}};
  const std::uint64_t magnitude = static_cast<std::uint64_t>(-(value + 1)) + 1;
  return Scalar{Residue{(p - magnitude % p) % p, p}};
}

Scalar Scalar::from_mpz(const FieldDescriptor& field, const mpz_class& value) {
  if (field.is_rationals()) return Scalar{mpq_class(value)};
  return Scalar{Residue{reduce_mpz(value, field.modulus()), field.modulus()}};
}

Scalar Scalar::from_fraction(const FieldDescriptor& field, const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  if (field.is_rationals()) {
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar{std::move(q)};
  }
  return from_mpz(field, num) / from_mpz(field, den);
}

Scalar Scalar::parse(const FieldDescriptor& field, std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::size_t i = 0;
    if (i < part.size() && (part[i] == '-' || part[i] == '+')) ++i;
    if (i == part.size()) {
      throw Error(ErrorCode::ParseError, "malformed scalar \"" + std::string(text) + "\"");
    }
    for (std::size_t k = i; k < part.size(); ++k) {
      if (std::isdigit(static_cast<unsigned char>(part[k])) == 0) {
        throw Error(ErrorCode::ParseError, "malformed scalar \"" + std::string(text) + "\"");
      }
    }
    std::string digits(part);
    if (digits.front() == '+') digits.erase(0, 1);
    return mpz_class(digits, 10);
  };

  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return from_mpz(field, parse_int(text));
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
    throw Error(ErrorCode::ParseError, "signed denominator in scalar \"" + std::string(text) + "\"");
  }
  const mpz_class num = parse_int(text.substr(0, slash));
  const mpz_class den = parse_int(den_text);
  if (den == 0) {
    throw Error(ErrorCode::ParseError, "zero denominator in scalar \"" + std::string(text) + "\"");
  }
  if (field.is_prime_field() && reduce_mpz(den, field.modulus()) == 0) {
    throw Error(ErrorCode::ParseError, "denominator of \"" + std::string(text) + "\" vanishes in " + field.name());
  }
  return from_fraction(field, num, den);
}

FieldDescriptor Scalar::field() const {
  return FieldDescriptor{modulus_or_zero()};
}

bool Scalar::is_zero() const {
  if (const auto* r = std::get_if<Residue>(&rep_)) return r->value == 0;
  return sgn(std::get<mpq_class>(rep_)) == 0;
}

bool Scalar::is_one() const {
  if (const auto* r = std::get_if<Residue>(&rep_)) return r->value == 1 % r->modulus;
  return std::get<mpq_class>(rep_) == 1;
}

std::string Scalar::to_string() const {
  if (const auto* r = std::get_if<Residue>(&rep_)) return std::to_string(r->value);
  return std::get<mpq_class>(rep_).get_str(10);
}

const mpq_class& Scalar::rational() const {
  if (const auto* q = std::get_if<mpq_class>(&rep_)) return *q;
  throw Error(ErrorCode::FieldMismatch, "rational() called on an F_p scalar");
}

std::uint64_t Scalar::residue() const {
  if (const auto* r = std::get_if<Residue>(&rep_)) return r->value;
  throw Error(ErrorCode::FieldMismatch, "residue() called on a rational scalar");
}

Scalar Scalar::operator-() const {
  if (const auto* r = std::get_if<Residue>(&rep_)) {
    return Scalar{Residue{r->value == 0 ? 0 : r->modulus - r->value, r->modulus}};
  }
  return Scalar{mpq_class(-std::get<mpq_class>(rep_))};
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (const auto* r = std::get_if<Residue>(&rep_)) {
    // Fermat; the modulus is prime by construction.
    return Scalar{Residue{pow_mod(r->value, r->modulus - 2, r->modulus), r->modulus}};
  }
  mpq_class q = 1 / std::get<mpq_class>(rep_);
  q.canonicalize();
  return Scalar{std::move(q)};
}

Scalar Scalar::pow(long long e) const {
  if (e < 0) {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "negative power of zero");
    // -(e + 1) avoids overflow at LLONG_MIN.
    return inverse().pow(-(e + 1)) * inverse();
  }
  Scalar result = one(field());
  Scalar base = *this;
  auto k = static_cast<unsigned long long>(e);
  while (k != 0) {
    if (k & 1ULL) result *= base;
    k >>= 1ULL;
    if (k != 0) base *= base;
  }
  return result;
}

Scalar operator+(const Scalar& x, const Scalar& y) {
  require_same_field(x, y);
  if (const auto* rx = std::get_if<Scalar::Residue>(&x.rep_)) {
    const auto& ry = std::get<Scalar::Residue>(y.rep_);
    std::uint64_t s = rx->value + ry.value;
    if (s >= rx->modulus || s < rx->value) s -= rx->modulus;
    return Scalar{Scalar::Residue{s, rx->modulus}};
  }
  return Scalar{mpq_class(std::get<mpq_class>(x.rep_) + std::get<mpq_class>(y.rep_))};
}

Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

Scalar operator*(const Scalar& x, const Scalar& y) {
  require_same_field(x, y);
  if (const auto* rx = std::get_if<Scalar::Residue>(&x.rep_)) {
    const auto& ry = std::get<Scalar::Residue>(y.rep_);
    return Scalar{Scalar::Residue{mul_mod(rx->value, ry.value, rx->modulus), rx->modulus}};
  }
  return Scalar{mpq_class(std::get<mpq_class>(x.rep_) * std::get<mpq_class>(y.rep_))};
}

Scalar operator/(const Scalar& x, const Scalar& y) {
  require_same_field(x, y);
  if (y.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
  return x * y.inverse();
}

bool operator==(const Scalar& x, const Scalar& y) {
  if (x.rep_.index() != y.rep_.index()) return false;
  if (const auto* rx = std::get_if<Scalar::Residue>(&x.rep_)) {
    const auto& ry = std::get<Scalar::Residue>(y.rep_);
    return rx->modulus == ry.modulus && rx->value == ry.value;
  }
  return std::get<mpq_class>(x.rep_) == std::get<mpq_class>(y.rep_);
}

Scalar scalar_arith(const Scalar& x, const Scalar& y, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div: return x / y;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown arithmetic op");
}

}  // namespace drazinkit

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "drazinkit/error.hpp"

namespace drazinkit {

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

/// Either the rationals or a prime field F_p. The modulus 0 encodes Q.
class FieldDescriptor {
 public:
  FieldDescriptor() = default;

  static FieldDescriptor rationals() noexcept { return FieldDescriptor{}; }
  /// Throws InvalidArgument unless p is prime.
  static FieldDescriptor prime(std::uint64_t p);

  bool is_rationals() const noexcept { return modulus_ == 0; }
  bool is_prime_field() const noexcept { return modulus_ != 0; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  std::uint64_t characteristic() const noexcept { return modulus_; }

  /// "Q" or "F<p>".
  std::string name() const;

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;

 private:
  friend class Scalar;
  explicit FieldDescriptor(std::uint64_t p) : modulus_(p) {}
  std::uint64_t modulus_ = 0;
};

/// An exact element of Q or F_p. Rationals are kept reduced with a positive
/// denominator; residues live in [0, p). Values are immutable once built.
class Scalar {
 public:
  /// Rational zero.
  Scalar() = default;

  static Scalar zero(const FieldDescriptor& field);
  static Scalar one(const FieldDescriptor& field);
  static Scalar from_int(const FieldDescriptor& field, long long value);
  static Scalar from_mpz(const FieldDescriptor& field, const mpz_class& value);
  /// num/den mapped into `field`; den must be nonzero (and a unit in F_p).
  static Scalar from_fraction(const FieldDescriptor& field, const mpz_class& num,
                              const mpz_class& den);
  /// Accepts "n" or "n/d" with optional sign, in either field. Non-canonical
  /// input ("-3/6", "7" in F5) is accepted and canonicalized.
  static Scalar parse(const FieldDescriptor& field, std::string_view text);

  FieldDescriptor field() const;
  bool is_zero() const;
  bool is_one() const;

  /// Canonical text form: "n" or "n/d" over Q, decimal residue over F_p.
  std::string to_string() const;

  /// Only meaningful over Q.
  const mpq_class& rational() const;
  /// Only meaningful over F_p.
  std::uint64_t residue() const;

  Scalar operator-() const;
  Scalar inverse() const;
  /// Square-and-multiply; negative exponents invert first.
  Scalar pow(long long e) const;

  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator/(const Scalar& x, const Scalar& y);

  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }

  /// Structural equality on the canonical form; scalars of different fields
  /// compare unequal.
  friend bool operator==(const Scalar& x, const Scalar& y);

 private:
  struct Residue {
    std::uint64_t value;
    std::uint64_t modulus;
  };

  explicit Scalar(mpq_class q) : rep_(std::move(q)) {}
  explicit Scalar(Residue r) : rep_(r) {}

  std::uint64_t modulus_or_zero() const noexcept;
  friend void require_same_field(const Scalar& x, const Scalar& y);

  std::variant<mpq_class, Residue> rep_;
};

enum class ArithOp { Add, Sub, Mul, Div };

/// Checked binary arithmetic; throws FieldMismatch or DivisionByZero.
Scalar scalar_arith(const Scalar& x, const Scalar& y, ArithOp op);

}  // namespace drazinkit

#pragma once

/**
 * @file scalar.hpp
 * @brief Exact scalar types: arbitrary-precision rationals and prime-field residues.
 *
 * Both types plug into Eigen as custom scalars. Nothing in this library uses
 * floating point.
 */

#include <Eigen/Core>
#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rhi {

/// Thrown for malformed literals, mismatched fields and division by zero.
class ScalarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Exact rational number.
 *
 * Values whose numerator and denominator fit in 64 bits are stored inline;
 * anything larger is promoted to a shared immutable GMP rational. Results are
 * demoted back whenever they fit again, so the common case of small integer
 * structure constants never touches the heap.
 */
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n) {  // NOLINT(google-explicit-constructor)
    if (n == std::numeric_limits<long long>::min()) assign_small(n, 1);  // keeps the small range symmetric
  }
  Rational(int n) : num_(n) {}        // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d) { assign_small(n, d); }
  explicit Rational(const mpq_class& q) { assign(q); }

  /// Parses "a" or "a/b" with optional sign; digits may be arbitrarily long.
  static Rational parse(std::string_view text);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_small() const { return !big_; }
  mpq_class to_mpq() const;
  std::string str() const;

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  void assign(const mpq_class& q);
  void assign_small(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

/**
 * Residue modulo a runtime prime.
 *
 * A residue carries its modulus. Integer literals (as produced by Eigen's
 * Zero()/Identity()) start unbound with modulus 0 and adopt the modulus of
 * the first bound operand they meet.
 */
class Zp {
 public:
  Zp() = default;
  Zp(long long n) : raw_(n) {}  // NOLINT(google-explicit-constructor)
  Zp(int n) : raw_(n) {}        // NOLINT(google-explicit-constructor)
  Zp(long long n, std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  std::uint64_t value() const;
  bool is_zero() const { return value() == 0; }
  std::string str() const;
  Zp inverse() const;

  Zp operator-() const;
  friend Zp operator+(const Zp& a, const Zp& b);
  friend Zp operator-(const Zp& a, const Zp& b);
  friend Zp operator*(const Zp& a, const Zp& b);
  friend Zp operator/(const Zp& a, const Zp& b);
  Zp& operator+=(const Zp& o) { return *this = *this + o; }
  Zp& operator-=(const Zp& o) { return *this = *this - o; }
  Zp& operator*=(const Zp& o) { return *this = *this * o; }
  Zp& operator/=(const Zp& o) { return *this = *this / o; }
  friend bool operator==(const Zp& a, const Zp& b);

 private:
  static std::uint64_t common_modulus(const Zp& a, const Zp& b);
  std::uint64_t reduced(std::uint64_t p) const;

  long long raw_ = 0;     // unbound literal value when p_ == 0, residue otherwise
  std::uint64_t p_ = 0;
};

/// Coefficient field of an algebra: ℚ or 𝔽ₚ.
struct FieldSpec {
  enum class Kind { rationals, prime };
  Kind kind = Kind::rationals;
  std::uint64_t characteristic = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint64_t p);

  std::string name() const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t n);

template <class S>
concept ExactScalar = std::same_as<S, Rational> || std::same_as<S, Zp>;

/// Uniform construction and inspection of scalars for a given field.
template <ExactScalar S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static Rational from_int(const FieldSpec&, long long n) { return Rational(n); }
  static Rational parse(const FieldSpec&, std::string_view text) { return Rational::parse(text); }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static std::string str(const Rational& x) { return x.str(); }
  static bool matches(const FieldSpec& f) { return f.kind == FieldSpec::Kind::rationals; }
};

template <>
struct ScalarOps<Zp> {
  static Zp from_int(const FieldSpec& f, long long n) { return Zp(n, f.characteristic); }
  static Zp parse(const FieldSpec& f, std::string_view text);
  static bool is_zero(const Zp& x) { return x.is_zero(); }
  static std::string str(const Zp& x) { return x.str(); }
  static bool matches(const FieldSpec& f) { return f.kind == FieldSpec::Kind::prime; }
};

template <ExactScalar S>
bool is_zero(const S& x) {
  return ScalarOps<S>::is_zero(x);
}

template <ExactScalar S>
std::string to_string(const S& x) {
  return ScalarOps<S>::str(x);
}

std::ostream& operator<<(std::ostream& os, const Rational& x);
std::ostream& operator<<(std::ostream& os, const Zp& x);

}  // namespace rhi

namespace Eigen {

template <>
struct NumTraits<rhi::Rational> : GenericNumTraits<rhi::Rational> {
  using Real = rhi::Rational;
  using NonInteger = rhi::Rational;
  using Literal = rhi::Rational;
  using Nested = rhi::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 4
  };
  static rhi::Rational epsilon() { return 0; }
  static rhi::Rational dummy_precision() { return 0; }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<rhi::Zp> : GenericNumTraits<rhi::Zp> {
  using Real = rhi::Zp;
  using NonInteger = rhi::Zp;
  using Literal = rhi::Zp;
  using Nested = rhi::Zp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 2
  };
  static rhi::Zp epsilon() { return 0; }
  static rhi::Zp dummy_precision() { return 0; }
  static int digits10() { return 0; }
};

}  // namespace Eigen

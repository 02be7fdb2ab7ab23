#pragma once

#include <cbo/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cbo {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

constexpr bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// The base field: the rationals or GF(p) with p prime, p < 2^31.
class FieldSpec {
public:
  enum class Kind { rationals, prime };

  static FieldSpec rationals() noexcept { return FieldSpec{Kind::rationals, 0}; }

  static FieldSpec prime(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
      throw DomainError("GF(p) requires a prime p < 2^31, got " + std::to_string(p));
    return FieldSpec{Kind::prime, static_cast<std::uint32_t>(p)};
  }

  /// Accepts "rational" or a decimal prime literal.
  static FieldSpec parse(std::string_view text) {
    if (text == "rational" || text == "rationals" || text == "Q") return rationals();
    std::uint64_t p = 0;
    if (text.empty() || text.size() > 10) throw DomainError("bad field '" + std::string(text) + "'");
    for (char c : text) {
      if (c < '0' || c > '9') throw DomainError("bad field '" + std::string(text) + "'");
      p = p * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return prime(p);
  }

  Kind kind() const noexcept { return kind_; }
  bool is_prime_field() const noexcept { return kind_ == Kind::prime; }
  /// 0 for the rationals.
  std::uint32_t modulus() const noexcept { return p_; }

  std::string name() const { return is_prime_field() ? std::to_string(p_) : "rational"; }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
  FieldSpec(Kind k, std::uint32_t p) noexcept : kind_(k), p_(p) {}
  Kind kind_;
  std::uint32_t p_;
};

/// Arithmetic policy for GF(p) on raw residues. Used by the elimination
/// kernels, which are templated on the policy so the counting loops never
/// touch Scalar.
struct ModPOps {
  using value_type = std::uint32_t;

  explicit ModPOps(std::uint32_t modulus) : p(modulus) {}

  /// Same policy with a precomputed inverse table (p < 2^16 only); used by
  /// the hot elimination loops.
  static ModPOps with_inverse_table(std::uint32_t modulus) {
    ModPOps ops(modulus);
    ops.build_table();
    return ops;
  }

  void build_table() {
    if (p < (1u << 16)) {
      inverses.assign(p, 0);
      if (p > 1) inverses[1] = 1;
      for (std::uint32_t a = 2; a < p; ++a)
        inverses[a] = static_cast<std::uint32_t>(
            (p - static_cast<std::uint64_t>(p / a) * inverses[p % a] % p) % p);
    }
  }

  std::uint32_t p;
  std::vector<std::uint32_t> inverses;

  static constexpr value_type zero() noexcept { return 0; }
  static constexpr bool is_zero(value_type a) noexcept { return a == 0; }
  value_type add(value_type a, value_type b) const noexcept {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  value_type sub(value_type a, value_type b) const noexcept { return a >= b ? a - b : a + (p - b); }
  value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p - a; }
  value_type mul(value_type a, value_type b) const noexcept {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p);
  }
  value_type inv(value_type a) const {
    if (a == 0) throw DomainError("division by zero in GF(" + std::to_string(p) + ")");
    if (!inverses.empty()) return inverses[a];
    // extended Euclid
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      t -= q * new_t;
      std::swap(t, new_t);
      r -= q * new_r;
      std::swap(r, new_r);
    }
    return static_cast<value_type>(t < 0 ? t + p : t);
  }
  /// a - f*b
  value_type sub_mul(value_type a, value_type f, value_type b) const noexcept { return sub(a, mul(f, b)); }
};

struct RationalOps {
  using value_type = Rational;

  static value_type zero() { return Rational{0}; }
  static bool is_zero(const value_type& a) { return a == 0; }
  static value_type add(const value_type& a, const value_type& b) { return a + b; }
  static value_type sub(const value_type& a, const value_type& b) { return a - b; }
  static value_type neg(const value_type& a) { return -a; }
  static value_type mul(const value_type& a, const value_type& b) { return a * b; }
  static value_type inv(const value_type& a) {
    if (a == 0) throw DomainError("division by zero in Q");
    return 1 / a;
  }
  static value_type sub_mul(const value_type& a, const value_type& f, const value_type& b) { return a - f * b; }
};

/// An exact element of a FieldSpec. Rationals stay in lowest terms with a
/// positive denominator (cpp_rational normalizes on every operation).
class Scalar {
public:
  explicit Scalar(FieldSpec field = FieldSpec::rationals()) : field_(field) {
    if (field_.is_prime_field()) value_ = std::uint32_t{0};
  }

  static Scalar from_int(FieldSpec field, long long v) {
    Scalar s(field);
    if (field.is_prime_field()) {
      long long p = field.modulus();
      long long r = v % p;
      s.value_ = static_cast<std::uint32_t>(r < 0 ? r + p : r);
    } else {
      s.value_ = Rational{v};
    }
    return s;
  }

  static Scalar from_rational(FieldSpec field, const Rational& q) {
    if (!field.is_prime_field()) {
      Scalar s(field);
      s.value_ = q;
      return s;
    }
    Integer p = field.modulus();
    Integer num = boost::multiprecision::numerator(q) % p;
    Integer den = boost::multiprecision::denominator(q) % p;
    if (num < 0) num += p;
    if (den == 0) throw DomainError("denominator vanishes in GF(" + field.name() + ")");
    ModPOps ops(field.modulus());
    Scalar s(field);
    s.value_ = ops.mul(num.convert_to<std::uint32_t>(), ops.inv(den.convert_to<std::uint32_t>()));
    return s;
  }

  const FieldSpec& field() const noexcept { return field_; }

  bool is_zero() const {
    if (field_.is_prime_field()) return std::get<std::uint32_t>(value_) == 0;
    return std::get<Rational>(value_) == 0;
  }

  const Rational& rational() const {
    if (field_.is_prime_field()) throw DomainError("scalar is not rational");
    return std::get<Rational>(value_);
  }

  std::uint32_t residue() const {
    if (!field_.is_prime_field()) throw DomainError("scalar is not a residue");
    return std::get<std::uint32_t>(value_);
  }

  std::string to_string() const {
    if (field_.is_prime_field()) return std::to_string(residue());
    const Rational& q = rational();
    if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
  }

  Scalar operator+(const Scalar& o) const { return combine(o, [](auto& ops, auto a, auto b) { return ops.add(a, b); }); }
  Scalar operator-(const Scalar& o) const { return combine(o, [](auto& ops, auto a, auto b) { return ops.sub(a, b); }); }
  Scalar operator*(const Scalar& o) const { return combine(o, [](auto& ops, auto a, auto b) { return ops.mul(a, b); }); }
  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }
  Scalar operator-() const { return Scalar(field_) - *this; }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar inverse() const {
    Scalar s(field_);
    if (field_.is_prime_field())
      s.value_ = ModPOps(field_.modulus()).inv(residue());
    else
      s.value_ = RationalOps::inv(rational());
    return s;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.field_ == b.field_ && a.value_ == b.value_; }

private:
  template <class F>
  Scalar combine(const Scalar& o, F f) const {
    if (!(field_ == o.field_)) throw DomainError("field mismatch");
    Scalar s(field_);
    if (field_.is_prime_field()) {
      ModPOps ops(field_.modulus());
      s.value_ = f(ops, residue(), o.residue());
    } else {
      RationalOps ops;
      s.value_ = f(ops, rational(), o.rational());
    }
    return s;
  }

  FieldSpec field_;
  std::variant<Rational, std::uint32_t> value_;
};

} // namespace cbo

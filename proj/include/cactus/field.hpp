// Exact scalar fields: the rationals (GMP-backed) and prime fields F_p with a
// runtime modulus. Both plug into Eigen through NumTraits so that sparse and
// dense Eigen containers can hold them directly.
#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cactus {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element of Z/p for a prime p carried by the value itself.
///
/// Values built from plain integer literals (as Eigen does for zero and one)
/// have modulus 0 and adopt the modulus of whatever they are combined with.
class Fp {
 public:
  Fp() = default;
  Fp(int v) : value_(v) {}  // NOLINT: literal conversion used by Eigen
  Fp(long long v, std::uint32_t p) : modulus_(p) { value_ = reduce(v, p); }

  std::uint32_t modulus() const { return modulus_; }
  long long value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  Fp inverse() const {
    if (modulus_ == 0) {
      if (value_ == 1 || value_ == -1) return *this;
      throw FieldError("inverse of a modulus-free F_p literal");
    }
    if (value_ == 0) throw FieldError("division by zero in F_p");
    // Fermat: a^(p-2)
    return pow(modulus_ - 2);
  }

  Fp pow(std::uint64_t e) const {
    Fp base = *this;
    Fp acc(1, modulus_);
    if (modulus_ == 0) acc = Fp(1);
    while (e > 0) {
      if (e & 1U) acc *= base;
      base *= base;
      e >>= 1U;
    }
    return acc;
  }

  Fp& operator+=(const Fp& o) {
    const auto p = common(o);
    value_ = reduce(value_ + o.value_, p);
    modulus_ = p;
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    const auto p = common(o);
    value_ = reduce(value_ - o.value_, p);
    modulus_ = p;
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    const auto p = common(o);
    value_ = reduce(value_ * o.value_, p);
    modulus_ = p;
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend Fp operator-(const Fp& a) {
    Fp r;
    r.modulus_ = a.modulus_;
    r.value_ = reduce(-a.value_, a.modulus_);
    return r;
  }

  friend bool operator==(const Fp& a, const Fp& b) {
    const auto p = a.common(b);
    return reduce(a.value_, p) == reduce(b.value_, p);
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.value_; }

 private:
  static long long reduce(long long v, std::uint32_t p) {
    if (p == 0) return v;
    v %= static_cast<long long>(p);
    return v < 0 ? v + p : v;
  }
  std::uint32_t common(const Fp& o) const {
    if (modulus_ != 0 && o.modulus_ != 0 && modulus_ != o.modulus_)
      throw FieldError("mixing elements of different prime fields");
    return modulus_ != 0 ? modulus_ : o.modulus_;
  }

  long long value_ = 0;
  std::uint32_t modulus_ = 0;
};

template <typename S>
concept ExactScalar = std::same_as<S, Rational> || std::same_as<S, Fp>;

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const Fp& x) { return x.is_zero(); }

inline std::string to_string(const Rational& x) { return x.str(); }
inline std::string to_string(const Fp& x) { return std::to_string(x.value()); }

bool is_prime(std::uint64_t n);

/// Context needed to create scalars of a field from integers and text.
template <ExactScalar S>
struct Field;

template <>
struct Field<Rational> {
  Rational from_int(long long v) const { return Rational(v); }
  Rational parse(std::string_view text) const;
  std::string name() const { return "Q"; }
  std::uint32_t characteristic() const { return 0; }
};

template <>
struct Field<Fp> {
  explicit Field(std::uint32_t p) : prime(p) {
    if (!is_prime(p)) throw FieldError("modulus " + std::to_string(p) + " is not prime");
    if (p >= (1U << 31)) throw FieldError("prime modulus must be below 2^31");
  }
  Fp from_int(long long v) const { return Fp(v, prime); }
  Fp parse(std::string_view text) const;
  std::string name() const { return "F" + std::to_string(prime); }
  std::uint32_t characteristic() const { return prime; }

  std::uint32_t prime;
};

/// Runtime field selection: `q` / `Q` for the rationals, `p:<prime>` for F_p.
struct FieldSpec {
  std::uint32_t prime = 0;  // 0 means Q

  bool rational() const { return prime == 0; }
  std::string name() const { return rational() ? "Q" : "F" + std::to_string(prime); }

  static FieldSpec parse(std::string_view text);
};

}  // namespace cactus

namespace Eigen {

template <>
struct NumTraits<cactus::Fp> : GenericNumTraits<cactus::Fp> {
  using Real = cactus::Fp;
  using NonInteger = cactus::Fp;
  using Literal = cactus::Fp;
  using Nested = cactus::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 0,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  static inline Real highest() { return Real(0); }
  static inline Real lowest() { return Real(0); }
};

}  // namespace Eigen

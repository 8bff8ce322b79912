#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace mqg {

/// Exact rational number. Always reduced; the denominator is positive.
///
/// Thin value wrapper over GMP's mpq so that no expression templates leak
/// into Eigen or into generic code.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses `p`, `-p`, or `p/q`.
  static Rational parse(std::string_view text);

  [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
  [[nodiscard]] bool is_one() const { return q_ == 1; }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] const mpq_class& raw() const { return q_; }

  /// Always `p/q`, also for integers (`3/1`), so downstream tools never
  /// have to guess the shape.
  [[nodiscard]] std::string str() const;
  /// `p` for integers, `p/q` otherwise.
  [[nodiscard]] std::string short_str() const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.short_str(); }

 private:
  mpq_class q_{0};
};

using Scalar = Rational;

/// Integer power, negative exponents allowed for nonzero bases.
Rational pow(const Rational& base, long exponent);

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace mqg

namespace Eigen {

template <>
struct NumTraits<mqg::Rational> : GenericNumTraits<mqg::Rational> {
  using Real = mqg::Rational;
  using NonInteger = mqg::Rational;
  using Nested = mqg::Rational;
  using Literal = mqg::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

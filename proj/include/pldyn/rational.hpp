// Exact rational numbers used for every coordinate, slope and distance.

#ifndef PLDYN_RATIONAL_HPP_
#define PLDYN_RATIONAL_HPP_

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pldyn {

// Canonical reduced fraction with positive denominator. Thin value wrapper
// over GMP so no operation can ever round.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(runtime/explicit)
  Rational(long num, long den);
  explicit Rational(mpq_class value);

  // Accepts "p/q", "p" and a leading sign. Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  // "p/q", or "p" when the denominator is 1.
  [[nodiscard]] std::string str() const;
  // Decimal approximation for human-facing labels only.
  [[nodiscard]] double approx() const { return value_.get_d(); }

  [[nodiscard]] const mpq_class& raw() const { return value_; }
  [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] bool is_integer() const;

  Rational& operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
  }
  // Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    return Rational(mpq_class(-a.value_));
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

  [[nodiscard]] std::size_t hash() const;

 private:
  mpq_class value_;
};

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
// Largest integer <= r.
long floor_int(const Rational& r);
// Smallest integer >= r.
long ceil_int(const Rational& r);
// r - floor(r), in [0,1).
Rational frac(const Rational& r);

// Powers of two as rationals; k may be negative.
Rational pow2(long k);

}  // namespace pldyn

template <>
struct std::hash<pldyn::Rational> {
  std::size_t operator()(const pldyn::Rational& r) const noexcept {
    return r.hash();
  }
};

#endif  // PLDYN_RATIONAL_HPP_

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace isosep {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Backed by 64-bit integers; every intermediate product is formed in 128 bits
/// and an std::overflow_error is raised if the reduced result does not fit.
/// Results are therefore either exact or an error, never silently rounded.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  /// Smallest integer >= this.
  std::int64_t ceil() const;
  /// Largest integer <= this.
  std::int64_t floor() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "n" for integers, "p/q" otherwise.
  std::string to_string() const;
  /// Accepts "n", "-n", "p/q"; whitespace is not allowed. Throws InvalidInput.
  static Rational parse(std::string_view text);

 private:
  static Rational from_wide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// A rational or +infinity. Used for infima over possibly empty sets.
class ExtRational {
 public:
  constexpr ExtRational() = default;
  ExtRational(Rational v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static ExtRational infinity() {
    ExtRational e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  /// Precondition: finite.
  const Rational& value() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

  /// "inf" or the rational's string form.
  std::string to_string() const;
  static ExtRational parse(std::string_view text);

 private:
  Rational value_{};
  bool infinite_ = false;
};

/// Division that maps +inf / positive = +inf.
ExtRational operator/(const ExtRational& a, const Rational& b);
ExtRational operator*(const ExtRational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const ExtRational& r);

}  // namespace isosep

template <>
struct std::hash<isosep::Rational> {
  std::size_t operator()(const isosep::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 31u + std::hash<std::int64_t>{}(r.den());
  }
};

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace mlayers {

/// Exact rational number on 64-bit numerator and denominator.
///
/// Always stored reduced with a positive denominator. Intermediate products
/// use 128-bit arithmetic; a result that does not fit in 64 bits throws
/// std::overflow_error instead of wrapping.
class Rational {
public:
  constexpr Rational() noexcept = default;
  constexpr Rational(std::int64_t n) noexcept : num_(n) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d);

  [[nodiscard]] std::int64_t num() const noexcept { return num_; }
  [[nodiscard]] std::int64_t den() const noexcept { return den_; }

  [[nodiscard]] bool is_zero() const noexcept { return num_ == 0; }
  [[nodiscard]] bool is_one() const noexcept { return num_ == 1 && den_ == 1; }
  [[nodiscard]] bool in_unit_interval() const noexcept { return num_ >= 0 && num_ <= den_; }

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  /// Throws std::domain_error on division by zero.
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "p/q", or "p" when the denominator is 1.
  [[nodiscard]] std::string str() const;

  /// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  [[nodiscard]] std::size_t hash() const noexcept {
    return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
  }

private:
  static Rational from_wide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace mlayers

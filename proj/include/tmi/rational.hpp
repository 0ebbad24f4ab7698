#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tmi {

// Exact signed rational over 64-bit integers. Kept deliberately small:
// frequencies derived from tick intervals always have numerator 0 or +/-1,
// so no overflow-prone arithmetic is needed beyond normalization and
// cross-multiplied comparison.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;  // always > 0 after normalization

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num == 0) {
      den = 1;
      return;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num /= g;
    den /= g;
  }

  bool is_zero() const { return num == 0; }

  Rational operator-() const { return Rational(-num, den); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num) * b.den;
    const __int128 rhs = static_cast<__int128>(b.num) * a.den;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

}  // namespace tmi

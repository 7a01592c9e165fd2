#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace altic {

// Exact rational arithmetic on int64 numerator/denominator. Probabilities,
// rates and capacities in this library are ratios of small integers, so exact
// representation avoids every tolerance question except where floating point
// is explicitly requested (bits-per-use values). Intermediates go through
// __int128; a result that cannot be reduced back into int64 throws.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "3", "-3", "2/9", and plain decimals like "0.25".
  static Rational parse(std::string_view text);

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  using i128 = __int128;

  static Rational from128(i128 num, i128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 g = gcd128(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr i128 lo = std::numeric_limits<std::int64_t>::min();
    constexpr i128 hi = std::numeric_limits<std::int64_t>::max();
    if (num < lo || num > hi || den > hi) {
      throw std::overflow_error("rational value out of 64-bit range");
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void normalize() {
    Rational r = from128(num_, den_);
    num_ = r.num_;
    den_ = r.den_;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational Rational::parse(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw ConfigError("empty rational literal");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      std::size_t pn = 0, pd = 0;
      const std::int64_t num = std::stoll(s.substr(0, slash), &pn);
      const std::int64_t den = std::stoll(s.substr(slash + 1), &pd);
      if (pn != slash || pd != s.size() - slash - 1) {
        throw ConfigError("malformed rational literal: " + s);
      }
      return Rational(num, den);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      const std::string frac = s.substr(dot + 1);
      std::size_t pi = 0, pf = 0;
      const std::int64_t whole = std::stoll(s.substr(0, dot), &pi);
      if (frac.size() > 18) throw ConfigError("too many decimal digits: " + s);
      const std::int64_t frac_num = frac.empty() ? 0 : std::stoll(frac, &pf);
      if (pi != dot || pf != frac.size() || frac_num < 0) {
        throw ConfigError("malformed decimal literal: " + s);
      }
      std::int64_t scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      const bool neg = s[0] == '-';
      const Rational mag = Rational(whole < 0 ? -whole : whole) +
                           Rational(frac_num, scale);
      return neg ? -mag : mag;
    }
    std::size_t pos = 0;
    const std::int64_t v = std::stoll(s, &pos);
    if (pos != s.size()) throw ConfigError("malformed integer literal: " + s);
    return Rational(v);
  } catch (const std::invalid_argument&) {
    throw ConfigError("malformed rational literal: " + s);
  } catch (const std::out_of_range&) {
    throw ConfigError("rational literal out of range: " + s);
  }
}

inline const Rational& min(const Rational& a, const Rational& b) {
  return b < a ? b : a;
}

}  // namespace altic

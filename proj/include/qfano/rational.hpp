#ifndef QFANO_RATIONAL_HPP
#define QFANO_RATIONAL_HPP

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qfano {

// Exact rational scalar.  Stored canonically: gcd(|num|, den) == 1, den > 0.
//
// Storage is 64-bit with all intermediates widened to 128 bits; any result
// that does not fit back into 64 bits after reduction throws overflow_error
// instead of silently wrapping.  Every quantity in this project stays far
// below that limit, so the guard is a proof of exactness, not a restriction.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(long long n, long long d) { assign(n, d); }

  static Rational from_parts(std::int64_t n, std::int64_t d) { return Rational(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  bool is_half_integer() const { return den_ == 1 || den_ == 2; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  // Valid only when is_integer().
  std::int64_t as_integer() const {
    if (den_ != 1) throw std::domain_error("Rational: " + str() + " is not an integer");
    return num_;
  }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

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

  // "p/q" with q == 1 elided; never a decimal.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "p" or "p/q" with optional leading '-'.  Throws on anything else.
  static Rational parse(const std::string& text);

 private:
  using i128 = __int128;

  void assign(std::int64_t n, std::int64_t d) { *this = make(n, d); }

  static Rational make(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 an = n < 0 ? -n : n;
    i128 g = gcd128(an, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr i128 kMax = INT64_MAX;
    if (n > kMax || n < -kMax || d > kMax) throw std::overflow_error("Rational: 64-bit overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  std::int64_t num_;
  std::int64_t den_;
};

inline Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("Rational: empty string");
  std::size_t slash = text.find('/');
  auto parse_int = [](const std::string& s) -> std::int64_t {
    std::size_t pos = 0;
    long long v;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("Rational: bad integer '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("Rational: bad integer '" + s + "'");
    return v;
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  std::int64_t n = parse_int(text.substr(0, slash));
  std::int64_t d = parse_int(text.substr(slash + 1));
  if (d <= 0) throw std::invalid_argument("Rational: denominator must be positive in '" + text + "'");
  return Rational(n, d);
}

struct RationalHash {
  std::size_t operator()(const Rational& r) const {
    std::size_t h = std::hash<std::int64_t>()(r.num());
    return h ^ (std::hash<std::int64_t>()(r.den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

}  // namespace qfano

#endif

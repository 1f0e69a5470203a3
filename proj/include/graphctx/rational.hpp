#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace graphctx {

// Exact rational arithmetic for edge weights. Weight grading must compare
// exactly, so weights are never held as floating point anywhere in the core.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(long long value) : num_(value), den_(1) {}  // NOLINT
  Rational(long long num, long long den);

  // Accepts "7", "2.5", and "7/2". Rejects signs, empty fields and garbage.
  static std::optional<Rational> parse(std::string_view text);

  // Inverse of parse. Integers print bare; denominators of the form 2^a*5^b
  // print as exact decimals; everything else prints as "num/den".
  std::string str() const;

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_positive() const { return num_ > 0; }
  bool is_zero() const { return num_ == 0; }

  Rational operator+(const Rational& other) const;
  Rational operator-(const Rational& other) const;
  Rational operator*(const Rational& other) const;
  Rational& operator+=(const Rational& other) { return *this = *this + other; }
  Rational& operator-=(const Rational& other) { return *this = *this - other; }

  Rational abs() const;

  bool operator==(const Rational& other) const {
    return num_ == other.num_ && den_ == other.den_;
  }
  bool operator!=(const Rational& other) const { return !(*this == other); }
  bool operator<(const Rational& other) const;
  bool operator>(const Rational& other) const { return other < *this; }
  bool operator<=(const Rational& other) const { return !(other < *this); }
  bool operator>=(const Rational& other) const { return !(*this < other); }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

 private:
  void normalize();

  long long num_;
  long long den_;  // > 0, coprime with num_
};

}  // namespace graphctx

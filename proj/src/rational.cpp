#include "graphctx/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace graphctx {

namespace {

long long checked_narrow(__int128 value) {
  if (value > INT64_MAX || value < INT64_MIN) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return static_cast<long long>(value);
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

long long parse_ll(std::string_view s) {
  long long out = 0;
  for (char c : s) {
    if (out > (INT64_MAX - (c - '0')) / 10) {
      throw std::overflow_error("rational literal overflow");
    }
    out = out * 10 + (c - '0');
  }
  return out;
}

}  // namespace

Rational::Rational(long long num, long long den) : num_(num), den_(den) {
  if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

std::optional<Rational> Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::string_view n = text.substr(0, slash);
    std::string_view d = text.substr(slash + 1);
    if (!all_digits(n) || !all_digits(d)) return std::nullopt;
    long long den = parse_ll(d);
    if (den == 0) return std::nullopt;
    return Rational(parse_ll(n), den);
  }
  auto dot = text.find('.');
  if (dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac) || frac.size() > 15) {
      return std::nullopt;
    }
    long long den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    __int128 num =
        static_cast<__int128>(parse_ll(whole)) * den + parse_ll(frac);
    return Rational(checked_narrow(num), den);
  }
  if (!all_digits(text)) return std::nullopt;
  return Rational(parse_ll(text));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  // Finite decimal expansion exists iff den_ = 2^a * 5^b.
  long long d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
  int digits = twos > fives ? twos : fives;
  __int128 scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  __int128 scaled = static_cast<__int128>(num_) * (scale / den_);
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string frac(digits, '0');
  for (int i = digits - 1; i >= 0; --i) {
    frac[i] = static_cast<char>('0' + static_cast<int>(scaled % 10));
    scaled /= 10;
  }
  while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
  std::string whole = std::to_string(checked_narrow(scaled));
  return (negative ? "-" : "") + whole + "." + frac;
}

Rational Rational::operator+(const Rational& other) const {
  __int128 num = static_cast<__int128>(num_) * other.den_ +
                 static_cast<__int128>(other.num_) * den_;
  __int128 den = static_cast<__int128>(den_) * other.den_;
  __int128 a = num < 0 ? -num : num;
  __int128 b = den;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(checked_narrow(num), checked_narrow(den));
}

Rational Rational::operator-(const Rational& other) const {
  return *this + Rational(-other.num_, other.den_);
}

Rational Rational::operator*(const Rational& other) const {
  long long g1 = std::gcd(num_ < 0 ? -num_ : num_, other.den_);
  long long g2 = std::gcd(other.num_ < 0 ? -other.num_ : other.num_, den_);
  __int128 num = static_cast<__int128>(num_ / g1) * (other.num_ / g2);
  __int128 den = static_cast<__int128>(den_ / g2) * (other.den_ / g1);
  return Rational(checked_narrow(num), checked_narrow(den));
}

Rational Rational::abs() const {
  return num_ < 0 ? Rational(-num_, den_) : *this;
}

bool Rational::operator<(const Rational& other) const {
  return static_cast<__int128>(num_) * other.den_ <
         static_cast<__int128>(other.num_) * den_;
}

}  // namespace graphctx

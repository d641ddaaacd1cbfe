#include "mixing/rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "mixing/errors.hpp"

namespace mixing {

namespace {

using boost::multiprecision::cpp_int;

cpp_int pow10(unsigned e) {
  cpp_int r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw InvalidArgument("not a rational number: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad(text);

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) bad(text);
    return num / den;
  }

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view ex = s.substr(e + 1);
    bool ex_negative = false;
    if (!ex.empty() && (ex.front() == '+' || ex.front() == '-')) {
      ex_negative = ex.front() == '-';
      ex.remove_prefix(1);
    }
    if (!all_digits(ex) || ex.size() > 6) bad(text);
    exponent = std::stol(std::string(ex));
    if (ex_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) bad(text);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) bad(text);
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) bad(text);
    digits = std::string(s);
  }
  if (digits.empty()) bad(text);
  Rational value{cpp_int(digits)};
  if (exponent > 0) value *= Rational(pow10(static_cast<unsigned>(exponent)));
  if (exponent < 0) value /= Rational(pow10(static_cast<unsigned>(-exponent)));
  return negative ? Rational(-value) : value;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const Rational& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational exact_from_double(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("exact_from_double: non-finite value");
  int e = 0;
  double mantissa = std::frexp(x, &e);
  // mantissa * 2^53 is an integer for binary64.
  auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  Rational r{cpp_int(scaled)};
  e -= 53;
  cpp_int two_pow = 1;
  two_pow <<= static_cast<unsigned>(e < 0 ? -e : e);
  return e < 0 ? Rational(r / Rational(two_pow)) : Rational(r * Rational(two_pow));
}

}  // namespace mixing

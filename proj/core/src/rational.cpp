#include "phragmen/rational.hpp"

#include <cctype>
#include <cmath>

#include "phragmen/error.hpp"

namespace phragmen {

Rational make_rational(long num, long den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

Rational parse_decimal(std::string_view text) {
  // [sign] digits [. digits] [e|E [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits.push_back(text[i++]);
    seen_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits.push_back(text[i++]);
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw ParseError("not a number: '" + std::string(text) + "'", "");
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    std::size_t used = 0;
    long exp = 0;
    try {
      exp = std::stol(std::string(text.substr(i)), &used);
    } catch (const std::exception&) {
      throw ParseError("bad exponent in '" + std::string(text) + "'", "");
    }
    i += used;
    scale += exp;
  }
  if (i != text.size()) throw ParseError("trailing characters in '" + std::string(text) + "'", "");
  Rational value{BigInt(digits.empty() ? "0" : digits, 10)};
  value *= pow_int(Rational(10), scale);
  if (negative) value = -value;
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty number", "");
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  Rational num = parse_decimal(text.substr(0, slash));
  Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", "");
  Rational r = num / den;
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

double to_double(const Rational& r) { return r.get_d(); }

Rational pow_int(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw InvalidArgument("zero to a negative power");
    Rational inv = 1 / base;
    return pow_int(inv, -exponent);
  }
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::optional<Rational> pow_rational(const Rational& base, const Rational& exponent) {
  if (base <= 0) throw InvalidArgument("pow_rational requires a positive base");
  Rational e = exponent;
  e.canonicalize();
  if (!e.get_den().fits_ulong_p() || !e.get_num().fits_slong_p()) return std::nullopt;
  const unsigned long q = e.get_den().get_ui();
  const long p = e.get_num().get_si();
  if (q == 1) return pow_int(base, p);
  BigInt num_root, den_root;
  const bool num_exact = mpz_root(num_root.get_mpz_t(), base.get_num_mpz_t(), q) != 0;
  const bool den_exact = mpz_root(den_root.get_mpz_t(), base.get_den_mpz_t(), q) != 0;
  if (!num_exact || !den_exact) return std::nullopt;
  return pow_int(Rational(num_root, den_root), p);
}

BigInt floor(const Rational& r) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

long floor_to_long(const Rational& r) {
  BigInt f = floor(r);
  if (!f.fits_slong_p()) throw InvalidArgument("value out of range: " + r.get_str());
  return f.get_si();
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace phragmen

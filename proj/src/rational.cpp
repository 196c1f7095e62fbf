#include "locus/rational.hpp"

#include <cctype>

namespace locus {

void fail(Error::Kind kind, const std::string& what) { throw Error(kind, what); }

Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    fail(Error::Kind::Parse, "malformed rational '" + std::string(text) + "'");
  Integer n{std::string(num)}, d{std::string(den)};
  if (d == 0) fail(Error::Kind::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer floor_int(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_int(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational rational_lcm(const Rational& a, const Rational& b) {
  Integer num, den;
  mpz_lcm(num.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
  mpz_gcd(den.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool is_integer_multiple(const Rational& q, const Rational& p) {
  Rational r = q / p;
  return r.get_den() == 1;
}

}  // namespace locus

#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace locus {

using Rational = mpq_class;
using Integer = mpz_class;

/// Thrown for every contract violation in the library. The kind lets the CLI
/// map failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  enum class Kind { Usage, Parse, Precondition, SizeGuard, Internal };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

[[noreturn]] void fail(Error::Kind kind, const std::string& what);

Rational make_rational(long num, long den = 1);

/// Parses "p", "-p", "p/q" (q > 0 after sign normalization). Throws Error::Parse.
Rational parse_rational(std::string_view text);

/// Canonical text: "3", "-1/2".
std::string to_string(const Rational& q);

Integer floor_int(const Rational& q);
Integer ceil_int(const Rational& q);

/// Least positive rational that is an integer multiple of both a and b (a, b > 0).
Rational rational_lcm(const Rational& a, const Rational& b);

/// True when q / p is an integer.
bool is_integer_multiple(const Rational& q, const Rational& p);

}  // namespace locus

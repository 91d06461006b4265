#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace lenstheta {

// Exact rationals are GMP rationals, always kept canonical (reduced, den > 0).
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);

// "p/q" or "p"; denominators of 1 are omitted.
std::string to_string(const Rational& r);

// Accepts "p", "-p", "p/q"; throws InputError on malformed text or zero denominator.
Rational parse_rational(std::string_view text);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

Integer floor(const Rational& r);

inline long to_long(const Integer& z) { return z.get_si(); }

}  // namespace lenstheta

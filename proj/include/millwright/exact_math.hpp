#ifndef MILLWRIGHT_EXACT_MATH_HPP
#define MILLWRIGHT_EXACT_MATH_HPP

#include <gmpxx.h>

#include <optional>
#include <string>

#include "millwright/errors.hpp"

namespace millwright {

// Parse "5", "-3", "2/3", "2.5", "1e3" into an exact rational.
mpq_class parse_mpq(const std::string& text);

// Canonical decimal-or-fraction rendering ("5", "2/3", ...).
std::string mpq_to_string(const mpq_class& q);

bool mpq_is_integer(const mpq_class& q);

// Exact e-th root of q when it exists.
std::optional<mpq_class> exact_root(const mpq_class& q, unsigned long e);

// Exact q^e for rational e = p/d: defined when q > 0 and q has an exact d-th
// root (or e is an integer).  Exponents may be negative.
std::optional<mpq_class> exact_pow(const mpq_class& base, const mpq_class& expo);

// q^n for integer n (n may be negative when q != 0).
mpq_class mpq_pow_si(const mpq_class& q, long n);

// Smallest integer >= q / largest integer <= q.
mpz_class mpq_ceil(const mpq_class& q);
mpz_class mpq_floor(const mpq_class& q);

} // namespace millwright

#endif

#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace superquant {

using Rational = mpq_class;

/// Parses "3", "-2/5", "+7". Throws InputError on anything else.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// Exact base^exponent when it is rational; nullopt otherwise.
/// base must be positive unless the exponent is a nonnegative integer.
std::optional<Rational> rational_power(const Rational& base, const Rational& exponent);

/// Generalized binomial coefficient w(w-1)...(w-k+1)/k!.
Rational binomial(const Rational& w, unsigned k);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

} // namespace superquant

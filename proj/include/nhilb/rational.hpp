#pragma once

#include <gmpxx.h>

#include <nlohmann/json.hpp>
#include <string>

namespace nhilb {

using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// JSON number when the value fits in 64 bits, decimal string otherwise.
inline nlohmann::json integer_to_json(const Integer& z) {
    if (z.fits_slong_p()) return static_cast<long long>(z.get_si());
    return z.get_str();
}

// Integers print as JSON numbers, proper fractions as "p/q" strings.
inline nlohmann::json rational_to_json(const Rational& r) {
    if (is_integer(r)) return integer_to_json(r.get_num());
    return r.get_str();
}

}  // namespace nhilb

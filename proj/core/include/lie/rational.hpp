#pragma once

#include <gmpxx.h>

#include <string>

namespace lie {

// exact rational coefficients; all free-Lie arithmetic uses these, never floating point
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// "p/q" or "p"; canonical sign (denominator positive)
std::string rat_to_string(const Rat& q);
Rat rat_from_string(const std::string& s);  // throws ParseError

}  // namespace lie

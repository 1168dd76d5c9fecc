#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace feec {

// Exact rational scalar used throughout the symbolic modules.
// Conversion to double happens only at the linear-solver boundary.
using Rational = mpq_class;

inline double to_double(const Rational& q) { return q.get_d(); }

// Exact: every finite double is a dyadic rational.
inline Rational rat_of(double x) { return Rational(x); }

inline Rational rat_of(long num, long den = 1)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational factorial(int n);
Rational binomial(int n, int k);
long binomial_l(int n, int k);

// Parses decimal strings such as "-1.25" or "3" exactly.
Rational rat_parse(const std::string& s);

std::string rat_to_string(const Rational& q);

} // namespace feec

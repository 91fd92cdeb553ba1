#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace qfc {

using BigInt = mpz_class;
using Rational = mpq_class;

// "p/q", or "p" when the denominator is 1.
std::string toString(const Rational& q);
std::string toString(const BigInt& n);

// Accepts "p", "-p", "p/q"; throws ValidationError otherwise.
Rational parseRational(std::string_view s);

Rational pow(const Rational& base, long e);
BigInt factorial(unsigned long n);
BigInt binomial(long n, long k);

double toDouble(const Rational& q);

inline Rational makeRational(long p, long q = 1) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

inline Rational makeRational(const BigInt& p, const BigInt& q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

inline int sign(const Rational& q) { return sgn(q); }

} // namespace qfc

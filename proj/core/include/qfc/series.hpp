#pragma once

#include "qfc/exact.hpp"

#include <vector>

namespace qfc {

// Expansion variable: z itself, or (u - 1).
enum class Var { z, uMinus1 };

const char* varName(Var v);

// Power series with exact coefficients c_0..c_K.
//
// effectiveOrder() is the largest index whose coefficient is known to be
// exact with respect to the untruncated object; it shrinks under
// differentiation and is propagated through arithmetic.
class TruncatedSeries {
public:
    explicit TruncatedSeries(int order = 0, Var v = Var::z);
    TruncatedSeries(std::vector<Rational> coeffs, Var v);

    static TruncatedSeries constant(const Rational& c, int order, Var v = Var::z);
    static TruncatedSeries identity(int order, Var v = Var::z); // the series "z"

    int order() const { return static_cast<int>(c_.size()) - 1; }
    int effectiveOrder() const { return eff_; }
    void setEffectiveOrder(int e);
    Var var() const { return var_; }

    const Rational& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    Rational& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool isZero() const;
    TruncatedSeries retagged(Var v) const;
    TruncatedSeries truncated(int order) const;

    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    TruncatedSeries& operator*=(const Rational& s);

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

private:
    std::vector<Rational> c_;
    Var var_;
    int eff_;
};

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator-(TruncatedSeries a);
TruncatedSeries operator*(TruncatedSeries a, const Rational& s);
TruncatedSeries operator*(const Rational& s, TruncatedSeries a);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries power(const TruncatedSeries& a, int n);
TruncatedSeries reciprocal(const TruncatedSeries& a);           // needs a[0] != 0
TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner);
TruncatedSeries reversion(const TruncatedSeries& s);            // Newton iteration
TruncatedSeries reversionByCoefficients(const TruncatedSeries& s); // term-by-term solve
TruncatedSeries seriesExp(const TruncatedSeries& s);
TruncatedSeries seriesLog(const TruncatedSeries& s);
TruncatedSeries integrate(const TruncatedSeries& s);
TruncatedSeries differentiate(const TruncatedSeries& s);
TruncatedSeries scaleArgument(const TruncatedSeries& s, const Rational& a); // s(a z)

enum class LogChange { zToUMinus1, uMinus1ToZ };
TruncatedSeries changeVariableLog(const TruncatedSeries& s, LogChange dir);

// Common expansions.
TruncatedSeries expMinusOne(int order, Var v = Var::z);     // e^z - 1
TruncatedSeries logOnePlus(int order, Var v = Var::z);      // ln(1 + z)

} // namespace qfc

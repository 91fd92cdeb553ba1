#pragma once

#include "qfc/exact.hpp"

#include <map>
#include <vector>

namespace qfc {

// Multivariate Laurent polynomial with rational coefficients. Exponents are stored as
// integers in units of 1/unit(), where unit() is 1 or 2; half-integer exponents only
// arise in the orthogonal odd series. Zero coefficients are never stored.
class LaurentPolynomial {
public:
    using Exponent = std::vector<long>;
    using Terms = std::map<Exponent, Rational>;

    LaurentPolynomial() = default;
    explicit LaurentPolynomial(int nvars, int unit = 1);

    static LaurentPolynomial constant(int nvars, const Rational& c);
    // Exponent given in units of 1/unit.
    static LaurentPolynomial monomial(int nvars, Exponent e, const Rational& c = 1, int unit = 1);

    int nvars() const { return n_; }
    int unit() const { return unit_; }
    const Terms& terms() const { return t_; }
    std::size_t termCount() const { return t_.size(); }
    bool isZero() const { return t_.empty(); }

    // Coefficient of the monomial with exponent e (units of 1/unit()).
    Rational coefficient(const Exponent& e) const;
    void addTerm(const Exponent& e, const Rational& c);

    // Lexicographically largest / smallest exponent; the polynomial must be nonzero.
    const Terms::value_type& leading() const;
    const Terms::value_type& trailing() const;

    // Same polynomial with exponents rescaled to the given unit (a multiple of unit()).
    LaurentPolynomial withUnit(int unit) const;
    // Reduces the unit to 1 when every exponent allows it.
    void canonicalize();

    Rational evaluateAtOnes() const;
    // Needs integral exponents.
    Rational evaluate(const std::vector<Rational>& point) const;

    LaurentPolynomial& operator+=(const LaurentPolynomial& o);
    LaurentPolynomial& operator-=(const LaurentPolynomial& o);
    LaurentPolynomial& operator*=(const Rational& c);

    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b);

private:
    int n_ = 0;
    int unit_ = 1;
    Terms t_;
};

LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b);
LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b);
LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
LaurentPolynomial operator*(LaurentPolynomial a, const Rational& c);

// Multiplication by u_i^{shift / a.unit()}.
LaurentPolynomial shiftVariable(const LaurentPolynomial& a, int i, long shift);
// Euler operator (u_i d/du_i)^k.
LaurentPolynomial eulerPower(const LaurentPolynomial& a, int i, int k);
// Sets u_{keep+1}, ..., u_n to 1.
LaurentPolynomial setTrailingToOne(const LaurentPolynomial& a, int keep);

// Exact quotient a / b. Throws InvariantError when the remainder is nonzero.
LaurentPolynomial divideExact(const LaurentPolynomial& a, const LaurentPolynomial& b);

} // namespace qfc

#include "qfc/exact.hpp"
#include "qfc/errors.hpp"

#include <cctype>

namespace qfc {

std::string toString(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string toString(const BigInt& n) { return n.get_str(); }

static bool isIntegerToken(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Rational parseRational(std::string_view s) {
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!isIntegerToken(num) || !isIntegerToken(den) || den[0] == '-' || den[0] == '+')
        throw ValidationError("not a rational: '" + std::string(s) + "'");
    std::string n(num[0] == '+' ? num.substr(1) : num);
    BigInt p(n), d{std::string(den)};
    if (d == 0) throw ValidationError("zero denominator: '" + std::string(s) + "'");
    Rational r(p, d);
    r.canonicalize();
    return r;
}

Rational pow(const Rational& base, long e) {
    if (e < 0) {
        if (base == 0) throw ValidationError("0 raised to a negative power");
        return pow(Rational(1) / base, -e);
    }
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    Rational r(n, d);
    r.canonicalize();
    return r;
}

BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

double toDouble(const Rational& q) { return q.get_d(); }

} // namespace qfc

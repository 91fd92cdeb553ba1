#include "qfc/laurent.hpp"

#include "qfc/errors.hpp"

#include <algorithm>
#include <numeric>

namespace qfc {

LaurentPolynomial::LaurentPolynomial(int nvars, int unit) : n_(nvars), unit_(unit) {
    require(nvars >= 0, "negative variable count");
    require(unit == 1 || unit == 2, "exponent unit must be 1 or 2");
}

LaurentPolynomial LaurentPolynomial::constant(int nvars, const Rational& c) {
    LaurentPolynomial p(nvars);
    p.addTerm(Exponent(static_cast<std::size_t>(nvars), 0), c);
    return p;
}

LaurentPolynomial LaurentPolynomial::monomial(int nvars, Exponent e, const Rational& c, int unit) {
    require(static_cast<int>(e.size()) == nvars, "exponent length differs from variable count");
    LaurentPolynomial p(nvars, unit);
    p.addTerm(e, c);
    return p;
}

Rational LaurentPolynomial::coefficient(const Exponent& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Rational(0) : it->second;
}

void LaurentPolynomial::addTerm(const Exponent& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = t_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

const LaurentPolynomial::Terms::value_type& LaurentPolynomial::leading() const {
    require(!t_.empty(), "leading term of the zero polynomial");
    return *t_.rbegin();
}

const LaurentPolynomial::Terms::value_type& LaurentPolynomial::trailing() const {
    require(!t_.empty(), "trailing term of the zero polynomial");
    return *t_.begin();
}

LaurentPolynomial LaurentPolynomial::withUnit(int unit) const {
    require(unit % unit_ == 0, "exponent unit can only be refined");
    if (unit == unit_) return *this;
    const long f = unit / unit_;
    LaurentPolynomial out(n_, unit);
    for (const auto& [e, c] : t_) {
        Exponent s = e;
        for (auto& x : s) x *= f;
        out.t_.emplace_hint(out.t_.end(), std::move(s), c);
    }
    return out;
}

void LaurentPolynomial::canonicalize() {
    if (unit_ == 1) return;
    for (const auto& [e, c] : t_)
        for (long x : e)
            if (x % unit_ != 0) return;
    Terms t;
    for (auto& [e, c] : t_) {
        Exponent s = e;
        for (auto& x : s) x /= unit_;
        t.emplace_hint(t.end(), std::move(s), c);
    }
    t_ = std::move(t);
    unit_ = 1;
}

Rational LaurentPolynomial::evaluateAtOnes() const {
    Rational s = 0;
    for (const auto& [e, c] : t_) s += c;
    return s;
}

Rational LaurentPolynomial::evaluate(const std::vector<Rational>& point) const {
    require(static_cast<int>(point.size()) == n_, "evaluation point has the wrong length");
    LaurentPolynomial p = *this;
    p.canonicalize();
    require(p.unit_ == 1, "evaluation at a rational point needs integral exponents");
    Rational s = 0;
    for (const auto& [e, c] : p.t_) {
        Rational term = c;
        for (int i = 0; i < n_; ++i) {
            const long x = e[static_cast<std::size_t>(i)];
            if (x == 0) continue;
            require(point[static_cast<std::size_t>(i)] != 0 || x > 0, "negative power of zero");
            term *= pow(point[static_cast<std::size_t>(i)], x);
        }
        s += term;
    }
    return s;
}

namespace {

int commonUnit(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return std::lcm(a.unit(), b.unit());
}

} // namespace

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& o) {
    require(o.n_ == n_, "variable count mismatch");
    const int u = commonUnit(*this, o);
    if (u != unit_) *this = withUnit(u);
    const LaurentPolynomial& src = o.unit_ == u ? o : o.withUnit(u);
    for (const auto& [e, c] : src.t_) addTerm(e, c);
    canonicalize();
    return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& o) {
    LaurentPolynomial neg = o;
    neg *= Rational(-1);
    return *this += neg;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const Rational& c) {
    if (c == 0) {
        t_.clear();
        return *this;
    }
    for (auto& [e, v] : t_) v *= c;
    return *this;
}

bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.n_ != b.n_) return false;
    const int u = commonUnit(a, b);
    const LaurentPolynomial& x = a.unit_ == u ? a : a.withUnit(u);
    const LaurentPolynomial& y = b.unit_ == u ? b : b.withUnit(u);
    return x.t_ == y.t_;
}

LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
LaurentPolynomial operator*(LaurentPolynomial a, const Rational& c) { return a *= c; }

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    require(a.nvars() == b.nvars(), "variable count mismatch");
    const int u = commonUnit(a, b);
    const LaurentPolynomial x = a.withUnit(u);
    const LaurentPolynomial y = b.withUnit(u);
    LaurentPolynomial out(a.nvars(), u);
    LaurentPolynomial::Exponent e(static_cast<std::size_t>(a.nvars()));
    for (const auto& [ea, ca] : x.terms())
        for (const auto& [eb, cb] : y.terms()) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.addTerm(e, Rational(ca * cb));
        }
    out.canonicalize();
    return out;
}

LaurentPolynomial shiftVariable(const LaurentPolynomial& a, int i, long shift) {
    require(i >= 0 && i < a.nvars(), "variable index out of range");
    LaurentPolynomial out(a.nvars(), a.unit());
    for (const auto& [e, c] : a.terms()) {
        auto s = e;
        s[static_cast<std::size_t>(i)] += shift;
        out.addTerm(s, c);
    }
    out.canonicalize();
    return out;
}

LaurentPolynomial eulerPower(const LaurentPolynomial& a, int i, int k) {
    require(i >= 0 && i < a.nvars(), "variable index out of range");
    require(k >= 0, "negative operator power");
    LaurentPolynomial out(a.nvars(), a.unit());
    for (const auto& [e, c] : a.terms()) {
        const Rational x = makeRational(e[static_cast<std::size_t>(i)], a.unit());
        out.addTerm(e, Rational(c * pow(x, k)));
    }
    return out;
}

LaurentPolynomial setTrailingToOne(const LaurentPolynomial& a, int keep) {
    require(keep >= 0 && keep <= a.nvars(), "cannot keep more variables than present");
    LaurentPolynomial out(keep, a.unit());
    for (const auto& [e, c] : a.terms())
        out.addTerm(LaurentPolynomial::Exponent(e.begin(), e.begin() + keep), c);
    out.canonicalize();
    return out;
}

LaurentPolynomial divideExact(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    require(a.nvars() == b.nvars(), "variable count mismatch");
    require(!b.isZero(), "division by the zero polynomial");
    const int u = commonUnit(a, b);
    LaurentPolynomial r = a.withUnit(u);
    const LaurentPolynomial d = b.withUnit(u);
    LaurentPolynomial q(a.nvars(), u);
    if (r.isZero()) return q;

    // Per-variable degree ranges of an exact quotient; any quotient term outside this box
    // proves a nonzero remainder and also bounds the loop.
    const auto n = static_cast<std::size_t>(a.nvars());
    auto ranges = [n](const LaurentPolynomial& p) {
        std::vector<long> lo(n, 0), hi(n, 0);
        bool first = true;
        for (const auto& [e, c] : p.terms()) {
            for (std::size_t i = 0; i < n; ++i) {
                lo[i] = first ? e[i] : std::min(lo[i], e[i]);
                hi[i] = first ? e[i] : std::max(hi[i], e[i]);
            }
            first = false;
        }
        return std::pair{lo, hi};
    };
    const auto [aLo, aHi] = ranges(r);
    const auto [bLo, bHi] = ranges(d);

    const auto& [lead, leadCoeff] = d.leading();
    LaurentPolynomial::Exponent t(n), s(n);
    while (!r.isZero()) {
        const auto& [e, c] = r.leading();
        for (std::size_t i = 0; i < n; ++i) {
            t[i] = e[i] - lead[i];
            ensure(t[i] >= aLo[i] - bLo[i] && t[i] <= aHi[i] - bHi[i], "Laurent division is not exact");
        }
        const Rational f = c / leadCoeff;
        q.addTerm(t, f);
        for (const auto& [eb, cb] : d.terms()) {
            for (std::size_t i = 0; i < n; ++i) s[i] = t[i] + eb[i];
            r.addTerm(s, Rational(-f * cb));
        }
    }
    q.canonicalize();
    return q;
}

} // namespace qfc

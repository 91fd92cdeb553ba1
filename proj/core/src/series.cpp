#include "qfc/series.hpp"
#include "qfc/errors.hpp"

#include <algorithm>

namespace qfc {

const char* varName(Var v) { return v == Var::z ? "z" : "u_minus_1"; }

TruncatedSeries::TruncatedSeries(int order, Var v)
    : c_(static_cast<std::size_t>(std::max(order, 0)) + 1), var_(v), eff_(std::max(order, 0)) {
    require(order >= 0, "series order must be non-negative");
}

TruncatedSeries::TruncatedSeries(std::vector<Rational> coeffs, Var v) : c_(std::move(coeffs)), var_(v) {
    require(!c_.empty(), "series needs at least one coefficient");
    eff_ = order();
}

TruncatedSeries TruncatedSeries::constant(const Rational& c, int order, Var v) {
    TruncatedSeries s(order, v);
    s[0] = c;
    return s;
}

TruncatedSeries TruncatedSeries::identity(int order, Var v) {
    TruncatedSeries s(order, v);
    if (order >= 1) s[1] = 1;
    return s;
}

void TruncatedSeries::setEffectiveOrder(int e) { eff_ = std::clamp(e, -1, order()); }

bool TruncatedSeries::isZero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
}

TruncatedSeries TruncatedSeries::retagged(Var v) const {
    TruncatedSeries r = *this;
    r.var_ = v;
    return r;
}

TruncatedSeries TruncatedSeries::truncated(int k) const {
    require(k >= 0, "negative truncation order");
    TruncatedSeries r(k, var_);
    for (int i = 0; i <= std::min(k, order()); ++i) r[i] = c_[static_cast<std::size_t>(i)];
    r.eff_ = std::min(k, eff_);
    return r;
}

static void checkCompatible(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.var() != b.var())
        throw ValidationError(std::string("series variable mismatch: ") + varName(a.var()) + " vs " +
                              varName(b.var()));
    if (a.order() != b.order())
        throw ValidationError("series order mismatch: " + std::to_string(a.order()) + " vs " +
                              std::to_string(b.order()));
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
    checkCompatible(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    eff_ = std::min(eff_, o.eff_);
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
    checkCompatible(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    eff_ = std::min(eff_, o.eff_);
    return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& s) {
    for (auto& q : c_) q *= s;
    return *this;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.var_ == b.var_ && a.c_ == b.c_;
}

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
TruncatedSeries operator-(TruncatedSeries a) { return a *= Rational(-1); }
TruncatedSeries operator*(TruncatedSeries a, const Rational& s) { return a *= s; }
TruncatedSeries operator*(const Rational& s, TruncatedSeries a) { return a *= s; }
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return multiply(a, b); }

// Lowest index with a nonzero coefficient, or order+1 for the zero series.
static int valuation(const TruncatedSeries& s) {
    for (int i = 0; i <= s.order(); ++i)
        if (s[i] != 0) return i;
    return s.order() + 1;
}

TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b) {
    checkCompatible(a, b);
    const int K = a.order();
    TruncatedSeries r(K, a.var());
    for (int i = 0; i <= K; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= K; ++j) r[i + j] += a[i] * b[j];
    }
    // A coefficient of the product is exact when every contributing pair is.
    int va = valuation(a), vb = valuation(b);
    r.setEffectiveOrder(std::min(a.effectiveOrder() + vb, b.effectiveOrder() + va));
    return r;
}

TruncatedSeries power(const TruncatedSeries& a, int n) {
    require(n >= 0, "negative series power");
    TruncatedSeries r = TruncatedSeries::constant(1, a.order(), a.var());
    TruncatedSeries base = a;
    while (n > 0) {
        if (n & 1) r = multiply(r, base);
        n >>= 1;
        if (n) base = multiply(base, base);
    }
    return r;
}

TruncatedSeries reciprocal(const TruncatedSeries& a) {
    require(a[0] != 0, "reciprocal needs a nonzero constant term");
    const int K = a.order();
    TruncatedSeries r(K, a.var());
    r[0] = 1 / a[0];
    for (int n = 1; n <= K; ++n) {
        Rational acc = 0;
        for (int k = 1; k <= n; ++k) acc += a[k] * r[n - k];
        r[n] = -acc * r[0];
    }
    r.setEffectiveOrder(a.effectiveOrder());
    return r;
}

TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
    require(inner[0] == 0, "compose: inner series must have zero constant term");
    checkCompatible(outer.retagged(inner.var()), inner);
    const int K = outer.order();
    // Horner in the inner series.
    TruncatedSeries r = TruncatedSeries::constant(outer[K], K, inner.var());
    for (int k = K - 1; k >= 0; --k) {
        r = multiply(r, inner);
        r[0] += outer[k];
    }
    // Unknown outer terms enter at index >= (e_o + 1) * v, unknown inner terms at > e_i.
    const int v = valuation(inner);
    const long fromOuter = static_cast<long>(outer.effectiveOrder() + 1) * v - 1;
    r.setEffectiveOrder(static_cast<int>(std::min<long>(fromOuter, inner.effectiveOrder())));
    return r;
}

TruncatedSeries reversion(const TruncatedSeries& s) {
    require(s[0] == 0, "reversion: constant term must be 0");
    require(s.order() >= 1 && s[1] != 0, "reversion: linear coefficient must be nonzero");
    const int K = s.order();
    const TruncatedSeries ds = differentiate(s).truncated(K);
    // Newton: T <- T - (s(T) - z) / s'(T); each pass doubles the number of correct terms.
    TruncatedSeries t = TruncatedSeries::identity(K, s.var()) * (1 / s[1]);
    TruncatedSeries z = TruncatedSeries::identity(K, s.var());
    for (int correct = 2; ; correct *= 2) {
        TruncatedSeries f = compose(s, t) - z;
        if (f.isZero()) break;
        TruncatedSeries d = compose(ds.retagged(t.var()), t);
        d.setEffectiveOrder(K);
        f.setEffectiveOrder(K);
        t -= multiply(f, reciprocal(d));
        ensure(correct <= 4 * (K + 2), "reversion: Newton iteration failed to converge");
    }
    t.setEffectiveOrder(s.effectiveOrder());
    return t;
}

TruncatedSeries reversionByCoefficients(const TruncatedSeries& s) {
    require(s[0] == 0, "reversion: constant term must be 0");
    require(s.order() >= 1 && s[1] != 0, "reversion: linear coefficient must be nonzero");
    const int K = s.order();
    TruncatedSeries t(K, s.var());
    t[1] = 1 / s[1];
    // Fix t_n so that the z^n coefficient of s(t) vanishes, one n at a time.
    for (int n = 2; n <= K; ++n) {
        TruncatedSeries c = compose(s, t);
        t[n] = -c[n] / s[1];
    }
    t.setEffectiveOrder(s.effectiveOrder());
    return t;
}

TruncatedSeries seriesExp(const TruncatedSeries& s) {
    require(s[0] == 0, "exp: constant term must be 0");
    const int K = s.order();
    TruncatedSeries e(K, s.var());
    e[0] = 1;
    for (int n = 1; n <= K; ++n) {
        Rational acc = 0;
        for (int k = 1; k <= n; ++k) acc += k * s[k] * e[n - k];
        e[n] = acc / n;
    }
    e.setEffectiveOrder(s.effectiveOrder());
    return e;
}

TruncatedSeries seriesLog(const TruncatedSeries& s) {
    require(s[0] == 1, "log: constant term must be 1");
    const int K = s.order();
    TruncatedSeries l(K, s.var());
    // s' = s l'  =>  n l_n = n s_n - sum_{k<n} k l_k s_{n-k}
    for (int n = 1; n <= K; ++n) {
        Rational acc = n * s[n];
        for (int k = 1; k < n; ++k) acc -= k * l[k] * s[n - k];
        l[n] = acc / n;
    }
    l.setEffectiveOrder(s.effectiveOrder());
    return l;
}

TruncatedSeries integrate(const TruncatedSeries& s) {
    const int K = s.order();
    TruncatedSeries r(K, s.var());
    for (int n = 1; n <= K; ++n) r[n] = s[n - 1] / n;
    r.setEffectiveOrder(s.effectiveOrder() + 1);
    return r;
}

TruncatedSeries differentiate(const TruncatedSeries& s) {
    const int K = s.order();
    TruncatedSeries r(K, s.var());
    for (int n = 0; n < K; ++n) r[n] = (n + 1) * s[n + 1];
    r.setEffectiveOrder(std::min(s.effectiveOrder(), K) - 1);
    return r;
}

TruncatedSeries scaleArgument(const TruncatedSeries& s, const Rational& a) {
    TruncatedSeries r = s;
    Rational p = 1;
    for (int n = 0; n <= s.order(); ++n, p *= a) r[n] = s[n] * p;
    return r;
}

TruncatedSeries expMinusOne(int order, Var v) {
    TruncatedSeries r(order, v);
    Rational f = 1;
    for (int n = 1; n <= order; ++n) {
        f /= n;
        r[n] = f;
    }
    return r;
}

TruncatedSeries logOnePlus(int order, Var v) {
    TruncatedSeries r(order, v);
    for (int n = 1; n <= order; ++n) r[n] = makeRational(n % 2 ? 1 : -1, n);
    return r;
}

TruncatedSeries changeVariableLog(const TruncatedSeries& s, LogChange dir) {
    if (dir == LogChange::zToUMinus1) {
        require(s.var() == Var::z, "changeVariableLog: expected a series in z");
        return compose(s.retagged(Var::uMinus1), logOnePlus(s.order(), Var::uMinus1));
    }
    require(s.var() == Var::uMinus1, "changeVariableLog: expected a series in (u-1)");
    return compose(s.retagged(Var::z), expMinusOne(s.order(), Var::z));
}

} // namespace qfc

#include "qfc/chars.hpp"

#include "qfc/errors.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <type_traits>

namespace qfc {

namespace {

unsigned digitsFor(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

// Shifted coordinates m_i = nu_i + n - i and the residue weights 1/prod_{j != i}(m_i - m_j).
struct ResidueData {
    std::vector<long> m;
    std::vector<Rational> a;
    BigInt factorial; // (n-1)!
};

ResidueData residueData(const std::vector<long>& nu) {
    const long n = static_cast<long>(nu.size());
    require(n >= 1, "empty signature");
    for (long i = 1; i < n; ++i)
        require(nu[static_cast<std::size_t>(i)] <= nu[static_cast<std::size_t>(i - 1)],
                "signature entries must be weakly decreasing");
    ResidueData d;
    d.m.resize(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) d.m[static_cast<std::size_t>(i)] = nu[static_cast<std::size_t>(i)] + n - 1 - i;
    d.a.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        BigInt prod = 1;
        for (long j = 0; j < n; ++j)
            if (j != i) prod *= d.m[static_cast<std::size_t>(i)] - d.m[static_cast<std::size_t>(j)];
        d.a.push_back(makeRational(BigInt(1), prod));
    }
    d.factorial = factorial(static_cast<unsigned long>(n - 1));
    return d;
}

long exponentOf(const HPFloat& v) { return mpfr_get_exp(v.backend().data()); }

HPFloat powHP(const HPFloat& x, long e) {
    if (e < 0) return powHP(HPFloat(1) / x, -e);
    HPFloat r = 1, b = x;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// sum_i a_i x^{m_i} and sum_i a_i m_i x^{m_i}.
struct Sums {
    Rational s0, s1;
};

Sums residueSums(const ResidueData& d, const Rational& x, bool withDerivative) {
    Sums s;
    for (std::size_t i = 0; i < d.m.size(); ++i) {
        const Rational t = d.a[i] * pow(x, d.m[i]);
        s.s0 += t;
        if (withDerivative) s.s1 += t * d.m[i];
    }
    return s;
}

struct SumsHP {
    HPFloat s0, s1;
    long lost = 0; // bits cancelled in the worst of the two sums
};

// Evaluated at the current default precision.
SumsHP residueSumsHP(const ResidueData& d, const HPFloat& x, bool withDerivative) {
    SumsHP s;
    s.s0 = 0;
    s.s1 = 0;
    long top0 = LONG_MIN, top1 = LONG_MIN;
    for (std::size_t i = 0; i < d.m.size(); ++i) {
        HPFloat t = toHP(d.a[i], precisionBits(x)) * powHP(x, d.m[i]);
        if (t != 0) top0 = std::max(top0, exponentOf(t));
        s.s0 += t;
        if (withDerivative) {
            t *= d.m[i];
            if (t != 0) top1 = std::max(top1, exponentOf(t));
            s.s1 += t;
        }
    }
    const long p = static_cast<long>(precisionBits(x));
    auto lostIn = [p](const HPFloat& sum, long top) {
        if (top == LONG_MIN) return 0L;
        if (sum == 0) return p;
        return std::max(0L, top - exponentOf(sum));
    };
    s.lost = lostIn(s.s0, top0);
    if (withDerivative) s.lost = std::max(s.lost, lostIn(s.s1, top1));
    return s;
}

// Combines the sums according to the reduction kind. T is Rational or HPFloat.
template <class T>
T combine(SchurReduction::Kind kind, const ResidueData& d, const T& x, const T& s0, const T& s1) {
    const long n = static_cast<long>(d.m.size());
    const T c = [&] {
        if constexpr (std::is_same_v<T, Rational>) return Rational(d.factorial);
        else return toHP(Rational(d.factorial), precisionBits(x));
    }();
    T xm1 = x - 1;
    T schur;
    if constexpr (std::is_same_v<T, Rational>) schur = c * s0 / pow(xm1, n - 1);
    else schur = c * s0 / powHP(xm1, n - 1);
    switch (kind) {
    case SchurReduction::Kind::identity:
    case SchurReduction::Kind::plain:
        return schur;
    case SchurReduction::Kind::symplectic: {
        T r = schur * 2 / (x + 1);
        return r;
    }
    case SchurReduction::Kind::evenOrthogonal: {
        // (1 - 1/x) x S' = -(n-1) S + c (x-1)^{-(n-2)} x^{-1} s1
        const long N = n / 2;
        T tail;
        if constexpr (std::is_same_v<T, Rational>) tail = c * s1 / (pow(xm1, n - 2) * x);
        else tail = c * s1 / (powHP(xm1, n - 2) * x);
        T euler = tail - schur * (n - 1);
        T shift = (1 - 1 / x) * schur * N;
        T r = schur + (euler - shift) / (2 * N - 1);
        return r;
    }
    }
    throw InvariantError("unknown reduction kind");
}

HPFloat evaluateHP(SchurReduction::Kind kind, const std::vector<long>& nu, const HPFloat& x, unsigned minBits) {
    require(x != 0, "evaluation point must be nonzero");
    if (x == 1) return toHP(Rational(1), precisionBits(x));
    const ResidueData d = residueData(nu);
    const bool deriv = kind == SchurReduction::Kind::evenOrthogonal;
    unsigned p = std::max(precisionBits(x), kDefaultPrecisionBits);
    for (;;) {
        PrecisionScope scope(p);
        const HPFloat X = toHP(x, p);
        const SumsHP s = residueSumsHP(d, X, deriv);
        if (static_cast<long>(p) >= s.lost + static_cast<long>(minBits))
            return combine<HPFloat>(kind, d, X, s.s0, s.s1);
        p = std::max(2 * p, static_cast<unsigned>(s.lost) + minBits + 64);
    }
}

} // namespace

unsigned precisionBits(const HPFloat& v) { return static_cast<unsigned>(mpfr_get_prec(v.backend().data())); }

HPFloat toHP(const Rational& q, unsigned bits) {
    HPFloat r(0, digitsFor(bits));
    mpfr_set_prec(r.backend().data(), static_cast<mpfr_prec_t>(bits));
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

HPFloat toHP(const HPFloat& v, unsigned bits) {
    HPFloat r(0, digitsFor(bits));
    mpfr_set_prec(r.backend().data(), static_cast<mpfr_prec_t>(bits));
    mpfr_set(r.backend().data(), v.backend().data(), MPFR_RNDN);
    return r;
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_(HPFloat::default_precision()) {
    HPFloat::default_precision(digitsFor(bits));
}

PrecisionScope::~PrecisionScope() { HPFloat::default_precision(saved_); }

Rational normalizedSchurOneVar(const std::vector<long>& nu, const Rational& x) {
    require(x != 0, "evaluation point must be nonzero");
    if (x == 1) return 1;
    const ResidueData d = residueData(nu);
    const Sums s = residueSums(d, x, false);
    return combine<Rational>(SchurReduction::Kind::identity, d, x, s.s0, s.s1);
}

Rational normalizedSchurOneVar(const Signature& lambda, const Rational& x) {
    require(lambda.system().series == Series::A, "normalized Schur function needs a type A signature");
    return normalizedSchurOneVar(lambda.entries(), x);
}

HPFloat normalizedSchurOneVar(const std::vector<long>& nu, const HPFloat& x, unsigned minBits) {
    return evaluateHP(SchurReduction::Kind::identity, nu, x, minBits);
}

LaurentPolynomial normalizedSchurPolynomial(const std::vector<long>& nu) {
    const ResidueData d = residueData(nu);
    const long n = static_cast<long>(d.m.size());
    LaurentPolynomial num(1);
    for (std::size_t i = 0; i < d.m.size(); ++i) num.addTerm({d.m[i]}, Rational(d.a[i] * d.factorial));
    LaurentPolynomial den = LaurentPolynomial::constant(1, 1);
    const LaurentPolynomial xm1 = LaurentPolynomial::monomial(1, {1}) - LaurentPolynomial::constant(1, 1);
    for (long i = 0; i + 1 < n; ++i) den = den * xm1;
    return divideExact(num, den);
}

SchurReduction schurReduction(const Signature& lambda) {
    const auto& l = lambda.entries();
    const long N = lambda.rank();
    SchurReduction r;
    switch (lambda.system().series) {
    case Series::A:
        r.kind = SchurReduction::Kind::identity;
        r.nu = l;
        break;
    case Series::C:
        r.kind = SchurReduction::Kind::symplectic;
        for (long v : l) r.nu.push_back(v + 1);
        for (auto it = l.rbegin(); it != l.rend(); ++it) r.nu.push_back(-*it);
        break;
    case Series::B:
        r.kind = SchurReduction::Kind::plain;
        r.nu = l;
        for (auto it = l.rbegin(); it != l.rend(); ++it) r.nu.push_back(-*it);
        break;
    case Series::D:
        if (N == 1) {
            // SO(2): the character is x^{lambda_1}.
            r.kind = SchurReduction::Kind::plain;
            r.nu = l;
        } else if (l.back() == 0) {
            r.kind = SchurReduction::Kind::plain;
            r.nu.assign(l.begin(), l.end() - 1);
            r.nu.push_back(0);
            for (long i = N - 2; i >= 0; --i) r.nu.push_back(-l[static_cast<std::size_t>(i)]);
        } else {
            r.kind = SchurReduction::Kind::evenOrthogonal;
            const long last = std::labs(l.back());
            r.nu.assign(l.begin(), l.end() - 1);
            r.nu.push_back(last);
            r.nu.push_back(1 - last);
            for (long i = N - 2; i >= 0; --i) r.nu.push_back(1 - l[static_cast<std::size_t>(i)]);
        }
        break;
    }
    return r;
}

Rational normalizedCharOneVar(const Signature& lambda, const Rational& x) {
    require(x != 0, "evaluation point must be nonzero");
    if (x == 1) return 1;
    const SchurReduction red = schurReduction(lambda);
    const ResidueData d = residueData(red.nu);
    const Sums s = residueSums(d, x, red.kind == SchurReduction::Kind::evenOrthogonal);
    return combine<Rational>(red.kind, d, x, s.s0, s.s1);
}

HPFloat normalizedCharOneVar(const Signature& lambda, const HPFloat& x, unsigned minBits) {
    const SchurReduction red = schurReduction(lambda);
    return evaluateHP(red.kind, red.nu, x, minBits);
}

Rational normalizedCharBySpecialization(const Signature& lambda, const std::vector<Rational>& u, int maxRank) {
    require(static_cast<int>(u.size()) <= lambda.rank(), "more points than variables");
    const LaurentPolynomial chi = characterPolynomial(lambda, maxRank);
    std::vector<Rational> point(static_cast<std::size_t>(lambda.rank()), Rational(1));
    std::copy(u.begin(), u.end(), point.begin());
    return chi.evaluate(point) / Rational(weylDimension(lambda));
}

Rational normalizedCharBySpecialization(const Signature& lambda, const Rational& x, int maxRank) {
    return normalizedCharBySpecialization(lambda, std::vector<Rational>{x}, maxRank);
}

int characterNormalizer(const RootSystem& sys) { return sys.series == Series::A ? sys.rank : 2 * sys.rank; }

HPFloat asymptoticLogCharacter(const Signature& lambda, const Rational& x, unsigned bits) {
    PrecisionScope scope(bits);
    const auto& e = lambda.entries();
    if (std::all_of(e.begin(), e.end(), [](long v) { return v == 0; })) return toHP(Rational(0), bits);
    const HPFloat v = normalizedCharOneVar(lambda, toHP(x, bits));
    require(v > 0, "normalized character is not positive at this point");
    HPFloat r = log(toHP(v, bits)) / characterNormalizer(lambda.system());
    return r;
}

HPFloat evaluateSeries(const TruncatedSeries& s, const Rational& at, unsigned bits) {
    Rational sum = 0, p = 1;
    for (int k = 0; k <= s.order(); ++k) {
        sum += s[k] * p;
        p *= at;
    }
    return toHP(sum, bits);
}

std::vector<HCIZRow> hcizSemiclassical(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                       const std::vector<Rational>& deltas, unsigned bits) {
    require(a.size() == 2 && b.size() == 2, "the orbital-integral comparison is implemented for N = 2 only");
    require(a[0] > a[1] && b[0] > b[1], "a and b must be strictly decreasing");
    std::vector<HCIZRow> rows;
    for (const Rational& delta : deltas) {
        require(delta > 0, "delta must be positive");
        HCIZRow row;
        row.delta = delta;
        for (const Rational& ai : a) {
            const Rational q = ai / delta;
            BigInt f;
            mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
            require(f.fits_slong_p(), "delta too small for the signature range");
            row.lambda.push_back(f.get_si());
        }
        const long total = row.lambda[0] + row.lambda[1];

        // s_lambda(x1, x2) = x2^{|lambda|} s_lambda(x1/x2, 1); raise precision until the
        // residue sum keeps kMinSignificantBits after cancellation.
        const ResidueData d = residueData(row.lambda);
        unsigned p = bits;
        for (;;) {
            PrecisionScope scope(p);
            const HPFloat x1 = exp(toHP(Rational(delta * b[0]), p));
            const HPFloat x2 = exp(toHP(Rational(delta * b[1]), p));
            const HPFloat ratio = x1 / x2;
            const SumsHP s = residueSumsHP(d, ratio, false);
            if (static_cast<long>(p) >= s.lost + static_cast<long>(kMinSignificantBits)) {
                row.value = combine<HPFloat>(SchurReduction::Kind::identity, d, ratio, s.s0, s.s1) * powHP(x2, total);
                break;
            }
            p = std::max(2 * p, static_cast<unsigned>(s.lost) + kMinSignificantBits + 64);
        }
        PrecisionScope scope(p);
        const HPFloat e1 = exp(toHP(Rational(a[0] * b[0] + a[1] * b[1]), p));
        const HPFloat e2 = exp(toHP(Rational(a[0] * b[1] + a[1] * b[0]), p));
        row.target = (e1 - e2) / toHP(Rational((a[0] - a[1]) * (b[0] - b[1])), p);
        row.relError = abs(row.value - row.target) / abs(row.target);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SplitRow> multivariateSplitCheck(const std::vector<Signature>& family, const std::vector<Rational>& points,
                                             unsigned bits) {
    const int k = static_cast<int>(points.size());
    require(k >= 1 && k <= 3, "split check takes 1 to 3 points");
    PrecisionScope scope(bits);
    std::vector<SplitRow> rows;
    for (const Signature& lambda : family) {
        require(k <= lambda.rank(), "more points than the rank");
        const Rational joint = normalizedCharBySpecialization(lambda, points);
        require(joint > 0, "normalized character is not positive at the points");
        SplitRow row;
        row.N = lambda.rank();
        // Normalized by N itself, not the doubled rank.
        row.joint = log(toHP(joint, bits)) / row.N;
        row.split = toHP(Rational(0), bits);
        for (const Rational& u : points) {
            const Rational one = normalizedCharOneVar(lambda, u);
            require(one > 0, "normalized character is not positive at a point");
            row.split += log(toHP(one, bits)) / row.N;
        }
        row.error = abs(row.joint - row.split);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace qfc

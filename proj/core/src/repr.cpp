#include "qfc/repr.hpp"

#include "qfc/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace qfc {

DecompositionMeasure::DecompositionMeasure(RootSystem sys, std::map<Signature, Rational> weights)
    : sys_(sys), w_(std::move(weights)) {
    Rational total = 0;
    for (const auto& [s, w] : w_) {
        require(s.system() == sys_, "decomposition mixes root systems");
        require(w > 0, "decomposition weights must be positive");
        total += w;
    }
    require(total == 1, "decomposition weights must sum to 1");
}

DecompositionMeasure DecompositionMeasure::delta(const Signature& lambda) {
    return DecompositionMeasure(lambda.system(), {{lambda, Rational(1)}});
}

Rational DecompositionMeasure::weight(const Signature& s) const {
    auto it = w_.find(s);
    return it == w_.end() ? Rational(0) : it->second;
}

namespace {

int exponentUnit(Series s) { return s == Series::B ? 2 : 1; }

// Shifted highest weight in units of 1/exponentUnit.
std::vector<long> shiftedWeight(const RootSystem& sys, const std::vector<long>& lambda) {
    const long N = sys.rank;
    std::vector<long> mu(static_cast<std::size_t>(N));
    for (long j = 1; j <= N; ++j) {
        const long l = lambda[static_cast<std::size_t>(j - 1)];
        switch (sys.series) {
        case Series::A:
        case Series::D: mu[j - 1] = l + N - j; break;
        case Series::B: mu[j - 1] = 2 * (l + N - j) + 1; break;
        case Series::C: mu[j - 1] = l + N + 1 - j; break;
        }
    }
    return mu;
}

int permutationSign(const std::vector<int>& p) {
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

void checkRank(const RootSystem& sys, int maxRank) {
    if (sys.rank > maxRank) throw SizeGuardError("symbolic characters limited to small rank", maxRank);
}

} // namespace

LaurentPolynomial weylDenominator(const RootSystem& sys) {
    const int N = sys.rank;
    const int unit = exponentUnit(sys.series);
    using E = LaurentPolynomial::Exponent;
    auto unitVec = [N](int i, long v) {
        E e(static_cast<std::size_t>(N), 0);
        e[static_cast<std::size_t>(i)] = v;
        return e;
    };
    LaurentPolynomial v = LaurentPolynomial::constant(N, 1);
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            LaurentPolynomial f(N, unit);
            if (sys.series == Series::A) {
                f.addTerm(unitVec(i, 1), 1);
                f.addTerm(unitVec(j, 1), -1);
            } else {
                f.addTerm(unitVec(i, unit), 1);
                f.addTerm(unitVec(i, -unit), 1);
                f.addTerm(unitVec(j, unit), -1);
                f.addTerm(unitVec(j, -unit), -1);
            }
            v = v * f;
        }
    if (sys.series == Series::B || sys.series == Series::C) {
        for (int i = 0; i < N; ++i) {
            LaurentPolynomial f(N, 2);
            const long half = sys.series == Series::B ? 1 : 2;
            f.addTerm(unitVec(i, half), 1);
            f.addTerm(unitVec(i, -half), -1);
            v = v * f;
        }
    }
    return v;
}

LaurentPolynomial weylNumerator(const RootSystem& sys, const std::vector<long>& entries) {
    require(static_cast<int>(entries.size()) == sys.rank, "entry count differs from the rank");
    const int N = sys.rank;
    const auto mu = shiftedWeight(sys, entries);
    LaurentPolynomial out(N, exponentUnit(sys.series));
    std::vector<int> perm(static_cast<std::size_t>(N));
    std::iota(perm.begin(), perm.end(), 0);
    LaurentPolynomial::Exponent e(static_cast<std::size_t>(N));
    do {
        const int sgn = permutationSign(perm);
        if (sys.series == Series::A) {
            for (int i = 0; i < N; ++i) e[i] = mu[perm[i]];
            out.addTerm(e, sgn);
            continue;
        }
        for (unsigned mask = 0; mask < (1u << N); ++mask) {
            int signs = 1;
            for (int i = 0; i < N; ++i) {
                const bool neg = (mask >> i) & 1u;
                e[i] = neg ? -mu[perm[i]] : mu[perm[i]];
                if (neg) signs = -signs;
            }
            if (sys.series == Series::D) {
                if (signs == 1) out.addTerm(e, sgn);
            } else {
                out.addTerm(e, sgn * signs);
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.canonicalize();
    return out;
}

LaurentPolynomial characterPolynomial(const Signature& lambda, int maxRank) {
    checkRank(lambda.system(), maxRank);
    LaurentPolynomial chi = divideExact(weylNumerator(lambda.system(), lambda.entries()),
                                        weylDenominator(lambda.system()));
    ensure(chi.unit() == 1, "character with fractional exponents");
    return chi;
}

LaurentPolynomial schurByTableaux(const Signature& lambda) {
    require(lambda.system().series == Series::A, "tableau expansion is type A only");
    const int N = lambda.rank();
    const long shift = lambda[N - 1];
    std::vector<long> shape(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) shape[i] = lambda[i] - shift;

    std::vector<std::vector<int>> t(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) t[i].assign(static_cast<std::size_t>(shape[i]), 0);
    LaurentPolynomial out(N);
    LaurentPolynomial::Exponent content(static_cast<std::size_t>(N), shift);

    auto rec = [&](auto&& self, int r, long c) -> void {
        if (r == N) {
            out.addTerm(content, 1);
            return;
        }
        if (c == shape[r]) {
            self(self, r + 1, 0);
            return;
        }
        int lo = 1;
        if (c > 0) lo = std::max(lo, t[r][c - 1]);
        if (r > 0) lo = std::max(lo, t[r - 1][c] + 1);
        for (int v = lo; v <= N; ++v) {
            t[r][c] = v;
            ++content[v - 1];
            self(self, r, c + 1);
            --content[v - 1];
        }
    };
    rec(rec, 0, 0);
    return out;
}

Multiplicities decomposeCharacter(const LaurentPolynomial& f, const RootSystem& sys, int maxRank) {
    checkRank(sys, maxRank);
    require(f.nvars() == sys.rank, "variable count differs from the rank");
    Multiplicities out;
    LaurentPolynomial rest = f;
    std::optional<LaurentPolynomial::Exponent> previous;
    constexpr long kMaxSteps = 1'000'000;
    for (long step = 0; !rest.isZero(); ++step) {
        ensure(step < kMaxSteps, "character decomposition did not terminate");
        ensure(rest.unit() == 1, "fractional exponent in an integral-weight character");
        const auto [lead, c] = rest.leading();
        ensure(!previous || lead < *previous, "greedy decomposition did not descend");
        previous = lead;
        ensure(isValidSignature(sys, lead), "leading weight is not dominant");
        ensure(c > 0 && c.get_den() == 1, "non-positive or fractional multiplicity");
        Signature mu(sys, lead);
        out[mu] += c.get_num();
        rest -= characterPolynomial(mu, maxRank) * c;
    }
    return out;
}

DecompositionMeasure weighByDimension(const RootSystem& sys, const Multiplicities& mult) {
    BigInt total = 0;
    for (const auto& [mu, c] : mult) total += c * weylDimension(mu);
    require(total > 0, "empty decomposition");
    std::map<Signature, Rational> w;
    for (const auto& [mu, c] : mult) {
        Rational x(c * weylDimension(mu), total);
        x.canonicalize();
        w.emplace(mu, x);
    }
    return DecompositionMeasure(sys, std::move(w));
}

Multiplicities tensorMultiplicities(const std::vector<Signature>& factors, int maxRank) {
    require(!factors.empty(), "tensor product of no factors");
    const RootSystem sys = factors.front().system();
    checkRank(sys, maxRank);
    LaurentPolynomial prod = LaurentPolynomial::constant(sys.rank, 1);
    for (const auto& f : factors) {
        require(f.system() == sys, "tensor factors from different root systems");
        prod = prod * characterPolynomial(f, maxRank);
    }
    return decomposeCharacter(prod, sys, maxRank);
}

DecompositionMeasure tensorDecompose(const std::vector<Signature>& factors, int maxRank) {
    const Multiplicities mult = tensorMultiplicities(factors, maxRank);
    BigInt product = 1, total = 0;
    for (const auto& f : factors) product *= weylDimension(f);
    for (const auto& [mu, c] : mult) total += c * weylDimension(mu);
    ensure(total == product, "tensor decomposition does not conserve dimension");
    return weighByDimension(factors.front().system(), mult);
}

Multiplicities lrCoefficientsA(const Signature& lambda, const Signature& mu) {
    require(lambda.system().series == Series::A && mu.system() == lambda.system(),
            "LR coefficients need two type A signatures of the same rank");
    const RootSystem sys = lambda.system();
    const int N = sys.rank;
    // Determinant twist: make both arguments partitions, shift the result back.
    const long a = lambda[N - 1], b = mu[N - 1];
    std::vector<long> base(static_cast<std::size_t>(N)), content(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        base[i] = lambda[i] - a;
        content[i] = mu[i] - b;
    }
    int labels = 0;
    while (labels < N && content[labels] > 0) ++labels;

    Multiplicities out;
    // counts[r][k]: boxes labelled r+1 in row k+1.
    std::vector<std::vector<long>> counts(static_cast<std::size_t>(labels), std::vector<long>(static_cast<std::size_t>(N), 0));
    std::vector<long> before = base, shape = base;

    auto rec = [&](auto&& self, int r, int k, long remaining) -> void {
        if (k == N) {
            if (remaining != 0) return;
            if (r + 1 == labels) {
                std::vector<long> nu(static_cast<std::size_t>(N));
                for (int i = 0; i < N; ++i) nu[i] = shape[i] + a + b;
                out[Signature(sys, nu)] += 1;
                return;
            }
            const std::vector<long> saved = before;
            before = shape;
            self(self, r + 1, 0, content[r + 1]);
            before = saved;
            return;
        }
        long cap = remaining;
        if (k > 0) cap = std::min(cap, before[k - 1] - shape[k]);
        if (r > 0) {
            long prevAbove = 0, curAbove = 0;
            for (int j = 0; j < k; ++j) {
                prevAbove += counts[r - 1][j];
                curAbove += counts[r][j];
            }
            cap = std::min(cap, prevAbove - curAbove);
        }
        for (long x = cap; x >= 0; --x) {
            counts[r][k] = x;
            shape[k] += x;
            self(self, r, k + 1, remaining - x);
            shape[k] -= x;
        }
        counts[r][k] = 0;
    };
    if (labels == 0) {
        std::vector<long> nu(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i) nu[i] = base[i] + a + b;
        out[Signature(sys, nu)] = 1;
        return out;
    }
    rec(rec, 0, 0, content[0]);
    return out;
}

Multiplicities tensorMultiplicitiesLR(const std::vector<Signature>& factors) {
    require(!factors.empty(), "tensor product of no factors");
    Multiplicities acc{{factors.front(), BigInt(1)}};
    for (std::size_t i = 1; i < factors.size(); ++i) {
        Multiplicities next;
        for (const auto& [nu, c] : acc)
            for (const auto& [rho, d] : lrCoefficientsA(nu, factors[i])) next[rho] += c * d;
        acc = std::move(next);
    }
    return acc;
}

namespace {

LaurentPolynomial conjugateByV(const LaurentPolynomial& f, const RootSystem& sys,
                               const std::function<LaurentPolynomial(const LaurentPolynomial&, int)>& term) {
    require(f.nvars() == sys.rank, "variable count differs from the rank");
    const LaurentPolynomial v = weylDenominator(sys);
    const LaurentPolynomial g = v * f;
    LaurentPolynomial h(sys.rank, g.unit());
    for (int i = 0; i < sys.rank; ++i) h += term(g, i);
    return divideExact(h, v);
}

} // namespace

LaurentPolynomial applyDk(int k, const LaurentPolynomial& f, const RootSystem& sys) {
    require(k >= 0, "operator index must be non-negative");
    require(sys.series == Series::A || k % 2 == 0, "only even operators act on B, C, D characters");
    return conjugateByV(f, sys, [k](const LaurentPolynomial& g, int i) { return eulerPower(g, i, k); });
}

LaurentPolynomial applyDkPP(int k, const LaurentPolynomial& f, const RootSystem& sys) {
    if (sys.series == Series::A) {
        require(k >= 1, "type A PP operators start at k = 1");
        return conjugateByV(f, sys, [k](const LaurentPolynomial& g, int i) {
            return shiftVariable(eulerPower(g, i, k), i, -g.unit());
        });
    }
    require(k >= 0, "operator index must be non-negative");
    return conjugateByV(f, sys, [k](const LaurentPolynomial& g, int i) {
        const LaurentPolynomial e = eulerPower(g, i, k);
        const long u = e.unit();
        if (k % 2 == 0) return shiftVariable(e, i, u) + shiftVariable(e, i, -u);
        return shiftVariable(e, i, -u) - shiftVariable(e, i, u);
    });
}

CharacterGenFn characterGeneratingFunction(const RhoSpec& spec, int maxRank) {
    CharacterGenFn out;
    if (const auto* rho = std::get_if<DecompositionMeasure>(&spec)) {
        const RootSystem& sys = rho->system();
        checkRank(sys, maxRank);
        out.s = LaurentPolynomial(sys.rank);
        for (const auto& [lambda, w] : rho->weights())
            out.s += characterPolynomial(lambda, maxRank) * Rational(w / Rational(weylDimension(lambda)));
        out.rho = *rho;
    } else if (const auto* t = std::get_if<TensorSpec>(&spec)) {
        require(!t->factors.empty(), "tensor product of no factors");
        const RootSystem sys = t->factors.front().system();
        checkRank(sys, maxRank);
        out.s = LaurentPolynomial::constant(sys.rank, 1);
        for (const auto& f : t->factors)
            out.s = out.s * (characterPolynomial(f, maxRank) * Rational(1, weylDimension(f)));
        out.rho = tensorDecompose(t->factors, maxRank);
    } else {
        const auto& r = std::get<RestrictionSpec>(spec);
        const RootSystem& sys = r.lambda.system();
        require(r.keep >= 1 && r.keep <= sys.rank, "subgroup rank out of range");
        const LaurentPolynomial restricted = setTrailingToOne(characterPolynomial(r.lambda, maxRank), r.keep);
        const RootSystem sub{sys.series, r.keep};
        out.s = restricted * Rational(1, weylDimension(r.lambda));
        out.rho = weighByDimension(sub, decomposeCharacter(restricted, sub, maxRank));
    }
    ensure(out.s.evaluateAtOnes() == 1, "character generating function is not normalized");
    return out;
}

MomentCheck operatorMomentCheck(const RhoSpec& spec, int k, int m, MomentKind kind) {
    require(k >= 1 && m >= 1, "moment order and power must be positive");
    const CharacterGenFn cgf = characterGeneratingFunction(spec);
    const RootSystem& sys = cgf.rho.system();
    const long N = sys.rank;
    switch (kind) {
    case MomentKind::counting: require(sys.series == Series::A, "the counting-measure formula is type A"); break;
    case MomentKind::pp: require(sys.series == Series::A && m == 1, "the PP formula is type A with m = 1"); break;
    case MomentKind::hat: require(sys.series != Series::A && k % 2 == 0, "the hat formula needs B, C, D and even k"); break;
    }

    MomentCheck out{0, 0};
    for (const auto& [lambda, w] : cgf.rho.weights()) {
        const DiscreteMeasure meas = kind == MomentKind::counting ? countingMeasure(lambda)
                                     : kind == MomentKind::pp     ? ppMeasure(lambda)
                                                                  : hatMeasure(lambda);
        out.lhs += w * pow(measureMoments(meas, k)[k], m);
    }

    LaurentPolynomial f = cgf.s;
    for (int i = 0; i < m; ++i) f = kind == MomentKind::pp ? applyDkPP(k, f, sys) : applyDk(k, f, sys);
    Rational scale = pow(Rational(N), -static_cast<long>(m) * (k + 1));
    if (kind == MomentKind::hat) scale *= pow(Rational(2), -static_cast<long>(m) * k);
    out.rhs = f.evaluateAtOnes() * scale;
    return out;
}

DividedDifferenceCheck dividedDifferenceCheck(int p, int n, const Rational& eps) {
    require(p >= 0 && n >= 1, "need p >= 0 and n >= 1");
    require(eps != 0, "nodes must be distinct");
    std::vector<Rational> z;
    for (int i = 0; i < n; ++i) z.push_back(Rational(1) + eps * i);
    Rational s = 0;
    for (int i = 0; i < n; ++i) {
        Rational den = 1;
        for (int j = 0; j < n; ++j)
            if (j != i) den *= z[i] - z[j];
        s += pow(z[i], p) / den;
    }
    return {s, Rational(binomial(p, n - 1))};
}

} // namespace qfc

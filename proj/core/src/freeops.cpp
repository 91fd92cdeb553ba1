#include "qfc/freeops.hpp"
#include "qfc/errors.hpp"

namespace qfc {

namespace {

void requireProbability(const MomentSequence& m, const char* where) {
    require(!m.values.empty() && m[0] == 1, std::string(where) + ": M_0 must be 1");
}

MomentSequence fromValues(std::vector<Rational> v) {
    MomentSequence m;
    m.values = std::move(v);
    m.probability = !m.values.empty() && m.values[0] == 1;
    return m;
}

// Sum_k b_k z^{k+1} for a moment list b_0..b_K (order K+1).
TruncatedSeries shiftedGenerating(const MomentSequence& b) {
    TruncatedSeries s(b.order() + 1);
    for (int k = 0; k <= b.order(); ++k) s[k + 1] = b[k];
    return s;
}

MomentSequence fromShiftedGenerating(const TruncatedSeries& s) {
    std::vector<Rational> v;
    for (int k = 0; k + 1 <= s.order(); ++k) v.push_back(s[k + 1]);
    return fromValues(std::move(v));
}

} // namespace

TruncatedSeries rUniform01(int order) {
    // (1 - e^{-z})/z = sum_j (-1)^j z^j/(j+1)!
    TruncatedSeries g(order + 1);
    Rational f = 1;
    for (int j = 0; j <= order + 1; ++j) {
        f /= (j + 1);
        g[j] = (j % 2 ? -f : f);
    }
    TruncatedSeries inv = reciprocal(g);
    TruncatedSeries r(order);
    for (int j = 0; j <= order; ++j) r[j] = inv[j + 1];
    return r;
}

RSeries momentsToR(const MomentSequence& m, RKind kind) {
    requireProbability(m, "momentsToR");
    const int K = m.order();
    require(K >= 1, "momentsToR needs moments through at least M_1");
    TruncatedSeries S = shiftedGenerating(m);       // z + M_1 z^2 + ... (order K+1)
    TruncatedSeries Sinv = reversion(S);
    TruncatedSeries g(K);                            // S^{-1}(z)/z
    for (int j = 0; j <= K; ++j) g[j] = Sinv[j + 1];
    TruncatedSeries gi = reciprocal(g);
    TruncatedSeries r(K - 1);                        // (1/g - 1)/z
    for (int j = 0; j <= K - 1; ++j) r[j] = gi[j + 1];
    if (kind == RKind::quantized) r -= rUniform01(K - 1);
    return {kind, r};
}

RSeries toKind(const RSeries& r, RKind kind) {
    if (r.kind == kind) return r;
    RSeries out{kind, r.body};
    if (kind == RKind::quantized)
        out.body -= rUniform01(r.body.order());
    else
        out.body += rUniform01(r.body.order());
    return out;
}

MomentSequence rToMoments(const RSeries& rs) {
    RSeries fr = toKind(rs, RKind::free);
    require(fr.body.var() == Var::z, "R-series must be in z");
    const int K = fr.body.order() + 1;
    TruncatedSeries h(K);                            // 1 + z R(z)
    h[0] = 1;
    for (int j = 0; j + 1 <= K; ++j) h[j + 1] = fr.body[j];
    TruncatedSeries hi = reciprocal(h);
    TruncatedSeries Sinv(K + 1);                     // z / (1 + z R(z))
    for (int j = 0; j <= K; ++j) Sinv[j + 1] = hi[j];
    return fromShiftedGenerating(reversion(Sinv));
}

MomentSequence convolve(RKind kind, const std::vector<MomentSequence>& inputs) {
    require(!inputs.empty(), "convolve needs at least one input");
    const int K = inputs.front().order();
    RSeries acc{kind, TruncatedSeries(K - 1)};
    for (auto& m : inputs) {
        require(m.order() == K, "convolve: moment orders differ");
        acc.body += momentsToR(m, kind).body;
    }
    return rToMoments(acc);
}

MomentSequence project(RKind kind, const Rational& alpha, const MomentSequence& m) {
    require(alpha > 0 && alpha <= 1, "project: alpha must lie in (0, 1]");
    RSeries r = momentsToR(m, kind);
    r.body *= 1 / alpha;
    return rToMoments(r);
}

HSeries hFromMoments(const MomentSequence& m) {
    RSeries r = momentsToR(m, RKind::free);
    const int K = m.order();
    TruncatedSeries F(K);                            // int_0^t R
    for (int n = 1; n <= K; ++n) F[n] = r.body[n - 1] / n;
    TruncatedSeries H = changeVariableLog(F, LogChange::zToUMinus1);
    TruncatedSeries q(K, Var::uMinus1);              // ln(u)/(u-1)
    for (int j = 0; j <= K; ++j) q[j] = makeRational(j % 2 ? -1 : 1, j + 1);
    H += seriesLog(q);
    H.setEffectiveOrder(K);
    return {H};
}

TruncatedSeries hHatFromH(const HSeries& h) {
    require(h.body.var() == Var::uMinus1, "hHatFromH expects a series in (u-1)");
    const int K = h.body.order();
    TruncatedSeries G = h.body * Rational(2) + logOnePlus(K, Var::uMinus1);
    // v = w (1+w)^{-1/2} is odd under x -> 1/x and v^2 = 2(z - 1).
    TruncatedSeries v = multiply(TruncatedSeries::identity(K, Var::uMinus1),
                                 seriesExp(logOnePlus(K, Var::uMinus1) * makeRational(-1, 2)));
    TruncatedSeries w = reversion(v);
    TruncatedSeries Gv = compose(G, w);
    for (int j = 1; j <= K; j += 2)
        if (Gv[j] != 0)
            throw ValidationError("hHatFromH: 2H(x) + ln x is not invariant under x -> 1/x (measure not symmetric)");
    const int J = K / 2;
    TruncatedSeries out(K, Var::uMinus1);
    Rational two = 1;
    for (int j = 0; j <= J; ++j, two *= 2) out[j] = Gv[2 * j] * two;
    out.setEffectiveOrder(J);
    return out;
}

MomentSequence momentsFromQ(const TruncatedSeries& qIn, QMode mode, int K) {
    require(qIn.var() == Var::uMinus1, "momentsFromQ expects a series around the base point 1");
    require(K >= 0, "negative moment order");
    const int need = mode == QMode::unitary ? K : K / 2;
    if (qIn.effectiveOrder() < need)
        throw ValidationError("momentsFromQ: effective order " + std::to_string(qIn.effectiveOrder()) +
                              " is below the required " + std::to_string(need));
    TruncatedSeries q = qIn.order() >= K ? qIn.truncated(K) : qIn.truncated(qIn.order());
    if (q.order() < K) {
        TruncatedSeries padded(K, Var::uMinus1);
        for (int j = 0; j <= q.order(); ++j) padded[j] = q[j];
        q = padded;
    }
    q.setEffectiveOrder(K);
    const TruncatedSeries dq = differentiate(q);
    std::vector<Rational> out(static_cast<std::size_t>(K) + 1);
    if (mode == QMode::unitary) {
        for (int k = 0; k <= K; ++k) {
            TruncatedSeries uk = power(TruncatedSeries::constant(1, K, Var::uMinus1) +
                                           TruncatedSeries::identity(K, Var::uMinus1),
                                       k);
            Rational sum = 0;
            for (int l = 0; l <= k; ++l) {
                TruncatedSeries t = multiply(uk, power(dq, k - l));
                // k!/(l!(l+1)!(k-l)!) * l! * [w^l]
                sum += Rational(factorial(k)) / Rational(factorial(l + 1) * factorial(k - l)) * t[l];
            }
            out[static_cast<std::size_t>(k)] = sum;
        }
    } else {
        const TruncatedSeries s = TruncatedSeries::identity(K, Var::uMinus1);
        const TruncatedSeries sPlus2 = s + TruncatedSeries::constant(2, K, Var::uMinus1);
        const TruncatedSeries zz = multiply(s, sPlus2); // z^2 - 1 in s = z - 1
        for (int k2 = 0; k2 <= K; k2 += 2) {
            const int k = k2 / 2;
            TruncatedSeries base = power(zz, k);
            Rational sum = 0;
            for (int l = 0; l <= k2; ++l) {
                TruncatedSeries t = multiply(base, power(dq, k2 - l));
                sum += Rational(factorial(k2)) / Rational(factorial(l + 1) * factorial(k2 - l)) * t[l];
            }
            out[static_cast<std::size_t>(k2)] = sum / pow(Rational(2), k2);
        }
    }
    return fromValues(std::move(out));
}

MomentSequence markovKreinMap(const MomentSequence& b, MKDirection dir) {
    TruncatedSeries B = shiftedGenerating(b);
    if (dir == MKDirection::forward) return fromShiftedGenerating(seriesExp(B));
    B[0] = 1;
    return fromShiftedGenerating(seriesLog(B));
}

MomentSequence qMapSeriesRoute(const MomentSequence& s) {
    requireProbability(s, "qMap");
    TruncatedSeries e = seriesExp(shiftedGenerating(s) * Rational(-1));
    MomentSequence c = fromShiftedGenerating(e);
    for (auto& v : c.values) v = -v;
    c.probability = c.values[0] == 1;
    return c;
}

MomentSequence qMapReflectionRoute(const MomentSequence& s) {
    requireProbability(s, "qMap");
    return reflectMoments(markovKreinMap(reflectMoments(s), MKDirection::forward));
}

MomentSequence qMap(const MomentSequence& s) {
    MomentSequence a = qMapSeriesRoute(s);
    ensure(a == qMapReflectionRoute(s), "qMap: series route and reflection route disagree");
    return a;
}

InfDivParameters scaleParameters(const InfDivParameters& c, const Rational& t) {
    InfDivParameters r = c;
    r.aPlus = scaleMass(c.aPlus, t);
    r.aMinus = scaleMass(c.aMinus, t);
    r.bPlus = scaleMass(c.bPlus, t);
    r.bMinus = scaleMass(c.bMinus, t);
    r.gammaPlus = c.gammaPlus * t;
    r.gammaMinus = c.gammaMinus * t;
    return r;
}

MomentSequence infDivMoments(const InfDivParameters& c) {
    const int K = c.aPlus.order();
    require(K >= 1, "infDivMoments needs order >= 1");
    for (auto* m : {&c.aMinus, &c.bPlus, &c.bMinus})
        require(m->order() == K, "infDivMoments: parameter moment orders differ");
    require(c.gammaPlus >= 0 && c.gammaMinus >= 0, "infDivMoments: drifts must be non-negative");
    require(c.supportPlus >= 0 && c.supportMinus >= 0 && c.supportPlus + c.supportMinus <= 1,
            "infDivMoments: declared support bounds must satisfy b+ + b- <= 1");
    const int n = K - 1;
    const TruncatedSeries one = TruncatedSeries::constant(1, n);
    const TruncatedSeries em1 = expMinusOne(n);                          // e^u - 1
    const TruncatedSeries emm1 = scaleArgument(em1, Rational(-1));       // e^{-u} - 1
    const TruncatedSeries ep = one + em1, em = one + emm1;
    auto gen = [n](const MomentSequence& m) {                            // M_1 + M_2 z + M_3 z^2 + ...
        TruncatedSeries g(n);
        for (int k = 0; k <= n; ++k) g[k] = m[k + 1];
        return g;
    };
    TruncatedSeries r = ep * c.gammaPlus - em * c.gammaMinus;
    r += multiply(ep, compose(gen(c.bPlus), -em1));
    r += multiply(ep, compose(gen(c.aPlus), em1));
    r -= multiply(em, compose(gen(c.bMinus), -emm1));
    r -= multiply(em, compose(gen(c.aMinus), emm1));
    return rToMoments({RKind::quantized, r});
}

std::vector<ScalingRow> scalingLimitCheck(const MomentSequence& m, const std::vector<Rational>& Ls) {
    RSeries target = momentsToR(m, RKind::free);
    std::vector<ScalingRow> rows;
    for (auto& L : Ls) {
        require(L > 0, "scaling factor must be positive");
        RSeries q = momentsToR(dilateMoments(m, L), RKind::quantized);
        ScalingRow row{L, {}};
        Rational scale = 1 / L;
        for (int j = 0; j <= q.body.order(); ++j, scale /= L) {
            Rational d = q.body[j] * scale - target.body[j];
            row.absErrors.push_back(abs(d));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

static Rational determinant(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

std::vector<Rational> hankelMinors(const MomentSequence& m, int maxOrder) {
    require(maxOrder <= m.order(), "hankelMinors: not enough moments");
    std::vector<Rational> out;
    for (int n = 0; 2 * n <= maxOrder; ++n) {
        std::vector<std::vector<Rational>> h(static_cast<std::size_t>(n + 1),
                                             std::vector<Rational>(static_cast<std::size_t>(n + 1)));
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) h[i][j] = m[i + j];
        out.push_back(determinant(std::move(h)));
    }
    return out;
}

bool hankelNonNegative(const MomentSequence& m, int maxOrder) {
    for (auto& d : hankelMinors(m, maxOrder))
        if (d < 0) return false;
    return true;
}

MomentSequence uniformMoments(const Rational& a, const Rational& b, int K) {
    require(b > a, "uniform measure needs a < b");
    std::vector<Rational> v;
    for (int k = 0; k <= K; ++k) v.push_back((pow(b, k + 1) - pow(a, k + 1)) / ((k + 1) * (b - a)));
    return fromValues(std::move(v));
}

MomentSequence semicircleMoments(int K) {
    std::vector<Rational> v;
    for (int k = 0; k <= K; ++k) {
        if (k % 2) {
            v.emplace_back(0);
        } else {
            const int j = k / 2;
            v.emplace_back(binomial(2 * j, j) / (j + 1));
        }
    }
    return fromValues(std::move(v));
}

MomentSequence reflectMoments(const MomentSequence& m) {
    MomentSequence r = m;
    for (int k = 1; k <= m.order(); k += 2) r.values[static_cast<std::size_t>(k)] = -m[k];
    return r;
}

MomentSequence dilateMoments(const MomentSequence& m, const Rational& L) {
    MomentSequence r = m;
    Rational p = 1;
    for (int k = 0; k <= m.order(); ++k, p *= L) r.values[static_cast<std::size_t>(k)] = m[k] * p;
    return r;
}

MomentSequence translateMoments(const MomentSequence& m, const Rational& c) {
    MomentSequence r = m;
    for (int k = 0; k <= m.order(); ++k) {
        Rational s = 0;
        for (int j = 0; j <= k; ++j) s += Rational(binomial(k, j)) * pow(c, k - j) * m[j];
        r.values[static_cast<std::size_t>(k)] = s;
    }
    return r;
}

MomentSequence scaleMass(const MomentSequence& m, const Rational& t) {
    MomentSequence r = m;
    for (auto& v : r.values) v *= t;
    r.probability = !r.values.empty() && r.values[0] == 1;
    return r;
}

} // namespace qfc

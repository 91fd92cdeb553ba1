#include "qfc/lln.hpp"

#include "qfc/errors.hpp"
#include "qfc/repr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace qfc {

namespace {

Rational absQ(const Rational& q) { return q < 0 ? Rational(-q) : q; }

std::string joinInts(const std::vector<int>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

std::string describe(const Profile& f) {
    std::ostringstream os;
    for (std::size_t i = 0; i < f.pieces().size(); ++i) {
        const auto& p = f.pieces()[i];
        os << (i ? ";" : "") << "[" << toString(p.from) << "," << toString(p.to) << "]:" << toString(p.start) << "->"
           << toString(p.end);
    }
    return os.str();
}

// Integral over [a, b] of g^k where g is linear with g(a) = ga, g(b) = gb.
Rational integratePower(const Rational& a, const Rational& b, const Rational& ga, const Rational& gb, int k) {
    if (ga == gb) return pow(ga, k) * (b - a);
    const Rational slope = (gb - ga) / (b - a);
    return (pow(gb, k + 1) - pow(ga, k + 1)) / (slope * (k + 1));
}

RootSystem systemOf(Series s, int N) { return RootSystem{s, N}; }

void appendRows(ExperimentReport& r, int N, const MomentStats& st, const MomentSequence& limit, int K) {
    for (int k = 0; k <= K; ++k) {
        ReportRow row;
        row.N = N;
        row.k = k;
        row.finite = st.mean[k];
        row.limit = limit[k];
        row.absError = absQ(row.finite - row.limit);
        row.variance = st.second[static_cast<std::size_t>(k)] - row.finite * row.finite;
        r.rows.push_back(std::move(row));
    }
}

DiscreteMeasure measureOf(const Signature& mu, MeasureKind kind) {
    return kind == MeasureKind::counting ? countingMeasure(mu) : ppMeasure(mu);
}

// sum_i (mu_i + M - i)^k for k = 0..K; the type A counting moment is this over M^{k+1}.
void shiftedPowerSums(const std::vector<long>& mu, int K, std::vector<BigInt>& out) {
    const long M = static_cast<long>(mu.size());
    out.assign(static_cast<std::size_t>(K) + 1, BigInt(0));
    for (long i = 0; i < M; ++i) {
        const long x = mu[static_cast<std::size_t>(i)] + M - 1 - i;
        BigInt p = 1;
        for (int k = 0; k <= K; ++k, p *= x) out[static_cast<std::size_t>(k)] += p;
    }
}

} // namespace

Profile::Profile(std::vector<ProfilePiece> pieces) : pieces_(std::move(pieces)) {
    require(!pieces_.empty(), "profile needs at least one piece");
    require(pieces_.front().from == 0 && pieces_.back().to == 1, "profile must cover [0, 1]");
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        require(p.from < p.to, "profile pieces must have positive length");
        require(p.start >= p.end, "profile must be weakly decreasing");
        if (i > 0) {
            require(p.from == pieces_[i - 1].to, "profile pieces must be contiguous");
            require(p.start <= pieces_[i - 1].end, "profile must be weakly decreasing across breakpoints");
        }
    }
}

Profile Profile::constant(const Rational& c) { return Profile({{0, 1, c, c}}); }

Profile Profile::step(const Rational& c, const Rational& t) {
    require(t > 0 && t <= 1, "step position must lie in (0, 1]");
    if (t == 1) return constant(c);
    return Profile({{0, t, c, c}, {t, 1, 0, 0}});
}

Rational Profile::operator()(const Rational& t) const {
    require(t >= 0 && t <= 1, "profile argument outside [0, 1]");
    for (const auto& p : pieces_)
        if (t <= p.to) return p.start + (p.end - p.start) * (t - p.from) / (p.to - p.from);
    throw InvariantError("profile evaluation fell through");
}

Rational Profile::minimum() const { return pieces_.back().end; }

Rational Profile::maxSlope() const {
    Rational m = 0;
    for (const auto& p : pieces_) m = std::max(m, Rational((p.start - p.end) / (p.to - p.from)));
    return m;
}

void validateProfile(const Profile& f, Series s) {
    if (s != Series::A) require(f.minimum() >= 0, "profile must be non-negative for B, C and D");
}

Signature buildRegularSequence(const Profile& f, int N, const RootSystem& sys) {
    require(N >= 1 && sys.rank == N, "rank mismatch");
    validateProfile(f, sys.series);
    std::vector<long> e(static_cast<std::size_t>(N));
    for (int j = 1; j <= N; ++j) {
        const Rational v = f(makeRational(j, N)) * N + makeRational(1, 2);
        BigInt fl;
        mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
        e[static_cast<std::size_t>(j - 1)] = fl.get_si();
    }
    for (int j = 1; j < N; ++j) e[j] = std::min(e[j], e[j - 1]);
    if (sys.series != Series::A)
        for (auto& v : e) v = std::max(v, 0L);
    const Rational C = f.bound();
    for (int j = 1; j <= N; ++j)
        ensure(absQ(makeRational(e[j - 1], N) - f(makeRational(j, N))) <= C, "regularity bound violated");
    return Signature(sys, e);
}

MomentSequence profileLimitMoments(const Profile& f, Series s, int K) {
    require(K >= 0, "negative order");
    validateProfile(f, s);
    MomentSequence m;
    m.values.assign(static_cast<std::size_t>(K) + 1, Rational(0));
    for (const auto& p : f.pieces())
        for (int k = 0; k <= K; ++k) {
            Rational& v = m.values[static_cast<std::size_t>(k)];
            if (s == Series::A) {
                v += integratePower(p.from, p.to, p.start + 1 - p.from, p.end + 1 - p.to, k);
            } else {
                const Rational upper = integratePower(p.from, p.to, (p.start + 2 - p.from) / 2, (p.end + 2 - p.to) / 2, k);
                const Rational lower = integratePower(p.from, p.to, (p.from - p.start) / 2, (p.to - p.end) / 2, k);
                v += (upper + lower) / 2;
            }
        }
    return m;
}

std::string toString(MeasureKind k) { return k == MeasureKind::counting ? "counting" : "pp"; }

MeasureKind parseMeasureKind(const std::string& s) {
    if (s == "counting") return MeasureKind::counting;
    if (s == "pp") return MeasureKind::pp;
    throw ValidationError("unknown measure kind: " + s);
}

std::vector<ReportRow> ExperimentReport::rowsFor(int N) const {
    std::vector<ReportRow> out;
    for (const auto& r : rows)
        if (r.N == N) out.push_back(r);
    return out;
}

const ReportRow& ExperimentReport::row(int N, int k) const {
    for (const auto& r : rows)
        if (r.N == N && r.k == k) return r;
    throw ValidationError("no report row for N=" + std::to_string(N) + ", k=" + std::to_string(k));
}

MomentStats decompositionMoments(const DecompositionMeasure& rho, MeasureKind kind, int K) {
    MomentStats st;
    st.mean.values.assign(static_cast<std::size_t>(K) + 1, Rational(0));
    st.second.assign(static_cast<std::size_t>(K) + 1, Rational(0));
    Rational total = 0;
    for (const auto& [mu, w] : rho.weights()) {
        const MomentSequence m = measureMoments(measureOf(mu, kind), K);
        for (int k = 0; k <= K; ++k) {
            st.mean.values[static_cast<std::size_t>(k)] += w * m[k];
            st.second[static_cast<std::size_t>(k)] += w * m[k] * m[k];
        }
        total += w;
    }
    ensure(total == 1, "decomposition probabilities do not sum to 1");
    return st;
}

ExperimentReport runTensorLLN(const std::vector<Profile>& profiles, Series s, const std::vector<int>& Ns, int K,
                              MeasureKind kind) {
    require(!profiles.empty(), "tensor experiment needs at least one profile");
    ExperimentReport r;
    r.experiment = "tensor";
    r.config = {{"group", std::string(1, seriesLetter(s))}, {"measure", toString(kind)}, {"K", std::to_string(K)},
                {"Ns", joinInts(Ns)}};
    for (std::size_t i = 0; i < profiles.size(); ++i) r.config.emplace_back("profile" + std::to_string(i + 1), describe(profiles[i]));
    r.config.emplace_back("boundary", "left-piece");

    std::vector<MomentSequence> limits;
    for (const auto& f : profiles) {
        const MomentSequence m = profileLimitMoments(f, s, K);
        limits.push_back(kind == MeasureKind::counting ? m : qMap(m));
    }
    const MomentSequence prediction = convolve(kind == MeasureKind::counting ? RKind::quantized : RKind::free, limits);
    ensure(hankelNonNegative(prediction, std::min(K / 2, 6)), "predicted moments fail the Hankel condition");

    for (int N : Ns) {
        std::vector<Signature> sigs;
        for (const auto& f : profiles) sigs.push_back(buildRegularSequence(f, N, systemOf(s, N)));
        DecompositionMeasure rho = s == Series::A ? weighByDimension(systemOf(s, N), tensorMultiplicitiesLR(sigs))
                                                  : tensorDecompose(sigs);
        appendRows(r, N, decompositionMoments(rho, kind, K), prediction, K);
    }
    return r;
}

std::uint64_t trialSeed(std::uint64_t seed, std::uint64_t t) {
    // splitmix64 of the pair
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (t + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ExperimentReport runRestrictionLLN(const Profile& f, const Rational& alpha, Series s, const std::vector<int>& Ns, int K,
                                   MeasureKind kind, std::optional<MonteCarloOptions> mc) {
    require(alpha > 0 && alpha < 1, "alpha must lie in (0, 1)");
    ExperimentReport r;
    r.experiment = "restrict";
    r.config = {{"group", std::string(1, seriesLetter(s))}, {"measure", toString(kind)}, {"K", std::to_string(K)},
                {"Ns", joinInts(Ns)}, {"alpha", toString(alpha)}, {"profile", describe(f)},
                {"mode", mc ? "monte-carlo" : "exact"}, {"boundary", "left-piece"}};
    if (mc) {
        require(mc->trials >= 2, "Monte Carlo needs at least two trials");
        r.config.emplace_back("trials", std::to_string(mc->trials));
        r.seed = mc->seed;
    }

    const MomentSequence m = profileLimitMoments(f, s, K);
    const MomentSequence prediction =
        kind == MeasureKind::counting ? project(RKind::quantized, alpha, m) : project(RKind::free, alpha, qMap(m));
    ensure(hankelNonNegative(prediction, std::min(K / 2, 6)), "predicted moments fail the Hankel condition");

    for (int N : Ns) {
        const Signature lambda = buildRegularSequence(f, N, systemOf(s, N));
        BigInt fl;
        const Rational aN = alpha * N;
        mpz_fdiv_q(fl.get_mpz_t(), aN.get_num_mpz_t(), aN.get_den_mpz_t());
        const int M = static_cast<int>(fl.get_si());
        require(M >= 1 && M < N, "alpha N must give a rank in [1, N)");

        if (!mc) {
            appendRows(r, N, decompositionMoments(restrictDecompose(lambda, M), kind, K), prediction, K);
            continue;
        }

        // Sums of the k-th moment and of its square, kept exact.
        std::vector<Rational> sum(static_cast<std::size_t>(K) + 1), sumSq(static_cast<std::size_t>(K) + 1);
        std::vector<BigInt> ps, acc(static_cast<std::size_t>(K) + 1), accSq(static_cast<std::size_t>(K) + 1);
        const bool fastA = s == Series::A && kind == MeasureKind::counting;
        std::optional<TilingSampler> tiler;
        if (s != Series::A) tiler.emplace(lambda, tilingModeFor(s));
        const int stop = stripColumn(systemOf(s, M));
        for (long t = 0; t < mc->trials; ++t) {
            std::mt19937_64 rng(trialSeed(mc->seed, static_cast<std::uint64_t>(t)));
            std::vector<long> mu;
            if (s == Series::A) mu = sampleRestrictionAFloor(lambda, M, rng);
            else mu = tiler->sample(rng, stop).column(stop);
            if (fastA) {
                shiftedPowerSums(mu, K, ps);
                for (int k = 0; k <= K; ++k) {
                    acc[static_cast<std::size_t>(k)] += ps[static_cast<std::size_t>(k)];
                    accSq[static_cast<std::size_t>(k)] += ps[static_cast<std::size_t>(k)] * ps[static_cast<std::size_t>(k)];
                }
            } else {
                const MomentSequence mm = measureMoments(measureOf(Signature(systemOf(s, M), mu), kind), K);
                for (int k = 0; k <= K; ++k) {
                    sum[static_cast<std::size_t>(k)] += mm[k];
                    sumSq[static_cast<std::size_t>(k)] += mm[k] * mm[k];
                }
            }
        }
        if (fastA)
            for (int k = 0; k <= K; ++k) {
                BigInt scale;
                mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(M), static_cast<unsigned long>(k + 1));
                sum[static_cast<std::size_t>(k)] = makeRational(acc[static_cast<std::size_t>(k)], scale);
                sumSq[static_cast<std::size_t>(k)] = makeRational(accSq[static_cast<std::size_t>(k)], BigInt(scale * scale));
            }
        const Rational T = mc->trials;
        for (int k = 0; k <= K; ++k) {
            ReportRow row;
            row.N = N;
            row.k = k;
            row.finite = sum[static_cast<std::size_t>(k)] / T;
            row.limit = prediction[k];
            row.absError = absQ(row.finite - row.limit);
            row.variance = (sumSq[static_cast<std::size_t>(k)] - sum[static_cast<std::size_t>(k)] * row.finite) / (T - 1);
            row.standardError = std::sqrt(toDouble(row.variance) / toDouble(T));
            r.rows.push_back(std::move(row));
        }
    }
    return r;
}

double SymmetryPoint::gap() const { return std::abs(strongMean - weakMean); }

double SymmetryPoint::band() const { return 3.0 * std::sqrt(strongSE * strongSE + weakSE * weakSE); }

SymmetryComparison runSymmetryComparison(const Profile& f, const std::vector<int>& widths, long trials,
                                         std::uint64_t seed) {
    require(trials >= 2, "symmetry comparison needs at least two trials");
    SymmetryComparison out;
    for (int W : widths) {
        require(W >= 3 && W % 2 == 1, "strip width must be odd and at least 3");
        const int m = (W - 1) / 2;
        SymmetryWidthResult res;
        res.width = W;
        res.strongTop = buildRegularSequence(f, m, RootSystem{Series::C, m});
        std::vector<long> weak = res.strongTop.entries();
        weak.push_back(0);
        res.weakTop = Signature(RootSystem{Series::D, m + 1}, weak);
        TilingSampler strong(res.strongTop, TilingMode::strong);
        TilingSampler weakS(res.weakTop, TilingMode::weak);
        ensure(strong.topColumn() == W && weakS.topColumn() == W, "strip widths do not match");

        // Grid: every column below the top, heights probed between lattice points.
        const long reach = res.strongTop[0] + m + 1;
        std::vector<Rational> ys;
        for (long h = -2 * reach; h <= 2 * reach; ++h) ys.push_back(makeRational(4 * h + 1, 4) / 2);
        const std::size_t cols = static_cast<std::size_t>(W - 1);
        const std::size_t cells = cols * ys.size();
        std::vector<double> sS(cells, 0), sS2(cells, 0), wS(cells, 0), wS2(cells, 0);

        auto accumulate = [&](const InterlacingChain& chain, std::vector<double>& s1, std::vector<double>& s2) {
            for (int c = 1; c < W; ++c) {
                const HeightFunctionSample h = heightFunction(chain, c);
                for (std::size_t j = 0; j < ys.size(); ++j) {
                    const double v = static_cast<double>(h.at(ys[j])) / W;
                    const std::size_t idx = static_cast<std::size_t>(c - 1) * ys.size() + j;
                    s1[idx] += v;
                    s2[idx] += v * v;
                }
            }
        };
        for (long t = 0; t < trials; ++t) {
            std::mt19937_64 rs(trialSeed(seed, static_cast<std::uint64_t>(2 * t)));
            std::mt19937_64 rw(trialSeed(seed, static_cast<std::uint64_t>(2 * t + 1)));
            accumulate(strong.sample(rs), sS, sS2);
            accumulate(weakS.sample(rw), wS, wS2);
        }
        const double T = static_cast<double>(trials);
        auto se = [T](double s1, double s2) {
            const double var = std::max(0.0, (s2 - s1 * s1 / T) / (T - 1));
            return std::sqrt(var / T);
        };
        for (int c = 1; c < W; ++c)
            for (std::size_t j = 0; j < ys.size(); ++j) {
                const std::size_t idx = static_cast<std::size_t>(c - 1) * ys.size() + j;
                SymmetryPoint p;
                p.column = c;
                p.y = ys[j];
                p.strongMean = sS[idx] / T;
                p.weakMean = wS[idx] / T;
                p.strongSE = se(sS[idx], sS2[idx]);
                p.weakSE = se(wS[idx], wS2[idx]);
                res.supGap = std::max(res.supGap, p.gap());
                if (p.gap() > p.band()) res.withinBand = false;
                res.points.push_back(p);
            }
        out.widths.push_back(std::move(res));
    }
    return out;
}

ExperimentReport ppLimitConsistency(const Profile& f, Series s, const std::vector<int>& Ns, int K) {
    ExperimentReport r;
    r.experiment = "pp-limit";
    r.config = {{"group", std::string(1, seriesLetter(s))}, {"K", std::to_string(K)}, {"Ns", joinInts(Ns)},
                {"profile", describe(f)}, {"boundary", "left-piece"}};
    const MomentSequence target = qMap(profileLimitMoments(f, s, K));
    for (int N : Ns) {
        const MomentSequence pp = measureMoments(ppMeasure(buildRegularSequence(f, N, systemOf(s, N))), K);
        MomentStats st{pp, {}};
        for (int k = 0; k <= K; ++k) st.second.push_back(pp[k] * pp[k]);
        appendRows(r, N, st, target, K);
    }
    return r;
}

ExperimentReport kerovLimitCheck(const std::vector<long>& diagram, const std::vector<int>& Ns, int K) {
    for (std::size_t i = 0; i < diagram.size(); ++i) {
        require(diagram[i] > 0, "diagram rows must be positive");
        require(i == 0 || diagram[i] <= diagram[i - 1], "diagram rows must be weakly decreasing");
    }
    ExperimentReport r;
    r.experiment = "kerov";
    std::ostringstream d;
    for (std::size_t i = 0; i < diagram.size(); ++i) d << (i ? "," : "") << diagram[i];
    r.config = {{"diagram", d.str()}, {"K", std::to_string(K)}, {"Ns", joinInts(Ns)}};
    const auto [minima, maxima] = kerovCorners(diagram);
    const MomentSequence target = measureMoments(kerovTransitionMeasure(minima, maxima), K);
    const std::size_t k = diagram.size();
    for (int N : Ns) {
        require(static_cast<std::size_t>(N) >= k, "N must be at least the number of rows");
        std::vector<long> e(static_cast<std::size_t>(N), 0);
        for (std::size_t i = 0; i < k; ++i) e[static_cast<std::size_t>(N) - 1 - i] = -diagram[i];
        const Signature lambda(RootSystem{Series::A, N}, e);
        const MomentSequence pp = measureMoments(dilate(ppMeasure(lambda), Rational(N)), K);
        MomentStats st{pp, {}};
        for (int j = 0; j <= K; ++j) st.second.push_back(pp[j] * pp[j]);
        appendRows(r, N, st, target, K);
    }
    return r;
}

} // namespace qfc

#include "qfc/branching.hpp"

#include "qfc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qfc {

std::string toString(TilingMode m) {
    switch (m) {
    case TilingMode::plain: return "none";
    case TilingMode::strong: return "strong";
    case TilingMode::weak: return "weak";
    }
    return "none";
}

TilingMode parseTilingMode(const std::string& s) {
    if (s == "none" || s == "plain") return TilingMode::plain;
    if (s == "strong") return TilingMode::strong;
    if (s == "weak") return TilingMode::weak;
    throw ValidationError("unknown symmetry mode '" + s + "'");
}

TilingMode tilingModeFor(Series s) {
    switch (s) {
    case Series::A: return TilingMode::plain;
    case Series::C: return TilingMode::strong;
    default: return TilingMode::weak;
    }
}

int stripColumn(const RootSystem& sys) {
    switch (sys.series) {
    case Series::A: return sys.rank;
    case Series::B: return 2 * sys.rank;
    case Series::C: return 2 * sys.rank + 1;
    case Series::D: return 2 * sys.rank - 1;
    }
    return sys.rank;
}

namespace {

// Number of entries a row of the column carries.
std::size_t rowLength(TilingMode mode, int column) {
    switch (mode) {
    case TilingMode::plain: return static_cast<std::size_t>(column);
    case TilingMode::strong: return static_cast<std::size_t>(column / 2);
    case TilingMode::weak: return static_cast<std::size_t>((column + 1) / 2);
    }
    return 0;
}

// Interval [lo_i, hi_i] for each entry of the next row down.
std::vector<std::pair<long, long>> childRanges(TilingMode mode, int column, const StripRow& row) {
    require(column >= 2, "column 1 has no row below it");
    require(row.size() == rowLength(mode, column), "row length does not match its strip column");
    const std::size_t len = rowLength(mode, column - 1);
    std::vector<std::pair<long, long>> r(len);
    auto at = [&row](std::size_t i) { return i < row.size() ? row[i] : 0L; };
    if (mode == TilingMode::weak && column % 2 == 1) {
        // SO(2m+2) -> SO(2m+1): the last lower bound is |lambda_{m+1}|.
        for (std::size_t i = 0; i < len; ++i)
            r[i] = {i + 1 == len ? std::labs(row[i + 1]) : row[i + 1], row[i]};
    } else if (mode == TilingMode::weak) {
        // SO(2m+1) -> SO(2m): the last entry ranges over [-kappa_m, kappa_m].
        for (std::size_t i = 0; i < len; ++i)
            r[i] = i + 1 == len ? std::pair{-row[i], row[i]} : std::pair{row[i + 1], row[i]};
    } else {
        for (std::size_t i = 0; i < len; ++i) r[i] = {at(i + 1), row[i]};
    }
    return r;
}

RootSystem columnSystem(TilingMode mode, int column) {
    switch (mode) {
    case TilingMode::plain: return {Series::A, column};
    case TilingMode::strong: return {Series::C, column / 2};
    case TilingMode::weak: return column % 2 == 0 ? RootSystem{Series::B, column / 2} : RootSystem{Series::D, column / 2 + 1};
    }
    return {};
}

void checkModeMatches(const RootSystem& sys, TilingMode mode) {
    require(tilingModeFor(sys.series) == mode, "symmetry mode does not match the series (A: none, C: strong, B/D: weak)");
}

} // namespace

std::vector<StripRow> stripChildren(TilingMode mode, int column, const StripRow& row) {
    const auto ranges = childRanges(mode, column, row);
    std::vector<StripRow> out;
    for (const auto& [lo, hi] : ranges)
        if (lo > hi) return out;
    StripRow cur(ranges.size());
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == ranges.size()) {
            out.push_back(cur);
            return;
        }
        for (long v = ranges[i].second; v >= ranges[i].first; --v) {
            cur[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

bool stripInterlaces(TilingMode mode, int column, const StripRow& upper, const StripRow& lower) {
    if (column < 2 || upper.size() != rowLength(mode, column) || lower.size() != rowLength(mode, column - 1)) return false;
    const auto ranges = childRanges(mode, column, upper);
    for (std::size_t i = 0; i < ranges.size(); ++i)
        if (lower[i] < ranges[i].first || lower[i] > ranges[i].second) return false;
    return true;
}

std::vector<Rational> lozengePositions(TilingMode mode, int column, const StripRow& row) {
    require(column >= 1 && row.size() == rowLength(mode, column), "row length does not match its strip column");
    std::vector<Rational> p;
    const long x = column;
    if (mode == TilingMode::plain) {
        for (long i = 1; i <= x; ++i) p.emplace_back(row[i - 1] + x - i);
        return p;
    }
    const long m = x / 2;
    const bool odd = x % 2 == 1;
    std::vector<Rational> pos;
    for (long i = 1; i <= m; ++i) {
        Rational v = odd ? Rational(row[i - 1] + m + 1 - i) : Rational(2 * (row[i - 1] + m - i) + 1, 2);
        v.canonicalize();
        pos.push_back(v);
    }
    for (const auto& v : pos) p.push_back(v);
    if (odd) p.emplace_back(mode == TilingMode::strong ? 0L : row[static_cast<std::size_t>(m)]);
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) p.push_back(-*it);
    return p;
}

BigInt stripCompletions(TilingMode mode, int column, const StripRow& row) {
    require(column >= 1 && row.size() == rowLength(mode, column), "row length does not match its strip column");
    if (column == 1) return 1;
    if (mode == TilingMode::strong && column % 2 == 0) {
        BigInt total = 0;
        for (const auto& child : stripChildren(mode, column, row))
            total += stripCompletions(mode, column - 1, child);
        return total;
    }
    // Signature columns: the number of Gelfand-Tsetlin patterns is the dimension.
    return weylProduct(columnSystem(mode, column), row);
}

const StripRow& InterlacingChain::column(int x) const {
    require(x >= 1 && x <= topColumn && topColumn - x < static_cast<int>(rows.size()), "column outside the sampled strip");
    return rows[static_cast<std::size_t>(topColumn - x)];
}

Multiplicities branchOneStep(const Signature& nu) {
    const RootSystem& sys = nu.system();
    const TilingMode mode = tilingModeFor(sys.series);
    const int top = stripColumn(sys);
    const int steps = sys.series == Series::C ? 2 : 1;
    require(top - steps >= 1 && (sys.series == Series::B || sys.rank >= 2), "nothing to restrict to below rank 1");
    std::map<StripRow, BigInt> cur{{nu.entries(), BigInt(1)}};
    int column = top;
    for (int s = 0; s < steps; ++s, --column) {
        std::map<StripRow, BigInt> next;
        for (const auto& [row, c] : cur)
            for (auto& child : stripChildren(mode, column, row)) next[child] += c;
        cur = std::move(next);
    }
    const RootSystem target = columnSystem(mode, column);
    Multiplicities out;
    for (const auto& [row, c] : cur) out.emplace(Signature(target, row), c);
    return out;
}

Multiplicities restrictMultiplicities(const Signature& lambda, int M) {
    const RootSystem& sys = lambda.system();
    require(M >= 1 && M < sys.rank, "target rank must satisfy 0 < M < N");
    const TilingMode mode = tilingModeFor(sys.series);
    const int top = stripColumn(sys);
    if (mode == TilingMode::plain && sys.rank > kMaxExactRankA)
        throw SizeGuardError("exact type A restriction refused", kMaxExactRankA);
    if (mode != TilingMode::plain && top > kMaxSymmetricStripWidth)
        throw SizeGuardError("exact symmetric-strip restriction refused", kMaxSymmetricStripWidth);
    const RootSystem target{sys.series, M};
    const int bottom = stripColumn(target);
    std::map<StripRow, BigInt> cur{{lambda.entries(), BigInt(1)}};
    for (int column = top; column > bottom; --column) {
        std::map<StripRow, BigInt> next;
        for (const auto& [row, c] : cur)
            for (auto& child : stripChildren(mode, column, row)) next[child] += c;
        cur = std::move(next);
    }
    Multiplicities out;
    for (const auto& [row, c] : cur) out.emplace(Signature(target, row), c);
    return out;
}

DecompositionMeasure restrictDecompose(const Signature& lambda, int M) {
    const Multiplicities mult = restrictMultiplicities(lambda, M);
    BigInt total = 0;
    for (const auto& [mu, c] : mult) total += c * weylDimension(mu);
    ensure(total == weylDimension(lambda), "restriction does not conserve dimension");
    return weighByDimension(RootSystem{lambda.system().series, M}, mult);
}

TilingSampler::TilingSampler(const Signature& top, TilingMode mode)
    : mode_(mode), top_(stripColumn(top.system())), row_(top.entries()) {
    checkModeMatches(top.system(), mode);
}

const std::vector<TilingSampler::Branch>& TilingSampler::branches(int column, const StripRow& row) {
    auto key = std::make_pair(column, row);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<Branch> out;
    for (auto& child : stripChildren(mode_, column, row)) {
        BigInt c = stripCompletions(mode_, column - 1, child);
        if (c > 0) out.push_back({std::move(child), std::move(c)});
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
}

InterlacingChain TilingSampler::sample(std::mt19937_64& rng, int stopColumn) {
    require(stopColumn >= 1 && stopColumn <= top_, "stop column outside the strip");
    InterlacingChain chain{mode_, top_, {row_}};
    StripRow cur = row_;
    for (int column = top_; column > stopColumn; --column) {
        const auto& bs = branches(column, cur);
        BigInt total = 0;
        for (const auto& b : bs) total += b.completions;
        ensure(total > 0, "row without completions");
        BigInt r = uniformBelow(total, rng);
        std::size_t pick = 0;
        while (r >= bs[pick].completions) {
            r -= bs[pick].completions;
            ++pick;
        }
        cur = bs[pick].row;
        chain.rows.push_back(cur);
    }
    return chain;
}

InterlacingChain sampleTiling(const Signature& lambda, TilingMode mode, std::uint64_t seed) {
    TilingSampler sampler(lambda, mode);
    std::mt19937_64 rng(seed);
    return sampler.sample(rng);
}

BigInt uniformBelow(const BigInt& n, std::mt19937_64& rng) {
    require(n > 0, "empty range");
    const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    for (;;) {
        BigInt r = 0;
        for (std::size_t w = 0; w < words; ++w) {
            r <<= 64;
            r += BigInt(static_cast<unsigned long>(rng()));
        }
        r >>= static_cast<mp_bitcnt_t>(words * 64 - bits);
        if (r < n) return r;
    }
}

long HeightFunctionSample::at(const Rational& y) const {
    return static_cast<long>(std::lower_bound(positions.begin(), positions.end(), y) - positions.begin());
}

HeightFunctionSample heightFunction(const InterlacingChain& chain, int x) {
    require(x >= 1 && x <= chain.topColumn, "column out of range");
    HeightFunctionSample h;
    h.column = x;
    h.positions = lozengePositions(chain.mode, x, chain.column(x));
    std::sort(h.positions.begin(), h.positions.end());
    return h;
}

RestrictionMomentTable restrictionMomentTable(const Signature& lambda, int M, int K) {
    require(K >= 0, "negative order");
    RestrictionMomentTable t{restrictDecompose(lambda, M), {}, {}, {}};
    t.mean.values.assign(static_cast<std::size_t>(K) + 1, Rational(0));
    t.second.assign(static_cast<std::size_t>(K) + 1, Rational(0));
    for (const auto& [mu, w] : t.rho.weights()) {
        MomentSequence m = measureMoments(countingMeasure(mu), K);
        for (int k = 0; k <= K; ++k) {
            t.mean.values[static_cast<std::size_t>(k)] += w * m[k];
            t.second[static_cast<std::size_t>(k)] += w * m[k] * m[k];
        }
        t.detail.emplace_back(mu, std::move(m));
    }
    return t;
}

std::vector<long> sampleRestrictionAFloor(const Signature& lambda, int M, std::mt19937_64& rng) {
    require(lambda.system().series == Series::A, "the floor sampler is for type A");
    const int N = lambda.rank();
    require(M >= 1 && M < N, "target rank must satisfy 0 < M < N");
    std::vector<long> x(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) x[i] = lambda[i] + N - 1 - i;
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w;
    std::vector<long> y;
    for (int n = N; n > M; --n) {
        w.resize(static_cast<std::size_t>(n));
        for (auto& v : w) v = expo(rng);
        auto f = [&](long t) {
            double s = 0;
            for (int j = 0; j < n; ++j) s += w[j] / static_cast<double>(t - x[j]);
            return s;
        };
        // The secular function decreases on each gap (x_{i+1}, x_i); the floor of its root
        // is the last integer of [x_{i+1}, x_i - 1] where it is still positive.
        y.assign(static_cast<std::size_t>(n - 1), 0);
        for (int i = 0; i + 1 < n; ++i) {
            long k = x[i + 1];
            while (k + 1 < x[i] && f(k + 1) > 0) ++k;
            y[i] = k;
        }
        x.swap(y);
    }
    std::vector<long> mu(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) mu[i] = x[i] - (M - 1 - i);
    return mu;
}

} // namespace qfc

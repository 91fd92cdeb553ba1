#include "qfc/measures.hpp"
#include "qfc/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

namespace qfc {

char seriesLetter(Series s) { return "ABCD"[static_cast<int>(s)]; }

Series parseSeries(const std::string& s) {
    if (s == "A") return Series::A;
    if (s == "B") return Series::B;
    if (s == "C") return Series::C;
    if (s == "D") return Series::D;
    throw ValidationError("unknown group tag '" + s + "' (expected A, B, C or D)");
}

int RootSystem::nHat() const {
    switch (series) {
    case Series::A: return rank;
    case Series::B: return 2 * rank + 1;
    default: return 2 * rank;
    }
}

bool isValidSignature(const RootSystem& sys, const std::vector<long>& e) {
    if (sys.rank < 1 || static_cast<int>(e.size()) != sys.rank) return false;
    for (std::size_t i = 1; i < e.size(); ++i)
        if (e[i] > e[i - 1]) return false;
    switch (sys.series) {
    case Series::A: return true;
    case Series::B:
    case Series::C: return e.back() >= 0;
    case Series::D:
        if (e.size() == 1) return true;
        return e[e.size() - 2] >= std::labs(e.back());
    }
    return false;
}

Signature::Signature(RootSystem sys, std::vector<long> entries) : sys_(sys), e_(std::move(entries)) {
    if (!isValidSignature(sys_, e_)) {
        std::ostringstream os;
        os << "invalid " << seriesLetter(sys_.series) << "-signature of rank " << sys_.rank << ": (";
        for (std::size_t i = 0; i < e_.size(); ++i) os << (i ? "," : "") << e_[i];
        os << ")";
        throw ValidationError(os.str());
    }
}

long Signature::size() const {
    long s = 0;
    for (long x : e_) s += x;
    return s;
}

std::string toString(const Signature& s) {
    std::string out;
    for (std::size_t i = 0; i < s.entries().size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s.entries()[i]);
    }
    return out;
}

Signature parseSignature(Series series, const std::string& text) {
    std::vector<long> e;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            long v = std::stol(tok, &used);
            if (used != tok.size()) throw ValidationError("");
            e.push_back(v);
        } catch (const std::exception&) {
            throw ValidationError("malformed signature entry '" + tok + "'");
        }
    }
    require(!e.empty(), "empty signature");
    return Signature(RootSystem{series, static_cast<int>(e.size())}, e);
}

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) {
    std::map<Rational, Rational> merged;
    for (auto& a : atoms) merged[a.pos] += a.weight;
    for (auto& [p, w] : merged) {
        require(w >= 0, "negative atom weight " + toString(w) + " at " + toString(p));
        if (w != 0) atoms_.push_back({p, w});
    }
}

Rational DiscreteMeasure::totalMass() const {
    Rational m = 0;
    for (auto& a : atoms_) m += a.weight;
    return m;
}

namespace {

// Coordinates l_i and shifts r_i (doubled for B so everything stays integral);
// the dimension is prod (l_i^2 - l_j^2)/(r_i^2 - r_j^2) * prod l_i/r_i, without
// the second product for D.
void orthoSymplecticShifts(const RootSystem& sys, const std::vector<long>& e, std::vector<BigInt>& l,
                           std::vector<BigInt>& r) {
    const long N = sys.rank;
    for (long i = 1; i <= N; ++i) {
        long lam = e[static_cast<std::size_t>(i - 1)];
        switch (sys.series) {
        case Series::B: l.emplace_back(2 * lam + 2 * N - 2 * i + 1); r.emplace_back(2 * N - 2 * i + 1); break;
        case Series::C: l.emplace_back(lam + N + 1 - i); r.emplace_back(N + 1 - i); break;
        case Series::D: l.emplace_back(lam + N - i); r.emplace_back(N - i); break;
        default: break;
        }
    }
}

BigInt exactQuotient(const BigInt& num, const BigInt& den) {
    ensure(den != 0, "zero denominator in dimension formula");
    ensure(num % den == 0, "dimension formula gave a non-integer");
    return num / den;
}

} // namespace

BigInt weylProduct(const RootSystem& sys, const std::vector<long>& e) {
    require(static_cast<int>(e.size()) == sys.rank, "weylProduct: tuple length differs from rank");
    const long N = sys.rank;
    BigInt num = 1, den = 1;
    if (sys.series == Series::A) {
        for (long i = 0; i < N; ++i)
            for (long j = i + 1; j < N; ++j) {
                num *= (e[static_cast<std::size_t>(i)] - i) - (e[static_cast<std::size_t>(j)] - j);
                den *= (j - i);
            }
        return exactQuotient(num, den);
    }
    std::vector<BigInt> l, r;
    orthoSymplecticShifts(sys, e, l, r);
    for (long i = 0; i < N; ++i)
        for (long j = i + 1; j < N; ++j) {
            num *= l[i] * l[i] - l[j] * l[j];
            den *= r[i] * r[i] - r[j] * r[j];
        }
    if (sys.series != Series::D)
        for (long i = 0; i < N; ++i) {
            num *= l[i];
            den *= r[i];
        }
    return exactQuotient(num, den);
}

BigInt weylDimension(const Signature& lambda) {
    BigInt d = weylProduct(lambda.system(), lambda.entries());
    ensure(d > 0, "non-positive Weyl dimension");
    return d;
}

BigInt dimOrZero(const RootSystem& sys, const std::vector<long>& entries) {
    if (!isValidSignature(sys, entries)) return 0;
    return weylDimension(Signature(sys, entries));
}

DiscreteMeasure countingMeasure(const Signature& lambda) {
    const auto& e = lambda.entries();
    const long N = lambda.rank();
    std::vector<Atom> atoms;
    if (lambda.system().series == Series::A) {
        for (long i = 1; i <= N; ++i) atoms.push_back({makeRational(e[i - 1] + N - i, N), makeRational(1, N)});
    } else {
        for (long i = 1; i <= N; ++i) {
            atoms.push_back({makeRational(e[i - 1] + 2 * N - i, 2 * N), makeRational(1, 2 * N)});
            atoms.push_back({makeRational(i - e[i - 1], 2 * N), makeRational(1, 2 * N)});
        }
    }
    return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure hatMeasure(const Signature& lambda) {
    const Series s = lambda.system().series;
    require(s != Series::A, "hat measures are defined for B, C and D only");
    const auto& e = lambda.entries();
    const long N = lambda.rank();
    const Rational w = makeRational(1, 2 * N);
    std::vector<Atom> atoms;
    for (long i = 1; i <= N; ++i) {
        const long lam = e[i - 1];
        Rational pos;
        switch (s) {
        case Series::B: pos = Rational(2 * (lam + N - i) + 1, 4 * N); break;
        case Series::C: pos = makeRational(lam + N + 1 - i, 2 * N); break;
        default: pos = makeRational(lam + N - i, 2 * N); break;
        }
        pos.canonicalize();
        atoms.push_back({pos, w});
        atoms.push_back({-pos, w});
    }
    return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure ppMeasure(const Signature& lambda) {
    const RootSystem& sys = lambda.system();
    const long N = sys.rank;
    const Rational dim(weylDimension(lambda));
    std::vector<Atom> atoms;
    // The Weyl product agrees with dimOrZero on every shifted tuple except
    // B with lambda_N = 0, where it gives -dim(lambda) for lambda^{(N-)}; that
    // term then cancels the extra atom at N/(2N+1) and the mass stays 1.
    auto shifted = [&](long i, long delta) -> Rational {
        std::vector<long> e = lambda.entries();
        e[static_cast<std::size_t>(i - 1)] += delta;
        return Rational(weylProduct(sys, e)) / dim;
    };
    const long nh = sys.nHat();
    const Rational base = makeRational(1, nh);
    for (long i = 1; i <= N; ++i) {
        const long lam = lambda[static_cast<int>(i - 1)];
        switch (sys.series) {
        case Series::A:
            atoms.push_back({makeRational(lam + N - i, N), base * shifted(i, -1)});
            break;
        case Series::B:
            atoms.push_back({makeRational(lam + 2 * N - i, nh), base * shifted(i, -1)});
            atoms.push_back({makeRational(i - 1 - lam, nh), base * shifted(i, +1)});
            break;
        case Series::C:
            atoms.push_back({makeRational(lam + 2 * N + 1 - i, nh), base * shifted(i, -1)});
            atoms.push_back({makeRational(i - 1 - lam, nh), base * shifted(i, +1)});
            break;
        case Series::D:
            atoms.push_back({makeRational(lam + 2 * N - 1 - i, nh), base * shifted(i, -1)});
            atoms.push_back({makeRational(i - 1 - lam, nh), base * shifted(i, +1)});
            break;
        }
    }
    if (sys.series == Series::B) atoms.push_back({makeRational(N, nh), base});
    return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure ppMeasureProductForm(const Signature& lambda) {
    require(lambda.system().series == Series::A, "product form of PP weights is type A only");
    const long N = lambda.rank();
    std::vector<long> l(static_cast<std::size_t>(N));
    for (long i = 1; i <= N; ++i) l[i - 1] = lambda[static_cast<int>(i - 1)] - i;
    std::vector<Atom> atoms;
    for (long i = 0; i < N; ++i) {
        Rational w = makeRational(1, N);
        for (long j = 0; j < N && w != 0; ++j)
            if (j != i) w *= makeRational(l[i] - l[j] - 1, l[i] - l[j]);
        atoms.push_back({makeRational(lambda[static_cast<int>(i)] + N - i - 1, N), w});
    }
    return DiscreteMeasure(std::move(atoms));
}

Rational casimirValueA(int p, const Signature& lambda) {
    require(lambda.system().series == Series::A, "casimirValueA is defined for type A");
    require(p >= 0, "negative Casimir index");
    const long N = lambda.rank();
    Rational total = 0;
    for (long i = 1; i <= N; ++i) {
        const long li = lambda[static_cast<int>(i - 1)] - i;
        Rational prod = 1;
        for (long j = 1; j <= N && prod != 0; ++j) {
            if (j == i) continue;
            const long d = li - (lambda[static_cast<int>(j - 1)] - j);
            prod *= makeRational(d - 1, d);
        }
        total += prod * pow(Rational(lambda[static_cast<int>(i - 1)] + N - i), p);
    }
    return total;
}

DiscreteMeasure kerovTransitionMeasure(const std::vector<long>& x, const std::vector<long>& y) {
    require(!x.empty() && y.size() + 1 == x.size(), "Kerov measure needs k minima and k-1 maxima");
    for (std::size_t i = 0; i < y.size(); ++i)
        require(x[i] < y[i] && y[i] < x[i + 1], "minima and maxima do not interlace");
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < x.size(); ++i) {
        Rational w = 1;
        for (long yj : y) w *= Rational(x[i] - yj);
        for (std::size_t j = 0; j < x.size(); ++j)
            if (j != i) w /= Rational(x[i] - x[j]);
        atoms.push_back({Rational(x[i]), w});
    }
    return DiscreteMeasure(std::move(atoms));
}

std::pair<std::vector<long>, std::vector<long>> kerovCorners(const std::vector<long>& rows) {
    std::vector<long> r;
    for (long v : rows) {
        require(v >= 0, "Young diagram rows must be non-negative");
        if (v > 0) r.push_back(v);
    }
    for (std::size_t i = 1; i < r.size(); ++i) require(r[i] <= r[i - 1], "Young diagram rows must decrease");
    std::vector<long> minima, maxima;
    const long k = static_cast<long>(r.size());
    for (long i = 1; i <= k; ++i) {
        const long ri = r[i - 1];
        if (i == 1 || ri < r[i - 2]) minima.push_back(i - 1 - ri);
        if (i == k || ri > r[i]) maxima.push_back(i - ri);
    }
    minima.push_back(k);
    std::sort(minima.begin(), minima.end());
    std::sort(maxima.begin(), maxima.end());
    return {minima, maxima};
}

MomentSequence measureMoments(const DiscreteMeasure& m, int K) {
    require(K >= 0, "negative moment order");
    MomentSequence out;
    out.values.assign(static_cast<std::size_t>(K) + 1, Rational(0));
    for (auto& a : m.atoms()) {
        Rational p = a.weight;
        for (int k = 0; k <= K; ++k, p *= a.pos) out.values[static_cast<std::size_t>(k)] += p;
    }
    out.probability = out.values[0] == 1;
    return out;
}

DiscreteMeasure dilate(const DiscreteMeasure& m, const Rational& L) {
    require(L > 0, "dilation factor must be positive");
    std::vector<Atom> atoms;
    for (auto& a : m.atoms()) atoms.push_back({a.pos * L, a.weight});
    return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure reflect(const DiscreteMeasure& m) {
    std::vector<Atom> atoms;
    for (auto& a : m.atoms()) atoms.push_back({-a.pos, a.weight});
    return DiscreteMeasure(std::move(atoms));
}

} // namespace qfc

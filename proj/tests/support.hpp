#pragma once

#include "qfc/measures.hpp"

#include <random>
#include <vector>

namespace qfc::testing {

inline Rational R(long p, long q = 1) { return makeRational(p, q); }

// Random signature with entries in [lo, hi] satisfying the series constraints.
inline Signature randomSignature(std::mt19937_64& rng, Series s, int N, long lo, long hi) {
    RootSystem sys{s, N};
    if (s != Series::A) lo = std::max(lo, 0L);
    std::uniform_int_distribution<long> d(lo, hi);
    for (;;) {
        std::vector<long> e(static_cast<std::size_t>(N));
        for (auto& x : e) x = d(rng);
        std::sort(e.rbegin(), e.rend());
        if (s == Series::D && N >= 1 && std::uniform_int_distribution<int>(0, 1)(rng)) e.back() = -e.back();
        if (isValidSignature(sys, e)) return Signature(sys, e);
    }
}

// Every valid signature of rank N with entries in [lo, hi] (D: last entry may be negative).
inline std::vector<Signature> allSignatures(Series s, int N, long lo, long hi) {
    RootSystem sys{s, N};
    std::vector<Signature> out;
    std::vector<long> e(static_cast<std::size_t>(N));
    const long low = s == Series::A || s == Series::D ? lo : std::max(lo, 0L);
    auto rec = [&](auto&& self, int i, long cap) -> void {
        if (i == N) {
            if (isValidSignature(sys, e)) out.emplace_back(sys, e);
            return;
        }
        for (long v = low; v <= cap; ++v) {
            e[static_cast<std::size_t>(i)] = v;
            self(self, i + 1, v);
        }
    };
    rec(rec, 0, hi);
    return out;
}

inline DiscreteMeasure randomDiscreteMeasure(std::mt19937_64& rng, int atoms, long span = 8) {
    std::uniform_int_distribution<long> pos(-span * 4, span * 4), w(1, 9);
    std::vector<Atom> a;
    Rational total = 0;
    std::vector<long> ws;
    for (int i = 0; i < atoms; ++i) ws.push_back(w(rng));
    for (long x : ws) total += x;
    for (int i = 0; i < atoms; ++i) a.push_back({makeRational(pos(rng), 4), Rational(ws[static_cast<std::size_t>(i)]) / total});
    return DiscreteMeasure(std::move(a));
}

} // namespace qfc::testing

#include "doctest.h"
#include <sstream>

namespace doctest {
template <> struct StringMaker<qfc::DiscreteMeasure> {
    static String convert(const qfc::DiscreteMeasure& m) {
        std::ostringstream os;
        os << "{";
        for (auto& a : m.atoms()) os << " " << qfc::toString(a.pos) << ":" << qfc::toString(a.weight);
        os << " }";
        return os.str().c_str();
    }
};
template <> struct StringMaker<qfc::Rational> {
    static String convert(const qfc::Rational& q) { return qfc::toString(q).c_str(); }
};
} // namespace doctest

#pragma once

#include "qfc/repr.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace qfc {

// plain: ordinary strip (type A). strong: symmetric strip with the middle lozenge of odd
// columns pinned at 0 (symplectic). weak: symmetric strip with the middle lozenge free
// (orthogonal).
enum class TilingMode { plain, strong, weak };

std::string toString(TilingMode m);
TilingMode parseTilingMode(const std::string& s); // "none" | "strong" | "weak"
TilingMode tilingModeFor(Series s);

// Column of the strip holding a signature of the given root system:
// A: N; C: 2N+1; B: 2N; D: 2N-1.
int stripColumn(const RootSystem& sys);

// Rows of a strip column are stored as signature-like tuples:
//   plain, column x: signature of U(x);
//   strong, column 2m+1: signature of Sp(2m); column 2m: the intermediate row (m entries >= 0);
//   weak, column 2m: signature of SO(2m+1); column 2m+1: signature of SO(2m+2).
using StripRow = std::vector<long>;

// All rows of column - 1 interlacing the given row of column.
std::vector<StripRow> stripChildren(TilingMode mode, int column, const StripRow& row);
bool stripInterlaces(TilingMode mode, int column, const StripRow& upper, const StripRow& lower);
// Vertical coordinates of the horizontal lozenges on the column, decreasing.
std::vector<Rational> lozengePositions(TilingMode mode, int column, const StripRow& row);
// Number of ways to complete the row down to column 1.
BigInt stripCompletions(TilingMode mode, int column, const StripRow& row);

struct InterlacingChain {
    TilingMode mode = TilingMode::plain;
    int topColumn = 0;
    std::vector<StripRow> rows; // rows[j] sits on column topColumn - j
    const StripRow& column(int x) const;
    friend bool operator==(const InterlacingChain&, const InterlacingChain&) = default;
};

// Restriction by one step of the classical chain: A: U(N) -> U(N-1); C: Sp(2N) -> Sp(2N-2)
// (two strip columns); B: SO(2N+1) -> SO(2N); D: SO(2N) -> SO(2N-1).
Multiplicities branchOneStep(const Signature& nu);

inline constexpr int kMaxExactRankA = 10;
inline constexpr int kMaxSymmetricStripWidth = 13;

// Multiplicities of the restriction G(N) -> G(M), same series, 0 < M < N.
Multiplicities restrictMultiplicities(const Signature& lambda, int M);
DecompositionMeasure restrictDecompose(const Signature& lambda, int M);

// Uniform random tiling of the strip with top row lambda, drawn column by column with
// exact big-integer branch probabilities.
class TilingSampler {
public:
    TilingSampler(const Signature& top, TilingMode mode);

    struct Branch {
        StripRow row;
        BigInt completions;
    };
    // Children of a row together with their completion counts (memoized).
    const std::vector<Branch>& branches(int column, const StripRow& row);

    InterlacingChain sample(std::mt19937_64& rng, int stopColumn = 1);
    TilingMode mode() const { return mode_; }
    int topColumn() const { return top_; }
    const StripRow& topRow() const { return row_; }

private:
    TilingMode mode_;
    int top_;
    StripRow row_;
    std::map<std::pair<int, StripRow>, std::vector<Branch>> memo_;
};

InterlacingChain sampleTiling(const Signature& lambda, TilingMode mode, std::uint64_t seed);

// Uniform integer in [0, n) by rejection on fixed-width draws.
BigInt uniformBelow(const BigInt& n, std::mt19937_64& rng);

struct HeightFunctionSample {
    int column = 0;
    std::vector<Rational> positions; // increasing
    // Number of horizontal lozenges strictly below y.
    long at(const Rational& y) const;
    long total() const { return static_cast<long>(positions.size()); }
};

HeightFunctionSample heightFunction(const InterlacingChain& chain, int x);

struct RestrictionMomentTable {
    DecompositionMeasure rho;
    MomentSequence mean;            // E M_k(m[mu])
    std::vector<Rational> second;   // E M_k(m[mu])^2
    std::vector<std::pair<Signature, MomentSequence>> detail;
};

RestrictionMomentTable restrictionMomentTable(const Signature& lambda, int M, int K);

// Approximate sampler for type A restrictions at large N: each level is the continuous
// Dixon-Anderson step started from the integer positions, rounded down to the lattice.
std::vector<long> sampleRestrictionAFloor(const Signature& lambda, int M, std::mt19937_64& rng);

} // namespace qfc

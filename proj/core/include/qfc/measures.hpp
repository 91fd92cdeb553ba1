#pragma once

#include "qfc/exact.hpp"

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace qfc {

// A: U(N), B: SO(2N+1), C: Sp(2N), D: SO(2N).
enum class Series { A, B, C, D };

char seriesLetter(Series s);
Series parseSeries(const std::string& s);

struct RootSystem {
    Series series = Series::A;
    int rank = 1;

    // Normalizing rank: N for A, 2N for C and D, 2N+1 for B.
    int nHat() const;
    friend bool operator==(const RootSystem&, const RootSystem&) = default;
};

bool isValidSignature(const RootSystem& sys, const std::vector<long>& entries);

class Signature {
public:
    Signature() = default;
    Signature(RootSystem sys, std::vector<long> entries); // throws ValidationError

    const RootSystem& system() const { return sys_; }
    int rank() const { return sys_.rank; }
    const std::vector<long>& entries() const { return e_; }
    long operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
    long size() const; // sum of entries

    friend bool operator==(const Signature& a, const Signature& b) {
        return a.sys_ == b.sys_ && a.e_ == b.e_;
    }
    friend std::strong_ordering operator<=>(const Signature& a, const Signature& b) { return a.e_ <=> b.e_; }

private:
    RootSystem sys_;
    std::vector<long> e_;
};

std::string toString(const Signature& s);
Signature parseSignature(Series series, const std::string& text); // "3,1,-4"

struct Atom {
    Rational pos;
    Rational weight;
    friend bool operator==(const Atom&, const Atom&) = default;
};

// Atoms kept sorted by position, equal positions merged, zero weights dropped.
class DiscreteMeasure {
public:
    DiscreteMeasure() = default;
    explicit DiscreteMeasure(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const { return atoms_; }
    Rational totalMass() const;
    friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

private:
    std::vector<Atom> atoms_;
};

struct MomentSequence {
    std::vector<Rational> values; // M_0..M_K
    bool probability = true;

    int order() const { return static_cast<int>(values.size()) - 1; }
    const Rational& operator[](int k) const { return values[static_cast<std::size_t>(k)]; }
    friend bool operator==(const MomentSequence& a, const MomentSequence& b) { return a.values == b.values; }
};

BigInt weylDimension(const Signature& lambda);
// The Weyl dimension product evaluated on any integer tuple; may be zero or negative off
// the dominant chamber.
BigInt weylProduct(const RootSystem& sys, const std::vector<long>& entries);
// Dimension of the representation with the given entries, 0 when they do not form a signature.
BigInt dimOrZero(const RootSystem& sys, const std::vector<long>& entries);

DiscreteMeasure countingMeasure(const Signature& lambda);
DiscreteMeasure hatMeasure(const Signature& lambda);
DiscreteMeasure ppMeasure(const Signature& lambda);
// Type A only: the product form of the PP weights, no dimensions involved.
DiscreteMeasure ppMeasureProductForm(const Signature& lambda);

Rational casimirValueA(int p, const Signature& lambda);

// Interlacing minima x_1 < y_1 < x_2 < ... < y_{k-1} < x_k.
DiscreteMeasure kerovTransitionMeasure(const std::vector<long>& minima, const std::vector<long>& maxima);
// Corners of a Young diagram given by row lengths, in the rotated convention in which
// (3,2,1,1) has minima -3,-1,1,4 and maxima -2,0,3.
std::pair<std::vector<long>, std::vector<long>> kerovCorners(const std::vector<long>& rows);

MomentSequence measureMoments(const DiscreteMeasure& m, int K);
DiscreteMeasure dilate(const DiscreteMeasure& m, const Rational& L);
DiscreteMeasure reflect(const DiscreteMeasure& m);

} // namespace qfc

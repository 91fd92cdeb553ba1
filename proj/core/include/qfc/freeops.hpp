#pragma once

#include "qfc/measures.hpp"
#include "qfc/series.hpp"

#include <vector>

namespace qfc {

enum class RKind { free, quantized };

// Regular part of the (quantized) R-transform: order K-1 for moments through M_K.
struct RSeries {
    RKind kind = RKind::free;
    TruncatedSeries body;
};

// H_m(u) as a series in (u - 1).
struct HSeries {
    TruncatedSeries body;
};

// Moments of the finite measures A+, A-, B+, B- (same order) and the two drifts.
struct InfDivParameters {
    MomentSequence aPlus, aMinus, bPlus, bMinus;
    Rational gammaPlus = 0, gammaMinus = 0;
    Rational supportPlus = 0, supportMinus = 0; // declared bounds for B+ and B-
};

// 1/(1 - e^{-z}) - 1/z as a regular series.
TruncatedSeries rUniform01(int order);

RSeries momentsToR(const MomentSequence& m, RKind kind);
MomentSequence rToMoments(const RSeries& r);
RSeries toKind(const RSeries& r, RKind kind);

MomentSequence convolve(RKind kind, const std::vector<MomentSequence>& inputs);
MomentSequence project(RKind kind, const Rational& alpha, const MomentSequence& m);

HSeries hFromMoments(const MomentSequence& m);
// Series in (z - 1), z = (x + 1/x)/2; tagged u_minus_1.
TruncatedSeries hHatFromH(const HSeries& h);

enum class QMode { unitary, symmetric };
MomentSequence momentsFromQ(const TruncatedSeries& q, QMode mode, int K);

enum class MKDirection { forward, inverse };
MomentSequence markovKreinMap(const MomentSequence& b, MKDirection dir);

MomentSequence qMapSeriesRoute(const MomentSequence& s);
MomentSequence qMapReflectionRoute(const MomentSequence& s);
// Both routes, checked against each other.
MomentSequence qMap(const MomentSequence& s);

MomentSequence infDivMoments(const InfDivParameters& c);
InfDivParameters scaleParameters(const InfDivParameters& c, const Rational& t);

struct ScalingRow {
    Rational L;
    std::vector<Rational> absErrors; // per coefficient of R
};
std::vector<ScalingRow> scalingLimitCheck(const MomentSequence& m, const std::vector<Rational>& Ls);

// det[M_{i+j}]_{0<=i,j<=n} for n = 0..floor(maxOrder/2).
std::vector<Rational> hankelMinors(const MomentSequence& m, int maxOrder);
bool hankelNonNegative(const MomentSequence& m, int maxOrder);

MomentSequence uniformMoments(const Rational& a, const Rational& b, int K); // u[a,b]
MomentSequence semicircleMoments(int K);                                   // variance 1
MomentSequence reflectMoments(const MomentSequence& m);
MomentSequence dilateMoments(const MomentSequence& m, const Rational& L);
MomentSequence translateMoments(const MomentSequence& m, const Rational& c);
MomentSequence scaleMass(const MomentSequence& m, const Rational& t);

} // namespace qfc

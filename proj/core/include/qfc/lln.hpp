#pragma once

#include "qfc/branching.hpp"
#include "qfc/freeops.hpp"
#include "qfc/measures.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qfc {

// Linear piece of a profile on [from, to]: value `start` at from, `end` at to.
struct ProfilePiece {
    Rational from, to, start, end;
    friend bool operator==(const ProfilePiece&, const ProfilePiece&) = default;
};

// Piecewise-linear, weakly decreasing f: [0, 1] -> R. At a breakpoint t the value is taken
// from the piece ending at t (so f = 1 on [0, 1/2] and 0 after gives f(1/2) = 1).
class Profile {
public:
    Profile() = default;
    explicit Profile(std::vector<ProfilePiece> pieces); // throws ValidationError

    static Profile constant(const Rational& c);
    // c on [0, t], 0 after.
    static Profile step(const Rational& c, const Rational& t);

    const std::vector<ProfilePiece>& pieces() const { return pieces_; }
    Rational operator()(const Rational& t) const;
    Rational minimum() const;
    Rational maxSlope() const;
    // Bound C of the regularity condition: 1 + max |slope|.
    Rational bound() const { return 1 + maxSlope(); }
    friend bool operator==(const Profile&, const Profile&) = default;

private:
    std::vector<ProfilePiece> pieces_;
};

void validateProfile(const Profile& f, Series s);

// lambda_j = floor(N f(j/N) + 1/2), then clamped to be weakly decreasing (and >= 0 off type A).
Signature buildRegularSequence(const Profile& f, int N, const RootSystem& sys);

// Moments of the limit of the counting measures of buildRegularSequence(f, N).
MomentSequence profileLimitMoments(const Profile& f, Series s, int K);

enum class MeasureKind { counting, pp };
std::string toString(MeasureKind k);
MeasureKind parseMeasureKind(const std::string& s);

struct ReportRow {
    int N = 0;
    int k = 0;
    Rational finite;   // exact expectation, or the sample mean
    Rational limit;    // predicted limit moment
    Rational absError;
    Rational variance; // of the k-th moment under the decomposition (sample variance in Monte Carlo)
    std::optional<double> standardError; // Monte Carlo only
};

struct ExperimentReport {
    std::string experiment;
    std::vector<std::pair<std::string, std::string>> config; // echoed in order
    std::uint64_t seed = 0;
    std::vector<ReportRow> rows;

    std::vector<ReportRow> rowsFor(int N) const;
    const ReportRow& row(int N, int k) const;
};

struct MomentStats {
    MomentSequence mean;
    std::vector<Rational> second;
};

// E M_k and E M_k^2 of the counting (or PP) measure under a decomposition.
MomentStats decompositionMoments(const DecompositionMeasure& rho, MeasureKind kind, int K);

// Tensor product of the signatures built from the profiles. Type A uses the
// Littlewood-Richardson rule; B, C, D use symbolic characters (rank <= 4).
ExperimentReport runTensorLLN(const std::vector<Profile>& profiles, Series s, const std::vector<int>& Ns, int K,
                              MeasureKind kind);

struct MonteCarloOptions {
    long trials = 0;
    std::uint64_t seed = 0;
};

// Restriction G(N) -> G(floor(alpha N)). Exact through restrictDecompose, or sampled when mc is set
// (type A uses the floor sampler; B, C, D the exact tiling sampler).
ExperimentReport runRestrictionLLN(const Profile& f, const Rational& alpha, Series s, const std::vector<int>& Ns, int K,
                                   MeasureKind kind, std::optional<MonteCarloOptions> mc = std::nullopt);

// Seed of trial t derived from the run seed.
std::uint64_t trialSeed(std::uint64_t seed, std::uint64_t t);

struct SymmetryPoint {
    int column = 0;
    Rational y;
    double strongMean = 0, weakMean = 0; // normalized by the strip width
    double strongSE = 0, weakSE = 0;
    double gap() const;
    double band() const; // 3 combined standard errors
};

struct SymmetryWidthResult {
    int width = 0;
    Signature strongTop, weakTop;
    std::vector<SymmetryPoint> points;
    double supGap = 0;
    bool withinBand = true;
};

struct SymmetryComparison {
    std::vector<SymmetryWidthResult> widths;
};

// Strongly symmetric tilings with top row lambda(m) (Sp(2m), width 2m+1) against weakly
// symmetric tilings of the same domain (SO(2m+2) with signature (lambda(m), 0)); widths must be odd.
SymmetryComparison runSymmetryComparison(const Profile& f, const std::vector<int>& widths, long trials,
                                         std::uint64_t seed);

// (i) PP moments of lambda(N) against qMap of the counting limit.
ExperimentReport ppLimitConsistency(const Profile& f, Series s, const std::vector<int>& Ns, int K);

// (ii) PP measures of (0^{N-k}, -lambda_k, ..., -lambda_1) dilated by N against the Kerov
// transition measure of the diagram; finite = moment of the dilated PP measure.
ExperimentReport kerovLimitCheck(const std::vector<long>& diagram, const std::vector<int>& Ns, int K);

} // namespace qfc

#pragma once

#include "qfc/measures.hpp"
#include "qfc/repr.hpp"
#include "qfc/series.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <vector>

namespace qfc {

// Binary floating value with per-value precision (MPFR).
using HPFloat = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultPrecisionBits = 256;
inline constexpr unsigned kMinSignificantBits = 64;

unsigned precisionBits(const HPFloat& v);
HPFloat toHP(const Rational& q, unsigned bits = kDefaultPrecisionBits);
HPFloat toHP(const HPFloat& v, unsigned bits);

// Sets the working precision of newly created HPFloat values; restores on exit.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

// s_nu(x, 1^{n-1}) / s_nu(1^n) for a U(n) signature nu, by the residue sum
// (n-1)!/(x-1)^{n-1} * sum_i x^{m_i} / prod_{j != i} (m_i - m_j), m_i = nu_i + n - i.
Rational normalizedSchurOneVar(const std::vector<long>& nu, const Rational& x);
Rational normalizedSchurOneVar(const Signature& lambda, const Rational& x); // series A

// Same at a real point. x is taken as exact; the working precision is raised until the
// residue sum keeps at least minBits significant bits after cancellation.
HPFloat normalizedSchurOneVar(const std::vector<long>& nu, const HPFloat& x,
                              unsigned minBits = kMinSignificantBits);

// The residue sum as a one-variable Laurent polynomial (exact division by (x-1)^{n-1}).
LaurentPolynomial normalizedSchurPolynomial(const std::vector<long>& nu);

// How a B/C/D normalized character reduces to a normalized Schur function.
struct SchurReduction {
    enum class Kind {
        identity,       // A: the character itself
        symplectic,     // C: 2/(x+1) * S_nu
        plain,          // B, and D with lambda_N = 0: S_nu
        evenOrthogonal, // D with lambda_N != 0: (1 + (1-1/x)(x d/dx - N)/(2N-1)) S_nu
    };
    Kind kind = Kind::identity;
    std::vector<long> nu;
};

SchurReduction schurReduction(const Signature& lambda);

// chi_lambda(x, 1^{N-1}) / chi_lambda(1^N) for any series, via the Schur reductions.
Rational normalizedCharOneVar(const Signature& lambda, const Rational& x);
HPFloat normalizedCharOneVar(const Signature& lambda, const HPFloat& x,
                             unsigned minBits = kMinSignificantBits);

// Independent route: the symbolic character specialized at (x, 1^{N-1}) over its dimension.
Rational normalizedCharBySpecialization(const Signature& lambda, const Rational& x,
                                        int maxRank = kDefaultCharacterRank);
// Same at (u_1, ..., u_k, 1^{N-k}).
Rational normalizedCharBySpecialization(const Signature& lambda, const std::vector<Rational>& u,
                                        int maxRank = kDefaultCharacterRank);

// N for A; 2N for B, C, D.
int characterNormalizer(const RootSystem& sys);

// ln(normalized character at x) / characterNormalizer.
HPFloat asymptoticLogCharacter(const Signature& lambda, const Rational& x,
                               unsigned bits = kDefaultPrecisionBits);

// Sum of c_k (at)^k over the stored coefficients.
HPFloat evaluateSeries(const TruncatedSeries& s, const Rational& at, unsigned bits = kDefaultPrecisionBits);

struct HCIZRow {
    Rational delta;
    std::vector<long> lambda;
    HPFloat value;  // s_lambda(x_1, x_2) / s_lambda(1, 1)
    HPFloat target; // N = 2 orbital integral
    HPFloat relError;
};

// a_1 > a_2, b_1 > b_2; lambda_i = floor(a_i / delta), x_i = exp(delta b_i).
std::vector<HCIZRow> hcizSemiclassical(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                       const std::vector<Rational>& deltas,
                                       unsigned bits = kDefaultPrecisionBits);

struct SplitRow {
    int N = 0;
    HPFloat joint; // (1/N) ln chi(u_1..u_k, 1^{N-k}) / chi(1^N)
    HPFloat split; // sum_i (1/N) ln chi(u_i, 1^{N-1}) / chi(1^N)
    HPFloat error;
};

// One row per signature of the family; k = points.size() <= 3.
std::vector<SplitRow> multivariateSplitCheck(const std::vector<Signature>& family,
                                             const std::vector<Rational>& points,
                                             unsigned bits = kDefaultPrecisionBits);

} // namespace qfc

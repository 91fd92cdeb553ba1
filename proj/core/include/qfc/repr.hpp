#pragma once

#include "qfc/laurent.hpp"
#include "qfc/measures.hpp"

#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace qfc {

inline constexpr int kDefaultCharacterRank = 4;

// Finite probability measure on the signatures of one root system.
class DecompositionMeasure {
public:
    DecompositionMeasure() = default;
    // Weights must be positive and sum to 1.
    DecompositionMeasure(RootSystem sys, std::map<Signature, Rational> weights);
    static DecompositionMeasure delta(const Signature& lambda);

    const RootSystem& system() const { return sys_; }
    const std::map<Signature, Rational>& weights() const { return w_; }
    Rational weight(const Signature& s) const;
    friend bool operator==(const DecompositionMeasure&, const DecompositionMeasure&) = default;

private:
    RootSystem sys_;
    std::map<Signature, Rational> w_;
};

using Multiplicities = std::map<Signature, BigInt>;

// Weyl denominator V: prod_{i<j}(u_i - u_j) for A; for B, C, D the product of
// (u_i + 1/u_i - u_j - 1/u_j), times prod (u_i^{1/2} - u_i^{-1/2}) for B and
// prod (u_i - 1/u_i) for C.
LaurentPolynomial weylDenominator(const RootSystem& sys);
// Alternating sum over the Weyl group of the shifted highest weight; for D the two
// determinants are averaged so that the zero weight gives exactly V.
LaurentPolynomial weylNumerator(const RootSystem& sys, const std::vector<long>& entries);

LaurentPolynomial characterPolynomial(const Signature& lambda, int maxRank = kDefaultCharacterRank);
// Type A only: monomial expansion over semistandard tableaux.
LaurentPolynomial schurByTableaux(const Signature& lambda);

// Greedy decomposition of a Weyl-invariant Laurent polynomial into irreducible characters.
// Throws InvariantError when a multiplicity is not a positive integer.
Multiplicities decomposeCharacter(const LaurentPolynomial& f, const RootSystem& sys,
                                  int maxRank = kDefaultCharacterRank);

Multiplicities tensorMultiplicities(const std::vector<Signature>& factors, int maxRank = kDefaultCharacterRank);
DecompositionMeasure tensorDecompose(const std::vector<Signature>& factors, int maxRank = kDefaultCharacterRank);
// Converts multiplicities c_mu into weights c_mu dim(mu) / total.
DecompositionMeasure weighByDimension(const RootSystem& sys, const Multiplicities& mult);

// Type A Littlewood-Richardson coefficients c^nu_{lambda,mu}, nu of the same rank.
Multiplicities lrCoefficientsA(const Signature& lambda, const Signature& mu);
// Type A tensor product of any number of factors by repeated LR products.
Multiplicities tensorMultiplicitiesLR(const std::vector<Signature>& factors);

// (1/V) o sum_i (u_i d/du_i)^k o V.
LaurentPolynomial applyDk(int k, const LaurentPolynomial& f, const RootSystem& sys);
// Type A: (1/V) o sum_i d/du_i (u_i d/du_i)^{k-1} o V. Other series: the even and odd
// operators with prefactors (u_i + 1/u_i) and (1/u_i - u_i).
LaurentPolynomial applyDkPP(int k, const LaurentPolynomial& f, const RootSystem& sys);

struct TensorSpec {
    std::vector<Signature> factors;
};
struct RestrictionSpec {
    Signature lambda;
    int keep = 1; // rank of the subgroup
};
using RhoSpec = std::variant<DecompositionMeasure, TensorSpec, RestrictionSpec>;

struct CharacterGenFn {
    LaurentPolynomial s;
    DecompositionMeasure rho;
};

CharacterGenFn characterGeneratingFunction(const RhoSpec& spec, int maxRank = kDefaultCharacterRank);

enum class MomentKind { counting, pp, hat };

struct MomentCheck {
    Rational lhs;
    Rational rhs;
};

// lhs: expectation over rho of (int x^k m[lambda](dx))^m from the decomposition;
// rhs: the same number read off the operators applied m times to S_rho at 1.
// For the hat kind k is the (even) moment order.
MomentCheck operatorMomentCheck(const RhoSpec& spec, int k, int m, MomentKind kind);

// Symmetrized divided-difference sum of g(z) = z^p over z_i = 1 + eps (i - 1), i = 1..n,
// and its limit binom(p, n - 1).
struct DividedDifferenceCheck {
    Rational value;
    Rational limit;
};
DividedDifferenceCheck dividedDifferenceCheck(int p, int n, const Rational& eps);

} // namespace qfc

#include "qfc/errors.hpp"
#include "qfc/lln.hpp"
#include "qfc/repr.hpp"

#include "support.hpp"

using namespace qfc;
using qfc::testing::R;

namespace {

Rational absQ(const Rational& q) { return q < 0 ? Rational(-q) : q; }

const Profile kHalf = Profile::step(R(1), R(1, 2));

// Quadratic Casimir sum_i l_i (l_i + N + 1 - 2i) of U(N).
Rational casimir2(const std::vector<long>& l) {
    const long N = static_cast<long>(l.size());
    Rational c = 0;
    for (long i = 1; i <= N; ++i) c += l[i - 1] * (l[i - 1] + N + 1 - 2 * i);
    return c;
}

long total(const std::vector<long>& l) {
    long s = 0;
    for (long v : l) s += v;
    return s;
}

} // namespace

TEST_CASE("profiles") {
    CHECK(kHalf(R(1, 2)) == 1);
    CHECK(kHalf(R(3, 4)) == 0);
    CHECK(kHalf(R(0)) == 1);
    const Profile ramp({{0, 1, R(2), R(0)}});
    CHECK(ramp(R(1, 4)) == R(3, 2));
    CHECK(ramp.bound() == 3);
    CHECK_THROWS_AS(Profile({{0, 1, R(0), R(1)}}), ValidationError);
    CHECK_THROWS_AS(Profile({{0, R(1, 2), R(1), R(1)}}), ValidationError);
    CHECK_THROWS_AS(Profile({{0, R(1, 2), R(0), R(0)}, {R(1, 2), 1, R(1), R(1)}}), ValidationError);
    CHECK_THROWS_AS(validateProfile(Profile::constant(-1), Series::C), ValidationError);
}

TEST_CASE("regular sequences") {
    CHECK(buildRegularSequence(Profile::constant(0), 5, {Series::A, 5}).entries() == std::vector<long>(5, 0));
    CHECK(buildRegularSequence(kHalf, 4, {Series::A, 4}).entries() == std::vector<long>{4, 4, 0, 0});
    CHECK(buildRegularSequence(kHalf, 3, {Series::A, 3}).entries() == std::vector<long>{3, 0, 0});
    const std::vector<Profile> fs = {kHalf, Profile({{0, 1, R(2), R(0)}}), Profile::constant(R(1, 3)),
                                     Profile({{0, R(1, 3), R(3), R(2)}, {R(1, 3), 1, R(1), R(-1, 2)}})};
    for (const auto& f : fs)
        for (Series s : {Series::A, Series::B, Series::C, Series::D}) {
            if (s != Series::A && f.minimum() < 0) continue;
            for (int N = 1; N <= 40; ++N) {
                const Signature l = buildRegularSequence(f, N, {s, N});
                for (int j = 1; j <= N; ++j) CHECK(absQ(makeRational(l[j - 1], N) - f(makeRational(j, N))) <= f.bound());
            }
        }
}

TEST_CASE("profile limit moments") {
    const int K = 6;
    for (Series s : {Series::A, Series::C}) {
        const MomentSequence z = profileLimitMoments(Profile::constant(0), s, K);
        for (int k = 0; k <= K; ++k) CHECK(z[k] == R(1, k + 1));
    }
    CHECK(profileLimitMoments(Profile::constant(R(5, 2)), Series::A, K) == uniformMoments(R(5, 2), R(7, 2), K));
    const Rational beta = R(3, 2), gamma = R(2, 5);
    CHECK(profileLimitMoments(Profile::step(beta, gamma), Series::A, 1)[1] == beta * gamma + R(1, 2));

    // Counting moments of the regular sequence converge, error halving roughly with N.
    const std::vector<Profile> fs = {kHalf, Profile({{0, 1, R(2), R(0)}}),
                                     Profile({{0, R(1, 3), R(3), R(2)}, {R(1, 3), 1, R(1), R(1, 2)}})};
    for (const auto& f : fs)
        for (Series s : {Series::A, Series::B, Series::C, Series::D}) {
            const MomentSequence lim = profileLimitMoments(f, s, K);
            std::vector<std::vector<Rational>> err;
            for (int N : {8, 16, 32, 64, 128}) {
                const MomentSequence m = measureMoments(countingMeasure(buildRegularSequence(f, N, {s, N})), K);
                std::vector<Rational> e;
                for (int k = 1; k <= K; ++k) e.push_back(absQ(m[k] - lim[k]));
                err.push_back(e);
            }
            for (std::size_t i = 1; i < err.size(); ++i)
                for (std::size_t k = 0; k < err[i].size(); ++k)
                    CHECK((err[i][k] < err[i - 1][k] || (err[i][k] == 0 && err[i - 1][k] == 0)));
        }
}

TEST_CASE("tensor experiment: trivial factors") {
    const auto r = runTensorLLN({Profile::constant(0), Profile::constant(0)}, Series::A, {3, 5}, 4, MeasureKind::counting);
    for (const auto& row : r.rows) {
        CHECK(row.limit == R(1, row.k + 1));
        const MomentSequence m = measureMoments(countingMeasure(Signature({Series::A, row.N}, std::vector<long>(row.N, 0))), 4);
        CHECK(row.finite == m[row.k]);
        CHECK(row.variance == 0);
    }
}

TEST_CASE("tensor experiment: half rectangles, type A") {
    const int K = 3;
    const auto r = runTensorLLN({kHalf, kHalf}, Series::A, {4, 6, 8}, K, MeasureKind::counting);
    for (int k = 1; k <= K; ++k) {
        CHECK(r.row(6, k).absError < r.row(4, k).absError);
        CHECK(r.row(8, k).absError < r.row(6, k).absError);
    }
    CHECK(r.row(8, 2).variance < r.row(4, 2).variance);
    CHECK(r.row(8, 3).variance < r.row(4, 3).variance);

    // Independent oracle: the first moment is fixed by |mu|, the second by the expected Casimir
    // E C(mu) = C(l1) + C(l2) + 2 |l1||l2| / N of the tensor product.
    for (int N : {4, 6, 8}) {
        const std::vector<long> l = buildRegularSequence(kHalf, N, {Series::A, N}).entries();
        const long size = 2 * total(l);
        Rational shift2 = 0, shift1 = 0;
        for (long i = 1; i <= N; ++i) {
            shift1 += N - i;
            shift2 += (N - i) * (N - i);
        }
        CHECK(r.row(N, 1).finite == (size + shift1) / Rational(N * N));
        const Rational eC = 2 * casimir2(l) + Rational(2 * total(l) * total(l), N);
        CHECK(r.row(N, 2).finite == (eC + (N - 1) * size + shift2) / Rational(N * N * N));
    }
}

TEST_CASE("tensor experiment: LR and character routes agree") {
    const auto viaLR = runTensorLLN({kHalf, Profile::constant(R(1, 2))}, Series::A, {3, 4}, 4, MeasureKind::counting);
    for (int N : {3, 4}) {
        const Signature a = buildRegularSequence(kHalf, N, {Series::A, N});
        const Signature b = buildRegularSequence(Profile::constant(R(1, 2)), N, {Series::A, N});
        const MomentStats st = decompositionMoments(tensorDecompose({a, b}), MeasureKind::counting, 4);
        for (int k = 0; k <= 4; ++k) CHECK(viaLR.row(N, k).finite == st.mean[k]);
    }
}

TEST_CASE("tensor experiment: other series and PP") {
    for (Series s : {Series::B, Series::C, Series::D}) {
        const auto r = runTensorLLN({kHalf, kHalf}, s, {1, 2}, 3, MeasureKind::counting);
        CHECK(r.rows.size() == 8);
    }
    // Lattice rectangles: the expected PP moments already equal the free-convolution prediction.
    const auto exact = runTensorLLN({kHalf, kHalf}, Series::A, {2, 4, 6}, 3, MeasureKind::pp);
    for (const auto& row : exact.rows) CHECK(row.absError == 0);
    const Profile ramp({{0, 1, R(1), R(0)}});
    const auto pp = runTensorLLN({ramp, ramp}, Series::A, {2, 3, 4, 5}, 3, MeasureKind::pp);
    for (int k = 1; k <= 3; ++k)
        for (int N = 3; N <= 5; ++N) CHECK(pp.row(N, k).absError < pp.row(N - 1, k).absError);
    CHECK(pp.row(5, 0).finite == 1);
}

TEST_CASE("restriction experiment, exact") {
    const int K = 3;
    const auto zero = runRestrictionLLN(Profile::constant(0), R(1, 2), Series::A, {4, 6}, K, MeasureKind::counting);
    for (const auto& row : zero.rows) CHECK(row.limit == R(1, row.k + 1));

    const auto r = runRestrictionLLN(kHalf, R(1, 2), Series::A, {4, 6, 8, 10}, K, MeasureKind::counting);
    for (int k = 1; k <= K; ++k) {
        CHECK(r.row(6, k).absError < r.row(4, k).absError);
        CHECK(r.row(8, k).absError < r.row(6, k).absError);
        CHECK(r.row(10, k).absError < r.row(8, k).absError);
    }
    // Agrees with the branching module's own table.
    const auto table = restrictionMomentTable(buildRegularSequence(kHalf, 8, {Series::A, 8}), 4, K);
    for (int k = 0; k <= K; ++k) CHECK(r.row(8, k).finite == table.mean[k]);

    for (Series s : {Series::B, Series::C, Series::D}) {
        const auto rs = runRestrictionLLN(kHalf, R(1, 2), s, {2, 4, 6}, 2, MeasureKind::counting);
        CHECK(rs.rows.size() == 9);
    }
}

TEST_CASE("restriction experiment, Monte Carlo") {
    const auto a = runRestrictionLLN(kHalf, R(1, 2), Series::A, {10}, 3, MeasureKind::counting, MonteCarloOptions{2000, 7});
    const auto b = runRestrictionLLN(kHalf, R(1, 2), Series::A, {10}, 3, MeasureKind::counting, MonteCarloOptions{2000, 7});
    const auto exact = runRestrictionLLN(kHalf, R(1, 2), Series::A, {10}, 3, MeasureKind::counting);
    CHECK(a.rows.size() == 4);
    for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].finite == b.rows[i].finite);
    // The floor sampler is approximate; at N = 10 it is indistinguishable from the exact decomposition.
    for (int k = 1; k <= 3; ++k) {
        REQUIRE(a.row(10, k).standardError.has_value());
        CHECK(std::abs(toDouble(a.row(10, k).finite - exact.row(10, k).finite)) < 4 * *a.row(10, k).standardError);
    }
    // Exact tiling sampler for C against the exact decomposition.
    const auto mc = runRestrictionLLN(kHalf, R(1, 2), Series::C, {4}, 2, MeasureKind::counting, MonteCarloOptions{3000, 11});
    const auto ex = runRestrictionLLN(kHalf, R(1, 2), Series::C, {4}, 2, MeasureKind::counting);
    for (int k = 1; k <= 2; ++k)
        CHECK(std::abs(toDouble(mc.row(4, k).finite - ex.row(4, k).finite)) < 4 * *mc.row(4, k).standardError + 1e-12);
}

TEST_CASE("symmetric tilings") {
    const auto zero = runSymmetryComparison(Profile::constant(0), {5, 7}, 20, 3);
    for (const auto& w : zero.widths) {
        CHECK(w.supGap == 0);
        CHECK(w.withinBand);
    }
    const auto r = runSymmetryComparison(kHalf, {5}, 200, 5);
    REQUIRE(r.widths.size() == 1);
    CHECK(r.widths[0].strongTop.entries() == std::vector<long>{2, 0});
    CHECK(r.widths[0].weakTop.entries() == std::vector<long>{2, 0, 0});
    CHECK(r.widths[0].supGap < 0.25);
    CHECK_THROWS_AS(runSymmetryComparison(kHalf, {6}, 10, 1), ValidationError);
}

TEST_CASE("PP limit and Kerov limit") {
    const auto zero = ppLimitConsistency(Profile::constant(0), Series::A, {1, 5, 9}, 4);
    for (const auto& row : zero.rows) {
        CHECK(row.finite == (row.k == 0 ? 1 : 0));
        CHECK(row.absError == 0);
    }
    // A rectangle with its corner on the lattice has exactly the limiting PP measure.
    const auto exact = ppLimitConsistency(kHalf, Series::A, {4, 16, 64}, 4);
    for (const auto& row : exact.rows) CHECK(row.absError == 0);
    for (const Profile& f : {Profile::step(R(1), R(1, 3)), Profile::step(R(2), R(1, 3)), Profile::step(R(1), R(2, 5))}) {
        const auto r = ppLimitConsistency(f, Series::A, {16, 64}, 4);
        for (int k = 1; k <= 4; ++k) CHECK(r.row(64, k).absError * 2 < r.row(16, k).absError);
    }

    for (const std::vector<long>& d : {std::vector<long>{1}, std::vector<long>{3, 2, 1, 1}}) {
        const auto kr = kerovLimitCheck(d, {10, 20, 40, 80}, 4);
        for (int k = 1; k <= 4; ++k) {
            CHECK(kr.row(20, k).absError <= kr.row(10, k).absError);
            CHECK(kr.row(80, k).absError <= kr.row(40, k).absError);
            if (d.size() > 1) CHECK(kr.row(80, k).absError < kr.row(40, k).absError);
        }
    }
    const auto one = kerovLimitCheck({1}, {10}, 2);
    CHECK(one.row(10, 1).limit == 0);
    CHECK(one.row(10, 2).limit == 1);
}

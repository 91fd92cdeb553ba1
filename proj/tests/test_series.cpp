#include "doctest.h"
#include "support.hpp"

#include "qfc/errors.hpp"
#include "qfc/series.hpp"

#include <random>

using namespace qfc;
using qfc::testing::R;

namespace {

TruncatedSeries expSeries(int K) {
    TruncatedSeries e = expMinusOne(K);
    e[0] = 1;
    return e;
}

TruncatedSeries randomSeries(std::mt19937_64& rng, int K, bool zeroConst) {
    std::uniform_int_distribution<long> d(-9, 9);
    TruncatedSeries s(K);
    for (int i = 0; i <= K; ++i) s[i] = makeRational(d(rng), 1 + std::abs(d(rng)));
    if (zeroConst) s[0] = 0;
    return s;
}

} // namespace

TEST_CASE("multiply") {
    const int K = 12;
    TruncatedSeries a = TruncatedSeries::constant(1, K) + TruncatedSeries::identity(K);
    TruncatedSeries b = TruncatedSeries::constant(1, K) - TruncatedSeries::identity(K);
    TruncatedSeries p = a * b;
    CHECK(p[0] == 1);
    CHECK(p[2] == -1);
    for (int i = 3; i <= K; ++i) CHECK(p[i] == 0);

    TruncatedSeries e = expSeries(K), em = scaleArgument(e, R(-1));
    CHECK(e * em == TruncatedSeries::constant(1, K));

    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        auto x = randomSeries(rng, K, false), y = randomSeries(rng, K, false), z = randomSeries(rng, K, false);
        CHECK(x * y == y * x);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * TruncatedSeries::constant(1, K) == x);
    }
}

TEST_CASE("mismatched series are rejected") {
    TruncatedSeries a(4), b(5), c(4, Var::uMinus1);
    CHECK_THROWS_AS(a * b, ValidationError);
    CHECK_THROWS_AS(a * c, ValidationError);
}

TEST_CASE("compose") {
    const int K = 12;
    TruncatedSeries z = TruncatedSeries::identity(K);
    std::mt19937_64 rng(2);
    auto s = randomSeries(rng, K, true);
    CHECK(compose(z, s) == s);
    CHECK(compose(logOnePlus(K), expMinusOne(K)) == z);

    TruncatedSeries z2(K), inner(K);
    z2[2] = 1;
    inner[1] = 1;
    inner[2] = 1;
    TruncatedSeries c = compose(z2, inner);
    CHECK(c[2] == 1);
    CHECK(c[3] == 2);
    CHECK(c[4] == 1);
    CHECK(c[5] == 0);

    TruncatedSeries bad = TruncatedSeries::constant(1, K);
    CHECK_THROWS_AS(compose(z, bad), ValidationError);
}

TEST_CASE("reversion") {
    const int K = 12;
    TruncatedSeries z = TruncatedSeries::identity(K);
    CHECK(reversion(z) == z);

    // z/(1-z) reverts to z/(1+z)
    TruncatedSeries geo(K), expected(K);
    for (int i = 1; i <= K; ++i) {
        geo[i] = 1;
        expected[i] = (i % 2) ? 1 : -1;
    }
    CHECK(reversion(geo) == expected);

    // z + a z^2: Lagrange gives coefficient (-a)^{n-1} Catalan_{n-1}
    const Rational a = R(3, 7);
    TruncatedSeries q(K);
    q[1] = 1;
    q[2] = a;
    TruncatedSeries rq = reversion(q);
    for (int n = 1; n <= K; ++n) {
        Rational cat = Rational(binomial(2 * (n - 1), n - 1)) / n;
        CHECK(rq[n] == pow(-a, n - 1) * cat);
    }

    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        auto s = randomSeries(rng, K, true);
        if (s[1] == 0) s[1] = 1;
        auto r = reversion(s);
        CHECK(r == reversionByCoefficients(s));
        CHECK(compose(s, r) == z);
        CHECK(compose(r, s) == z);
    }
    TruncatedSeries flat(K);
    flat[2] = 1;
    CHECK_THROWS_AS(reversion(flat), ValidationError);
}

TEST_CASE("exp and log") {
    const int K = 12;
    CHECK(seriesExp(TruncatedSeries(K)) == TruncatedSeries::constant(1, K));
    CHECK(seriesExp(TruncatedSeries::identity(K)) == expSeries(K));

    TruncatedSeries inv(K), mercator(K);
    for (int i = 0; i <= K; ++i) inv[i] = 1;
    for (int i = 1; i <= K; ++i) mercator[i] = R(1, i);
    CHECK(seriesLog(inv) == mercator);

    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        auto s = randomSeries(rng, K, false);
        s[0] = 1;
        CHECK(seriesExp(seriesLog(s)) == s);
        auto u = randomSeries(rng, K, true);
        CHECK(seriesLog(seriesExp(u)) == u);
    }
    CHECK_THROWS_AS(seriesExp(TruncatedSeries::constant(1, K)), ValidationError);
    CHECK_THROWS_AS(seriesLog(TruncatedSeries::constant(2, K)), ValidationError);
}

TEST_CASE("calculus and effective order") {
    const int K = 8;
    TruncatedSeries one = TruncatedSeries::constant(1, K);
    CHECK(integrate(one) == TruncatedSeries::identity(K));
    TruncatedSeries z2(K);
    z2[2] = 1;
    CHECK(differentiate(z2) == TruncatedSeries::identity(K) * R(2));

    std::mt19937_64 rng(5);
    auto s = randomSeries(rng, K, false);
    auto back = differentiate(integrate(s));
    for (int i = 0; i < K; ++i) CHECK(back[i] == s[i]);
    CHECK(differentiate(s).effectiveOrder() == K - 1);
    CHECK(differentiate(differentiate(s)).effectiveOrder() == K - 2);
}

TEST_CASE("logarithmic change of variable") {
    const int K = 12;
    TruncatedSeries z = TruncatedSeries::identity(K);
    TruncatedSeries u = changeVariableLog(z, LogChange::zToUMinus1);
    CHECK(u.var() == Var::uMinus1);
    for (int n = 1; n <= K; ++n) CHECK(u[n] == R(n % 2 ? 1 : -1, n));

    TruncatedSeries c = TruncatedSeries::constant(R(5, 3), K);
    CHECK(changeVariableLog(c, LogChange::zToUMinus1) == c.retagged(Var::uMinus1));

    std::mt19937_64 rng(6);
    auto s = randomSeries(rng, K, false);
    CHECK(changeVariableLog(changeVariableLog(s, LogChange::zToUMinus1), LogChange::uMinus1ToZ) == s);
    CHECK_THROWS_AS(changeVariableLog(s, LogChange::uMinus1ToZ), ValidationError);
}

#include <gtest/gtest.h>

#include <random>

#include "hkp/laurent.hpp"
#include "hkp/series_json.hpp"
#include "hkp/sym_series.hpp"

using namespace hkp;

namespace {

TruncationProfile prof(int w, int q1 = 4, int q2 = 4, int beta = 3, int min_q2 = 0) {
    TruncationProfile p;
    p.max_p_weight = w;
    p.max_q1 = q1;
    p.max_q2 = q2;
    p.min_q2 = min_q2;
    p.beta_order = beta;
    return p;
}

SymSeries mono(const TruncationProfile& P, Partition l, int e1, int e2, Rational c) {
    return SymSeries::monomial(l, e1, e2, c, P);
}

SymSeries random_series(std::mt19937& rng, const TruncationProfile& P, bool zero_constant) {
    SymSeries s(P);
    std::uniform_int_distribution<int> coef(-3, 3), e(0, 2), m(0, 2);
    for (int w = 0; w <= P.max_p_weight; ++w) {
        for (const auto& lam : partitions_of(w)) {
            for (int e1 = 0; e1 <= 1; ++e1) {
                if (zero_constant && w == 0 && e1 == 0) continue;
                int c = coef(rng);
                if (c == 0) continue;
                int m1 = m(rng), m2 = m(rng);
                s.add_term({lam, e1, e(rng) % 2},
                           BetaScalar::monomial(m1, m2, make_rational(c, 1 + e(rng)), P.beta_order));
            }
        }
    }
    return s;
}

}  // namespace

TEST(BetaScalar, ExpLinearIsMultiplicative) {
    auto a = BetaScalar::exp_linear(2, -1, 4);
    auto b = BetaScalar::exp_linear(-3, 5, 4);
    EXPECT_EQ(a * b, BetaScalar::exp_linear(-1, 4, 4));
    EXPECT_EQ(a * BetaScalar::exp_linear(-2, 1, 4), BetaScalar(Rational(1), 4));
}

TEST(BetaScalar, InverseAndSumSubstitution) {
    auto a = BetaScalar::exp_linear(3, 0, 3) + BetaScalar::monomial(0, 1, 2, 3);
    EXPECT_EQ(a * a.inverse(), BetaScalar(Rational(1), 3));
    EXPECT_EQ(BetaScalar::exp_linear(2, 0, 3).beta1_to_sum(), BetaScalar::exp_linear(2, 2, 3));
}

TEST(SeriesMul, SpecExamples) {
    auto P = prof(2);
    auto a = SymSeries::one(P) + mono(P, {1}, 0, 1, 1);
    auto b = SymSeries::one(P) - mono(P, {1}, 0, 1, 1);
    EXPECT_EQ(a * b, SymSeries::one(P) - mono(P, {1, 1}, 0, 2, 1));

    auto P3 = prof(3);
    EXPECT_EQ(SymSeries::p(2, P3) * SymSeries::p(1, P3), mono(P3, {2, 1}, 0, 0, 1));

    SymSeries e(P3), e2(P3);
    Partition pw;
    for (int n = 0; n <= 3; ++n) {
        e.add_term({pw, 0, 0}, Rational(1) / factorial(n));
        e2.add_term({pw, 0, 0}, Rational(mpz_class(1) << n) / factorial(n));
        pw = add_part(pw, 1);
    }
    EXPECT_EQ(e * e, e2);
}

TEST(SeriesMul, MismatchedProfilesThrow) {
    EXPECT_THROW(SymSeries::p(1, prof(2)) * SymSeries::p(1, prof(3)), ProfileMismatch);
}

TEST(SeriesExp, SpecExamples) {
    auto P = prof(3);
    EXPECT_EQ(series_exp(SymSeries(P)), SymSeries::one(P));
    auto e = series_exp(mono(P, {1}, 1, 0, 1));
    SymSeries expect = SymSeries::one(P) + mono(P, {1}, 1, 0, 1) + mono(P, {1, 1}, 2, 0, make_rational(1, 2)) +
                       mono(P, {1, 1, 1}, 3, 0, make_rational(1, 6));
    EXPECT_EQ(e, expect);

    auto P2 = prof(2);
    auto s = SymSeries::one(P2) + SymSeries::p(1, P2) + mono(P2, {1, 1}, 0, 0, make_rational(1, 2));
    EXPECT_EQ(series_log(s), SymSeries::p(1, P2));
}

TEST(SeriesExp, LogRejectsNonUnit) {
    auto P = prof(2);
    EXPECT_THROW(series_log(SymSeries::p(1, P)), DomainError);
    EXPECT_THROW(series_exp(SymSeries::constant(Rational(1), P)), DomainError);
}

TEST(SeriesExp, RandomizedRingAxiomsAndLogExp) {
    std::mt19937 rng(7);
    auto P = prof(3, 2, 2, 2);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = random_series(rng, P, false);
        auto b = random_series(rng, P, false);
        auto c = random_series(rng, P, false);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        auto u = random_series(rng, P, true);
        auto v = random_series(rng, P, true);
        EXPECT_EQ(series_log(series_exp(u)), u);
        EXPECT_EQ(series_exp(u + v), series_exp(u) * series_exp(v));
        auto unit = SymSeries::one(P) + u;
        EXPECT_EQ(unit * series_inverse(unit), SymSeries::one(P));
    }
}

TEST(ShiftP, Q2Shift) {
    auto P = prof(2, 0, 2, 0, -2);
    auto r = shift_p_q2(SymSeries::p(2, P), Rational(-2));
    EXPECT_EQ(r, SymSeries::p(2, P) - mono(P, {}, 0, -2, 2));
    EXPECT_THROW(shift_p_q2(SymSeries::p(2, prof(2, 0, 2, 0, -1)), Rational(-2)), WindowExhausted);
}

TEST(ShiftP, XShiftExamples) {
    auto P = prof(3);
    auto L = shift_p_x(SymSeries::p(1, P), Rational(-1));
    EXPECT_EQ(L.coef(0), SymSeries::p(1, P));
    EXPECT_EQ(L.coef(-1), SymSeries::constant(Rational(-1), P));
    EXPECT_TRUE(L.coef(-2).is_zero());

    auto e = series_exp(mono(P, {1}, 1, 0, 1));
    auto Le = shift_p_x(e, Rational(-1));
    for (int k = 0; k <= 3; ++k) {
        // exp(q p1) (−q)^k / k!, truncated at weight 3 − k in p
        SymSeries expect(P);
        for (const auto& [key, v] : e.terms())
            if (key.lambda.weight() + k <= 3)
                expect.add_term({key.lambda, key.e1 + k, key.e2},
                                v * (Rational(k % 2 ? -1 : 1) / factorial(k)));
        EXPECT_EQ(Le.coef(-k), expect) << k;
    }
}

TEST(ShiftP, ComposesAdditively) {
    std::mt19937 rng(3);
    auto s = random_series(rng, prof(3, 2, 3, 2), false);
    auto P2 = prof(3, 2, 3, 2, -3);
    auto s2 = s.widened(P2);
    EXPECT_EQ(shift_p_q2(shift_p_q2(s2, make_rational(1, 2)), make_rational(3, 2)), shift_p_q2(s2, Rational(2)));
    EXPECT_EQ(shift_p_q2(shift_p_q2(s2, make_rational(1, 2)), make_rational(-1, 2)), s2);

    // x-shift by +1 then by -1 in the same variable
    auto L = shift_p_x(s, Rational(1));
    LaurentX back(L.lo(), L.hi(), SymSeries(s.profile()));
    for (const auto& [k, c] : L.rows()) back += shift_p_x(c, Rational(-1)).shifted_by(k);
    EXPECT_EQ(back, lift(s, L.lo(), L.hi()));
}

TEST(ScaleQ2, Examples) {
    auto P = prof(2);
    EXPECT_EQ(scale_q2(mono(P, {1}, 0, 1, 1), 1),
              SymSeries::one(P) * SymSeries::p(1, P) * SymSeries(P) + [&] {
                  SymSeries r(P);
                  r.add_term({Partition{1}, 0, 1}, BetaScalar::exp_linear(0, 1, 3));
                  return r;
              }());
    auto s = mono(P, {}, 0, 2, 1);
    SymSeries expect(P);
    expect.add_term({Partition{}, 0, 2}, BetaScalar::exp_linear(0, 4, 3));
    EXPECT_EQ(scale_q2(s, 2), expect);
    EXPECT_EQ(scale_q2(s, 0), s);
}

TEST(Derive, Examples) {
    auto P = prof(2);
    EXPECT_EQ(derive(mono(P, {1, 1}, 0, 0, 1), DiffVar::p(1)), SymSeries::p(1, P) * Rational(2));
    EXPECT_EQ(derive(SymSeries::p(2, P), DiffVar::t(2)), SymSeries::constant(Rational(2), P));
    SymSeries s(P);
    s.add_term({Partition{1}, 0, 0}, BetaScalar::monomial(0, 2, 1, 3));
    SymSeries expect(P);
    expect.add_term({Partition{1}, 0, 0}, BetaScalar::monomial(0, 1, 2, 3));
    EXPECT_EQ(derive(s, DiffVar::beta2()), expect);
}

TEST(Derive, Leibniz) {
    std::mt19937 rng(11);
    auto P = prof(3, 2, 2, 2);
    for (int t = 0; t < 5; ++t) {
        auto a = random_series(rng, P, false), b = random_series(rng, P, false);
        for (auto v : {DiffVar::p(1), DiffVar::p(2), DiffVar::beta1(), DiffVar::beta2()}) {
            // Leibniz holds exactly after truncating one order lower in the varied grading
            auto lhs = derive(a * b, v);
            auto rhs = derive(a, v) * b + a * derive(b, v);
            TruncationProfile low = P;
            if (v.kind == DiffVar::Kind::p) low.max_p_weight -= v.n;
            else low.beta_order -= 1;
            EXPECT_EQ(lhs.restricted(low), rhs.restricted(low));
        }
    }
}

TEST(Laurent, CoefWindowAndCauchy) {
    auto P = prof(4);
    auto L = LaurentX::monomial(-1, SymSeries::one(P), -3, 3) +
             LaurentX::constant(SymSeries::constant(Rational(2), P), -3, 3);
    EXPECT_EQ(L.coef(-1), SymSeries::one(P));
    EXPECT_EQ(coef_x0(L), SymSeries::constant(Rational(2), P));
    EXPECT_THROW(L.coef(4), WindowExhausted);

    // exp(xi) with xi = sum p_n x^n / n
    LaurentX xi(-4, 4, SymSeries(P));
    for (int n = 1; n <= 4; ++n) xi.add_term(n, SymSeries::p(n, P) * Rational(1, n));
    auto e = laurent_exp(xi, 16);
    EXPECT_EQ(coef_x0(e), SymSeries::one(P));
    for (int k = 1; k <= 4; ++k) {
        SymSeries h(P);
        for (const auto& lam : partitions_of(k)) h.add_term({lam, 0, 0}, Rational(1) / z_lambda(lam));
        EXPECT_EQ(e.coef(k), h);
    }
}

TEST(Laurent, WatermarkAfterTruncation) {
    auto P = prof(2);
    auto a = LaurentX::monomial(-2, SymSeries::one(P), -2, 2);
    auto b = LaurentX::monomial(-1, SymSeries::one(P), -2, 2);
    auto ab = a * b;  // x^-3 dropped
    EXPECT_TRUE(ab.is_zero());
    auto c = ab * LaurentX::monomial(2, SymSeries::one(P), -2, 2);
    EXPECT_THROW(c.coef(-1), WindowExhausted);
    EXPECT_TRUE(c.coef(2).is_zero());
    EXPECT_THROW(LaurentX::monomial(2, SymSeries::one(P), -2, 2) * LaurentX::monomial(1, SymSeries::one(P), -2, 2),
                 WindowExhausted);
}

TEST(Json, RoundTripAndCanonicalOrder) {
    std::mt19937 rng(5);
    auto P = prof(3, 2, 2, 2);
    auto s = random_series(rng, P, false);
    auto j = to_json(s);
    EXPECT_EQ(sym_series_from_json(j), s);
    EXPECT_EQ(j.dump(), to_json(sym_series_from_json(j)).dump());
    auto t = to_json(SymSeries::p(3, P) + mono(P, {2, 1}, 0, 0, 1) + mono(P, {1, 1, 1}, 0, 0, 1));
    EXPECT_EQ(t["terms"][0]["lambda"], nlohmann::json({3}));
    EXPECT_EQ(t["terms"][2]["lambda"], nlohmann::json({1, 1, 1}));
}

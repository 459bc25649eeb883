#include <gtest/gtest.h>

#include "hkp/hurwitz.hpp"
#include "hkp/kp.hpp"

using namespace hkp;

namespace {
TruncationProfile prof(int w, int q1 = 0, int beta = 0, int q2 = 0, int window = 6) {
    TruncationProfile p;
    p.max_p_weight = w;
    p.max_q1 = q1;
    p.max_q2 = q2;
    p.beta_order = beta;
    p.x_low = -window;
    p.x_high = window;
    return p;
}
SymSeries pm(const TruncationProfile& P, Partition l, Rational c) { return SymSeries::monomial(l, 0, 0, c, P); }
BdSeries<SymSeries> bd(std::map<int, Rational> cs, const TruncationProfile& P, int offset = 0) {
    BdSeries<SymSeries> C;
    C.offset = offset;
    for (auto& [i, c] : cs) C.c.emplace(i, SymSeries::constant(c, P));
    return C;
}
}  // namespace

TEST(ExpXi, Coefficients) {
    auto P = prof(4);
    auto e = exp_xi(1, P);
    EXPECT_EQ(e.coef(0), SymSeries::one(P));
    EXPECT_EQ(e.coef(1), SymSeries::p(1, P));
    EXPECT_EQ(e.coef(2), pm(P, {1, 1}, make_rational(1, 2)) + pm(P, {2}, make_rational(1, 2)));
    auto em = exp_xi(-1, P);
    EXPECT_EQ(em.coef(2), pm(P, {1, 1}, make_rational(1, 2)) - pm(P, {2}, make_rational(1, 2)));
    EXPECT_EQ(coef_x0(e * em), SymSeries::one(P));
    EXPECT_TRUE((e * em).coef(3).is_zero());
    EXPECT_THROW(exp_xi(1, P, -2, 3), WindowExhausted);
}

TEST(TauShift, Examples) {
    auto P = prof(3, 3);
    EXPECT_EQ(tau_shift(SymSeries::one(P), -1, -3, 3), lift(SymSeries::one(P), -3, 3));
    auto s = tau_shift(SymSeries::one(P) + SymSeries::p(1, P), -1, -3, 3);
    EXPECT_EQ(s.coef(0), SymSeries::one(P) + SymSeries::p(1, P));
    EXPECT_EQ(s.coef(-1), SymSeries::constant(Rational(-1), P));
}

TEST(Wave, Examples) {
    auto P = prof(3, 3);
    EXPECT_EQ(wave(SymSeries::one(P), 0, WaveKind::wave), exp_xi(1, P));
    EXPECT_EQ(wave(SymSeries::one(P), 2, WaveKind::wave), exp_xi(1, P).shifted_by(2));
    auto tau = series_exp(SymSeries::monomial({1}, 1, 0, 1, P));
    auto psi = wave(tau, 0, WaveKind::wave);
    LaurentX shift(P.x_low, P.x_high, SymSeries(P));
    for (int k = 0; k <= 3; ++k)
        shift.add_term(-k, SymSeries::monomial({}, k, 0, Rational(k % 2 ? -1 : 1) / factorial(k), P));
    EXPECT_EQ(psi, shift * exp_xi(1, P));
    EXPECT_THROW(wave(SymSeries::p(1, P), 0, WaveKind::wave), DomainError);
}

TEST(Fay, SmallExamples) {
    auto P = prof(3);
    EXPECT_TRUE(fay_residual(SymSeries::one(P)).is_zero());
    EXPECT_TRUE(fay_residual(SymSeries::one(P) + SymSeries::p(1, P)).is_zero());
    // 1 + p2 first violates the bilinear relations at weight 4
    EXPECT_TRUE(fay_residual(SymSeries::one(P) + SymSeries::p(2, P)).is_zero());
    auto P5 = prof(5);
    auto bad = fay_residual(SymSeries::one(P5) + SymSeries::p(2, P5));
    EXPECT_FALSE(bad.is_zero());
    EXPECT_GT(bad.checked_terms, 0);
}

TEST(Fay, ClosedTauIsTau) {
    auto P = prof(4, 4, 3, 0, 5);
    auto tc = closed_tau(P);
    auto r = fay_residual(tc);
    EXPECT_TRUE(r.is_zero());
    EXPECT_GT(r.checked_terms, 20);
    EXPECT_TRUE(fay_residual(adjoint_tau(tc)).is_zero());
}

TEST(Fay, WindowTooSmall) {
    auto P = prof(4, 4, 1, 0, 2);
    EXPECT_THROW(fay_residual(closed_tau(P)), WindowExhausted);
}

TEST(Bd, ApplyExamples) {
    auto P = prof(3);
    EXPECT_EQ(bd_apply(SymSeries::one(P), bd({{0, 1}}, P), BdDirection::forward), SymSeries::one(P));
    EXPECT_EQ(bd_apply(SymSeries::one(P), bd({{0, 1}, {1, 1}}, P), BdDirection::forward),
              SymSeries::one(P) + SymSeries::p(1, P));
    EXPECT_THROW(bd_apply(SymSeries::one(P), bd({{1, 1}}, P), BdDirection::forward), DomainError);
}

TEST(Bd, DetectExamples) {
    auto P = prof(3);
    auto d = bd_detect(SymSeries::one(P), SymSeries::one(P) + SymSeries::p(1, P), 3, BdDirection::forward);
    ASSERT_TRUE(d.success);
    EXPECT_EQ(d.C.c.size(), 2u);
    EXPECT_EQ(d.C.c.at(0), SymSeries::one(P));
    EXPECT_EQ(d.C.c.at(1), SymSeries::one(P));
    auto id = bd_detect(SymSeries::one(P), SymSeries::one(P), 3, BdDirection::forward);
    ASSERT_TRUE(id.success);
    EXPECT_EQ(id.C.c.size(), 1u);
    auto fail = bd_detect(SymSeries::one(P), SymSeries::one(P) + SymSeries::p(2, P), 3, BdDirection::forward);
    EXPECT_FALSE(fail.success);
    EXPECT_FALSE(fail.residual.nonzero.empty());
}

TEST(Bd, RoundTripRecoversTau) {
    auto P = prof(4, 4, 2);
    auto tc = closed_tau(P);
    auto C = bd({{0, 2}, {1, -1}, {2, make_rational(1, 3)}, {4, 5}}, P);
    auto fwd = bd_apply(tc, C, BdDirection::forward);
    EXPECT_TRUE(fay_residual(fwd).is_zero());
    auto back = bd_detect(fwd, tc, 4, BdDirection::backward);
    EXPECT_TRUE(back.success);
    // the backward eigenfunction is the reciprocal of the forward one: Φ̄(0) = 1/Φ(0)
    EXPECT_EQ(back.C.c.at(0).constant_term().constant(), make_rational(1, 2));
}

TEST(Bd, AdjointInterchange) {
    auto P = prof(4, 4, 2);
    auto ta = closed_tau(P);
    auto tb = bd_apply(ta, bd({{0, 1}, {1, 3}, {2, -1}}, P), BdDirection::forward);
    ASSERT_TRUE(bd_detect(ta, tb, 4, BdDirection::forward).success);
    EXPECT_TRUE(bd_detect(adjoint_tau(ta), adjoint_tau(tb), 4, BdDirection::backward).success);
}

TEST(Mkp, SmallSequences) {
    auto P = prof(3);
    auto ok = mkp_verify(std::vector<SymSeries>{SymSeries::one(P), SymSeries::one(P) + SymSeries::p(1, P)}, 3);
    for (const auto& s : ok) EXPECT_TRUE(s.pass) << s.label;
    auto bad = mkp_verify(std::vector<SymSeries>{SymSeries::one(P), SymSeries::one(P) + SymSeries::p(2, P)}, 3);
    EXPECT_FALSE(std::all_of(bad.begin(), bad.end(), [](const MkpStep& s) { return s.pass; }));
}

TEST(Mkp, OpenHurwitzSequence) {
    auto P = prof(3, 3, 2, 3, 5);
    std::vector<SymSeries> taus;
    for (int N = -2; N <= 2; ++N) taus.push_back(open_tau_tilde(N, P));
    for (const auto& s : mkp_verify(taus, 3)) EXPECT_TRUE(s.pass) << s.label;
}

TEST(Mkp, DetectedTransformationMatchesD) {
    auto P = prof(3, 3, 2, 3, 5);
    auto det = bd_detect(open_tau_tilde(0, P), open_tau_tilde(1, P), 3, BdDirection::forward);
    ASSERT_TRUE(det.success);
    auto D = d_series(P);
    for (int l = 0; l <= 3; ++l) {
        SymSeries expect = D.coefficient(l, SymSeries(P));
        expect *= BetaScalar::exp_of(Rational(l), BetaSlot::beta2, P.beta_order);
        EXPECT_EQ(det.C.coefficient(l, SymSeries(P)), expect) << l;
    }
}

TEST(ShiftSequence, ZeroToOneOverLaurentScalars) {
    const int W = 4;
    auto P = prof(W, W, 2, 0, W + 1);
    auto tc = closed_tau(P);
    auto t1 = tau_shift(tc, -1, -2 * W, 2 * W) * exp_xi_like(1, tc, -2 * W, 2 * W);
    auto r = fay_residual(t1, -W - 1, W + 1);
    EXPECT_TRUE(r.is_zero());
    EXPECT_GT(r.checked_terms, 50);
    auto d = bd_detect(lift(tc, -2 * W, 2 * W), t1, W, BdDirection::forward);
    EXPECT_TRUE(d.success);
    EXPECT_GT(d.residual.checked_terms, 50);
    auto broken = t1;
    broken += lift(SymSeries::monomial({2}, 1, 0, make_rational(1, 7), P), -2 * W, 2 * W);
    EXPECT_FALSE(fay_residual(broken, -W - 1, W + 1).is_zero());
}

TEST(Soliton, SingleSoliton) {
    auto P = prof(4);
    SolitonParams sp{{Rational(1)}, {Rational(-1)}, {Rational(1)}};
    sp.validate();
    auto d1 = soliton_tau(sp, 1, P);
    EXPECT_EQ(d1, exp_xi_at(Rational(1), P) + exp_xi_at(Rational(-1), P));
    EXPECT_EQ(d1.constant_term().constant(), 2);
    EXPECT_TRUE(fay_residual(d1 * Rational(1, 2)).is_zero());
    EXPECT_EQ(bd_apply(SymSeries::one(P), soliton_gamma(sp, 1, P), BdDirection::forward), d1);
    // ∂y_1 entry
    EXPECT_EQ(derive(d1, DiffVar::t(1)), exp_xi_at(Rational(1), P) - exp_xi_at(Rational(-1), P));
}

TEST(Soliton, ThreeSolitonChain) {
    auto P = prof(4);
    SolitonParams sp{{Rational(1), Rational(2), make_rational(-1, 2)},
                     {Rational(-1), Rational(3), make_rational(1, 3)},
                     {Rational(1), make_rational(1, 2), Rational(2)}};
    sp.validate();
    for (std::size_t k = 1; k <= 3; ++k) {
        auto dk = soliton_tau(sp, k, P);
        EXPECT_TRUE(fay_residual(dk).is_zero()) << k;
        TruncationProfile Pk = P;
        Pk.max_p_weight = P.max_p_weight + static_cast<int>(k) - 1;
        Pk.x_low = -Pk.max_p_weight;
        Pk.x_high = Pk.max_p_weight;
        auto prev = soliton_tau(sp, k - 1, Pk);
        auto chained = bd_apply(prev, soliton_gamma(sp, k, Pk), BdDirection::forward).restricted(P);
        EXPECT_EQ(chained, dk) << k;
    }
}

TEST(Soliton, DegenerateParametersRejected) {
    SolitonParams same{{Rational(1)}, {Rational(1)}, {Rational(1)}};
    EXPECT_THROW(same.validate(), DomainError);
    SolitonParams wr{{Rational(1), Rational(1)}, {Rational(2), Rational(2)}, {Rational(1), Rational(1)}};
    EXPECT_THROW(wr.validate(), DomainError);
}

TEST(Orthogonal, HurwitzRows) {
    auto P = prof(2, 2, 1);
    auto rows = hurwitz_rows(P);
    auto tau = boson_fermion(wedge_from_rows(rows, 2), P);
    auto perp = boson_fermion(wedge_from_rows(ortho_rows(rows, 2), 2), P);
    EXPECT_EQ(perp, adjoint_tau(tau));
    EXPECT_EQ(tau, closed_tau(P));
}

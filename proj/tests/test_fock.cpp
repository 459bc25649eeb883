#include <gtest/gtest.h>

#include "hkp/fock.hpp"

using namespace hkp;

namespace {
TruncationProfile prof(int w, int beta = 3) {
    TruncationProfile p;
    p.max_p_weight = w;
    p.max_q1 = w;
    p.beta_order = beta;
    return p;
}
SymSeries q1(const TruncationProfile& P, int e, Rational c) { return SymSeries::monomial({}, e, 0, c, P); }

RowSet exp_rows(int N, const TruncationProfile& P, int cutoff) {
    RowSet rs{N, P, {}, {}};
    rs.tail = [P, cutoff, N](int i) {
        LaurentRow r = exp_row(i - N, P, cutoff);
        return r;
    };
    return rs;
}
}  // namespace

TEST(Wedge, PurePowersGiveVacuum) {
    auto P = prof(4);
    for (int N = -2; N <= 2; ++N) {
        RowSet rs{N, P, {}, {}};
        EXPECT_EQ(wedge_from_rows(rs, 4), WedgeState::vacuum(N, 4, P));
    }
}

TEST(Wedge, ExpRowsLevelZero) {
    auto P = prof(2);
    auto w = wedge_from_rows(exp_rows(0, P, 2), 2);
    EXPECT_EQ(w.coefficient({}), SymSeries::one(P));
    EXPECT_EQ(w.coefficient({1}), q1(P, 1, 1));
    EXPECT_EQ(w.coefficient({2}), q1(P, 2, make_rational(1, 2)));
    EXPECT_EQ(w.coefficient({1, 1}), q1(P, 2, make_rational(1, 2)));
    EXPECT_EQ(w.coeffs.size(), 4u);
    // Ψ_0 of the wedge is exp(q p1)
    auto tau = boson_fermion(w, P);
    EXPECT_EQ(tau, series_exp(SymSeries::monomial({1}, 1, 0, 1, P)));
}

TEST(Wedge, SinglePerturbedRow) {
    auto P = prof(3);
    RowSet rs{0, P, {}, {}};
    LaurentRow r = LaurentRow::pure(-1, P);
    r.set(1, SymSeries::constant(Rational(5), P));
    rs.explicit_rows.push_back(r);
    auto w = wedge_from_rows(rs, 3);
    EXPECT_EQ(w.coeffs.size(), 2u);
    EXPECT_EQ(w.coefficient({}), SymSeries::one(P));
    EXPECT_EQ(w.coefficient({1}), SymSeries::constant(Rational(5), P));
}

TEST(Wedge, Alternating) {
    auto P = prof(3);
    RowSet rs{0, P, {}, {}};
    LaurentRow a = LaurentRow::pure(-1, P), b = LaurentRow::pure(-2, P);
    a.set(1, SymSeries::constant(Rational(2), P));
    a.set(2, SymSeries::constant(Rational(3), P));
    b.set(1, SymSeries::constant(Rational(7), P));
    b.set(3, SymSeries::constant(Rational(-1), P));
    rs.explicit_rows = {a, b};
    auto w = wedge_from_rows(rs, 3);
    RowSet swapped = rs;
    swapped.explicit_rows = {b, a};
    EXPECT_EQ(wedge_from_rows(swapped, 3), -w);
    RowSet repeated = rs;
    repeated.explicit_rows = {a, a};
    EXPECT_TRUE(wedge_from_rows(repeated, 3).is_zero());
}

TEST(Fermions, Examples) {
    auto P = prof(4);
    for (int N = -2; N <= 2; ++N) {
        EXPECT_EQ(fermion_apply(WedgeState::vacuum(N, 4, P), Fermion::theta, N), WedgeState::vacuum(N + 1, 4, P));
        EXPECT_EQ(fermion_apply(WedgeState::vacuum(N, 4, P), Fermion::theta_dagger, N - 1),
                  WedgeState::vacuum(N - 1, 4, P));
    }
    for (int d = 0; d <= 3; ++d)
        for (const auto& l : partitions_of(d))
            for (int a = -4; a <= 4; ++a) {
                auto s = WedgeState::basis(l, 0, 12, P);
                EXPECT_TRUE(fermion_apply(fermion_apply(s, Fermion::theta, a), Fermion::theta, a).is_zero());
            }
}

TEST(Fermions, AnticommutationOnBasis) {
    auto P = prof(4);
    const int cutoff = 16;
    for (int N = -1; N <= 1; ++N) {
        for (int d = 0; d <= 4; ++d) {
            for (const auto& l : partitions_of(d)) {
                auto s = WedgeState::basis(l, N, cutoff, P);
                for (int a = N - 6; a <= N + 5; ++a) {
                    auto lhs = fermion_apply(fermion_apply(s, Fermion::theta_dagger, a), Fermion::theta, a) +
                               fermion_apply(fermion_apply(s, Fermion::theta, a), Fermion::theta_dagger, a);
                    EXPECT_EQ(lhs, s) << l.to_string() << " a=" << a;
                    for (int b = N - 4; b <= N + 4; ++b) {
                        if (a == b) continue;
                        EXPECT_EQ(fermion_apply(fermion_apply(s, Fermion::theta, b), Fermion::theta, a),
                                  -fermion_apply(fermion_apply(s, Fermion::theta, a), Fermion::theta, b));
                        EXPECT_EQ(fermion_apply(fermion_apply(s, Fermion::theta_dagger, b), Fermion::theta_dagger, a),
                                  -fermion_apply(fermion_apply(s, Fermion::theta_dagger, a), Fermion::theta_dagger, b));
                        EXPECT_EQ(fermion_apply(fermion_apply(s, Fermion::theta_dagger, b), Fermion::theta, a),
                                  -fermion_apply(fermion_apply(s, Fermion::theta, a), Fermion::theta_dagger, b));
                    }
                }
            }
        }
    }
}

TEST(Alpha, Examples) {
    auto P = prof(4);
    EXPECT_EQ(alpha_apply(WedgeState::basis({1}, 0, 4, P), 1), WedgeState::vacuum(0, 4, P));
    EXPECT_EQ(alpha_apply(WedgeState::vacuum(0, 4, P), -1), WedgeState::basis({1}, 0, 4, P));
    EXPECT_TRUE(alpha_apply(WedgeState::vacuum(0, 4, P), 2).is_zero());
}

TEST(Alpha, DirectMatchesFermionicSum) {
    auto P = prof(4);
    for (int N = -2; N <= 2; ++N)
        for (int d = 0; d <= 4; ++d)
            for (const auto& l : partitions_of(d))
                for (int n = -3; n <= 3; ++n) {
                    if (n == 0) continue;
                    auto s = WedgeState::basis(l, N, 8, P);
                    EXPECT_EQ(alpha_apply(s, n), alpha_apply_fermionic(s, n)) << l.to_string() << " n=" << n;
                }
}

TEST(BosonFermion, SchurImageIsLevelIndependent) {
    auto P = prof(6);
    EXPECT_EQ(boson_fermion(WedgeState::vacuum(1, 6, P), P), SymSeries::one(P));
    EXPECT_EQ(boson_fermion_via_alpha(WedgeState::basis({1}, 0, 6, P), P), SymSeries::p(1, P));
    for (int N = -2; N <= 2; ++N)
        for (int d = 0; d <= 6; ++d)
            for (const auto& l : partitions_of(d)) {
                auto s = WedgeState::basis(l, N, 6, P);
                EXPECT_EQ(boson_fermion_via_alpha(s, P), schur_p(l, P)) << l.to_string() << " N=" << N;
                EXPECT_EQ(boson_fermion(s, P), schur_p(l, P));
            }
}

TEST(WedgeReduce, RowExamples) {
    auto P = prof(4);
    auto r1 = wedge_reduce_exp_row(1, P, 2);
    EXPECT_EQ(r1.entry(0, P), q1(P, 1, -1));
    EXPECT_EQ(r1.entry(1, P), q1(P, 2, make_rational(-1, 2)));
    EXPECT_EQ(r1.entry(2, P), q1(P, 3, make_rational(-1, 6)));
    auto r2 = wedge_reduce_exp_row(2, P, 2);
    EXPECT_EQ(r2.entry(0, P), q1(P, 2, make_rational(1, 2)));
    EXPECT_THROW(wedge_reduce_exp_row(0, P, 2), DomainError);
}

TEST(WedgeReduce, ReductionAtCutoffThree) {
    const int cutoff = 3;
    auto P = prof(cutoff + 4);
    for (int k = 1; k <= 4; ++k) {
        RowSet lhs{1, P, {}, {}}, rhs{1, P, {}, {}};
        lhs.explicit_rows.push_back(LaurentRow::pure(-k, P));
        rhs.explicit_rows.push_back(wedge_reduce_exp_row(k, P, cutoff + k + 2));
        auto tail = [P](int i) { return exp_row(i - 1, P, 12); };
        lhs.tail = tail;
        rhs.tail = tail;
        auto wl = wedge_from_rows(lhs, cutoff), wr = wedge_from_rows(rhs, cutoff);
        EXPECT_EQ(wl, wr) << "k=" << k;
        EXPECT_FALSE(wl.is_zero());
        auto Pb = prof(cutoff);
        EXPECT_EQ(boson_fermion(wl, Pb), boson_fermion(wr, Pb));
    }
}

TEST(CutJoinFermionic, RowFlowMatchesOperatorFlow) {
    auto P = prof(4, 3);
    for (int N = -1; N <= 1; ++N) {
        RowSet rs{N, P, {}, {}};
        LaurentRow a = LaurentRow::pure(N - 1, P), b = LaurentRow::pure(N - 2, P);
        a.set(1, SymSeries::monomial({}, 1, 0, 2, P));
        a.set(3, SymSeries::monomial({}, 3, 0, -1, P));
        b.set(2, SymSeries::monomial({}, 2, 0, make_rational(1, 3), P));
        rs.explicit_rows = {a, b};
        auto lhs = cutjoin_exp(boson_fermion(wedge_from_rows(rs, 4), P), BetaSlot::beta1);
        auto rhs = boson_fermion(wedge_from_rows(cutjoin_rows(rs, BetaSlot::beta1), 4), P);
        EXPECT_EQ(lhs, rhs) << "N=" << N;
    }
    auto lhs = cutjoin_exp(boson_fermion(wedge_from_rows(exp_rows(0, P, 4), 4), P), BetaSlot::beta2);
    auto rhs = boson_fermion(wedge_from_rows(cutjoin_rows(exp_rows(0, P, 4), BetaSlot::beta2), 4), P);
    EXPECT_EQ(lhs, rhs);
}

TEST(Orthogonal, Examples) {
    auto P = prof(4);
    for (int N = -2; N <= 2; ++N) {
        RowSet rs{N, P, {}, {}};
        EXPECT_EQ(wedge_from_rows(ortho_rows(rs, 4), 4), WedgeState::vacuum(-N, 4, P));
    }
    RowSet rs{0, P, {}, {}};
    LaurentRow r = LaurentRow::pure(-1, P);
    r.set(1, SymSeries::constant(Rational(3), P));
    rs.explicit_rows.push_back(r);
    auto dual = ortho_rows(rs, 4);
    EXPECT_EQ(dual.row(1).entry(0, P), SymSeries::constant(Rational(-3), P));
    auto tau_h = boson_fermion(wedge_from_rows(rs, 4), P);
    auto tau_perp = boson_fermion(wedge_from_rows(dual, 4), P);
    EXPECT_EQ(tau_perp, negate_times(tau_h));
    EXPECT_EQ(tau_perp, SymSeries::one(P) - SymSeries::p(1, P) * Rational(3));
}

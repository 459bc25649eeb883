#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hkp/fock.hpp"
#include "hkp/kp.hpp"
#include "hkp/symfun.hpp"
#include "hkp/sym_series.hpp"

namespace hkp {

enum class ClosedRoute { fermionic, cutjoin };

/// Row f^H_i = z^{-i} Σ_l e^{β l(l−2i+1)/2} (qz)^l / l!, with β in the β1 slot and q in q1.
inline LaurentRow hurwitz_row(int i, const TruncationProfile& P, int cutoff) {
    LaurentRow r;
    r.offset = -i;
    for (int l = 0; l <= cutoff; ++l) {
        const long num = static_cast<long>(l) * (l - 2 * i + 1);
        if (num % 2) throw std::logic_error("hurwitz_row: odd exponent");
        SymSeries c = SymSeries::monomial(Partition{}, l, 0, Rational(1) / factorial(l), P);
        c *= BetaScalar::exp_of(Rational(num / 2), BetaSlot::beta1, P.beta_order);
        r.set(l, c);
    }
    return r;
}

inline RowSet hurwitz_rows(const TruncationProfile& P) {
    RowSet rs{0, P, {}, {}};
    const int cutoff = P.max_p_weight;
    rs.tail = [P, cutoff](int i) { return hurwitz_row(i, P, cutoff); };
    return rs;
}

/// τ^c with β in the β1 slot and q in the q1 slot.
inline SymSeries closed_tau(const TruncationProfile& P, ClosedRoute route = ClosedRoute::cutjoin) {
    if (route == ClosedRoute::fermionic)
        return boson_fermion(wedge_from_rows(hurwitz_rows(P), P.max_p_weight), P);
    return cutjoin_exp(series_exp(SymSeries::monomial(Partition{1}, 1, 0, 1, P)), BetaSlot::beta1);
}

/// τ^c(p, β1+β2, q1 q2).
inline SymSeries closed_tau_sum(const TruncationProfile& P) {
    TruncationProfile Pc = P;
    Pc.max_q2 = 0;
    Pc.min_q2 = 0;
    return beta1_to_sum(substitute_q1(closed_tau(Pc), 1, 0, P));
}

/// h^c(λ, m) for every |λ| ≤ weight and m ≤ beta_order, read off log τ^c.
inline std::map<std::pair<Partition, int>, Rational> closed_hurwitz_table(const TruncationProfile& P) {
    const SymSeries H = series_log(closed_tau(P));
    std::map<std::pair<Partition, int>, Rational> table;
    for (const auto& lam : partitions_up_to(P.max_p_weight)) {
        if (lam.empty() || lam.weight() > P.max_q1) continue;
        const BetaScalar v = H.coefficient(lam, lam.weight(), 0);
        for (int m = 0; m <= P.beta_order; ++m) table[{lam, m}] = v.coefficient(m, 0) * factorial(m);
    }
    return table;
}

inline Rational closed_hurwitz(const Partition& lambda, int m, const TruncationProfile& P) {
    if (lambda.empty() || lambda.weight() > P.max_p_weight || lambda.weight() > P.max_q1 || m < 0 ||
        m > P.beta_order)
        throw DomainError("closed_hurwitz: (" + lambda.to_string() + ", " + std::to_string(m) + ") outside profile");
    TruncationProfile Q = P;
    Q.max_p_weight = Q.max_q1 = lambda.weight();
    Q.beta_order = m;
    return series_log(closed_tau(Q)).coefficient(lambda, lambda.weight(), 0).coefficient(m, 0) * factorial(m);
}

namespace detail {

inline Partition cycle_type(const std::vector<int>& perm) {
    std::vector<bool> seen(perm.size(), false);
    std::vector<int> cycles;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
            seen[j] = true;
            ++len;
        }
        cycles.push_back(len);
    }
    return Partition::from_unsorted(cycles);
}

// Blocks of the partition of {0..d-1} generated so far, each element labelled
// by the smallest element of its block.
inline std::vector<int> join_blocks(std::vector<int> blocks, int a, int b) {
    const int from = std::max(blocks[static_cast<std::size_t>(a)], blocks[static_cast<std::size_t>(b)]);
    const int to = std::min(blocks[static_cast<std::size_t>(a)], blocks[static_cast<std::size_t>(b)]);
    for (int& x : blocks)
        if (x == from) x = to;
    return blocks;
}

}  // namespace detail

/// Counts tuples (τ_1, …, τ_m, σ) of transpositions τ_i and σ of cycle type λ
/// with τ_1⋯τ_m σ = id generating a transitive subgroup, divided by d!.
/// Dynamic programming over (partial product, connectivity of generators).
inline Rational closed_hurwitz_oracle(const Partition& lambda, int m) {
    const int d = lambda.weight();
    if (d < 1 || d > 6 || m < 0 || m > 7) throw DomainError("closed_hurwitz_oracle: needs 1 <= |lambda| <= 6, m <= 7");
    std::vector<int> id(static_cast<std::size_t>(d)), blocks(static_cast<std::size_t>(d));
    std::iota(id.begin(), id.end(), 0);
    std::iota(blocks.begin(), blocks.end(), 0);
    std::map<std::pair<std::vector<int>, std::vector<int>>, std::uint64_t> states{{{id, blocks}, 1}};
    for (int step = 0; step < m; ++step) {
        std::map<std::pair<std::vector<int>, std::vector<int>>, std::uint64_t> next;
        for (const auto& [st, count] : states) {
            for (int a = 0; a < d; ++a) {
                for (int b = a + 1; b < d; ++b) {
                    auto perm = st.first;
                    std::swap(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
                    next[{perm, detail::join_blocks(st.second, a, b)}] += count;
                }
            }
        }
        states = std::move(next);
    }
    std::uint64_t total = 0;
    for (const auto& [st, count] : states) {
        const bool transitive = std::all_of(st.second.begin(), st.second.end(), [](int x) { return x == 0; });
        if (transitive && detail::cycle_type(st.first) == lambda) total += count;
    }
    if (m == 0 && total != 0 && !(d == 1))
        throw std::logic_error("closed_hurwitz_oracle: m = 0 count should vanish for d > 1");
    return Rational(mpz_class(std::to_string(total))) / factorial(d);
}

/// Internal profile for the open side: the closed series must be known up to
/// weight max(W, Q1) because the q2 shift lowers the p-weight.
inline TruncationProfile open_internal_profile(const TruncationProfile& P) {
    TruncationProfile Pi = P;
    const int Wi = std::max(P.max_p_weight, P.max_q1);
    Pi.max_p_weight = Wi;
    Pi.max_q2 = std::max(Wi, P.max_q2);
    Pi.min_q2 = -Wi;
    Pi.x_low = std::min(P.x_low, -Wi);
    Pi.x_high = std::max(P.x_high, Wi);
    return Pi;
}

namespace detail {
inline void assert_q2_is_weight(const SymSeries& s, const char* what) {
    for (const auto& [k, v] : s.terms())
        if (k.e2 != k.lambda.weight())
            throw std::logic_error(std::string(what) + ": q2 exponent differs from p-weight at " + k.to_string());
}

inline TruncationProfile target_profile(const TruncationProfile& P) {
    TruncationProfile T = P;
    T.min_q2 = 0;
    return T;
}
}  // namespace detail

/// τ^o_N at β2 = 0: τ^c(p − N[q2⁻¹], β1, q1q2) · exp(N Σ p_n q2^n / n).
inline SymSeries open_tau_base(int N, const TruncationProfile& P) {
    const TruncationProfile Pi = open_internal_profile(P);
    TruncationProfile Pc = Pi;
    Pc.max_q2 = Pc.min_q2 = 0;
    const SymSeries t = substitute_q1(closed_tau(Pc), 1, 0, Pi);
    const SymSeries shifted = shift_p_q2(t, Rational(-N));
    SymSeries xi(Pi);
    for (int n = 1; n <= Pi.max_p_weight; ++n) xi.add_term({Partition{n}, 0, n}, make_rational(N, n));
    const SymSeries base = shifted * series_exp(xi);
    detail::assert_q2_is_weight(base, "open_tau_base");
    return base.restricted(detail::target_profile(P));
}

/// τ^o_N = e^{β2 𝒜} τ^o_N|_{β2=0}.
inline SymSeries open_tau(int N, const TruncationProfile& P) {
    return cutjoin_exp(open_tau_base(N, P), BetaSlot::beta2);
}

/// τ^o_N with q2 ↦ e^{Nβ2} q2.
inline SymSeries open_tau_tilde(int N, const TruncationProfile& P) { return scale_q2(open_tau(N, P), N); }

struct OpenHurwitzKey {
    Partition lambda;
    int m1, m2, d1;
    friend auto operator<=>(const OpenHurwitzKey&, const OpenHurwitzKey&) = default;
};

/// h^o_N(λ, m1, m2, d1) from H^o_N = log τ^o_N − H^c(p, β1+β2, q1q2).
inline std::map<OpenHurwitzKey, Rational> open_hurwitz_table(int N, const TruncationProfile& P) {
    const TruncationProfile T = detail::target_profile(P);
    const SymSeries Ho = series_log(open_tau(N, T)) - series_log(closed_tau_sum(T));
    std::map<OpenHurwitzKey, Rational> table;
    for (const auto& lam : partitions_up_to(std::min(T.max_p_weight, T.max_q2))) {
        for (int d1 = 0; d1 <= T.max_q1; ++d1) {
            if (lam.empty() && d1 == 0) continue;
            const BetaScalar v = Ho.coefficient(lam, d1, lam.weight());
            for (int m1 = 0; m1 <= T.beta_order; ++m1)
                for (int m2 = 0; m1 + m2 <= T.beta_order; ++m2)
                    table[{lam, m1, m2, d1}] = v.coefficient(m1, m2) * factorial(m1) * factorial(m2);
        }
    }
    return table;
}

inline Rational open_hurwitz(const OpenHurwitzKey& q, int N, const TruncationProfile& P) {
    if ((q.lambda.empty() && q.d1 == 0) || q.lambda.weight() > P.max_p_weight || q.lambda.weight() > P.max_q2 ||
        q.d1 > P.max_q1 || q.m1 < 0 || q.m2 < 0 || q.m1 + q.m2 > P.beta_order)
        throw DomainError("open_hurwitz: query outside profile");
    return open_hurwitz_table(N, P).at(q);
}

/// D(z) = Σ_l D_l z^{-l} with
/// D_l = (1 + Σ_{k≥1} e^{β1(l²+l−k²+k)/2}(−1)^k q1^{k+l}/((l+k)(k−1)! l!)) e^{β2(l²−l)/2} q2^l.
inline BdSeries<SymSeries> d_series(const TruncationProfile& P) {
    BdSeries<SymSeries> D;
    const int B = P.beta_order;
    for (int l = 0; l <= P.max_q2; ++l) {
        SymSeries inner = SymSeries::one(P);
        for (int k = 1; k + l <= P.max_q1; ++k) {
            const long num = static_cast<long>(l) * l + l - static_cast<long>(k) * k + k;
            if (num % 2) throw std::logic_error("d_series: odd beta1 exponent");
            SymSeries t = SymSeries::monomial(Partition{}, k + l, 0,
                                              Rational(k % 2 ? -1 : 1) / (Rational(l + k) * factorial(k - 1) * factorial(l)), P);
            t *= BetaScalar::exp_of(Rational(num / 2), BetaSlot::beta1, B);
            inner += t;
        }
        const long num2 = static_cast<long>(l) * l - l;
        SymSeries ql = SymSeries::monomial(Partition{}, 0, l, 1, P);
        ql *= BetaScalar::exp_of(Rational(num2 / 2), BetaSlot::beta2, B);
        SymSeries Dl = inner * ql;
        if (!Dl.is_zero()) D.c.emplace(l, Dl);
    }
    return D;
}

/// τ^o_1 = Coef_{x⁰}[D · τ^c(p − [x⁻¹], β1+β2, e^{−β2} q1 q2) · e^{ξ}].
inline SymSeries open_tau1_via_D(const TruncationProfile& P) {
    TruncationProfile Pi = open_internal_profile(P);
    Pi.min_q2 = 0;
    TruncationProfile Pc = Pi;
    Pc.max_q2 = 0;
    const SymSeries tc = beta1_to_sum(substitute_q1(closed_tau(Pc), 1, -1, Pi));
    const SymSeries out = bd_apply(tc, d_series(Pi), BdDirection::forward);
    detail::assert_q2_is_weight(out, "open_tau1_via_D");
    return out.restricted(detail::target_profile(P));
}

}  // namespace hkp

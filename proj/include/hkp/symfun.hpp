#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "hkp/partition.hpp"
#include "hkp/sym_series.hpp"

namespace hkp {

namespace detail {

// Murnaghan–Nakayama on beta-sets. Removing a border strip of length r is
// replacing some b by b - r when b - r >= 0 is free; the sign counts the
// beta-numbers strictly between.
inline long mn_character(const std::vector<int>& beta, const std::vector<int>& mu, std::size_t pos,
                         std::map<std::pair<std::vector<int>, std::vector<int>>, long>& memo) {
    if (pos == mu.size()) return 1;
    std::vector<int> rest(mu.begin() + static_cast<long>(pos), mu.end());
    auto key = std::make_pair(beta, rest);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const int r = mu[pos];
    long total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        const int target = beta[i] - r;
        if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
        int between = 0;
        for (int b : beta)
            if (b > target && b < beta[i]) ++between;
        std::vector<int> next = beta;
        next[i] = target;
        std::sort(next.begin(), next.end(), std::greater<>());
        const long sub = mn_character(next, mu, pos + 1, memo);
        total += (between % 2 ? -sub : sub);
    }
    memo.emplace(std::move(key), total);
    return total;
}

inline std::vector<int> beta_set(const Partition& lambda) {
    const int l = lambda.length();
    std::vector<int> b(static_cast<std::size_t>(l));
    for (int i = 1; i <= l; ++i) b[static_cast<std::size_t>(i - 1)] = lambda[i] + l - i;
    return b;
}

}  // namespace detail

/// Irreducible character χ^λ(μ) of S_d; zero when the weights differ.
inline long character(const Partition& lambda, const Partition& mu) {
    if (lambda.weight() != mu.weight()) return 0;
    static std::mutex mtx;
    static std::map<std::pair<std::vector<int>, std::vector<int>>, long> memo;
    std::lock_guard<std::mutex> lock(mtx);
    return detail::mn_character(detail::beta_set(lambda), mu.parts(), 0, memo);
}

/// Character table of S_d indexed by partitions_of(d) on both axes.
struct CharTable {
    int d;
    std::vector<Partition> parts;
    std::vector<std::vector<long>> chi;  // chi[λ index][μ index]
    std::vector<Rational> z;             // z_μ
};

inline CharTable char_table(int d) {
    CharTable t{d, partitions_of(d), {}, {}};
    for (const auto& lam : t.parts) {
        std::vector<long> row;
        for (const auto& mu : t.parts) row.push_back(character(lam, mu));
        t.chi.push_back(std::move(row));
    }
    for (const auto& mu : t.parts) t.z.push_back(z_lambda(mu));
    return t;
}

/// Schur function in power sums: s_λ = Σ_μ χ^λ(μ) p_μ / z_μ.
inline SymSeries schur_p(const Partition& lambda, const TruncationProfile& P) {
    if (lambda.weight() > P.max_p_weight)
        throw DomainError("schur_p: weight " + std::to_string(lambda.weight()) + " exceeds profile");
    SymSeries s(P);
    for (const auto& mu : partitions_of(lambda.weight())) {
        const long c = character(lambda, mu);
        if (c != 0) s.add_term({mu, 0, 0}, Rational(c) / z_lambda(mu));
    }
    return s;
}

/// Schur expansion: ⟨f, s_λ⟩ = Σ_μ f_μ χ^λ(μ), keeping the q-exponents of each key.
/// The returned keys carry λ in place of μ.
inline std::map<SeriesKey, BetaScalar> schur_coefficients(const SymSeries& f) {
    std::map<SeriesKey, BetaScalar> out;
    const int B = f.profile().beta_order;
    for (const auto& [k, v] : f.terms()) {
        for (const auto& lam : partitions_of(k.lambda.weight())) {
            const long c = character(lam, k.lambda);
            if (c == 0) continue;
            auto [it, ins] = out.try_emplace(SeriesKey{lam, k.e1, k.e2}, BetaScalar(B));
            it->second.axpy(Rational(c), v);
        }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

/// Inverse of schur_coefficients.
inline SymSeries from_schur(const std::map<SeriesKey, BetaScalar>& coeffs, const TruncationProfile& P) {
    SymSeries s(P);
    for (const auto& [k, v] : coeffs) {
        for (const auto& mu : partitions_of(k.lambda.weight())) {
            const long c = character(k.lambda, mu);
            if (c != 0) s.add_term({mu, k.e1, k.e2}, v * (Rational(c) / z_lambda(mu)));
        }
    }
    return s;
}

/// s_λ(x, …, x) with N equal arguments equals this rational times x^{|λ|}.
inline Rational schur_specialize_equal(const Partition& lambda, int N) {
    if (N < lambda.length()) throw DomainError("schur_specialize_equal: N < l(lambda)");
    Rational r(1);
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j)
            r *= make_rational((lambda[i] + N - i) - (lambda[j] + N - j), j - i);
    return r;
}

/// c_λ = Σ λ_i(λ_i − 2i + 1)/2, the sum of contents.
inline Rational cutjoin_eigenvalue(const Partition& lambda) {
    long c = 0;
    for (int i = 1; i <= lambda.length(); ++i) c += static_cast<long>(lambda[i]) * (lambda[i] - 2 * i + 1);
    return make_rational(c, 2);
}

/// Cut-and-join operator ½Σ((i+j) p_i p_j ∂_{i+j} + ij p_{i+j} ∂_i ∂_j).
inline SymSeries cutjoin_apply(const SymSeries& s) {
    SymSeries r(s.profile());
    for (const auto& [k, v] : s.terms()) {
        const auto& parts = k.lambda.parts();
        std::vector<int> distinct;
        for (int p : parts)
            if (distinct.empty() || distinct.back() != p) distinct.push_back(p);
        // cut: p_n -> p_i p_{n-i}
        for (int n : distinct) {
            const int m = k.lambda.multiplicity(n);
            const Partition rest = remove_part(k.lambda, n);
            for (int i = 1; i < n; ++i) {
                Partition res = merge(rest, Partition::from_unsorted({i, n - i}));
                r.add_term({res, k.e1, k.e2}, v * make_rational(static_cast<long>(n) * m, 2));
            }
        }
        // join: p_i p_j -> p_{i+j}
        for (std::size_t a = 0; a < distinct.size(); ++a) {
            for (std::size_t b = a; b < distinct.size(); ++b) {
                const int i = distinct[a], j = distinct[b];
                const long mi = k.lambda.multiplicity(i), mj = k.lambda.multiplicity(j);
                Rational c = (i == j) ? make_rational(static_cast<long>(i) * i * mi * (mi - 1), 2)
                                      : Rational(static_cast<long>(i) * j * mi * mj);
                if (c == 0) continue;
                Partition res = add_part(remove_part(remove_part(k.lambda, i), j), i + j);
                r.add_term({res, k.e1, k.e2}, v * c);
            }
        }
    }
    return r;
}

inline BetaScalar beta_generator(BetaSlot slot, int order) {
    switch (slot) {
        case BetaSlot::beta1: return BetaScalar::monomial(1, 0, 1, order);
        case BetaSlot::beta2: return BetaScalar::monomial(0, 1, 1, order);
        case BetaSlot::beta_sum:
            return BetaScalar::monomial(1, 0, 1, order) + BetaScalar::monomial(0, 1, 1, order);
    }
    throw std::logic_error("bad beta slot");
}

/// e^{β𝒜} s through the Schur basis, where 𝒜 acts by c_λ on s_λ.
inline SymSeries cutjoin_exp(const SymSeries& s, BetaSlot slot) {
    const int B = s.profile().beta_order;
    auto coeffs = schur_coefficients(s);
    for (auto& [k, v] : coeffs) v = v * BetaScalar::exp_of(cutjoin_eigenvalue(k.lambda), slot, B);
    return from_schur(coeffs, s.profile());
}

/// Σ_k β^k 𝒜^k(s)/k!, iterating the operator.
inline SymSeries cutjoin_exp_iterated(const SymSeries& s, BetaSlot slot) {
    const int B = s.profile().beta_order;
    const BetaScalar beta = beta_generator(slot, B);
    SymSeries result = s, term = s;
    for (int k = 1; k <= B; ++k) {
        term = cutjoin_apply(term);
        term *= beta;
        term *= make_rational(1, k);
        result += term;
    }
    return result;
}

}  // namespace hkp

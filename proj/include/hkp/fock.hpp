#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hkp/partition.hpp"
#include "hkp/sym_series.hpp"
#include "hkp/symfun.hpp"

namespace hkp {

/// z^offset · Σ_j coef[j] z^j. Coefficients are p-free series so that a
/// grading variable attached to z can ride along in the q-exponents.
struct LaurentRow {
    int offset = 0;
    std::map<int, SymSeries> coef;

    static LaurentRow pure(int k, const TruncationProfile& P) {
        LaurentRow r;
        r.offset = k;
        r.coef.emplace(0, SymSeries::one(P));
        return r;
    }

    /// Coefficient of z^exponent.
    SymSeries entry(int exponent, const TruncationProfile& P) const {
        auto it = coef.find(exponent - offset);
        return it == coef.end() ? SymSeries(P) : it->second;
    }

    bool regular(int expected_offset) const {
        if (offset != expected_offset) return false;
        auto it = coef.find(0);
        return it != coef.end() && it->second == SymSeries::one(it->second.profile());
    }

    void set(int j, const SymSeries& c) {
        if (j < 0) throw std::invalid_argument("row coefficient below the offset");
        if (c.is_zero())
            coef.erase(j);
        else
            coef.insert_or_assign(j, c);
    }
};

/// Rows f_1, f_2, … of a level-N wedge: explicit rows first, then a tail
/// generator (pure powers z^{N-i} by default). Tail rows must be regular:
/// leading exponent N-i with coefficient 1.
struct RowSet {
    int level = 0;
    TruncationProfile profile;
    std::vector<LaurentRow> explicit_rows;
    std::function<LaurentRow(int)> tail;

    LaurentRow row(int i) const {
        if (i >= 1 && static_cast<std::size_t>(i) <= explicit_rows.size())
            return explicit_rows[static_cast<std::size_t>(i - 1)];
        if (tail) {
            LaurentRow r = tail(i);
            if (!r.regular(level - i))
                throw DomainError("tail row " + std::to_string(i) + " is not leading-normalized at z^" +
                                  std::to_string(level - i));
            return r;
        }
        return LaurentRow::pure(level - i, profile);
    }

    /// Number of rows that must enter the determinant regardless of λ.
    int irregular_depth() const {
        int L = 0;
        for (std::size_t i = 0; i < explicit_rows.size(); ++i) {
            const int idx = static_cast<int>(i) + 1;
            if (!explicit_rows[i].regular(level - idx))
                L = std::max({L, idx, level - explicit_rows[i].offset});
        }
        return L;
    }
};

/// Σ_λ c_λ v_λ^{[N]} for |λ| ≤ cutoff.
struct WedgeState {
    int level = 0;
    int cutoff = 0;
    TruncationProfile profile;
    std::map<Partition, SymSeries> coeffs;

    static WedgeState basis(const Partition& lambda, int level, int cutoff, const TruncationProfile& P) {
        WedgeState w{level, cutoff, P, {}};
        if (lambda.weight() <= cutoff) w.coeffs.emplace(lambda, SymSeries::one(P));
        return w;
    }
    static WedgeState vacuum(int level, int cutoff, const TruncationProfile& P) {
        return basis(Partition{}, level, cutoff, P);
    }

    SymSeries coefficient(const Partition& lambda) const {
        auto it = coeffs.find(lambda);
        return it == coeffs.end() ? SymSeries(profile) : it->second;
    }

    void add(const Partition& lambda, const SymSeries& c) {
        if (lambda.weight() > cutoff || c.is_zero()) return;
        auto [it, ins] = coeffs.try_emplace(lambda, c);
        if (!ins) {
            it->second += c;
            if (it->second.is_zero()) coeffs.erase(it);
        }
    }

    WedgeState& operator+=(const WedgeState& o) {
        if (level != o.level) throw ProfileMismatch("wedge states at different levels");
        for (const auto& [l, c] : o.coeffs) add(l, c);
        return *this;
    }
    WedgeState operator-() const {
        WedgeState r = *this;
        for (auto& [l, c] : r.coeffs) c = -c;
        return r;
    }
    friend WedgeState operator+(WedgeState a, const WedgeState& b) { return a += b; }
    friend WedgeState operator-(WedgeState a, const WedgeState& b) { return a += -b; }
    bool is_zero() const { return coeffs.empty(); }
    friend bool operator==(const WedgeState& a, const WedgeState& b) {
        return a.level == b.level && a.coeffs == b.coeffs;
    }
};

/// Division-free determinant by expansion over column subsets.
template <typename T>
T determinant(const std::vector<std::vector<T>>& M, const T& zero, const T& one) {
    const std::size_t n = M.size();
    if (n == 0) return one;
    if (n > 20) throw std::invalid_argument("determinant: matrix too large");
    std::vector<std::optional<T>> dp(std::size_t{1} << n);
    dp[0] = one;
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
        if (!dp[mask]) continue;
        const std::size_t r = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (r == n) continue;
        for (std::size_t c = 0; c < n; ++c) {
            if (mask & (std::size_t{1} << c)) continue;
            if (M[r][c].is_zero()) continue;
            int larger = __builtin_popcountll(mask >> (c + 1));
            T term = *dp[mask] * M[r][c];
            if (larger % 2) term = -term;
            auto& slot = dp[mask | (std::size_t{1} << c)];
            if (slot)
                *slot += term;
            else
                slot = term;
        }
    }
    return dp.back() ? *dp.back() : zero;
}

/// Wedge of the rows, expanded in v_λ for |λ| ≤ cutoff. Each coefficient is a
/// finite minor: rows beyond max(l(λ), irregular depth) only contribute a unit
/// lower-triangular block.
inline WedgeState wedge_from_rows(const RowSet& rows, int cutoff) {
    const TruncationProfile& P = rows.profile;
    const int N = rows.level;
    WedgeState w{N, cutoff, P, {}};
    const int base = rows.irregular_depth();
    std::vector<LaurentRow> cache;
    auto get = [&](int i) -> const LaurentRow& {
        while (static_cast<int>(cache.size()) < i) cache.push_back(rows.row(static_cast<int>(cache.size()) + 1));
        return cache[static_cast<std::size_t>(i - 1)];
    };
    for (const auto& lambda : partitions_up_to(cutoff)) {
        const int L = std::max(base, lambda.length());
        std::vector<std::vector<SymSeries>> M(static_cast<std::size_t>(L));
        for (int i = 1; i <= L; ++i) {
            const LaurentRow& r = get(i);
            for (int j = 1; j <= L; ++j) M[static_cast<std::size_t>(i - 1)].push_back(r.entry(lambda[j] - j + N, P));
        }
        w.add(lambda, determinant(M, SymSeries(P), SymSeries::one(P)));
    }
    return w;
}

namespace detail {

inline std::vector<int> exponents(const Partition& lambda, int N, int len) {
    std::vector<int> a(static_cast<std::size_t>(len));
    for (int i = 1; i <= len; ++i) a[static_cast<std::size_t>(i - 1)] = lambda[i] - i + N;
    return a;
}

inline Partition from_exponents(const std::vector<int>& a, int N) {
    std::vector<int> parts;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int v = a[i] + static_cast<int>(i) + 1 - N;
        if (v < 0) throw std::logic_error("exponent sequence below the vacuum");
        parts.push_back(v);
    }
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
    return Partition(std::move(parts));
}

struct BasisImage {
    int sign;
    Partition lambda;
};

inline std::optional<BasisImage> theta_basis(const Partition& lambda, int N, int a) {
    const int L = lambda.length();
    if (a <= N - L - 1) return std::nullopt;
    auto seq = exponents(lambda, N, L);
    if (std::find(seq.begin(), seq.end(), a) != seq.end()) return std::nullopt;
    const auto pos = static_cast<std::size_t>(std::count_if(seq.begin(), seq.end(), [a](int x) { return x > a; }));
    seq.insert(seq.begin() + static_cast<long>(pos), a);
    return BasisImage{pos % 2 ? -1 : 1, from_exponents(seq, N + 1)};
}

inline std::optional<BasisImage> theta_dagger_basis(const Partition& lambda, int N, int a) {
    const int len = std::max(lambda.length(), N - a);
    auto seq = exponents(lambda, N, len);
    auto it = std::find(seq.begin(), seq.end(), a);
    if (it == seq.end()) return std::nullopt;
    const auto j = static_cast<std::size_t>(it - seq.begin());
    seq.erase(it);
    return BasisImage{j % 2 ? -1 : 1, from_exponents(seq, N - 1)};
}

}  // namespace detail

enum class Fermion { theta, theta_dagger };

/// θ_a inserts z^a, θ†_a contracts it; the level moves by ±1.
inline WedgeState fermion_apply(const WedgeState& s, Fermion kind, int a) {
    const int level = kind == Fermion::theta ? s.level + 1 : s.level - 1;
    WedgeState r{level, s.cutoff, s.profile, {}};
    for (const auto& [lambda, c] : s.coeffs) {
        auto img = kind == Fermion::theta ? detail::theta_basis(lambda, s.level, a)
                                          : detail::theta_dagger_basis(lambda, s.level, a);
        if (img) r.add(img->lambda, img->sign > 0 ? c : -c);
    }
    return r;
}

/// α_n by lowering one exponent by n in every slot.
inline WedgeState alpha_apply(const WedgeState& s, int n) {
    if (n == 0) throw std::invalid_argument("alpha_apply: n must be nonzero");
    const int N = s.level;
    WedgeState r{N, s.cutoff, s.profile, {}};
    for (const auto& [lambda, c] : s.coeffs) {
        const int len = lambda.length() + std::abs(n);
        const auto seq = detail::exponents(lambda, N, len);
        for (int j = 0; j < len; ++j) {
            auto next = seq;
            const int v = next[static_cast<std::size_t>(j)] - n;
            if (v <= N - len - 1) continue;
            if (std::find(next.begin(), next.end(), v) != next.end()) continue;
            next[static_cast<std::size_t>(j)] = v;
            int swaps = 0;
            for (int i = 0; i < len; ++i)
                if (i != j && ((i < j && next[static_cast<std::size_t>(i)] < v) ||
                               (i > j && next[static_cast<std::size_t>(i)] > v)))
                    ++swaps;
            std::sort(next.begin(), next.end(), std::greater<>());
            r.add(detail::from_exponents(next, N), swaps % 2 ? -c : c);
        }
    }
    return r;
}

/// α_n = Σ_i θ_i θ†_{i+n}.
inline WedgeState alpha_apply_fermionic(const WedgeState& s, int n) {
    if (n == 0) throw std::invalid_argument("alpha_apply: n must be nonzero");
    const int N = s.level;
    WedgeState r{N, s.cutoff, s.profile, {}};
    for (const auto& [lambda, c] : s.coeffs) {
        const int len = lambda.length() + std::abs(n) + 1;
        for (int b : detail::exponents(lambda, N, len)) {
            auto removed = detail::theta_dagger_basis(lambda, N, b);
            if (!removed) continue;
            auto inserted = detail::theta_basis(removed->lambda, N - 1, b - n);
            if (!inserted) continue;
            r.add(inserted->lambda, removed->sign * inserted->sign > 0 ? c : -c);
        }
    }
    return r;
}

/// Ψ_N(Σ c_λ v_λ) = Σ c_λ s_λ.
inline SymSeries boson_fermion(const WedgeState& s, const TruncationProfile& P) {
    SymSeries out(P);
    for (const auto& [lambda, c] : s.coeffs) {
        if (lambda.weight() > P.max_p_weight) continue;
        out += c.restricted(P) * schur_p(lambda, P);
    }
    return out;
}

/// Ψ_N(u) = ⟨N| e^{Σ t_n α_n} u⟩ = Σ_μ p_μ/z_μ ⟨N| α_μ u⟩.
inline SymSeries boson_fermion_via_alpha(const WedgeState& s, const TruncationProfile& P) {
    SymSeries out(P);
    for (const auto& mu : partitions_up_to(std::min(s.cutoff, P.max_p_weight))) {
        WedgeState cur = s;
        for (int part : mu.parts()) cur = alpha_apply(cur, part);
        SymSeries vac = cur.coefficient(Partition{});
        if (vac.is_zero()) continue;
        out += vac.restricted(P) * SymSeries::monomial(mu, 0, 0, Rational(1) / z_lambda(mu), P);
    }
    return out;
}

/// The row (−q)^k Σ_l q^l z^l/((l+k)(k−1)! l!) that replaces z^{−k} in front of
/// ⋀_{j≥1} z^{−j}e^{qz}; q is carried in the q1 slot.
inline LaurentRow wedge_reduce_exp_row(int k, const TruncationProfile& P, int cutoff) {
    if (k < 1) throw DomainError("wedge_reduce_exp_row: k must be >= 1");
    LaurentRow r;
    r.offset = 0;
    for (int l = 0; l <= cutoff; ++l) {
        Rational c = Rational(k % 2 ? -1 : 1) / (Rational(l + k) * factorial(k - 1) * factorial(l));
        r.set(l, SymSeries::monomial(Partition{}, k + l, 0, c, P));
    }
    return r;
}

/// z^{-i} e^{qz} truncated at z-degree `cutoff`, q in the q1 slot.
inline LaurentRow exp_row(int i, const TruncationProfile& P, int cutoff) {
    LaurentRow r;
    r.offset = -i;
    for (int l = 0; l <= cutoff; ++l)
        r.set(l, SymSeries::monomial(Partition{}, l, 0, Rational(1) / factorial(l), P));
    return r;
}

/// f_{k,j} ↦ e^{β j(j+2(k−N)+1)/2} f_{k,j}: the row-level image of e^{β𝒜}.
inline LaurentRow cutjoin_row(const LaurentRow& row, int N, BetaSlot slot) {
    LaurentRow out;
    out.offset = row.offset;
    for (const auto& [j, c] : row.coef) {
        const long num = static_cast<long>(j) * (j + 2 * (row.offset - N) + 1);
        if (num % 2 != 0) throw std::logic_error("cut-and-join row exponent is not an integer");
        SymSeries cc = c;
        cc *= BetaScalar::exp_of(Rational(num / 2), slot, c.profile().beta_order);
        out.set(j, cc);
    }
    return out;
}

inline RowSet cutjoin_rows(const RowSet& rows, BetaSlot slot) {
    RowSet out{rows.level, rows.profile, {}, {}};
    for (const auto& r : rows.explicit_rows) out.explicit_rows.push_back(cutjoin_row(r, rows.level, slot));
    out.tail = [rows, slot](int i) { return cutjoin_row(rows.row(i), rows.level, slot); };
    return out;
}

/// Rows of the annihilator H^⊥ under (f, g) = res_{z=0} f·g, at level −N,
/// with coefficients up to z-degree `cutoff`. The free coefficients of each
/// row are set to zero, which only changes the rows by a unitriangular move.
inline RowSet ortho_rows(const RowSet& rows, int cutoff) {
    const int N = rows.level;
    if (rows.irregular_depth() > 0) throw DomainError("ortho_rows: degenerate leading minors");
    RowSet out{-N, rows.profile, {}, {}};
    out.tail = [rows, N, cutoff](int i) {
        const TruncationProfile& P = rows.profile;
        const int m = -N - i;
        std::vector<SymSeries> g(static_cast<std::size_t>(cutoff + 1), SymSeries(P));
        g[0] = SymSeries::one(P);
        std::map<int, LaurentRow> cache;
        for (int s = i; s <= cutoff; ++s) {
            const int k = -1 - m - s;
            const int idx = N - k;
            auto it = cache.find(idx);
            if (it == cache.end()) it = cache.emplace(idx, rows.row(idx)).first;
            const LaurentRow& f = it->second;
            SymSeries acc(P);
            for (int a = 1; a <= s; ++a) {
                auto fa = f.coef.find(a);
                if (fa == f.coef.end()) continue;
                acc += fa->second * g[static_cast<std::size_t>(s - a)];
            }
            g[static_cast<std::size_t>(s)] = -acc;
        }
        LaurentRow r;
        r.offset = m;
        for (int s = 0; s <= cutoff; ++s) r.set(s, g[static_cast<std::size_t>(s)]);
        return r;
    };
    return out;
}

}  // namespace hkp

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hkp/fock.hpp"
#include "hkp/laurent.hpp"
#include "hkp/symfun.hpp"
#include "hkp/sym_series.hpp"

namespace hkp {

/// e^{±ξ}, ξ = Σ p_n x^n / n. The coefficient of x^k is Σ_{|λ|=k} (±1)^{l(λ)} p_λ / z_λ.
inline LaurentX exp_xi(int sign, const TruncationProfile& P, int lo, int hi) {
    const int W = P.max_p_weight;
    if (hi < W) throw WindowExhausted("exp_xi needs x^" + std::to_string(W) + " but window top is " + std::to_string(hi));
    LaurentX r(lo, hi, SymSeries(P));
    for (int k = 0; k <= W; ++k) {
        SymSeries h(P);
        for (const auto& lam : partitions_of(k)) {
            Rational c = Rational(1) / z_lambda(lam);
            if (sign < 0 && lam.length() % 2) c = -c;
            h.add_term({lam, 0, 0}, c);
        }
        r.add_term(k, h);
    }
    return r;
}
inline LaurentX exp_xi(int sign, const TruncationProfile& P) { return exp_xi(sign, P, P.x_low, P.x_high); }

template <typename T>
Laurent<T> exp_xi_like(int sign, const T& proto, int lo, int hi) {
    return exp_xi(sign, profile_of(proto), lo, hi).map([&](const SymSeries& c) { return embed_like(c, proto); });
}

/// τ(t ∓ [x⁻¹]) for sign = ∓1.
template <typename T>
Laurent<T> tau_shift(const T& tau, int sign, int lo, int hi) {
    return shift_p_laurent(tau, Rational(sign), lo, hi);
}

enum class WaveKind { wave, adjoint };

/// ψ_N = x^N τ(t−[x⁻¹]) e^{ξ} / τ and ψ†_N = x^{−N} τ(t+[x⁻¹]) e^{−ξ} / τ.
inline LaurentX wave(const SymSeries& tau, int N, WaveKind kind) {
    const auto& P = tau.profile();
    if (!is_unit(tau)) throw DomainError("wave: tau is not a unit");
    const int s = kind == WaveKind::wave ? 1 : -1;
    const SymSeries inv = series_inverse(tau);
    LaurentX psi = tau_shift(tau, -s, P.x_low, P.x_high) * exp_xi(s, P);
    return (psi * inv).shifted_by(s * N);
}

/// One nonzero scalar term located by its Laurent exponents (outermost first)
/// and its series key.
struct Witness {
    std::vector<int> laurent_exponents;
    SeriesKey key;
    BetaScalar value;
};

struct Residual {
    long checked_terms = 0;
    std::vector<Witness> nonzero;
    bool is_zero() const { return nonzero.empty(); }
};

/// Scans the terms of x that truncation leaves exact. With `leading` the
/// number of outer Laurent variables introduced by the check itself, a term is
/// exact when both |λ| − Σ(all exponents) and |λ| − Σ(leading exponents) are at
/// most `max_degree`. Without base Laurent variables the two coincide.
template <typename T>
Residual collect_residual(const T& x, int max_degree, std::size_t leading = 0,
                          std::size_t max_witnesses = 8) {
    Residual r;
    std::vector<int> exps;
    for_each_term(x, exps, [&](const std::vector<int>& e, const SeriesKey& k, const BetaScalar& v) {
        int source = k.lambda.weight(), outer = k.lambda.weight();
        for (std::size_t i = 0; i < e.size(); ++i) {
            source -= e[i];
            if (i < leading) outer -= e[i];
        }
        if (source > max_degree || outer > max_degree) return;
        ++r.checked_terms;
        if (!v.is_zero() && r.nonzero.size() < max_witnesses) r.nonzero.push_back({e, k, v});
    });
    return r;
}

/// Residual of a − b; checked_terms counts the exact terms of a and b that were compared.
template <typename T>
Residual compare_exact(const T& a, const T& b, int max_degree, std::size_t leading = 0) {
    Residual r = collect_residual(a - b, max_degree, leading);
    r.checked_terms = collect_residual(a, max_degree, leading, 0).checked_terms +
                      collect_residual(b, max_degree, leading, 0).checked_terms;
    return r;
}

/// Differential Fay residual
///   (x−z)(τ(t−[x⁻¹]−[z⁻¹])τ − τ(t−[x⁻¹])τ(t−[z⁻¹])) − (∂τ(t−[x⁻¹])·τ(t−[z⁻¹]) − ∂τ(t−[z⁻¹])·τ(t−[x⁻¹]))
/// with ∂ = ∂/∂t₁, as a series in x (outer) and z over T. Only terms that
/// are exact under the p-weight truncation are reported.
template <typename T>
Residual fay_residual(const T& tau, int lo, int hi) {
    using Z = Laurent<T>;
    using XZ = Laurent<Z>;
    if (hi < 1) throw WindowExhausted("fay_residual needs x^1 in the window");
    const Z tz = shift_p_laurent(tau, Rational(-1), lo, hi);
    const XZ txz = shift_p_laurent(tz, Rational(-1), lo, hi);
    const XZ tx = shift_p_laurent(tau, Rational(-1), lo, hi).map([&](const T& c) { return lift(c, lo, hi); });
    const XZ tzL = lift(tz, lo, hi);
    const XZ tL = lift(lift(tau, lo, hi), lo, hi);
    const XZ X = XZ::monomial(1, one_like(tz), lo, hi);
    const XZ Zv = lift(Z::monomial(1, one_like(tau), lo, hi), lo, hi);

    const XZ lhs = (X - Zv) * (txz * tL - tx * tzL);
    const XZ rhs = derive(tx, DiffVar::p(1)) * tzL - derive(tzL, DiffVar::p(1)) * tx;
    return compare_exact(lhs, rhs, max_weight(tau) - 1, 2);
}

template <typename T>
Residual fay_residual(const T& tau) {
    const auto& P = profile_of(tau);
    return fay_residual(tau, P.x_low, P.x_high);
}

/// C(x) = x^offset Σ_{i≥0} c_i x^{−i}.
template <typename T>
struct BdSeries {
    int offset = 0;
    std::map<int, T> c;

    T coefficient(int i, const T& proto) const {
        auto it = c.find(i);
        return it == c.end() ? zero_like(proto) : it->second;
    }
};

enum class BdDirection { forward, backward };

namespace detail {
template <typename T>
Laurent<T> bd_kernel(const T& tau, BdDirection dir) {
    const int W = max_weight(tau);
    const int s = dir == BdDirection::forward ? 1 : -1;
    return tau_shift(tau, -s, -W, W) * exp_xi_like(s, tau, -W, W);
}
}  // namespace detail

/// Forward: Coef_{x⁰}(C(x) τ(t−[x⁻¹]) e^{ξ}); backward: Coef_{x⁰}(C(x) τ(t+[x⁻¹]) e^{−ξ}).
/// With offset > 0 the result is exact up to weight W − offset. For offset 0
/// the eigenfunction condition Φ(0) invertible is the invertibility of c_0.
template <typename T>
T bd_apply(const T& tau, const BdSeries<T>& C, BdDirection dir) {
    auto c0 = C.c.find(0);
    if (C.offset == 0 && (c0 == C.c.end() || !is_unit(c0->second)))
        throw DomainError("bd_apply: c_0 is not invertible");
    const int W = max_weight(tau);
    const Laurent<T> kernel = detail::bd_kernel(tau, dir);
    T out = zero_like(tau);
    for (const auto& [i, ci] : C.c) {
        const int e = i - C.offset;
        if (e < -W || e > W) continue;
        out += ci * kernel.coef(e);
    }
    return out;
}

template <typename T>
struct BdDetection {
    bool success = false;
    BdSeries<T> C;
    Residual residual;
};

/// Solves for C on the t₁-line order by order (pivot τ_a(0)(±1)^n/n!), then
/// checks the full identity at every exact term.
template <typename T>
BdDetection<T> bd_detect(const T& ta, const T& tb, int depth, BdDirection dir) {
    const int W = max_weight(ta);
    const int s = dir == BdDirection::forward ? 1 : -1;
    depth = std::min(depth, W);
    const Laurent<T> kernel = detail::bd_kernel(ta, dir);
    const T ta0 = t1_line_coefficient(ta, 0);
    if (!is_unit(ta0)) throw DomainError("bd_detect: zero pivot");
    const T inv0 = inverse_unit(ta0);

    BdDetection<T> result;
    std::vector<T> M;
    for (int i = 0; i <= depth; ++i) M.push_back(kernel.coef(i));
    for (int n = 0; n <= depth; ++n) {
        T acc = t1_line_coefficient(tb, n);
        for (int i = 0; i < n; ++i) {
            auto it = result.C.c.find(i);
            if (it != result.C.c.end()) acc -= it->second * t1_line_coefficient(M[static_cast<std::size_t>(i)], n);
        }
        Rational scale = factorial(n);
        if (s < 0 && n % 2) scale = -scale;
        const T pivot = t1_line_coefficient(M[static_cast<std::size_t>(n)], n);
        if (!((pivot * scale - ta0).is_zero())) throw std::logic_error("bd_detect: unexpected pivot");
        T cn = acc * inv0 * scale;
        if (!cn.is_zero()) result.C.c.emplace(n, cn);
    }
    if (result.C.c.find(0) == result.C.c.end() || !is_unit(result.C.c.at(0))) {
        result.success = false;
        result.residual = compare_exact(tb, ta, W);
        return result;
    }
    result.residual = compare_exact(bd_apply(ta, result.C, dir), tb, W);
    result.success = result.residual.is_zero();
    return result;
}

/// τ*(t) = τ(−t).
inline SymSeries adjoint_tau(const SymSeries& tau) { return negate_times(tau); }

struct MkpStep {
    std::string label;
    bool pass = false;
    Residual residual;
};

/// Fay on every member and forward detection on every consecutive pair.
template <typename T>
std::vector<MkpStep> mkp_verify(const std::vector<T>& taus, int depth) {
    std::vector<MkpStep> steps;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        auto r = fay_residual(taus[i]);
        steps.push_back({"fay[" + std::to_string(i) + "]", r.is_zero(), r});
    }
    for (std::size_t i = 0; i + 1 < taus.size(); ++i) {
        auto d = bd_detect(taus[i], taus[i + 1], depth, BdDirection::forward);
        steps.push_back({"bd[" + std::to_string(i) + "->" + std::to_string(i + 1) + "]", d.success, d.residual});
    }
    return steps;
}

/// Rational N-soliton parameters: y_i = e^{ξ(t,α_i)} + a_i e^{ξ(t,β_i)}.
struct SolitonParams {
    std::vector<Rational> alpha, beta, a;

    std::size_t size() const { return alpha.size(); }

    /// Jet Wronskian of the y_i at t = 0: entries α_i^r + a_i β_i^r.
    Rational jet_wronskian(std::size_t k) const {
        std::vector<std::vector<SymSeries>> M;
        TruncationProfile P;
        P.max_p_weight = 0;
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<SymSeries> row;
            for (std::size_t r = 0; r < k; ++r)
                row.push_back(SymSeries::constant(rational_pow(alpha[i], static_cast<int>(r)) +
                                                      a[i] * rational_pow(beta[i], static_cast<int>(r)), P));
            M.push_back(std::move(row));
        }
        return determinant(M, SymSeries(P), SymSeries::one(P)).constant_term().constant();
    }

    void validate() const {
        if (alpha.empty() || alpha.size() != beta.size() || alpha.size() != a.size())
            throw DomainError("soliton parameters: alpha, beta, a must be nonempty and of equal length");
        for (std::size_t i = 0; i < size(); ++i)
            if (alpha[i] == beta[i]) throw DomainError("soliton parameters: alpha_" + std::to_string(i + 1) + " equals beta_" + std::to_string(i + 1));
        for (std::size_t k = 1; k <= size(); ++k)
            if (jet_wronskian(k) == 0)
                throw DomainError("soliton parameters: degenerate Wronskian at k=" + std::to_string(k));
    }
};

/// e^{ξ(t,α)} = Σ_λ α^{|λ|} p_λ / z_λ.
inline SymSeries exp_xi_at(const Rational& alpha, const TruncationProfile& P) {
    SymSeries s(P);
    for (const auto& lam : partitions_up_to(P.max_p_weight))
        s.add_term({lam, 0, 0}, rational_pow(alpha, lam.weight()) / z_lambda(lam));
    return s;
}

/// Δ_k = det(∂^r y_i)_{1≤i≤k, 0≤r<k}, Δ_0 = 1.
inline SymSeries soliton_tau(const SolitonParams& params, std::size_t k, const TruncationProfile& P) {
    if (k > params.size()) throw DomainError("soliton_tau: k exceeds the number of solitons");
    std::vector<SymSeries> ea, eb;
    for (std::size_t i = 0; i < k; ++i) {
        ea.push_back(exp_xi_at(params.alpha[i], P));
        eb.push_back(exp_xi_at(params.beta[i], P));
    }
    std::vector<std::vector<SymSeries>> M;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<SymSeries> row;
        for (std::size_t r = 0; r < k; ++r) {
            const int rr = static_cast<int>(r);
            row.push_back(ea[i] * rational_pow(params.alpha[i], rr) +
                          eb[i] * (params.a[i] * rational_pow(params.beta[i], rr)));
        }
        M.push_back(std::move(row));
    }
    return determinant(M, SymSeries(P), SymSeries::one(P));
}

/// γ_k(x) = 1/(1−α_k x⁻¹) + a_k/(1−β_k x⁻¹) with the level factor x^{k−1}.
inline BdSeries<SymSeries> soliton_gamma(const SolitonParams& params, std::size_t k, const TruncationProfile& P) {
    if (k < 1 || k > params.size()) throw DomainError("soliton_gamma: k out of range");
    BdSeries<SymSeries> g;
    g.offset = static_cast<int>(k) - 1;
    const auto& al = params.alpha[k - 1];
    const auto& be = params.beta[k - 1];
    const auto& a = params.a[k - 1];
    for (int i = 0; i <= P.max_p_weight + g.offset; ++i) {
        Rational c = rational_pow(al, i) + a * rational_pow(be, i);
        if (c != 0) g.c.emplace(i, SymSeries::constant(c, P));
    }
    return g;
}

}  // namespace hkp

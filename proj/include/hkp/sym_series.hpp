#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hkp/beta_scalar.hpp"
#include "hkp/partition.hpp"
#include "hkp/profile.hpp"
#include "hkp/rational.hpp"

namespace hkp {

/// Monomial p_λ q1^e1 q2^e2.
struct SeriesKey {
    Partition lambda;
    int e1 = 0;
    int e2 = 0;

    friend std::strong_ordering operator<=>(const SeriesKey& a, const SeriesKey& b) {
        if (auto c = a.lambda <=> b.lambda; c != 0) return c;
        if (auto c = a.e1 <=> b.e1; c != 0) return c;
        return a.e2 <=> b.e2;
    }
    friend bool operator==(const SeriesKey&, const SeriesKey&) = default;

    std::string to_string() const {
        return "p" + lambda.to_string() + "*q1^" + std::to_string(e1) + "*q2^" + std::to_string(e2);
    }
};

/// Variable designator for formal differentiation.
struct DiffVar {
    enum class Kind { p, t, beta1, beta2 } kind;
    int n = 0;
    static DiffVar p(int n) { return {Kind::p, n}; }
    static DiffVar t(int n) { return {Kind::t, n}; }
    static DiffVar beta1() { return {Kind::beta1, 0}; }
    static DiffVar beta2() { return {Kind::beta2, 0}; }
};

/// One summand of p_λ(p + c[u^{-1}]): coefficient · p_rest · u^{-lowering}.
struct ShiftTerm {
    Partition rest;
    int lowering;
    Rational coef;
};

/// Expands p_λ under p_n ↦ p_n + c·u^{-n}.
inline std::vector<ShiftTerm> shift_monomial(const Partition& lambda, const Rational& c) {
    // distinct parts with multiplicities
    std::vector<std::pair<int, int>> mult;
    for (int part : lambda.parts()) {
        if (!mult.empty() && mult.back().first == part)
            ++mult.back().second;
        else
            mult.emplace_back(part, 1);
    }
    std::vector<ShiftTerm> out;
    std::vector<int> chosen(mult.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == mult.size()) {
            Rational coef = 1;
            int lowering = 0, taken = 0;
            std::vector<int> rest;
            for (std::size_t j = 0; j < mult.size(); ++j) {
                coef *= binomial(mult[j].second, chosen[j]);
                lowering += mult[j].first * chosen[j];
                taken += chosen[j];
                rest.insert(rest.end(), static_cast<std::size_t>(mult[j].second - chosen[j]), mult[j].first);
            }
            coef *= rational_pow(c, taken);
            if (coef != 0) out.push_back({Partition(std::move(rest)), lowering, std::move(coef)});
            return;
        }
        for (int k = 0; k <= mult[i].second; ++k) {
            chosen[i] = k;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

/// Truncated series in power sums p_1, p_2, ... and the grading variables
/// q1, q2 with coefficients in the truncated β-ring. Keys exceeding the
/// profile's upper bounds are dropped when created; a q2 exponent below
/// min_q2 is an error.
class SymSeries {
public:
    using Map = std::map<SeriesKey, BetaScalar>;

    SymSeries() = default;
    explicit SymSeries(const TruncationProfile& profile) : profile_(profile) { profile_.validate(); }

    static SymSeries one(const TruncationProfile& profile) {
        return constant(Rational(1), profile);
    }
    static SymSeries constant(const Rational& c, const TruncationProfile& profile) {
        SymSeries s(profile);
        s.add_term({Partition{}, 0, 0}, BetaScalar(c, profile.beta_order));
        return s;
    }
    static SymSeries constant(const BetaScalar& c, const TruncationProfile& profile) {
        SymSeries s(profile);
        s.add_term({Partition{}, 0, 0}, c);
        return s;
    }
    static SymSeries monomial(const Partition& lambda, int e1, int e2, const Rational& c,
                              const TruncationProfile& profile) {
        SymSeries s(profile);
        s.add_term({lambda, e1, e2}, BetaScalar(c, profile.beta_order));
        return s;
    }
    /// The single power sum p_n.
    static SymSeries p(int n, const TruncationProfile& profile) {
        return monomial(Partition{n}, 0, 0, Rational(1), profile);
    }

    const TruncationProfile& profile() const { return profile_; }
    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool admits(const SeriesKey& k) const {
        return k.lambda.weight() <= profile_.max_p_weight && k.e1 >= 0 && k.e1 <= profile_.max_q1 &&
               k.e2 <= profile_.max_q2;
    }

    /// Adds v at key k, dropping keys above the profile. Exponents below the
    /// q2 cutoff raise WindowExhausted.
    void add_term(const SeriesKey& k, const BetaScalar& v) {
        if (k.e2 < profile_.min_q2)
            throw WindowExhausted("q2 exponent " + std::to_string(k.e2) + " below cutoff " +
                                  std::to_string(profile_.min_q2));
        if (!admits(k) || v.is_zero()) return;
        const BetaScalar& vv = v.order() == profile_.beta_order ? v : v.truncated(profile_.beta_order);
        auto [it, inserted] = terms_.try_emplace(k, vv);
        if (!inserted) {
            it->second += vv;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void add_term(const SeriesKey& k, const Rational& c) {
        add_term(k, BetaScalar(c, profile_.beta_order));
    }

    BetaScalar coefficient(const SeriesKey& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? BetaScalar(profile_.beta_order) : it->second;
    }
    BetaScalar coefficient(const Partition& lambda, int e1 = 0, int e2 = 0) const {
        return coefficient(SeriesKey{lambda, e1, e2});
    }
    /// Coefficient of the empty monomial with q1^0 q2^0.
    BetaScalar constant_term() const { return coefficient(SeriesKey{}); }

    /// True when every key has the empty partition (an element of the base ring).
    bool is_p_free() const {
        for (const auto& [k, v] : terms_)
            if (!k.lambda.empty()) return false;
        return true;
    }

    SymSeries& operator+=(const SymSeries& o) {
        check(o);
        for (const auto& [k, v] : o.terms_) add_term(k, v);
        return *this;
    }
    SymSeries& operator-=(const SymSeries& o) {
        check(o);
        for (const auto& [k, v] : o.terms_) add_term(k, -v);
        return *this;
    }
    SymSeries& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, v] : terms_) v *= c;
        return *this;
    }
    SymSeries& operator*=(const BetaScalar& c) {
        Map old;
        old.swap(terms_);
        for (auto& [k, v] : old) add_term(k, v * c);
        return *this;
    }

    friend SymSeries operator+(SymSeries a, const SymSeries& b) { return a += b; }
    friend SymSeries operator-(SymSeries a, const SymSeries& b) { return a -= b; }
    friend SymSeries operator*(SymSeries a, const Rational& c) { return a *= c; }
    friend SymSeries operator*(const Rational& c, SymSeries a) { return a *= c; }
    SymSeries operator-() const { return SymSeries(*this) *= Rational(-1); }

    /// Truncated product.
    friend SymSeries operator*(const SymSeries& a, const SymSeries& b) {
        a.check(b);
        SymSeries r(a.profile_);
        const auto& P = a.profile_;
        for (const auto& [ka, va] : a.terms_) {
            for (const auto& [kb, vb] : b.terms_) {
                const int e1 = ka.e1 + kb.e1;
                const int e2 = ka.e2 + kb.e2;
                if (e1 > P.max_q1 || e2 > P.max_q2) continue;
                if (ka.lambda.weight() + kb.lambda.weight() > P.max_p_weight) continue;
                if (e2 < P.min_q2)
                    throw WindowExhausted("product needs q2 exponent below cutoff");
                SeriesKey k{merge(ka.lambda, kb.lambda), e1, e2};
                r.add_term(k, va * vb);
            }
        }
        return r;
    }
    SymSeries& operator*=(const SymSeries& o) { return *this = *this * o; }

    friend bool operator==(const SymSeries& a, const SymSeries& b) {
        return a.profile_ == b.profile_ && a.terms_ == b.terms_;
    }

    /// Re-truncates into a profile that the current one contains.
    SymSeries restricted(const TruncationProfile& target) const {
        if (target.beta_order > profile_.beta_order || target.max_p_weight > profile_.max_p_weight ||
            target.max_q1 > profile_.max_q1 || target.max_q2 > profile_.max_q2)
            throw ProfileMismatch("restricted: target is not smaller than " + profile_.describe());
        SymSeries r(target);
        for (const auto& [k, v] : terms_) {
            if (k.e2 < target.min_q2) throw WindowExhausted("restricted: q2 exponent below target cutoff");
            r.add_term(k, v.truncated(target.beta_order));
        }
        return r;
    }

    /// Explicit re-embedding into a larger profile.
    SymSeries widened(const TruncationProfile& target) const {
        if (!target.contains(profile_))
            throw ProfileMismatch("widened: target does not contain " + profile_.describe());
        SymSeries r(target);
        for (const auto& [k, v] : terms_) r.terms_.emplace(k, v.widened(target.beta_order));
        return r;
    }

    /// Applies f to every (key, value); f returns the new key or nullopt to drop.
    template <typename F>
    SymSeries map_keys(F&& f, const TruncationProfile& target) const {
        SymSeries r(target);
        for (const auto& [k, v] : terms_) {
            if (auto nk = f(k)) r.add_term(*nk, v);
        }
        return r;
    }

    /// Parts of this series whose key satisfies pred.
    template <typename Pred>
    SymSeries filtered(Pred&& pred) const {
        SymSeries r(profile_);
        for (const auto& [k, v] : terms_)
            if (pred(k)) r.terms_.emplace(k, v);
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [k, v] : terms_) {
            if (!s.empty()) s += "\n";
            s += k.to_string() + " : " + v.to_string();
        }
        return s;
    }
    friend std::ostream& operator<<(std::ostream& os, const SymSeries& s) { return os << s.to_string(); }

private:
    void check(const SymSeries& o) const {
        if (!(profile_ == o.profile_))
            throw ProfileMismatch("series profiles differ: " + profile_.describe() + " vs " +
                                  o.profile_.describe());
    }

    TruncationProfile profile_;
    Map terms_;
};

namespace detail {

/// True when s^k vanishes for large k under the profile.
inline bool is_nilpotent(const SymSeries& s) {
    for (const auto& [k, v] : s.terms()) {
        if (k.lambda.empty() && k.e1 == 0 && k.e2 <= 0 && v.constant() != 0) return false;
    }
    return true;
}

inline int nilpotency_bound(const TruncationProfile& P) {
    return P.max_p_weight + P.max_q1 + P.max_q2 + P.beta_order + 2;
}

}  // namespace detail

/// exp(s) for nilpotent s.
inline SymSeries series_exp(const SymSeries& s) {
    if (!detail::is_nilpotent(s))
        throw DomainError("series_exp: argument has a non-nilpotent constant part");
    const auto& P = s.profile();
    SymSeries result = SymSeries::one(P), power = SymSeries::one(P);
    const int bound = detail::nilpotency_bound(P) + (P.min_q2 < 0 ? P.max_p_weight * -P.min_q2 : 0);
    for (int k = 1;; ++k) {
        power = power * s;
        if (power.is_zero()) break;
        if (k > bound) throw DomainError("series_exp: power series does not terminate");
        power *= make_rational(1, k);
        result += power;
    }
    return result;
}

/// log(s) for s = 1 + nilpotent.
inline SymSeries series_log(const SymSeries& s) {
    const auto& P = s.profile();
    if (s.constant_term().constant() != 1)
        throw DomainError("series_log: constant term is not 1");
    SymSeries u = s - SymSeries::one(P);
    if (!detail::is_nilpotent(u)) throw DomainError("series_log: argument is not 1 + nilpotent");
    SymSeries result(P), power = SymSeries::one(P);
    const int bound = detail::nilpotency_bound(P) + (P.min_q2 < 0 ? P.max_p_weight * -P.min_q2 : 0);
    for (int k = 1;; ++k) {
        power = power * u;
        if (power.is_zero()) break;
        if (k > bound) throw DomainError("series_log: power series does not terminate");
        result += power * Rational((k % 2) ? 1 : -1, k);
    }
    return result;
}

/// Multiplicative inverse of a unit (nonzero rational constant + nilpotent).
inline SymSeries series_inverse(const SymSeries& s) {
    const auto& P = s.profile();
    const Rational c0 = s.constant_term().constant();
    if (c0 == 0) throw DomainError("series_inverse: constant term is not invertible");
    SymSeries u = s * (Rational(1) / c0) - SymSeries::one(P);
    if (!detail::is_nilpotent(u)) throw DomainError("series_inverse: not a unit");
    SymSeries result = SymSeries::one(P), power = SymSeries::one(P);
    const int bound = detail::nilpotency_bound(P) + (P.min_q2 < 0 ? P.max_p_weight * -P.min_q2 : 0);
    for (int k = 1;; ++k) {
        power = power * u * Rational(-1);
        if (power.is_zero()) break;
        if (k > bound) throw DomainError("series_inverse: power series does not terminate");
        result += power;
    }
    return result * (Rational(1) / c0);
}

/// p_n ↦ p_n + c·q2^{-n}.
inline SymSeries shift_p_q2(const SymSeries& s, const Rational& c) {
    SymSeries r(s.profile());
    for (const auto& [k, v] : s.terms()) {
        for (const auto& t : shift_monomial(k.lambda, c)) {
            r.add_term({t.rest, k.e1, k.e2 - t.lowering}, v * t.coef);
        }
    }
    return r;
}

/// Coefficient of u^{-lowering} in s(p + c[u^{-1}]), for building Laurent series.
inline SymSeries shift_component(const SymSeries& s, const Rational& c, int lowering) {
    SymSeries r(s.profile());
    for (const auto& [k, v] : s.terms()) {
        if (k.lambda.weight() < lowering) continue;
        for (const auto& t : shift_monomial(k.lambda, c)) {
            if (t.lowering == lowering) r.add_term({t.rest, k.e1, k.e2}, v * t.coef);
        }
    }
    return r;
}

/// q2 ↦ e^{N·β2} q2.
inline SymSeries scale_q2(const SymSeries& s, int N) {
    if (N == 0) return s;
    SymSeries r(s.profile());
    const int B = s.profile().beta_order;
    for (const auto& [k, v] : s.terms()) {
        r.add_term(k, v * BetaScalar::exp_linear(0, Rational(N * k.e2), B));
    }
    return r;
}

/// q1 ↦ q1 · q2^{q2_power} · e^{beta2_rate·β2}, written into `target`.
inline SymSeries substitute_q1(const SymSeries& s, int q2_power, int beta2_rate,
                               const TruncationProfile& target) {
    if (target.beta_order > s.profile().beta_order)
        throw ProfileMismatch("substitute_q1: target beta order exceeds source");
    SymSeries r(target);
    for (const auto& [k, v] : s.terms()) {
        SeriesKey nk{k.lambda, k.e1, k.e2 + q2_power * k.e1};
        if (!r.admits(nk)) continue;
        BetaScalar nv = v.truncated(target.beta_order);
        if (beta2_rate != 0) nv = nv * BetaScalar::exp_linear(0, Rational(beta2_rate * k.e1), target.beta_order);
        r.add_term(nk, nv);
    }
    return r;
}

/// β1 ↦ β1 + β2 on every coefficient.
inline SymSeries beta1_to_sum(const SymSeries& s) {
    SymSeries r(s.profile());
    for (const auto& [k, v] : s.terms()) r.add_term(k, v.beta1_to_sum());
    return r;
}

/// Formal partial derivative.
inline SymSeries derive(const SymSeries& s, DiffVar var) {
    SymSeries r(s.profile());
    switch (var.kind) {
        case DiffVar::Kind::p:
        case DiffVar::Kind::t: {
            const int n = var.n;
            if (n < 1) throw std::invalid_argument("derive: time index must be >= 1");
            const Rational factor = var.kind == DiffVar::Kind::t ? Rational(n) : Rational(1);
            for (const auto& [k, v] : s.terms()) {
                const int m = k.lambda.multiplicity(n);
                if (m == 0) continue;
                r.add_term({remove_part(k.lambda, n), k.e1, k.e2}, v * (factor * m));
            }
            break;
        }
        case DiffVar::Kind::beta1:
        case DiffVar::Kind::beta2: {
            const BetaSlot slot = var.kind == DiffVar::Kind::beta1 ? BetaSlot::beta1 : BetaSlot::beta2;
            for (const auto& [k, v] : s.terms()) r.add_term(k, v.derivative(slot));
            break;
        }
    }
    return r;
}

/// τ(t) ↦ τ(-t): the p_λ coefficient picks up (-1)^{l(λ)}.
inline SymSeries negate_times(const SymSeries& s) {
    SymSeries r(s.profile());
    for (const auto& [k, v] : s.terms()) r.add_term(k, (k.lambda.length() % 2) ? -v : v);
    return r;
}

/// Homogeneous component of p-weight w.
inline SymSeries weight_component(const SymSeries& s, int w) {
    return s.filtered([w](const SeriesKey& k) { return k.lambda.weight() == w; });
}

/// Restriction to the t1-line: p_n = 0 for n ≥ 2.
inline SymSeries restrict_to_t1_line(const SymSeries& s) {
    return s.filtered([](const SeriesKey& k) {
        return k.lambda.empty() || k.lambda.parts().front() == 1;
    });
}

}  // namespace hkp

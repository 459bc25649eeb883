#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hkp/profile.hpp"
#include "hkp/rational.hpp"
#include "hkp/sym_series.hpp"

namespace hkp {

inline SymSeries zero_like(const SymSeries& s) { return SymSeries(s.profile()); }

/// Laurent series in one extra variable u, bounded above by `hi` and truncated
/// below at `lo`, with coefficients in C (a SymSeries or another Laurent).
///
/// Terms above `hi` are an error. Terms below `lo` are dropped; once that has
/// happened, products lose exactness at low exponents, which is tracked by an
/// exactness watermark: coefficients below it cannot be read.
template <typename C>
class Laurent {
public:
    Laurent(int lo, int hi, C zero) : lo_(lo), hi_(hi), zero_(std::move(zero)) {
        if (lo > 0 || hi < 0) throw std::invalid_argument("Laurent window must contain 0");
        if (!zero_.is_zero()) throw std::invalid_argument("Laurent prototype must be zero");
    }

    static Laurent constant(const C& c, int lo, int hi) {
        Laurent l(lo, hi, zero_like(c));
        l.add_term(0, c);
        return l;
    }
    static Laurent monomial(int k, const C& c, int lo, int hi) {
        Laurent l(lo, hi, zero_like(c));
        l.add_term(k, c);
        return l;
    }

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    const C& zero() const { return zero_; }
    const std::map<int, C>& rows() const { return rows_; }
    /// Lowest exponent whose coefficient is exact; nullopt when nothing was lost.
    std::optional<int> exact_from() const { return exact_from_; }
    bool is_zero() const { return rows_.empty(); }

    int top() const { return rows_.empty() ? lo_ : rows_.rbegin()->first; }

    void add_term(int k, const C& c) {
        if (c.is_zero()) return;
        if (k > hi_)
            throw WindowExhausted("Laurent exponent " + std::to_string(k) + " above window top " +
                                  std::to_string(hi_));
        if (k < lo_) {
            raise_watermark(lo_);
            return;
        }
        auto [it, inserted] = rows_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) rows_.erase(it);
        }
    }

    /// Coefficient of u^k; exponents outside the window or below the exactness
    /// watermark signal an under-provisioned window.
    C coef(int k) const {
        if (k < lo_ || k > hi_)
            throw WindowExhausted("coefficient u^" + std::to_string(k) + " outside window [" +
                                  std::to_string(lo_) + "," + std::to_string(hi_) + "]");
        if (exact_from_ && k < *exact_from_)
            throw WindowExhausted("coefficient u^" + std::to_string(k) +
                                  " below exactness watermark " + std::to_string(*exact_from_));
        auto it = rows_.find(k);
        return it == rows_.end() ? zero_ : it->second;
    }

    Laurent& operator+=(const Laurent& o) {
        check(o);
        for (const auto& [k, c] : o.rows_) add_term(k, c);
        merge_watermark(o.exact_from_);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) {
        check(o);
        for (const auto& [k, c] : o.rows_) add_term(k, -c);
        merge_watermark(o.exact_from_);
        return *this;
    }
    Laurent operator-() const {
        Laurent r(lo_, hi_, zero_);
        for (const auto& [k, c] : rows_) r.rows_.emplace(k, -c);
        r.exact_from_ = exact_from_;
        return r;
    }
    Laurent& operator*=(const Rational& a) {
        if (a == 0) {
            rows_.clear();
            return *this;
        }
        for (auto& [k, c] : rows_) c *= a;
        return *this;
    }
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(Laurent a, const Rational& c) { return a *= c; }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        a.check(b);
        Laurent r(a.lo_, a.hi_, a.zero_);
        for (const auto& [i, ca] : a.rows_) {
            for (const auto& [j, cb] : b.rows_) {
                if (i + j < r.lo_) {
                    r.raise_watermark(r.lo_);
                    continue;
                }
                r.add_term(i + j, ca * cb);
            }
        }
        if (a.exact_from_) r.raise_watermark(*a.exact_from_ + b.top_bound());
        if (b.exact_from_) r.raise_watermark(*b.exact_from_ + a.top_bound());
        return r;
    }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    /// Coefficientwise product with an element of C.
    friend Laurent operator*(const Laurent& a, const C& c) {
        Laurent r(a.lo_, a.hi_, a.zero_);
        for (const auto& [k, ck] : a.rows_) r.add_term(k, ck * c);
        r.exact_from_ = a.exact_from_;
        return r;
    }

    /// Multiplies by u^s.
    Laurent shifted_by(int s) const {
        Laurent r(lo_, hi_, zero_);
        for (const auto& [k, c] : rows_) r.add_term(k + s, c);
        if (exact_from_) r.raise_watermark(*exact_from_ + s);
        if (r.exact_from_ && r.exact_from_ < r.lo_) r.exact_from_ = r.lo_;
        return r;
    }

    /// Applies a linear map to every coefficient.
    template <typename F>
    auto map(F&& f) const -> Laurent<std::decay_t<decltype(f(std::declval<const C&>()))>> {
        using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
        Laurent<D> r(lo_, hi_, f(zero_));
        for (const auto& [k, c] : rows_) r.add_term(k, f(c));
        if (exact_from_) r.force_watermark(*exact_from_);
        return r;
    }

    friend bool operator==(const Laurent& a, const Laurent& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.rows_ == b.rows_;
    }

    void force_watermark(int w) { raise_watermark(w); }

private:
    int top_bound() const { return rows_.empty() ? lo_ : rows_.rbegin()->first; }
    void raise_watermark(int w) {
        w = std::max(w, lo_);
        if (!exact_from_ || *exact_from_ < w) exact_from_ = w;
    }
    void merge_watermark(const std::optional<int>& w) {
        if (w) raise_watermark(*w);
    }
    void check(const Laurent& o) const {
        if (lo_ != o.lo_ || hi_ != o.hi_) throw ProfileMismatch("Laurent windows differ");
    }

    int lo_;
    int hi_;
    C zero_;
    std::map<int, C> rows_;
    std::optional<int> exact_from_;
};

template <typename C>
Laurent<C> zero_like(const Laurent<C>& l) {
    return Laurent<C>(l.lo(), l.hi(), l.zero());
}

using LaurentX = Laurent<SymSeries>;

/// Largest p-weight a coefficient can carry.
inline int max_weight(const SymSeries& s) { return s.profile().max_p_weight; }
template <typename C>
int max_weight(const Laurent<C>& l) {
    return max_weight(l.zero());
}

/// Coefficient of u^{-lowering} in x(p + c[u^{-1}]) for nested coefficients.
template <typename C>
Laurent<C> shift_component(const Laurent<C>& l, const Rational& c, int lowering) {
    return l.map([&](const C& x) { return shift_component(x, c, lowering); });
}

/// T(p) ↦ T(p + c[u^{-1}]) as a Laurent series in a new outermost variable u.
/// Needing an exponent below the window is an error.
template <typename T>
Laurent<T> shift_p_laurent(const T& s, const Rational& c, int lo, int hi) {
    Laurent<T> r(lo, hi, zero_like(s));
    const int W = max_weight(s);
    for (int k = 0; k <= W; ++k) {
        T comp = shift_component(s, c, k);
        if (comp.is_zero()) continue;
        if (-k < lo)
            throw WindowExhausted("shift needs u^" + std::to_string(-k) + " below window bottom " +
                                  std::to_string(lo));
        r.add_term(-k, comp);
    }
    return r;
}

/// shift_p with u = x and the window taken from the profile.
inline LaurentX shift_p_x(const SymSeries& s, const Rational& c) {
    return shift_p_laurent(s, c, s.profile().x_low, s.profile().x_high);
}

template <typename C>
Laurent<C> derive(const Laurent<C>& l, DiffVar var) {
    return l.map([&](const C& x) { return derive(x, var); });
}

/// Coefficient of x^0.
template <typename C>
C coef_x0(const Laurent<C>& l) {
    return l.coef(0);
}
template <typename C>
C coef_x(const Laurent<C>& l, int k) {
    return l.coef(k);
}

/// Constant embedding of T as the u^0 coefficient.
template <typename T>
Laurent<T> lift(const T& t, int lo, int hi) {
    return Laurent<T>::constant(t, lo, hi);
}

inline SymSeries one_like(const SymSeries& s) { return SymSeries::one(s.profile()); }
template <typename C>
Laurent<C> one_like(const Laurent<C>& l) {
    return Laurent<C>::constant(one_like(l.zero()), l.lo(), l.hi());
}

/// exp(u) for nilpotent u.
template <typename C>
Laurent<C> laurent_exp(const Laurent<C>& u, int max_terms) {
    Laurent<C> one = Laurent<C>::constant(one_like(u.zero()), u.lo(), u.hi());
    Laurent<C> result = one, power = one;
    for (int k = 1;; ++k) {
        power = power * u;
        if (power.is_zero()) break;
        if (k > max_terms) throw DomainError("laurent_exp: argument is not nilpotent");
        power *= make_rational(1, k);
        result += power;
    }
    return result;
}

/// Visits every scalar term: f(outer exponents, key, value). Outer exponents
/// are listed outermost first.
inline void for_each_term(const SymSeries& s, std::vector<int>& exps,
                          const std::function<void(const std::vector<int>&, const SeriesKey&,
                                                   const BetaScalar&)>& f) {
    for (const auto& [k, v] : s.terms()) f(exps, k, v);
}
template <typename C>
void for_each_term(const Laurent<C>& l, std::vector<int>& exps,
                   const std::function<void(const std::vector<int>&, const SeriesKey&,
                                            const BetaScalar&)>& f) {
    for (const auto& [k, c] : l.rows()) {
        if (l.exact_from() && k < *l.exact_from()) continue;
        exps.push_back(k);
        for_each_term(c, exps, f);
        exps.pop_back();
    }
}

/// The series s viewed as a constant of the same shape as proto.
inline SymSeries embed_like(const SymSeries& s, const SymSeries&) { return s; }
template <typename C>
Laurent<C> embed_like(const SymSeries& s, const Laurent<C>& proto) {
    return Laurent<C>::constant(embed_like(s, proto.zero()), proto.lo(), proto.hi());
}

inline const TruncationProfile& profile_of(const SymSeries& s) { return s.profile(); }
template <typename C>
const TruncationProfile& profile_of(const Laurent<C>& l) {
    return profile_of(l.zero());
}

/// Coefficient of p_1^n, as a p-free element.
inline SymSeries t1_line_coefficient(const SymSeries& s, int n) {
    SymSeries r(s.profile());
    for (const auto& [k, v] : s.terms()) {
        if (k.lambda.weight() != n || k.lambda.length() != n) continue;
        r.add_term({Partition{}, k.e1, k.e2}, v);
    }
    return r;
}
template <typename C>
Laurent<C> t1_line_coefficient(const Laurent<C>& l, int n) {
    return l.map([n](const C& c) { return t1_line_coefficient(c, n); });
}

template <typename C>
Laurent<C> negate_times(const Laurent<C>& l) {
    return l.map([](const C& c) { return negate_times(c); });
}

/// Units: a rational constant plus nilpotents, or a Laurent series whose top
/// coefficient is a unit.
inline bool is_unit(const SymSeries& s) { return s.constant_term().constant() != 0; }
template <typename C>
bool is_unit(const Laurent<C>& l) {
    return !l.is_zero() && is_unit(l.rows().rbegin()->second);
}

/// Inverse of an element that sits in Laurent degree 0 at every level.
inline SymSeries inverse_unit(const SymSeries& s) { return series_inverse(s); }
template <typename C>
Laurent<C> inverse_unit(const Laurent<C>& l) {
    if (l.rows().size() != 1 || l.rows().begin()->first != 0)
        throw DomainError("inverse_unit: only degree-zero Laurent elements are inverted");
    return Laurent<C>::constant(inverse_unit(l.rows().begin()->second), l.lo(), l.hi());
}

}  // namespace hkp

#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hkp/profile.hpp"
#include "hkp/rational.hpp"

namespace hkp {

/// Which β-parameter an operation refers to.
enum class BetaSlot { beta1, beta2, beta_sum };

/// Exact polynomial in β1, β2 truncated at joint degree `order`.
/// Terms are kept sorted by (m1, m2) with no zero coefficients stored.
class BetaScalar {
public:
    struct Term {
        int m1;
        int m2;
        Rational c;
        friend bool operator==(const Term&, const Term&) = default;
    };

    BetaScalar() = default;
    explicit BetaScalar(int order) : order_(order) {
        if (order < 0) throw std::invalid_argument("beta order must be nonnegative");
    }
    BetaScalar(const Rational& c, int order) : BetaScalar(order) {
        if (c != 0) terms_.push_back({0, 0, c});
    }

    static BetaScalar monomial(int m1, int m2, const Rational& c, int order) {
        BetaScalar b(order);
        if (m1 < 0 || m2 < 0) throw std::invalid_argument("negative beta exponent");
        if (m1 + m2 <= order && c != 0) b.terms_.push_back({m1, m2, c});
        return b;
    }

    /// exp(c1·β1 + c2·β2) truncated at `order`.
    static BetaScalar exp_linear(const Rational& c1, const Rational& c2, int order) {
        BetaScalar b(order);
        // (c1 β1)^a/a! · (c2 β2)^b/b!
        for (int a = 0; a <= order; ++a) {
            for (int k = 0; a + k <= order; ++k) {
                Rational v = rational_pow(c1, a) * rational_pow(c2, k) / (factorial(a) * factorial(k));
                if (v != 0) b.terms_.push_back({a, k, v});
            }
        }
        return b;
    }

    /// exp(c·β) for β one of β1, β2, β1+β2.
    static BetaScalar exp_of(const Rational& c, BetaSlot slot, int order) {
        switch (slot) {
            case BetaSlot::beta1: return exp_linear(c, 0, order);
            case BetaSlot::beta2: return exp_linear(0, c, order);
            case BetaSlot::beta_sum: return exp_linear(c, c, order);
        }
        throw std::logic_error("bad beta slot");
    }

    int order() const { return order_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(int m1, int m2) const {
        for (const auto& t : terms_)
            if (t.m1 == m1 && t.m2 == m2) return t.c;
        return 0;
    }
    Rational constant() const { return coefficient(0, 0); }

    /// True when the only stored term is β^0.
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].m1 == 0 && terms_[0].m2 == 0);
    }

    BetaScalar& operator+=(const BetaScalar& o) { return axpy(Rational(1), o); }
    BetaScalar& operator-=(const BetaScalar& o) { return axpy(Rational(-1), o); }

    /// this += a·o
    BetaScalar& axpy(const Rational& a, const BetaScalar& o) {
        check(o);
        if (a == 0 || o.terms_.empty()) return *this;
        std::vector<Term> out;
        out.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size() ||
                (i < terms_.size() && key(terms_[i]) < key(o.terms_[j]))) {
                out.push_back(std::move(terms_[i++]));
            } else if (i == terms_.size() || key(o.terms_[j]) < key(terms_[i])) {
                out.push_back({o.terms_[j].m1, o.terms_[j].m2, a * o.terms_[j].c});
                ++j;
            } else {
                Rational v = terms_[i].c + a * o.terms_[j].c;
                if (v != 0) out.push_back({terms_[i].m1, terms_[i].m2, std::move(v)});
                ++i;
                ++j;
            }
        }
        terms_ = std::move(out);
        return *this;
    }

    BetaScalar& operator*=(const Rational& a) {
        if (a == 0) {
            terms_.clear();
        } else {
            for (auto& t : terms_) t.c *= a;
        }
        return *this;
    }

    friend BetaScalar operator*(const BetaScalar& a, const BetaScalar& b) {
        a.check(b);
        BetaScalar r(a.order_);
        if (a.terms_.empty() || b.terms_.empty()) return r;
        if (a.is_constant()) return BetaScalar(b) *= a.terms_[0].c;
        if (b.is_constant()) return BetaScalar(a) *= b.terms_[0].c;
        const int n = a.order_ + 1;
        std::vector<Rational> dense(static_cast<std::size_t>(n * n));
        std::vector<char> used(static_cast<std::size_t>(n * n), 0);
        for (const auto& x : a.terms_) {
            for (const auto& y : b.terms_) {
                const int m1 = x.m1 + y.m1, m2 = x.m2 + y.m2;
                if (m1 + m2 > a.order_) continue;
                auto idx = static_cast<std::size_t>(m1 * n + m2);
                dense[idx] += x.c * y.c;
                used[idx] = 1;
            }
        }
        for (int m1 = 0; m1 < n; ++m1)
            for (int m2 = 0; m1 + m2 < n; ++m2) {
                auto idx = static_cast<std::size_t>(m1 * n + m2);
                if (used[idx] && dense[idx] != 0) r.terms_.push_back({m1, m2, std::move(dense[idx])});
            }
        return r;
    }

    BetaScalar& operator*=(const BetaScalar& o) { return *this = *this * o; }

    friend BetaScalar operator+(BetaScalar a, const BetaScalar& b) { return a += b; }
    friend BetaScalar operator-(BetaScalar a, const BetaScalar& b) { return a -= b; }
    friend BetaScalar operator*(BetaScalar a, const Rational& c) { return a *= c; }
    friend BetaScalar operator*(const Rational& c, BetaScalar a) { return a *= c; }
    BetaScalar operator-() const { return BetaScalar(*this) *= Rational(-1); }

    friend bool operator==(const BetaScalar& a, const BetaScalar& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    /// Multiplicative inverse; requires a nonzero β^0 coefficient.
    BetaScalar inverse() const {
        const Rational c0 = constant();
        if (c0 == 0) throw DomainError("BetaScalar is not invertible");
        BetaScalar u = *this;
        u *= Rational(1) / c0;
        u -= BetaScalar(Rational(1), order_);  // nilpotent part
        BetaScalar result(Rational(1), order_), power(Rational(1), order_);
        for (int k = 1; k <= order_; ++k) {
            power = power * u;
            power *= Rational(-1);
            result += power;
        }
        return result *= Rational(1) / c0;
    }

    /// ∂/∂β1 or ∂/∂β2 (slot beta_sum is rejected).
    BetaScalar derivative(BetaSlot slot) const {
        if (slot == BetaSlot::beta_sum) throw std::invalid_argument("derivative needs a single beta");
        BetaScalar r(order_);
        for (const auto& t : terms_) {
            const int e = slot == BetaSlot::beta1 ? t.m1 : t.m2;
            if (e == 0) continue;
            if (slot == BetaSlot::beta1)
                r.terms_.push_back({t.m1 - 1, t.m2, t.c * e});
            else
                r.terms_.push_back({t.m1, t.m2 - 1, t.c * e});
        }
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term& x, const Term& y) { return key(x) < key(y); });
        return r;
    }

    /// Substitutes β1 ↦ β1 + β2 (a polynomial in β1 alone becomes one in β1+β2).
    BetaScalar beta1_to_sum() const {
        BetaScalar r(order_);
        for (const auto& t : terms_) {
            for (int k = 0; k <= t.m1; ++k) {
                if (t.m1 + t.m2 > order_) continue;
                r += monomial(t.m1 - k, t.m2 + k, t.c * binomial(t.m1, k), order_);
            }
        }
        return r;
    }

    /// Re-truncates at a smaller order.
    BetaScalar truncated(int order) const {
        if (order > order_) throw ProfileMismatch("BetaScalar cannot be widened implicitly");
        BetaScalar r(order);
        for (const auto& t : terms_)
            if (t.m1 + t.m2 <= order) r.terms_.push_back(t);
        return r;
    }

    /// Explicit re-embedding at a larger order (values unchanged).
    BetaScalar widened(int order) const {
        if (order < order_) throw ProfileMismatch("widened: target order is smaller");
        BetaScalar r = *this;
        r.order_ = order;
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& t : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + hkp::to_string(t.c) + ")";
            if (t.m1) s += "*b1^" + std::to_string(t.m1);
            if (t.m2) s += "*b2^" + std::to_string(t.m2);
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const BetaScalar& b) { return os << b.to_string(); }

private:
    static std::pair<int, int> key(const Term& t) { return {t.m1, t.m2}; }
    void check(const BetaScalar& o) const {
        if (order_ != o.order_) throw ProfileMismatch("BetaScalar order mismatch");
    }

    int order_ = 0;
    std::vector<Term> terms_;
};

}  // namespace hkp

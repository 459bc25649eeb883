#pragma once

#include <algorithm>
#include <compare>
#include <stdexcept>
#include <string>

namespace hkp {

/// Two series were combined under different truncation profiles.
struct ProfileMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

/// A computation needed an exponent outside a configured window or cutoff.
struct WindowExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An argument is outside the domain of an operation (non-unit log argument,
/// degenerate parameters, zero pivot, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Truncation of the formal variables p, q1, q2, β1, β2 and the window of the
/// Laurent variable x.
struct TruncationProfile {
    int max_p_weight = 4;
    int max_q1 = 4;
    int max_q2 = 0;
    int min_q2 = 0;
    int beta_order = 3;
    int x_low = -6;
    int x_high = 6;

    void validate() const {
        if (max_p_weight < 0 || max_q1 < 0 || max_q2 < 0 || beta_order < 0)
            throw std::invalid_argument("truncation bounds must be nonnegative");
        if (min_q2 > 0) throw std::invalid_argument("min_q2 must be <= 0");
        if (x_low > 0 || x_high < 0) throw std::invalid_argument("x window must contain 0");
    }

    bool contains(const TruncationProfile& o) const {
        return max_p_weight >= o.max_p_weight && max_q1 >= o.max_q1 && max_q2 >= o.max_q2 &&
               min_q2 <= o.min_q2 && beta_order >= o.beta_order && x_low <= o.x_low &&
               x_high >= o.x_high;
    }

    friend bool operator==(const TruncationProfile&, const TruncationProfile&) = default;

    std::string describe() const {
        return "weight<=" + std::to_string(max_p_weight) + " q1<=" + std::to_string(max_q1) +
               " q2 in [" + std::to_string(min_q2) + "," + std::to_string(max_q2) +
               "] beta<=" + std::to_string(beta_order) + " x in [" + std::to_string(x_low) + "," +
               std::to_string(x_high) + "]";
    }
};

/// Componentwise maximum of two profiles; the only way to obtain a wider
/// profile is to ask for one.
inline TruncationProfile widen(const TruncationProfile& a, const TruncationProfile& b) {
    return {std::max(a.max_p_weight, b.max_p_weight), std::max(a.max_q1, b.max_q1),
            std::max(a.max_q2, b.max_q2),             std::min(a.min_q2, b.min_q2),
            std::max(a.beta_order, b.beta_order),     std::min(a.x_low, b.x_low),
            std::max(a.x_high, b.x_high)};
}

}  // namespace hkp

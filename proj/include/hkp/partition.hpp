#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hkp/rational.hpp"

namespace hkp {

/// Weakly decreasing sequence of positive integers. The empty partition is the
/// unique partition of 0.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw std::invalid_argument("partition parts must be weakly decreasing");
        }
        weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
    }

    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    /// Sorts and drops zeros; for building partitions from unordered data.
    static Partition from_unsorted(std::vector<int> parts) {
        std::erase(parts, 0);
        std::sort(parts.begin(), parts.end(), std::greater<>());
        return Partition(std::move(parts));
    }

    const std::vector<int>& parts() const { return parts_; }
    int weight() const { return weight_; }
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }

    /// λ_i with 1-based index, zero past the end.
    int operator[](int i) const {
        return (i >= 1 && i <= length()) ? parts_[static_cast<std::size_t>(i - 1)] : 0;
    }

    /// Number of parts equal to n.
    int multiplicity(int n) const {
        return static_cast<int>(std::count(parts_.begin(), parts_.end(), n));
    }

    /// Canonical order: by weight, then lexicographically descending on the parts,
    /// so (3) < (2,1) < (1,1,1).
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
        if (a.weight_ != b.weight_) return a.weight_ <=> b.weight_;
        auto lex = std::lexicographical_compare_three_way(a.parts_.begin(), a.parts_.end(),
                                                          b.parts_.begin(), b.parts_.end());
        return 0 <=> lex;
    }
    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }

    std::string to_string(char sep = ',') const {
        std::string s;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += sep;
            s += std::to_string(parts_[i]);
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Partition& p) {
        return os << '(' << p.to_string() << ')';
    }

private:
    std::vector<int> parts_;
    int weight_ = 0;
};

/// Multiset union: p_λ · p_μ = p_{λ∪μ}.
inline Partition merge(const Partition& a, const Partition& b) {
    std::vector<int> out;
    out.reserve(a.parts().size() + b.parts().size());
    std::merge(a.parts().begin(), a.parts().end(), b.parts().begin(), b.parts().end(),
               std::back_inserter(out), std::greater<>());
    return Partition(std::move(out));
}

/// Removes one part equal to n; the caller guarantees it exists.
inline Partition remove_part(const Partition& a, int n) {
    std::vector<int> out = a.parts();
    auto it = std::find(out.begin(), out.end(), n);
    if (it == out.end()) throw std::logic_error("remove_part: part not present");
    out.erase(it);
    return Partition(std::move(out));
}

inline Partition add_part(const Partition& a, int n) { return merge(a, Partition{n}); }

/// Centralizer order z_λ = ∏ n^{m_n} m_n!.
inline Rational z_lambda(const Partition& lambda) {
    Rational z = 1;
    const auto& parts = lambda.parts();
    std::size_t i = 0;
    while (i < parts.size()) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        const int m = static_cast<int>(j - i);
        z *= rational_pow(Rational(parts[i]), m) * factorial(m);
        i = j;
    }
    return z;
}

namespace detail {
inline void partitions_rec(int remaining, int max_part, std::vector<int>& cur,
                           std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int k = std::min(remaining, max_part); k >= 1; --k) {
        cur.push_back(k);
        partitions_rec(remaining - k, k, cur, out);
        cur.pop_back();
    }
}
}  // namespace detail

/// All partitions of n in canonical order. Results are cached per n.
inline const std::vector<Partition>& partitions_of(int n) {
    if (n < 0) throw std::invalid_argument("partitions_of: negative weight");
    static std::mutex mu;
    static std::map<int, std::vector<Partition>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Partition> out;
    std::vector<int> cur;
    detail::partitions_rec(n, n, cur, out);
    return cache.emplace(n, std::move(out)).first->second;
}

/// All partitions with weight ≤ n, canonical order.
inline std::vector<Partition> partitions_up_to(int n) {
    std::vector<Partition> out;
    for (int w = 0; w <= n; ++w) {
        const auto& ps = partitions_of(w);
        out.insert(out.end(), ps.begin(), ps.end());
    }
    return out;
}

}  // namespace hkp

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hkp/kp.hpp"
#include "hkp/series_json.hpp"

namespace hkp {

/// Outcome of one named verification.
struct CheckResult {
    std::string check;
    TruncationProfile profile;
    bool pass = false;
    long checked_terms = -1;  // -1 when the check is not a term scan
    std::optional<nlohmann::ordered_json> witness;
};

inline nlohmann::ordered_json witness_json(const Witness& w) {
    nlohmann::ordered_json j;
    j["laurent_exponents"] = w.laurent_exponents;
    j["key"] = key_json(w.key);
    j["value"] = beta_json(w.value);
    return j;
}

inline CheckResult from_residual(std::string name, const TruncationProfile& P, const Residual& r) {
    CheckResult c{std::move(name), P, r.is_zero(), r.checked_terms, std::nullopt};
    if (!r.is_zero()) c.witness = witness_json(r.nonzero.front());
    return c;
}

/// Exact equality of two series; the witness is the first key where they differ.
inline CheckResult from_equality(std::string name, const SymSeries& a, const SymSeries& b) {
    CheckResult c{std::move(name), a.profile(), a == b, static_cast<long>(a.terms().size() + b.terms().size()),
                  std::nullopt};
    if (!c.pass) {
        if (a.profile() != b.profile()) {
            c.witness = nlohmann::ordered_json{{"profile_mismatch", true}};
        } else {
            const SymSeries d = a - b;
            const auto& [k, v] = *d.terms().begin();
            c.witness = nlohmann::ordered_json{{"laurent_exponents", nlohmann::ordered_json::array()},
                                               {"key", key_json(k)},
                                               {"value", beta_json(v)}};
        }
    }
    return c;
}

inline CheckResult from_flag(std::string name, const TruncationProfile& P, bool ok, const std::string& witness = {}) {
    CheckResult c{std::move(name), P, ok, -1, std::nullopt};
    if (!ok && !witness.empty()) c.witness = nlohmann::ordered_json{{"detail", witness}};
    return c;
}

inline nlohmann::ordered_json check_json(const CheckResult& c) {
    nlohmann::ordered_json j;
    j["check"] = c.check;
    j["profile"] = profile_json(c.profile);
    j["status"] = c.pass ? "pass" : "fail";
    if (c.checked_terms >= 0) j["checked_terms"] = c.checked_terms;
    if (c.witness) j["witness"] = *c.witness;
    return j;
}

inline bool all_pass(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

}  // namespace hkp

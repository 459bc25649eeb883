#pragma once

#include <json.hpp>

#include "hkp/sym_series.hpp"

namespace hkp {

inline nlohmann::ordered_json profile_json(const TruncationProfile& p) {
    nlohmann::ordered_json j;
    j["max_p_weight"] = p.max_p_weight;
    j["max_q1"] = p.max_q1;
    j["max_q2"] = p.max_q2;
    j["min_q2"] = p.min_q2;
    j["beta_order"] = p.beta_order;
    j["x_low"] = p.x_low;
    j["x_high"] = p.x_high;
    return j;
}

inline TruncationProfile profile_from_json(const nlohmann::ordered_json& j) {
    TruncationProfile p;
    p.max_p_weight = j.at("max_p_weight").get<int>();
    p.max_q1 = j.at("max_q1").get<int>();
    p.max_q2 = j.at("max_q2").get<int>();
    p.min_q2 = j.at("min_q2").get<int>();
    p.beta_order = j.at("beta_order").get<int>();
    p.x_low = j.at("x_low").get<int>();
    p.x_high = j.at("x_high").get<int>();
    p.validate();
    return p;
}

inline nlohmann::ordered_json beta_json(const BetaScalar& b) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& t : b.terms())
        arr.push_back({{"m1", t.m1}, {"m2", t.m2}, {"num", num_string(t.c)}, {"den", den_string(t.c)}});
    return arr;
}

inline nlohmann::ordered_json key_json(const SeriesKey& k) {
    nlohmann::ordered_json j;
    j["lambda"] = k.lambda.parts();
    j["q1"] = k.e1;
    j["q2"] = k.e2;
    return j;
}

/// Canonical serialization; std::map iteration already follows canonical key order.
inline nlohmann::ordered_json to_json(const SymSeries& s) {
    nlohmann::ordered_json j;
    j["profile"] = profile_json(s.profile());
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [k, v] : s.terms()) {
        auto t = key_json(k);
        t["beta"] = beta_json(v);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline SymSeries sym_series_from_json(const nlohmann::ordered_json& j) {
    SymSeries s(profile_from_json(j.at("profile")));
    for (const auto& t : j.at("terms")) {
        SeriesKey k{Partition(t.at("lambda").get<std::vector<int>>()), t.at("q1").get<int>(),
                    t.at("q2").get<int>()};
        BetaScalar b(s.profile().beta_order);
        for (const auto& m : t.at("beta")) {
            Rational c(mpz_class(m.at("num").get<std::string>()), mpz_class(m.at("den").get<std::string>()));
            c.canonicalize();
            b += BetaScalar::monomial(m.at("m1").get<int>(), m.at("m2").get<int>(), c, b.order());
        }
        s.add_term(k, b);
    }
    return s;
}

}  // namespace hkp

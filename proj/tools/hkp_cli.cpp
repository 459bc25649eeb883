#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hkp/fock.hpp"
#include "hkp/hurwitz.hpp"
#include "hkp/kp.hpp"
#include "hkp/report.hpp"
#include "hkp/series_json.hpp"
#include "hkp/symfun.hpp"

using namespace hkp;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int weight = 4;
    int beta_order = 3;
    int q1_max = 4;
    int window = 7;
    std::string n_range = "-2..2";
    std::string format = "json";
    std::string out;
    std::uint64_t seed = 1;
    std::string alpha = "1,2,-1/2";
    std::string beta = "-1,3,1/3";
    std::string a = "1,1/2,2";
    std::string suite = "all";
};

// x ∈ [−(w−1), w−1] for window width w
TruncationProfile base_profile(const RunConfig& cfg) {
    TruncationProfile P;
    P.max_p_weight = cfg.weight;
    P.max_q1 = cfg.q1_max;
    P.max_q2 = 0;
    P.min_q2 = 0;
    P.beta_order = cfg.beta_order;
    P.x_low = -(cfg.window - 1);
    P.x_high = cfg.window - 1;
    return P;
}

TruncationProfile open_profile(const RunConfig& cfg) {
    TruncationProfile P = base_profile(cfg);
    P.max_q2 = cfg.weight;
    return P;
}

TruncationProfile p_only_profile(const RunConfig& cfg) {
    TruncationProfile P = base_profile(cfg);
    P.max_q1 = 0;
    P.beta_order = 0;
    return P;
}

void validate(const RunConfig& cfg, bool needs_window) {
    if (cfg.weight < 1) throw UsageError("--weight must be at least 1");
    if (cfg.beta_order < 0) throw UsageError("--beta-order must be nonnegative");
    if (cfg.q1_max < 0) throw UsageError("--q1-max must be nonnegative");
    if (cfg.window < 2) throw UsageError("--window must be at least 2");
    if (needs_window && cfg.window < cfg.weight + 2)
        throw UsageError("--window must be at least weight + 2 for shift identities (got " +
                         std::to_string(cfg.window) + " with weight " + std::to_string(cfg.weight) + ")");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError("invalid integer '" + s + "' in " + what);
    }
}

/// "LO..HI" or a comma-separated list.
std::vector<int> parse_n_range(const std::string& s) {
    std::set<int> ns;
    const auto dots = s.find("..");
    if (dots != std::string::npos) {
        const int lo = parse_int(s.substr(0, dots), "--n-range");
        const int hi = parse_int(s.substr(dots + 2), "--n-range");
        if (lo > hi) throw UsageError("--n-range: empty range " + s);
        for (int n = lo; n <= hi; ++n) ns.insert(n);
    } else {
        for (const auto& part : split(s, ',')) ns.insert(parse_int(part, "--n-range"));
    }
    if (ns.empty()) throw UsageError("--n-range is empty");
    return {ns.begin(), ns.end()};
}

std::vector<Rational> parse_rationals(const std::string& s, const std::string& what) {
    std::vector<Rational> out;
    for (const auto& part : split(s, ',')) {
        try {
            out.push_back(parse_rational(part));
        } catch (const std::exception&) {
            throw UsageError("invalid rational '" + part + "' in " + what);
        }
    }
    return out;
}

SolitonParams soliton_params(const RunConfig& cfg) {
    SolitonParams sp{parse_rationals(cfg.alpha, "--alpha"), parse_rationals(cfg.beta, "--beta"),
                     parse_rationals(cfg.a, "--a")};
    sp.validate();
    return sp;
}

json rational_json(const Rational& r) { return json{{"num", num_string(r)}, {"den", den_string(r)}}; }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw UsageError("cannot open --out file " + cfg.out);
    f << text;
}

// ---------------------------------------------------------------- closed

int cmd_closed(const RunConfig& cfg) {
    validate(cfg, false);
    const TruncationProfile P = base_profile(cfg);
    const auto table = closed_hurwitz_table(P);
    json rows = json::array(), mismatches = json::array();
    std::string csv = "lambda,m,value_num,value_den,oracle\n";
    for (const auto& [key, value] : table) {
        const auto& [lam, m] = key;
        std::string oracle = "skipped";
        if (lam.weight() <= 6 && m <= 7) {
            const Rational expect = closed_hurwitz_oracle(lam, m);
            oracle = expect == value ? "match" : "mismatch";
            if (expect != value)
                mismatches.push_back({{"lambda", lam.parts()}, {"m", m}, {"value", rational_json(value)},
                                      {"oracle", rational_json(expect)}});
        }
        if (value == 0 && oracle != "mismatch") continue;
        rows.push_back({{"lambda", lam.parts()}, {"m", m}, {"value", rational_json(value)}, {"oracle", oracle}});
        csv += lam.to_string('-') + "," + std::to_string(m) + "," + num_string(value) + "," + den_string(value) + "," +
               oracle + "\n";
    }
    const bool ok = mismatches.empty();
    if (cfg.format == "csv") {
        emit(cfg, csv);
    } else {
        json j;
        j["command"] = "closed";
        j["profile"] = profile_json(P);
        j["status"] = ok ? "pass" : "fail";
        j["rows"] = rows;
        if (!ok) j["mismatches"] = mismatches;
        emit(cfg, j.dump(2) + "\n");
    }
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- open

int cmd_open(const RunConfig& cfg) {
    validate(cfg, true);
    const TruncationProfile P = open_profile(cfg);
    const auto ns = parse_n_range(cfg.n_range);
    json tables = json::array();
    std::vector<CheckResult> checks;
    std::string csv = "lambda,m1,m2,d1,N,value_num,value_den,case1\n";
    for (int N : ns) {
        const auto table = open_hurwitz_table(N, P);
        json rows = json::array();
        bool case1_ok = true, zero_ok = true;
        for (const auto& [k, value] : table) {
            std::string case1;
            if (k.lambda.length() == 1 && k.m1 == 0 && k.m2 == 0 && k.d1 == 0) {
                const bool match = value == make_rational(N, k.lambda.parts()[0]);
                case1 = match ? "match" : "mismatch";
                case1_ok = case1_ok && match;
            }
            if (N == 0 && value != 0) zero_ok = false;
            json row{{"lambda", k.lambda.parts()}, {"m1", k.m1}, {"m2", k.m2}, {"d1", k.d1},
                     {"value", rational_json(value)}};
            if (!case1.empty()) row["case1"] = case1;
            rows.push_back(std::move(row));
            csv += k.lambda.to_string('-') + "," + std::to_string(k.m1) + "," + std::to_string(k.m2) + "," +
                   std::to_string(k.d1) + "," + std::to_string(N) + "," + num_string(value) + "," +
                   den_string(value) + "," + case1 + "\n";
        }
        tables.push_back({{"N", N}, {"rows", rows}});
        checks.push_back(from_flag("case1[N=" + std::to_string(N) + "]", P, case1_ok, "h((k),0,0,0) != N/k"));
        if (N == 0) checks.push_back(from_flag("n0_vanishing", P, zero_ok, "nonzero open number at N=0"));
        if (N == 1) checks.push_back(from_equality("open_tau1_via_D", open_tau1_via_D(P), open_tau(1, P)));
    }
    const bool ok = all_pass(checks);
    if (cfg.format == "csv") {
        emit(cfg, csv);
    } else {
        json j;
        j["command"] = "open";
        j["profile"] = profile_json(P);
        j["status"] = ok ? "pass" : "fail";
        j["tables"] = tables;
        json cj = json::array();
        for (const auto& c : checks) cj.push_back(check_json(c));
        j["checks"] = cj;
        emit(cfg, j.dump(2) + "\n");
    }
    if (!ok)
        for (const auto& c : checks)
            if (!c.pass) std::cerr << "open: check " << c.check << " failed\n";
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- verify suites

BdSeries<SymSeries> random_bd(std::mt19937_64& rng, int depth, const TruncationProfile& P) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    BdSeries<SymSeries> C;
    C.c.emplace(0, SymSeries::constant(make_rational(num(rng) == 0 ? 1 : 3, den(rng)), P));
    for (int i = 1; i <= depth; ++i) {
        const Rational v = make_rational(num(rng), den(rng));
        if (v != 0) C.c.emplace(i, SymSeries::constant(v, P));
    }
    return C;
}

std::vector<CheckResult> suite_kp(const RunConfig& cfg) {
    std::vector<CheckResult> out;
    const TruncationProfile P = base_profile(cfg);
    const SymSeries tc = closed_tau(P);
    out.push_back(from_residual("fay:closed_tau", P, fay_residual(tc)));
    out.push_back(from_residual("fay:adjoint_closed_tau", P, fay_residual(adjoint_tau(tc))));

    const int W = P.max_p_weight;
    const auto t1 = tau_shift(tc, -1, -2 * W, 2 * W) * exp_xi_like(1, tc, -2 * W, 2 * W);
    out.push_back(from_residual("shift_sequence:fay[1]", P, fay_residual(t1, P.x_low, P.x_high)));
    const auto det = bd_detect(lift(tc, -2 * W, 2 * W), t1, W, BdDirection::forward);
    out.push_back(from_residual("shift_sequence:bd[0->1]", P, det.residual));
    return out;
}

std::vector<CheckResult> suite_mkp(const RunConfig& cfg) {
    std::vector<CheckResult> out;
    const TruncationProfile P = open_profile(cfg);
    const auto ns = parse_n_range(cfg.n_range);
    std::map<int, SymSeries> taus;
    for (int N : ns) taus.emplace(N, open_tau_tilde(N, P));
    for (const auto& [N, t] : taus)
        out.push_back(from_residual("fay:tau_tilde[" + std::to_string(N) + "]", P, fay_residual(t)));
    for (const auto& [N, t] : taus) {
        auto next = taus.find(N + 1);
        if (next == taus.end()) continue;
        const auto det = bd_detect(t, next->second, P.max_p_weight, BdDirection::forward);
        out.push_back(from_residual("bd:tau_tilde[" + std::to_string(N) + "->" + std::to_string(N + 1) + "]", P,
                                    det.residual));
    }
    return out;
}

std::vector<CheckResult> suite_bd_explicit(const RunConfig& cfg) {
    std::vector<CheckResult> out;
    const TruncationProfile Po = open_profile(cfg);
    const int W = Po.max_p_weight;
    out.push_back(from_equality("open_tau1_via_D", open_tau1_via_D(Po), open_tau(1, Po)));

    const auto det = bd_detect(open_tau_tilde(0, Po), open_tau_tilde(1, Po), W, BdDirection::forward);
    std::string bad;
    if (!det.success) bad = "detection failed";
    const auto D = d_series(Po);
    for (int l = 0; l <= W && bad.empty(); ++l) {
        SymSeries expect = D.coefficient(l, SymSeries(Po));
        expect *= BetaScalar::exp_of(Rational(l), BetaSlot::beta2, Po.beta_order);
        if (det.C.coefficient(l, SymSeries(Po)) != expect) bad = "coefficient of x^-" + std::to_string(l);
    }
    out.push_back(from_flag("detected_C_matches_D", Po, bad.empty(), bad));

    const TruncationProfile P = base_profile(cfg);
    std::mt19937_64 rng(cfg.seed);
    const SymSeries ta = closed_tau(P);
    const SymSeries tb = bd_apply(ta, random_bd(rng, W, P), BdDirection::forward);
    out.push_back(from_residual("forward_detect", P, bd_detect(ta, tb, W, BdDirection::forward).residual));
    out.push_back(from_residual("fay:forward_image", P, fay_residual(tb)));
    out.push_back(from_residual("adjoint_interchange", P,
                                bd_detect(adjoint_tau(ta), adjoint_tau(tb), W, BdDirection::backward).residual));
    out.push_back(from_residual("round_trip", P, bd_detect(tb, ta, W, BdDirection::backward).residual));
    return out;
}

std::vector<CheckResult> suite_fock(const RunConfig& cfg) {
    std::vector<CheckResult> out;
    const TruncationProfile P = p_only_profile(cfg);
    const int W = P.max_p_weight;
    const auto ns = parse_n_range(cfg.n_range);

    std::string bad;
    for (int N : ns)
        for (const auto& l : partitions_up_to(W))
            if (bad.empty() && boson_fermion(WedgeState::basis(l, N, W, P), P) != schur_p(l, P))
                bad = "N=" + std::to_string(N) + " lambda=" + l.to_string();
    out.push_back(from_flag("boson_fermion_schur", P, bad.empty(), bad));

    std::string anti, alpha;
    const int cutoff = 2 * W + 4;
    for (int N : ns)
        for (const auto& l : partitions_up_to(std::min(W, 3))) {
            const auto s = WedgeState::basis(l, N, cutoff, P);
            for (int a = N - 4; a <= N + 4 && anti.empty(); ++a) {
                const auto sum = fermion_apply(fermion_apply(s, Fermion::theta_dagger, a), Fermion::theta, a) +
                                 fermion_apply(fermion_apply(s, Fermion::theta, a), Fermion::theta_dagger, a);
                if (sum != s) anti = "N=" + std::to_string(N) + " lambda=" + l.to_string() + " a=" + std::to_string(a);
                for (int b = a + 1; b <= N + 4 && anti.empty(); ++b) {
                    const bool ok =
                        fermion_apply(fermion_apply(s, Fermion::theta, b), Fermion::theta, a) ==
                            -fermion_apply(fermion_apply(s, Fermion::theta, a), Fermion::theta, b) &&
                        fermion_apply(fermion_apply(s, Fermion::theta_dagger, b), Fermion::theta, a) ==
                            -fermion_apply(fermion_apply(s, Fermion::theta, a), Fermion::theta_dagger, b);
                    if (!ok) anti = "a=" + std::to_string(a) + " b=" + std::to_string(b);
                }
            }
            for (int n = -3; n <= 3 && alpha.empty(); ++n)
                if (n != 0 && alpha_apply(s, n) != alpha_apply_fermionic(s, n))
                    alpha = "lambda=" + l.to_string() + " n=" + std::to_string(n);
        }
    out.push_back(from_flag("anticommutation", P, anti.empty(), anti));
    out.push_back(from_flag("alpha_dual_routes", P, alpha.empty(), alpha));

    std::string reduce;
    const int rc = 3;
    TruncationProfile Pw = P;
    Pw.max_p_weight = rc + 4;
    for (int k = 1; k <= 4 && reduce.empty(); ++k) {
        RowSet lhs{1, Pw, {}, {}}, rhs{1, Pw, {}, {}};
        lhs.explicit_rows.push_back(LaurentRow::pure(-k, Pw));
        rhs.explicit_rows.push_back(wedge_reduce_exp_row(k, Pw, rc + k + 2));
        auto tail = [Pw](int i) { return exp_row(i - 1, Pw, 12); };
        lhs.tail = tail;
        rhs.tail = tail;
        if (wedge_from_rows(lhs, rc) != wedge_from_rows(rhs, rc)) reduce = "k=" + std::to_string(k);
    }
    out.push_back(from_flag("wedge_reduction", Pw, reduce.empty(), reduce));

    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    std::string ortho;
    for (int N : ns) {
        RowSet rs{N, P, {}, {}};
        if (wedge_from_rows(ortho_rows(rs, W), W) != WedgeState::vacuum(-N, W, P)) ortho = "vacuum N=" + std::to_string(N);
        LaurentRow r1 = LaurentRow::pure(N - 1, P), r2 = LaurentRow::pure(N - 2, P);
        for (int j = 1; j <= 3; ++j) {
            r1.set(j, SymSeries::constant(make_rational(num(rng), den(rng)), P));
            if (j != 1) r2.set(j, SymSeries::constant(make_rational(num(rng), den(rng)), P));
        }
        rs.explicit_rows = {r1, r2};
        const auto tau_h = boson_fermion(wedge_from_rows(rs, W), P);
        const auto tau_perp = boson_fermion(wedge_from_rows(ortho_rows(rs, W), W), P);
        if (ortho.empty() && tau_perp != adjoint_tau(tau_h)) ortho = "perturbed rows N=" + std::to_string(N);
    }
    out.push_back(from_flag("orthogonal_complement", P, ortho.empty(), ortho));

    TruncationProfile Ph = base_profile(cfg);
    Ph.max_p_weight = Ph.max_q1 = 2;
    Ph.beta_order = 1;
    const auto rows = hurwitz_rows(Ph);
    out.push_back(from_equality("orthogonal_complement:hurwitz_rows",
                                boson_fermion(wedge_from_rows(ortho_rows(rows, 2), 2), Ph),
                                adjoint_tau(boson_fermion(wedge_from_rows(rows, 2), Ph))));
    return out;
}

std::vector<CheckResult> suite_soliton(const RunConfig& cfg) {
    std::vector<CheckResult> out;
    const SolitonParams sp = soliton_params(cfg);
    const TruncationProfile P = p_only_profile(cfg);
    for (std::size_t k = 1; k <= sp.size(); ++k) {
        const auto dk = soliton_tau(sp, k, P);
        out.push_back(from_residual("fay:soliton[" + std::to_string(k) + "]", P, fay_residual(dk)));
        TruncationProfile Pk = P;
        Pk.max_p_weight += static_cast<int>(k) - 1;
        Pk.x_low = std::min(P.x_low, -Pk.max_p_weight);
        Pk.x_high = std::max(P.x_high, Pk.max_p_weight);
        const auto chained = bd_apply(soliton_tau(sp, k - 1, Pk), soliton_gamma(sp, k, Pk), BdDirection::forward);
        out.push_back(from_equality("gamma_chain[" + std::to_string(k) + "]", chained.restricted(P), dk));
    }
    std::mt19937_64 rng(cfg.seed);
    const auto top = soliton_tau(sp, sp.size(), P);
    const auto image = bd_apply(top, random_bd(rng, P.max_p_weight, P), BdDirection::forward);
    out.push_back(from_residual("round_trip:soliton", P,
                                bd_detect(image, top, P.max_p_weight, BdDirection::backward).residual));
    return out;
}

int cmd_verify(const RunConfig& cfg) {
    validate(cfg, true);
    using SuiteFn = std::vector<CheckResult> (*)(const RunConfig&);
    const std::map<std::string, SuiteFn> suites = {{"bd-explicit", suite_bd_explicit},
                                                   {"fock", suite_fock},
                                                   {"kp", suite_kp},
                                                   {"mkp", suite_mkp},
                                                   {"soliton", suite_soliton}};
    parse_n_range(cfg.n_range);
    if (cfg.suite == "soliton" || cfg.suite == "all") soliton_params(cfg);

    bool ok = true;
    json sj = json::array();
    std::string csv = "suite,check,status,checked_terms,witness\n";
    for (const auto& [name, fn] : suites) {
        if (cfg.suite != "all" && cfg.suite != name) continue;
        auto checks = fn(cfg);
        std::stable_sort(checks.begin(), checks.end(),
                         [](const CheckResult& x, const CheckResult& y) { return x.check < y.check; });
        const bool suite_ok = all_pass(checks);
        ok = ok && suite_ok;
        json cj = json::array();
        for (const auto& c : checks) {
            cj.push_back(check_json(c));
            csv += name + "," + csv_field(c.check) + "," + (c.pass ? "pass" : "fail") + "," +
                   (c.checked_terms >= 0 ? std::to_string(c.checked_terms) : "") + "," +
                   (c.witness ? csv_field(c.witness->dump()) : "") + "\n";
            if (!c.pass) std::cerr << "verify: " << name << "/" << c.check << " failed\n";
        }
        sj.push_back({{"suite", name}, {"status", suite_ok ? "pass" : "fail"}, {"checks", cj}});
    }
    if (cfg.format == "csv") {
        emit(cfg, csv);
    } else {
        json j;
        j["command"] = "verify";
        j["suite"] = cfg.suite;
        j["profile"] = profile_json(base_profile(cfg));
        j["seed"] = cfg.seed;
        j["status"] = ok ? "pass" : "fail";
        j["suites"] = sj;
        emit(cfg, j.dump(2) + "\n");
    }
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- soliton-demo

int cmd_soliton_demo(const RunConfig& cfg) {
    validate(cfg, true);
    const SolitonParams sp = soliton_params(cfg);
    auto checks = suite_soliton(cfg);
    const bool ok = all_pass(checks);
    const TruncationProfile P = p_only_profile(cfg);
    if (cfg.format == "csv") {
        std::string csv = "k,lambda,value_num,value_den\n";
        for (std::size_t k = 0; k <= sp.size(); ++k) {
            const SymSeries dk = soliton_tau(sp, k, P);
            for (const auto& [key, v] : dk.terms())
                csv += std::to_string(k) + "," + key.lambda.to_string('-') + "," + num_string(v.constant()) + "," +
                       den_string(v.constant()) + "\n";
        }
        emit(cfg, csv);
    } else {
        auto list = [](const std::vector<Rational>& v) {
            json a = json::array();
            for (const auto& r : v) a.push_back(to_string(r));
            return a;
        };
        json j;
        j["command"] = "soliton-demo";
        j["params"] = {{"alpha", list(sp.alpha)}, {"beta", list(sp.beta)}, {"a", list(sp.a)}};
        j["profile"] = profile_json(P);
        j["status"] = ok ? "pass" : "fail";
        json taus = json::array();
        for (std::size_t k = 0; k <= sp.size(); ++k) taus.push_back({{"k", k}, {"tau", to_json(soliton_tau(sp, k, P))}});
        j["taus"] = taus;
        json cj = json::array();
        for (const auto& c : checks) cj.push_back(check_json(c));
        j["checks"] = cj;
        emit(cfg, j.dump(2) + "\n");
    }
    return ok ? 0 : 1;
}

void add_profile_flags(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--weight", cfg.weight, "maximum p-weight")->capture_default_str();
    sub->add_option("--beta-order", cfg.beta_order, "joint truncation order in beta1, beta2")->capture_default_str();
    sub->add_option("--q1-max", cfg.q1_max, "maximum q1 exponent")->capture_default_str();
    sub->add_option("--window", cfg.window, "Laurent window width w: exponents in [-(w-1), w-1]")->capture_default_str();
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
}

void add_n_range(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--n-range", cfg.n_range, "N values: LO..HI or a comma list")->capture_default_str();
}

void add_soliton_flags(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--alpha", cfg.alpha, "soliton alpha_i, comma-separated rationals")->capture_default_str();
    sub->add_option("--beta", cfg.beta, "soliton beta_i, comma-separated rationals")->capture_default_str();
    sub->add_option("--a", cfg.a, "soliton a_i, comma-separated rationals")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Hurwitz tau-functions and KP/mKP verification"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* closed = app.add_subcommand("closed", "table of closed Hurwitz numbers h(lambda, m)");
    add_profile_flags(closed, cfg);

    auto* open = app.add_subcommand("open", "tables of open Hurwitz numbers per N");
    add_profile_flags(open, cfg);
    add_n_range(open, cfg);

    auto* verify = app.add_subcommand("verify", "run verification suites");
    add_profile_flags(verify, cfg);
    add_n_range(verify, cfg);
    add_soliton_flags(verify, cfg);
    verify->add_option("suite", cfg.suite, "kp, mkp, bd-explicit, fock, soliton or all")
        ->check(CLI::IsMember({"kp", "mkp", "bd-explicit", "fock", "soliton", "all"}))
        ->capture_default_str();

    auto* demo = app.add_subcommand("soliton-demo", "rational multi-soliton tau-functions and their checks");
    add_profile_flags(demo, cfg);
    add_soliton_flags(demo, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*closed) return cmd_closed(cfg);
        if (*open) return cmd_open(cfg);
        if (*verify) return cmd_verify(cfg);
        if (*demo) return cmd_soliton_demo(cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const WindowExhausted& e) {
        std::cerr << "configuration error: window too small: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

#pragma once

// Random inputs for the AML program and an independent reimplementation of
// its scoring, used as an oracle against the SL interpreter.

#include "avc/sl/interp.hpp"

#include <random>
#include <string>
#include <vector>

namespace avc::testing {

struct Txn {
    std::string country;
    long amount;
};

struct AmlCase {
    std::vector<Txn> transactions;
    long account_age_days = 0;
    std::vector<std::string> profile;
    long prior_alerts = 0;
    std::vector<std::string> high_risk;
    Rational mitigation;
};

inline const std::vector<std::string>& aml_reason_strings() {
    static const std::vector<std::string> s{
        "Transactions involving higher-risk jurisdictions were observed",
        "Multiple high-value transactions were recorded within the review period",
        "Account is relatively new, which may limit historical context for activity patterns",
        "Prior monitoring alerts exist for this account",
        "Transaction volume is elevated compared to typical baseline activity",
        "Features of customer profile is associated with moderately elevated AML monitoring sensitivity",
        "Documented contextual factors may explain some observed activity",
    };
    return s;
}

inline AmlCase random_aml_case(std::mt19937& rng) {
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    static const char* countries[] = {"US", "DE", "KP", "IR", "MM", "FR"};
    static const char* tags[] = {"cash-intensive", "retail", "online", "import-export"};
    AmlCase c;
    const int n = pick(4) == 0 ? 18 + pick(8) : pick(6);
    for (int i = 0; i < n; ++i) {
        static const long amounts[] = {0, 500, 99999, 100000, 250000};
        c.transactions.push_back({countries[pick(6)], amounts[pick(5)]});
    }
    static const long ages[] = {0, 30, 89, 90, 400};
    c.account_age_days = ages[pick(5)];
    for (int i = 0; i < 4; ++i)
        if (pick(3) == 0) c.profile.push_back(tags[i]);
    c.prior_alerts = pick(3) == 0 ? 0 : pick(3);
    for (int i = 0; i < 6; ++i)
        if (pick(3) == 0) c.high_risk.push_back(countries[i]);
    static const char* mitigations[] = {"0", "0", "1.5", "4", "7.25", "-1", "3.999"};
    c.mitigation = *parse_decimal(mitigations[pick(7)]);
    return c;
}

inline sl::Value aml_risk_factors(const AmlCase& c) {
    using sl::Value;
    std::vector<Value> txns;
    for (const auto& t : c.transactions)
        txns.push_back(Value::record({{"country", Value::str(t.country)}, {"amount", Value::num(t.amount)}}));
    std::vector<Value> profile;
    for (const auto& p : c.profile) profile.push_back(Value::str(p));
    return Value::record({{"transactions", Value::list(txns)},
                          {"account_age_days", Value::num(c.account_age_days)},
                          {"customer_profile", Value::list(profile)},
                          {"prior_alerts", Value::num(c.prior_alerts)}});
}

inline sl::ExternTable aml_externs(const AmlCase& c) {
    using sl::Value;
    sl::ExternTable t;
    t["high_risk_countries"] = [c](const std::vector<Value>&) {
        std::vector<Value> out;
        for (const auto& s : c.high_risk) out.push_back(Value::str(s));
        return Value::list(out);
    };
    t["mitigation_kb"] = [c](const std::vector<Value>&) { return Value::num(c.mitigation); };
    return t;
}

struct AmlResult {
    Rational score;
    std::string decision;
    std::vector<std::string> reasons;
};

// Straight-line restatement of the program's scoring rules.
inline AmlResult aml_oracle(const AmlCase& c) {
    const auto& s = aml_reason_strings();
    AmlResult r;
    Rational score = 0;
    int high_risk = 0, large = 0;
    for (const auto& t : c.transactions) {
        for (const auto& h : c.high_risk)
            if (h == t.country) {
                ++high_risk;
                break;
            }
        if (t.amount >= 100000) ++large;
    }
    if (high_risk > 0) score += 6, r.reasons.push_back(s[0]);
    if (large >= 2) score += 3, r.reasons.push_back(s[1]);
    if (c.account_age_days < 90) score += 3, r.reasons.push_back(s[2]);
    if (c.prior_alerts > 0) score += 3, r.reasons.push_back(s[3]);
    if (c.transactions.size() > 20) score += 1, r.reasons.push_back(s[4]);
    for (const auto& p : c.profile)
        if (p == "cash-intensive") {
            score += 1;
            r.reasons.push_back(s[5]);
            break;
        }
    const Rational offset = c.mitigation < 4 ? c.mitigation : Rational(4);
    score -= offset;
    if (offset > 0) r.reasons.push_back(s[6]);
    if (score < 0) score = 0;
    r.decision = score >= 8 ? "flag" : score >= 4 ? "review" : "ok";
    r.score = round_half_away(score, 2);
    return r;
}

}  // namespace avc::testing

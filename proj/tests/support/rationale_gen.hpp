#pragma once

// Random valid rationales for property tests.

#include "avc/logic/well_formed.hpp"
#include "avc/rationale/rationale.hpp"
#include "avc/util/text.hpp"
#include "support/formula_gen.hpp"

#include <string>

namespace avc::testing {

struct RationaleGenOptions {
    int max_claims = 12;
    bool hints = true;
    bool subject = true;
};

inline rationale::Rationale random_rationale(FormulaGen& g, const RationaleGenOptions& opt = {}) {
    using namespace rationale;
    Rationale r;
    r.name = "gen" + std::to_string(g.pick(1000));
    r.signature = gen_signature();
    const int n = 1 + g.pick(opt.max_claims);
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back(i == 0 ? "Root" : "K" + std::to_string(i));

    // Each non-root claim hangs under an earlier one.
    std::map<std::string, std::vector<std::string>> kids;
    for (int i = 1; i < n; ++i) kids[ids[g.pick(i)]].push_back(ids[i]);
    for (auto& [parent, children] : kids) r.decompositions.push_back({parent, children});

    for (const auto& id : ids) {
        Claim c;
        c.id = id;
        c.title = g.coin() ? "title of " + id : g.text();
        if (g.pick(3) == 0)
            c.statement = InformalText{normalize_space(g.text())};
        else
            c.statement = g.formula(3);
        if (opt.hints && !kids.contains(id) && g.pick(3) == 0) {
            VerifyHint h;
            switch (g.pick(4)) {
                case 0:
                    h.verifier = "output-shape";
                    h.config = {{"fn", HintValue::word("fun")},
                                {"decision", {HintValue::Kind::Set, {"x", "y\"z"}}},
                                {"score", HintValue::word("Real")}};
                    break;
                case 1:
                    h.verifier = "string-inventory";
                    h.config = {{"fn", HintValue::word("fun")}, {"sink", HintValue::word("out")}};
                    break;
                case 2:
                    h.verifier = "threshold-ladder";
                    h.config = {{"fn", HintValue::string("fun")},
                                {"score", HintValue::word("s")},
                                {"order", {HintValue::Kind::List, {"lo", "hi"}}}};
                    break;
                default:
                    h.verifier = "const-relation";
                    h.config = {{"k", HintValue::word("K_CONST")}};
                    break;
            }
            c.verify = std::move(h);
        }
        if (g.coin()) c.note = g.text();
        if (const auto* f = std::get_if<logic::Formula>(&c.statement))
            for (const auto& s : logic::string_literals(*f)) r.signature.string_literals.insert(s);
        r.claims.emplace(id, std::move(c));
    }
    r.root = "Root";
    if (opt.subject && g.coin()) r.subject = SubjectRef{"prog " + std::to_string(g.pick(9)) + ".sl", std::string(64, 'a')};
    return r;
}

}  // namespace avc::testing

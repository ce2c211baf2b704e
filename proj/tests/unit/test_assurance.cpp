#include "avc/assurance/export.hpp"
#include "avc/pipeline/analysis.hpp"
#include "avc/sl/parse.hpp"
#include "support/corpus.hpp"
#include "support/assurance_gen.hpp"
#include "support/golden.hpp"
#include "support/rationale_gen.hpp"

#include <doctest.h>

using namespace avc;
using namespace avc::assurance;

namespace {

struct Analyzed {
    rationale::Rationale r;
    pipeline::AnalysisResult a;
};

Analyzed analyzed_corpus(bool solver) {
    Analyzed out{testing::corpus(), {}};
    pipeline::AnalysisOptions opts;
    if (solver) opts.solver = testing::solver_config();
    out.a = pipeline::analyze_serial(out.r, sl::parse_program(read_file(testing::kCorpusProgram)), opts);
    return out;
}

const Analyzed& with_solver() {
    static const Analyzed a = analyzed_corpus(true);
    return a;
}

const Analyzed& without_solver() {
    static const Analyzed a = analyzed_corpus(false);
    return a;
}

std::vector<std::string> ids(const std::vector<ChecklistItem>& items) {
    std::vector<std::string> out;
    for (const auto& i : items) out.push_back(i.id);
    return out;
}

Judgment doubt(const std::string& id, std::int64_t t = 1000) { return {id, Verdict::Doubted, "", t}; }

std::set<std::string> ancestors_and_self(const rationale::Rationale& r, const std::string& id) {
    std::set<std::string> out{id};
    for (auto p = r.parent_of(id); p; p = r.parent_of(*p)) out.insert(*p);
    return out;
}

}  // namespace

TEST_CASE("corpus checklist") {
    const std::vector<std::string> expected{"inference:C_R", "inference:C2", "C4",  "C5",
                                            "inference:C7", "C9",           "C10", "C12"};
    if (!testing::solver_path().empty()) {
        const auto& c = with_solver();
        CHECK(ids(extract_checklist(c.r, c.a.evidence, c.a.verdicts)) == expected);
    }
    // Without Tier 2 the C3 inference stays on the list.
    const auto& c = without_solver();
    auto items = extract_checklist(c.r, c.a.evidence, c.a.verdicts);
    CHECK(items.size() == 9);
    CHECK(ids(items)[7] == "inference:C3");
    CHECK(items[7].machine_status == "Unknown");
}

TEST_CASE("trivial checklists") {
    auto single = rationale::parse_rationale("rationale t\nclaim R \"root\" { informal: \"it works\"; }\nroot R\n");
    auto items = extract_checklist(single, {}, {});
    REQUIRE(items.size() == 1);
    CHECK(items[0].kind == ItemKind::Conjecture);
    CHECK(items[0].rendered_text == "it works");

    auto two = rationale::parse_rationale(
        "rationale t\npred p\npred q\n"
        "claim R \"root\" { formal: p; }\n"
        "claim A \"a\" { formal: p; verify: const-relation(k=K); }\n"
        "decompose R -> [A]\nroot R\n");
    analyzers::Evidence ok;
    ok.claim_id = "A";
    ok.status = EvidenceStatus::Verified;
    VerdictMap v{{"R", {VerdictStatus::MachineValid, 1, "", {}}}};
    CHECK(extract_checklist(two, {{"A", ok}}, v).empty());
    CHECK(propagate(two, {{"A", ok}}, v, {}).status.at("R") == Status::Established);
    CHECK(checklist_markdown(two, {}).find(kEmptyChecklistBanner) != std::string::npos);

    CHECK_THROWS_AS(extract_checklist(two, {{"R", ok}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(extract_checklist(two, {}, {{"A", {}}}), std::invalid_argument);
}

TEST_CASE("propagation on the corpus") {
    for (const Analyzed* c : {&with_solver(), &without_solver()}) {
        if (c == &with_solver() && testing::solver_path().empty()) continue;
        const auto items = extract_checklist(c->r, c->a.evidence, c->a.verdicts);
        JudgmentLog log = testing::accept_all(items);
        StatusReport all = propagate(c->r, c->a.evidence, c->a.verdicts, log);
        for (const auto& [id, s] : all.status) CHECK_MESSAGE(s == Status::Established, id);
        CHECK(all.warnings.empty());

        log.push_back(doubt("C12"));
        StatusReport doubted = propagate(c->r, c->a.evidence, c->a.verdicts, log);
        for (const char* id : {"C12", "C3", "C0", "C_R"}) CHECK(doubted.status.at(id) == Status::Blocked);
        for (const char* id : {"C1", "C2", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11"})
            CHECK(doubted.status.at(id) == all.status.at(id));
    }

    const auto r = testing::corpus();
    StatusReport bare = propagate(r, {}, {}, {});
    CHECK(bare.status.size() == 14);
    for (const auto& [id, s] : bare.status) CHECK(s == Status::Open);
}

TEST_CASE("what-if") {
    const auto& c = testing::solver_path().empty() ? without_solver() : with_solver();
    const auto items = extract_checklist(c.r, c.a.evidence, c.a.verdicts);
    AssuranceState base{&c.r, c.a.evidence, c.a.verdicts, testing::accept_all(items)};

    WhatIf w = whatif(base, {doubt("C9")});
    CHECK(w.delta == std::set<std::string>{"C9", "C7", "C2", "C0", "C_R"});
    CHECK(w.report.status.at("C_R") == Status::Blocked);
    CHECK(whatif(base, {}).delta.empty());
    CHECK(whatif(base, {{"C9", Verdict::Accepted, "again", 5000}}).delta.empty());
    CHECK_THROWS_AS(whatif(base, {doubt("C1")}), std::invalid_argument);
    CHECK_THROWS_AS(whatif(base, {doubt("nope")}), std::invalid_argument);
    // The baseline is untouched.
    CHECK(base.judgments == testing::accept_all(items));

    WhatIf two = whatif(base, {doubt("C9"), doubt("C10")});
    CHECK(two.delta == std::set<std::string>{"C9", "C10", "C7", "C2", "C0", "C_R"});
}

TEST_CASE("judgment log resolution") {
    JudgmentLog log{{"A", Verdict::Accepted, "first", 1}, {"B", Verdict::Doubted, "", 2}, {"A", Verdict::Doubted, "second", 3}};
    auto cur = current_judgments(log);
    CHECK(cur.at("A").verdict == Verdict::Doubted);
    CHECK(cur.at("A").note == "second");
    CHECK(cur.at("B").verdict == Verdict::Doubted);

    for (const auto& j : log) CHECK(judgment_from_json(to_json(j)) == j);
    CHECK(verdict_from_string("ACCEPTED") == Verdict::Accepted);
    CHECK_FALSE(verdict_from_string("maybe"));
    CHECK_THROWS_AS(judgment_from_json(Json::parse(R"({"itemId": "A", "verdict": "sure"})")), std::invalid_argument);
    CHECK_THROWS_AS(judgment_from_json(Json::parse(R"({"verdict": "accepted"})")), std::invalid_argument);
}

TEST_CASE("accepted machine failures are flagged") {
    auto r = rationale::parse_rationale(
        "rationale t\npred p\npred q\n"
        "claim R \"root\" { formal: q; }\n"
        "claim A \"a\" { formal: p; }\n"
        "decompose R -> [A]\nroot R\n");
    VerdictMap v{{"R", {VerdictStatus::MachineInvalid, 2, "model", {}}}};
    auto items = extract_checklist(r, {}, v);
    REQUIRE(items.size() == 2);
    CHECK(items[0].counterexample);
    CHECK(checklist_markdown(r, items).find("machine counterexample attached") != std::string::npos);

    StatusReport pending = propagate(r, {}, v, {{"A", Verdict::Accepted, "", 1}});
    CHECK(pending.status.at("R") == Status::Open);
    StatusReport accepted = propagate(r, {}, v, testing::accept_all(items));
    CHECK(accepted.status.at("R") == Status::Established);
    CHECK(accepted.established_with_warnings("R"));
}

TEST_CASE("checklist soundness property") {
    const auto st = testing::checklist_soundness(314, 2200);
    CHECK(st.counterexamples == 0);
    CHECK(st.unstable_items == 0);
    CHECK(st.clean >= 1000);
    CHECK(st.single_doubts >= 1000);
    MESSAGE("soundness: clean cases ", st.clean, ", single-doubt checks ", st.single_doubts);
}

TEST_CASE("what-if locality") {
    testing::FormulaGen g(2718);
    int checked = 0;
    for (int i = 0; i < 600; ++i) {
        testing::RandomCase c = testing::random_case(g);
        const auto items = extract_checklist(c.r, c.evidence, c.verdicts);
        if (items.empty()) continue;
        JudgmentLog base;
        for (const auto& item : items)
            if (g.coin()) base.push_back({item.id, g.coin() ? Verdict::Accepted : Verdict::Doubted, "", 1});
        AssuranceState state{&c.r, c.evidence, c.verdicts, base};
        JudgmentLog overlay;
        std::set<std::string> reach;
        for (int k = 1 + g.pick(2); k > 0; --k) {
            const auto& item = items[g.pick(static_cast<int>(items.size()))];
            static const Verdict vs[] = {Verdict::Accepted, Verdict::Doubted, Verdict::Pending};
            overlay.push_back({item.id, vs[g.pick(3)], "", 2});
            auto up = ancestors_and_self(c.r, item.target);
            reach.insert(up.begin(), up.end());
        }
        WhatIf w = whatif(state, overlay);
        for (const auto& id : w.delta) CHECK_MESSAGE(reach.contains(id), id);
        JudgmentLog merged = base;
        merged.insert(merged.end(), overlay.begin(), overlay.end());
        CHECK(w.report == propagate(c.r, c.evidence, c.verdicts, merged));
        ++checked;
    }
    CHECK(checked > 300);
}

TEST_CASE("checklist exports match golden files") {
    const auto& c = without_solver();
    auto items = extract_checklist(c.r, c.a.evidence, c.a.verdicts);
    CHECK(testing::matches_golden("tests/golden/checklist/aml-nosolver.md", checklist_markdown(c.r, items)));
    CHECK(testing::matches_golden("tests/golden/checklist/aml-nosolver.json", checklist_json(items).dump(2) + "\n"));
    if (!testing::solver_path().empty()) {
        const auto& s = with_solver();
        items = extract_checklist(s.r, s.a.evidence, s.a.verdicts);
        CHECK(testing::matches_golden("tests/golden/checklist/aml.md", checklist_markdown(s.r, items)));
        const Json j = checklist_json(items);
        CHECK(j.size() == 8);
        CHECK(testing::matches_golden("tests/golden/checklist/aml.json", j.dump(2) + "\n"));
    }
}

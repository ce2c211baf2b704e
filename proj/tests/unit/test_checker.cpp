#include "avc/checker/inference.hpp"
#include "avc/checker/sat.hpp"
#include "avc/checker/smt.hpp"
#include "avc/checker/solver.hpp"
#include "avc/logic/parse.hpp"
#include "support/corpus.hpp"
#include "support/golden.hpp"
#include "support/prop_oracle.hpp"

#include <doctest.h>

#include <filesystem>
#include <random>

using namespace avc;
using namespace avc::logic;
using namespace avc::checker;

namespace {

Signature witness_sig() {
    Signature sig;
    sig.functions["c"] = {{}, Sort::str()};
    sig.predicates["P"] = {{Sort::str()}};
    return sig;
}

std::string run_z3(const std::string& script) {
    SolverConfig cfg = testing::solver_config();
    const SolverRun run = run_solver(cfg, script);
    return run.answer.value_or("none: " + run.failure);
}

}  // namespace

TEST_CASE("dpll on small cnfs") {
    Cnf sat{2, {{1, 2}, {-1, 2}, {1, -2}}};
    SatResult r = solve(sat, 100);
    REQUIRE(r.answer == SatAnswer::Sat);
    CHECK(r.model[1]);
    CHECK(r.model[2]);
    Cnf unsat{2, {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}}};
    CHECK(solve(unsat, 100).answer == SatAnswer::Unsat);
    CHECK(solve(Cnf{1, {{}}}, 100).answer == SatAnswer::Unsat);
    CHECK(solve(Cnf{0, {}}, 100).answer == SatAnswer::Sat);
}

TEST_CASE("tier 1 on the corpus inferences") {
    const auto r = testing::corpus();
    SUBCASE("C0 is a conjunction of its children") {
        auto [premises, conclusion] = testing::inference_of(r, "C0");
        const auto v = check_tier1(r.signature, premises, conclusion);
        CHECK(v.status == VerdictStatus::MachineValid);
        CHECK(v.tier == 1);
    }
    SUBCASE("user-validated inferences are never machine valid") {
        for (const char* parent : {"C_R", "C2", "C7"}) {
            auto [premises, conclusion] = testing::inference_of(r, parent);
            CHECK(check_tier1(r.signature, premises, conclusion).status == VerdictStatus::Unknown);
            SolverConfig cfg = testing::solver_config();
            CHECK(check_inference(r.signature, premises, conclusion, cfg).status != VerdictStatus::MachineValid);
        }
    }
    SUBCASE("C3 needs first-order reasoning") {
        auto [premises, conclusion] = testing::inference_of(r, "C3");
        const auto v = check_tier1(r.signature, premises, conclusion);
        CHECK(v.status == VerdictStatus::Unknown);
        CHECK(v.diagnostic.find("abstract countermodel") == 0);
    }
}

TEST_CASE("tier 1 trivial cases") {
    Signature sig;
    const Formula p = make::informal("weights are fine"), q = make::informal("thresholds are fine");
    CHECK(check_tier1(sig, {p}, q).status == VerdictStatus::Unknown);
    CHECK(check_tier1(sig, {p}, p).status == VerdictStatus::MachineValid);
    CHECK(check_tier1(sig, {}, make::truth()).status == VerdictStatus::MachineValid);
    CHECK(check_tier1(sig, {make::falsity()}, q).status == VerdictStatus::MachineValid);

    Tier1Limits tight;
    tight.max_atoms = 1;
    const auto v = check_tier1(sig, {p}, q, tight);
    CHECK(v.status == VerdictStatus::Unknown);
    CHECK(v.diagnostic.find("budget") == 0);
}

TEST_CASE("tier 1 agrees with truth tables") {
    const auto st = testing::tier1_vs_truth_tables(1500);
    CHECK(st.disagreements == 0);
    CHECK(st.invalid_verdicts == 0);
    // Both outcomes must be exercised for the comparison to mean anything.
    CHECK(st.valid > 100);
    CHECK(st.valid < 1400);
}

TEST_CASE("emit_smt golden scripts") {
    const auto r = testing::corpus();
    auto [premises, conclusion] = testing::inference_of(r, "C3");
    const std::string c3 = emit_smt(r.signature, premises, conclusion);
    CHECK(testing::matches_golden("tests/golden/smt/c3.smt2", c3));
    CHECK(emit_smt(r.signature, premises, conclusion) == c3);

    const Signature ws = witness_sig();
    const std::string witness =
        emit_smt(ws, {parse_formula("P(c)", ws)}, parse_formula("forall s:Str. P(s)", ws));
    CHECK(testing::matches_golden("tests/golden/smt/witness.smt2", witness));

    const std::string trivial = emit_smt(Signature{}, {}, make::truth());
    CHECK(testing::matches_golden("tests/golden/smt/true.smt2", trivial));
    CHECK(trivial.find("(assert (not true))") != std::string::npos);

    auto [c8_premises, c8] = testing::inference_of(r, "C7");
    const std::string c7 = emit_smt(r.signature, c8_premises, c8);
    CHECK(testing::matches_golden("tests/golden/smt/c7.smt2", c7));

    if (!testing::solver_path().empty()) {
        CHECK(run_z3(c3) == "unsat");
        CHECK(run_z3(witness) == "sat");
        CHECK(run_z3(trivial) == "unsat");
        CHECK(run_z3(c7) == "sat");
    }
}

TEST_CASE("emit_smt arithmetic and numbers") {
    Signature sig;
    sig.functions["n"] = {{}, Sort::integer()};
    sig.functions["x"] = {{}, Sort::real()};
    const std::string s = emit_smt(sig, {parse_formula("x == 1.5 * -2", sig)}, parse_formula("n + 1 < 3 && x <= 2", sig));
    CHECK(s.find("(= |x| (* 1.5 (- 2.0)))") != std::string::npos);
    CHECK(s.find("(<= |x| 2.0)") != std::string::npos);
    CHECK(s.find("(< (+ |n| 1) 3)") != std::string::npos);
    if (!testing::solver_path().empty()) CHECK(run_z3(s) == "sat");
}

TEST_CASE("tier 2 verdicts") {
    if (testing::solver_path().empty()) {
        MESSAGE("no solver installed; tier 2 checks skipped");
        return;
    }
    const auto r = testing::corpus();
    const SolverConfig cfg = testing::solver_config();

    auto [premises, conclusion] = testing::inference_of(r, "C3");
    const auto v = check_tier2(r.signature, premises, conclusion, cfg);
    CHECK(v.status == VerdictStatus::MachineValid);
    CHECK(v.tier == 2);
    CHECK(check_inference(r.signature, premises, conclusion, cfg).status == VerdictStatus::MachineValid);

    const Signature ws = witness_sig();
    const auto w = check_tier2(ws, {parse_formula("P(c)", ws)}, parse_formula("forall s:Str. P(s)", ws), cfg);
    CHECK(w.status == VerdictStatus::MachineInvalid);
    CHECK(w.diagnostic.find("define-fun") != std::string::npos);

    // Semiformal children stay with the user at both tiers.
    auto [c2_premises, c2] = testing::inference_of(r, "C2");
    const auto u = check_inference(r.signature, c2_premises, c2, cfg);
    CHECK(u.status == VerdictStatus::Unknown);
    CHECK(u.tier == 2);
}

TEST_CASE("tier 2 failure modes stay inside the verdict") {
    const auto r = testing::corpus();
    auto [premises, conclusion] = testing::inference_of(r, "C3");

    SolverConfig disabled;
    disabled.enabled = false;
    CHECK(check_inference(r.signature, premises, conclusion, disabled).status == VerdictStatus::Unknown);

    SolverConfig slow;
    slow.enabled = true;
    slow.command = "sleep 5; echo unsat";
    slow.timeout_seconds = 0.001;
    const auto t = check_tier2(r.signature, premises, conclusion, slow);
    CHECK(t.status == VerdictStatus::Unknown);
    CHECK(t.diagnostic == "timeout");
    CHECK(t.elapsed.count() < 2.0);

    SolverConfig missing;
    missing.enabled = true;
    missing.command = "/nonexistent/solver-binary -in";
    const auto m = check_tier2(r.signature, premises, conclusion, missing);
    CHECK(m.status == VerdictStatus::Unknown);
    CHECK(m.diagnostic.find("solver not found") == 0);

    SolverConfig garbage;
    garbage.enabled = true;
    garbage.command = "echo hello";
    CHECK(check_tier2(r.signature, premises, conclusion, garbage).diagnostic.find("malformed") == 0);

    SolverConfig via_file;
    via_file.enabled = true;
    via_file.command = "grep -q check-sat {file} && echo unsat";
    CHECK(check_tier2(r.signature, premises, conclusion, via_file).status == VerdictStatus::MachineValid);
}

TEST_CASE("check_inference does not launch the solver when tier 1 decides") {
    const auto r = testing::corpus();
    const std::string counter = (std::filesystem::temp_directory_path() / "avc-launch-count").string();
    std::filesystem::remove(counter);
    SolverConfig counting;
    counting.enabled = true;
    counting.command = "echo x >> " + counter + "; echo unknown";

    auto [premises, conclusion] = testing::inference_of(r, "C0");
    CHECK(check_inference(r.signature, premises, conclusion, counting).status == VerdictStatus::MachineValid);
    CHECK_FALSE(std::filesystem::exists(counter));

    auto [p3, c3] = testing::inference_of(r, "C3");
    CHECK(check_inference(r.signature, p3, c3, counting).status == VerdictStatus::Unknown);
    CHECK(std::filesystem::exists(counter));
    CHECK(read_file(counter) == "x\n");
    std::filesystem::remove(counter);
}

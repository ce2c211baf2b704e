#include "avc/checker/inference.hpp"

#include "avc/checker/sat.hpp"
#include "avc/checker/smt.hpp"
#include "avc/checker/solver.hpp"
#include "avc/logic/atomize.hpp"
#include "avc/logic/normalize.hpp"
#include "avc/logic/print.hpp"

namespace avc::checker {

using namespace logic;

const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::MachineValid: return "MachineValid";
        case VerdictStatus::MachineInvalid: return "MachineInvalid";
        case VerdictStatus::Unknown: return "Unknown";
    }
    return "Unknown";
}

namespace {

using clock = std::chrono::steady_clock;

InferenceVerdict verdict(VerdictStatus s, int tier, std::string diag, clock::time_point start) {
    return {s, tier, std::move(diag), clock::now() - start};
}

}  // namespace

InferenceVerdict check_tier1(const Signature&, const std::vector<Formula>& premises, const Formula& conclusion,
                             const Tier1Limits& limits) {
    const auto start = clock::now();
    std::vector<Formula> all;
    for (const auto& p : premises) all.push_back(normalize(p));
    all.push_back(normalize(conclusion));
    const Atomization at = atomize(all);

    if (static_cast<int>(at.atoms.size()) > limits.max_atoms)
        return verdict(VerdictStatus::Unknown, 1,
                       "budget: " + std::to_string(at.atoms.size()) + " atoms exceed the limit of " +
                           std::to_string(limits.max_atoms),
                       start);

    // Valid iff premises && !conclusion is unsatisfiable.
    std::vector<Prop> parts(at.skeletons.begin(), at.skeletons.end() - 1);
    parts.push_back(Prop{PNot{at.skeletons.back()}});
    const Cnf cnf = tseitin(Prop{PAnd{std::move(parts)}}, static_cast<int>(at.atoms.size()));
    const SatResult res = solve(cnf, limits.max_decisions);

    switch (res.answer) {
        case SatAnswer::Unsat: return verdict(VerdictStatus::MachineValid, 1, {}, start);
        case SatAnswer::Budget:
            return verdict(VerdictStatus::Unknown, 1,
                           "budget: gave up after " + std::to_string(res.decisions) + " decisions", start);
        case SatAnswer::Sat: break;
    }
    std::string diag = "abstract countermodel:";
    for (std::size_t i = 0; i < at.atoms.size(); ++i)
        diag += "\n  a" + std::to_string(i + 1) + " = " + (res.model[i + 1] ? "true" : "false") + "  [" +
                print(at.atoms[i]) + "]";
    return verdict(VerdictStatus::Unknown, 1, std::move(diag), start);
}

InferenceVerdict check_tier2(const Signature& sig, const std::vector<Formula>& premises, const Formula& conclusion,
                             const SolverConfig& cfg) {
    const auto start = clock::now();
    if (!cfg.enabled) return verdict(VerdictStatus::Unknown, 2, "solver disabled", start);
    const std::string script = emit_smt(sig, premises, conclusion) + "(get-model)\n";
    const SolverRun run = run_solver(cfg, script);
    if (!run.answer) return verdict(VerdictStatus::Unknown, 2, run.failure, start);
    if (*run.answer == "unsat") return verdict(VerdictStatus::MachineValid, 2, {}, start);
    if (*run.answer == "unknown") return verdict(VerdictStatus::Unknown, 2, "solver answered unknown", start);

    std::string model = run.output.substr(run.output.find("sat") + 3);
    while (!model.empty() && (model.front() == '\n' || model.front() == '\r')) model.erase(0, 1);
    std::vector<Formula> all = premises;
    all.push_back(conclusion);
    // Informal atoms are free Booleans here, so a model only shows the
    // abstraction is too weak, not that the inference fails.
    if (mentions_informal(all))
        return verdict(VerdictStatus::Unknown, 2, "sat with informal atoms left free", start);
    return verdict(VerdictStatus::MachineInvalid, 2, std::move(model), start);
}

InferenceVerdict check_inference(const Signature& sig, const std::vector<Formula>& premises, const Formula& conclusion,
                                 const SolverConfig& cfg, const Tier1Limits& limits) {
    InferenceVerdict t1 = check_tier1(sig, premises, conclusion, limits);
    if (t1.status == VerdictStatus::MachineValid || !cfg.enabled) return t1;
    InferenceVerdict t2 = check_tier2(sig, premises, conclusion, cfg);
    t2.elapsed += t1.elapsed;
    if (t2.status == VerdictStatus::Unknown) {
        t2.diagnostic = "tier 1: " + t1.diagnostic + "\ntier 2: " + t2.diagnostic;
    }
    return t2;
}

}  // namespace avc::checker

#include "avc/pipeline/analysis.hpp"

#include <exception>

namespace avc::pipeline {

using checker::InferenceVerdict;

bool AnalysisResult::operator==(const AnalysisResult& o) const {
    if (evidence != o.evidence || program_hash != o.program_hash || verdicts.size() != o.verdicts.size()) return false;
    for (const auto& [id, v] : verdicts) {
        auto it = o.verdicts.find(id);
        if (it == o.verdicts.end() || it->second.status != v.status || it->second.tier != v.tier ||
            it->second.diagnostic != v.diagnostic)
            return false;
    }
    return true;
}

std::vector<std::string> decomposition_order(const rationale::Rationale& r) {
    std::vector<std::string> out;
    for (const auto& id : r.preorder())
        if (r.decomposition_of(id)) out.push_back(id);
    return out;
}

namespace {

struct Jobs {
    std::vector<std::string> parents;
    std::vector<std::string> leaves;
};

Jobs plan(const rationale::Rationale& r, const sl::SubjectProgram& prog) {
    analyzers::check_subject(r, prog);
    return {decomposition_order(r), analyzers::hinted_leaves(r)};
}

InferenceVerdict run_inference(const rationale::Rationale& r, const std::string& parent, const AnalysisOptions& o) {
    std::vector<logic::Formula> premises;
    for (const auto& c : r.decomposition_of(parent)->children) premises.push_back(rationale::statement_formula(r.claim(c)));
    return checker::check_inference(r.signature, premises, rationale::statement_formula(r.claim(parent)), o.solver,
                                    o.limits);
}

AnalysisResult assemble(const Jobs& jobs, std::vector<InferenceVerdict>& verdicts,
                        std::vector<analyzers::Evidence>& evidence, const sl::SubjectProgram& prog) {
    AnalysisResult out;
    out.program_hash = prog.source_hash;
    for (std::size_t i = 0; i < jobs.parents.size(); ++i) out.verdicts.emplace(jobs.parents[i], std::move(verdicts[i]));
    for (std::size_t i = 0; i < jobs.leaves.size(); ++i) out.evidence.emplace(jobs.leaves[i], std::move(evidence[i]));
    return out;
}

}  // namespace

AnalysisResult analyze_serial(const rationale::Rationale& r, const sl::SubjectProgram& prog,
                              const AnalysisOptions& opts) {
    const Jobs jobs = plan(r, prog);
    std::vector<InferenceVerdict> verdicts;
    for (const auto& p : jobs.parents) verdicts.push_back(run_inference(r, p, opts));
    std::vector<analyzers::Evidence> evidence;
    for (const auto& id : jobs.leaves) evidence.push_back(analyzers::run_verifier(r.claim(id), prog));
    return assemble(jobs, verdicts, evidence, prog);
}

AnalysisResult analyze_parallel(const rationale::Rationale& r, const sl::SubjectProgram& prog,
                                const AnalysisOptions& opts) {
    const Jobs jobs = plan(r, prog);
    const long n_inf = static_cast<long>(jobs.parents.size());
    const long n = n_inf + static_cast<long>(jobs.leaves.size());
    std::vector<InferenceVerdict> verdicts(jobs.parents.size());
    std::vector<analyzers::Evidence> evidence(jobs.leaves.size());
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));

#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        try {
            if (i < n_inf)
                verdicts[i] = run_inference(r, jobs.parents[i], opts);
            else
                evidence[i - n_inf] = analyzers::run_verifier(r.claim(jobs.leaves[i - n_inf]), prog);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return assemble(jobs, verdicts, evidence, prog);
}

Json result_to_json(const AnalysisResult& a) {
    Json inf = Json::object();
    for (const auto& [id, v] : a.verdicts)
        inf[id] = {{"status", checker::to_string(v.status)}, {"tier", v.tier}, {"diagnostic", v.diagnostic}};
    Json ev = Json::object();
    for (const auto& [id, e] : a.evidence) ev[id] = analyzers::to_json(e);
    return {{"programHash", a.program_hash}, {"inferences", inf}, {"evidence", ev}};
}

AnalysisResult result_from_json(const Json& j) {
    AnalysisResult a;
    a.program_hash = j.at("programHash").get<std::string>();
    for (const auto& [id, v] : j.at("inferences").items()) {
        InferenceVerdict iv;
        const std::string s = v.at("status").get<std::string>();
        if (s == "MachineValid")
            iv.status = checker::VerdictStatus::MachineValid;
        else if (s == "MachineInvalid")
            iv.status = checker::VerdictStatus::MachineInvalid;
        else if (s == "Unknown")
            iv.status = checker::VerdictStatus::Unknown;
        else
            throw std::invalid_argument("unknown verdict status '" + s + "'");
        iv.tier = v.at("tier").get<int>();
        iv.diagnostic = v.at("diagnostic").get<std::string>();
        a.verdicts.emplace(id, std::move(iv));
    }
    for (const auto& [id, e] : j.at("evidence").items()) a.evidence.emplace(id, analyzers::evidence_from_json(e));
    return a;
}

Json report_json(const rationale::Rationale& r, const AnalysisResult& a) {
    Json inferences = Json::array();
    for (const auto& parent : decomposition_order(r)) {
        const auto& v = a.verdicts.at(parent);
        inferences.push_back({{"parent", parent},
                              {"children", r.decomposition_of(parent)->children},
                              {"status", checker::to_string(v.status)},
                              {"tier", v.tier},
                              {"diagnostic", v.diagnostic}});
    }
    Json conjectures = Json::array();
    for (const auto& id : r.preorder()) {
        if (!r.is_leaf(id)) continue;
        auto e = a.evidence.find(id);
        Json c = {{"claim", id}};
        if (e == a.evidence.end()) {
            c["status"] = "none";
        } else {
            c["status"] = analyzers::to_string(e->second.status);
            c["verifier"] = e->second.verifier;
            c["details"] = e->second.details;
        }
        conjectures.push_back(std::move(c));
    }
    const auto items = assurance::extract_checklist(r, a.evidence, a.verdicts);
    return {{"rationale", r.name},
            {"programHash", a.program_hash},
            {"inferences", inferences},
            {"conjectures", conjectures},
            {"checklistSize", items.size()}};
}

namespace {

struct Counts {
    int valid = 0, invalid = 0, unknown_inf = 0, verified = 0, refuted = 0, unknown_ev = 0;
};

Counts count(const AnalysisResult& a) {
    Counts c;
    for (const auto& [id, v] : a.verdicts) {
        if (v.status == checker::VerdictStatus::MachineValid) ++c.valid;
        else if (v.status == checker::VerdictStatus::MachineInvalid) ++c.invalid;
        else ++c.unknown_inf;
    }
    for (const auto& [id, e] : a.evidence) {
        if (e.status == analyzers::EvidenceStatus::Verified) ++c.verified;
        else if (e.status == analyzers::EvidenceStatus::Refuted) ++c.refuted;
        else ++c.unknown_ev;
    }
    return c;
}

std::string children_text(const rationale::Rationale& r, const std::string& parent) {
    std::string out;
    for (const auto& c : r.decomposition_of(parent)->children) out += (out.empty() ? "" : ", ") + c;
    return out;
}

}  // namespace

std::string report_text(const rationale::Rationale& r, const AnalysisResult& a) {
    const Counts c = count(a);
    std::string out = "rationale " + r.name + "\n";
    out += "inferences: " + std::to_string(c.valid) + " MachineValid, " + std::to_string(c.invalid) +
           " MachineInvalid, " + std::to_string(c.unknown_inf) + " Unknown\n";
    for (const auto& parent : decomposition_order(r)) {
        const auto& v = a.verdicts.at(parent);
        out += "  " + parent + " <- {" + children_text(r, parent) + "}: " + checker::to_string(v.status) +
               " (tier " + std::to_string(v.tier) + ")\n";
    }
    out += "conjectures: " + std::to_string(c.verified) + " Verified, " + std::to_string(c.refuted) + " Refuted, " +
           std::to_string(c.unknown_ev) + " Unknown\n";
    for (const auto& [id, e] : a.evidence)
        out += "  " + id + " " + e.verifier + ": " + analyzers::to_string(e.status) + "\n";
    out += "checklist: " + std::to_string(assurance::extract_checklist(r, a.evidence, a.verdicts).size()) + " items\n";
    return out;
}

std::string report_markdown(const rationale::Rationale& r, const AnalysisResult& a) {
    std::string out = "# Analysis: " + r.name + "\n\n## Inferences\n\n| Parent | Premises | Status | Tier |\n|---|---|---|---|\n";
    for (const auto& parent : decomposition_order(r)) {
        const auto& v = a.verdicts.at(parent);
        out += "| " + parent + " | " + children_text(r, parent) + " | " + checker::to_string(v.status) + " | " +
               std::to_string(v.tier) + " |\n";
    }
    out += "\n## Conjectures\n\n| Claim | Verifier | Status |\n|---|---|---|\n";
    for (const auto& id : r.preorder()) {
        if (!r.is_leaf(id)) continue;
        auto e = a.evidence.find(id);
        out += "| " + id + " | " + (e == a.evidence.end() ? "-" : e->second.verifier) + " | " +
               (e == a.evidence.end() ? "none" : analyzers::to_string(e->second.status)) + " |\n";
    }
    out += "\nChecklist: " + std::to_string(assurance::extract_checklist(r, a.evidence, a.verdicts).size()) +
           " items.\n";
    return out;
}

}  // namespace avc::pipeline

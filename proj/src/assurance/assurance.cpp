#include "avc/assurance/assurance.hpp"

#include "avc/logic/print.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace avc::assurance {

std::string inference_item_id(const std::string& parent) { return "inference:" + parent; }

namespace {

std::string statement_text(const rationale::Claim& c) {
    if (const auto* f = std::get_if<logic::Formula>(&c.statement)) return logic::print(*f);
    return std::get<rationale::InformalText>(c.statement).text;
}

void check_ids(const rationale::Rationale& r, const EvidenceMap& evidence, const VerdictMap& verdicts) {
    for (const auto& [id, e] : evidence)
        if (!r.claims.contains(id) || !r.is_leaf(id))
            throw std::invalid_argument("evidence for '" + id + "' does not name a leaf claim");
    for (const auto& [id, v] : verdicts)
        if (!r.decomposition_of(id))
            throw std::invalid_argument("verdict for '" + id + "' does not name a decomposition");
}

}  // namespace

std::vector<ChecklistItem> extract_checklist(const rationale::Rationale& r, const EvidenceMap& evidence,
                                             const VerdictMap& verdicts) {
    check_ids(r, evidence, verdicts);
    std::vector<ChecklistItem> out;
    for (const auto& id : r.preorder()) {
        const rationale::Claim& c = r.claim(id);
        if (const auto* d = r.decomposition_of(id)) {
            auto v = verdicts.find(id);
            if (v != verdicts.end() && v->second.status == VerdictStatus::MachineValid) continue;
            ChecklistItem item;
            item.id = inference_item_id(id);
            item.kind = ItemKind::Inference;
            item.target = id;
            std::string premises;
            for (const auto& child : d->children) premises += (premises.empty() ? "" : ", ") + child;
            item.rendered_text = premises + " together establish " + id + ": " + statement_text(c);
            if (v == verdicts.end()) {
                item.machine_status = "none";
            } else {
                item.machine_status = checker::to_string(v->second.status);
                item.counterexample = v->second.status == VerdictStatus::MachineInvalid;
                item.machine_detail = v->second.diagnostic;
            }
            out.push_back(std::move(item));
            continue;
        }
        auto e = evidence.find(id);
        if (e != evidence.end() && e->second.status == EvidenceStatus::Verified) continue;
        ChecklistItem item;
        item.id = id;
        item.kind = ItemKind::Conjecture;
        item.target = id;
        item.rendered_text = statement_text(c);
        if (e == evidence.end()) {
            item.machine_status = "none";
        } else {
            item.machine_status = analyzers::to_string(e->second.status);
            item.machine_detail = e->second.verifier + ": " + e->second.details.dump();
        }
        out.push_back(std::move(item));
    }
    return out;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Accepted: return "accepted";
        case Verdict::Doubted: return "doubted";
        case Verdict::Pending: return "pending";
    }
    return "pending";
}

std::optional<Verdict> verdict_from_string(const std::string& s) {
    std::string lower = s;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (lower == "accepted") return Verdict::Accepted;
    if (lower == "doubted") return Verdict::Doubted;
    if (lower == "pending") return Verdict::Pending;
    return std::nullopt;
}

std::map<std::string, Judgment> current_judgments(const JudgmentLog& log) {
    std::map<std::string, Judgment> out;
    for (const auto& j : log) out[j.item_id] = j;
    return out;
}

const char* to_string(Status s) {
    switch (s) {
        case Status::Established: return "Established";
        case Status::Blocked: return "Blocked";
        case Status::Open: return "Open";
    }
    return "Open";
}

StatusReport propagate(const rationale::Rationale& r, const EvidenceMap& evidence, const VerdictMap& verdicts,
                       const JudgmentLog& judgments) {
    check_ids(r, evidence, verdicts);
    const auto current = current_judgments(judgments);
    auto verdict_of = [&](const std::string& item) {
        auto it = current.find(item);
        return it == current.end() ? Verdict::Pending : it->second.verdict;
    };

    StatusReport out;
    auto visit = [&](auto&& self, const std::string& id) -> Status {
        Status s = Status::Open;
        if (const auto* d = r.decomposition_of(id)) {
            bool all = true, blocked = false;
            for (const auto& c : d->children) {
                const Status cs = self(self, c);
                all = all && cs == Status::Established;
                blocked = blocked || cs == Status::Blocked;
            }
            auto v = verdicts.find(id);
            const bool valid = v != verdicts.end() && v->second.status == VerdictStatus::MachineValid;
            const bool invalid = v != verdicts.end() && v->second.status == VerdictStatus::MachineInvalid;
            // Judgments only apply to checklist items.
            const Verdict j = valid ? Verdict::Pending : verdict_of(inference_item_id(id));
            if (j == Verdict::Accepted && invalid)
                out.warnings.push_back("inference:" + id + " accepted despite a machine counterexample");
            const bool ok = valid || j == Verdict::Accepted;
            if (j == Verdict::Doubted || blocked)
                s = Status::Blocked;
            else if (ok && all)
                s = Status::Established;
        } else {
            auto e = evidence.find(id);
            const bool verified = e != evidence.end() && e->second.status == EvidenceStatus::Verified;
            const bool refuted = e != evidence.end() && e->second.status == EvidenceStatus::Refuted;
            const Verdict j = verified ? Verdict::Pending : verdict_of(id);
            if (verified || j == Verdict::Accepted) {
                s = Status::Established;
                if (refuted) out.warnings.push_back(id + " accepted despite a machine refutation");
            } else if (j == Verdict::Doubted || refuted) {
                s = Status::Blocked;
            }
        }
        out.status[id] = s;
        return s;
    };
    if (r.claims.contains(r.root)) visit(visit, r.root);
    for (const auto& [id, c] : r.claims)
        if (!out.status.contains(id)) out.status[id] = Status::Open;
    return out;
}

WhatIf whatif(const AssuranceState& baseline, const JudgmentLog& overlay) {
    const rationale::Rationale& r = *baseline.rationale;
    if (!overlay.empty()) {
        std::set<std::string> items;
        for (const auto& i : extract_checklist(r, baseline.evidence, baseline.verdicts)) items.insert(i.id);
        for (const auto& j : overlay)
            if (!items.contains(j.item_id)) throw std::invalid_argument("unknown checklist item '" + j.item_id + "'");
    }
    const StatusReport before = propagate(r, baseline.evidence, baseline.verdicts, baseline.judgments);
    JudgmentLog merged = baseline.judgments;
    merged.insert(merged.end(), overlay.begin(), overlay.end());
    WhatIf out;
    out.report = propagate(r, baseline.evidence, baseline.verdicts, merged);
    for (const auto& [id, s] : out.report.status)
        if (before.status.at(id) != s) out.delta.insert(id);
    return out;
}

}  // namespace avc::assurance

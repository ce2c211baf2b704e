#pragma once

#include "avc/analyzers/verifiers.hpp"
#include "avc/checker/inference.hpp"
#include "avc/rationale/rationale.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace avc::assurance {

using analyzers::EvidenceMap;
using analyzers::EvidenceStatus;
using checker::VerdictStatus;

// Inference verdicts keyed by decomposition parent.
using VerdictMap = std::map<std::string, checker::InferenceVerdict>;

enum class ItemKind { Conjecture, Inference };

struct ChecklistItem {
    std::string id;      // claim id, or "inference:<parent>"
    ItemKind kind = ItemKind::Conjecture;
    std::string target;  // leaf claim or decomposition parent
    std::string rendered_text;
    std::string machine_status;  // e.g. "Unknown", "MachineInvalid", "none"
    bool counterexample = false;  // a MachineInvalid verdict is attached
    std::string machine_detail;   // diagnostic or verifier details

    bool operator==(const ChecklistItem&) const = default;
};

std::string inference_item_id(const std::string& parent);

// Unverified leaves and decompositions without a MachineValid verdict, in
// depth-first order with each inference ahead of its children. Throws
// std::invalid_argument on ids that do not resolve.
std::vector<ChecklistItem> extract_checklist(const rationale::Rationale& r, const EvidenceMap& evidence,
                                             const VerdictMap& verdicts);

enum class Verdict { Accepted, Doubted, Pending };

const char* to_string(Verdict v);
std::optional<Verdict> verdict_from_string(const std::string& s);  // case-insensitive

struct Judgment {
    std::string item_id;
    Verdict verdict = Verdict::Pending;
    std::string note;
    std::int64_t timestamp = 0;  // milliseconds since the epoch

    bool operator==(const Judgment&) const = default;
};

// Append-only; the latest entry for an item wins.
using JudgmentLog = std::vector<Judgment>;

std::map<std::string, Judgment> current_judgments(const JudgmentLog& log);

enum class Status { Established, Blocked, Open };

const char* to_string(Status s);

struct StatusReport {
    std::map<std::string, Status> status;
    // Accepted items whose machine result disagrees.
    std::vector<std::string> warnings;

    bool established_with_warnings(const std::string& root) const {
        return status.at(root) == Status::Established && !warnings.empty();
    }
    bool operator==(const StatusReport&) const = default;
};

StatusReport propagate(const rationale::Rationale& r, const EvidenceMap& evidence, const VerdictMap& verdicts,
                       const JudgmentLog& judgments);

struct AssuranceState {
    const rationale::Rationale* rationale = nullptr;
    EvidenceMap evidence;
    VerdictMap verdicts;
    JudgmentLog judgments;
};

struct WhatIf {
    StatusReport report;
    std::set<std::string> delta;  // claims whose status changed
};

// Throws std::invalid_argument when an overlay names no checklist item.
WhatIf whatif(const AssuranceState& baseline, const JudgmentLog& overlay);

}  // namespace avc::assurance

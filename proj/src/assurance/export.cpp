#include "avc/assurance/export.hpp"

#include "avc/logic/print.hpp"

#include <stdexcept>

namespace avc::assurance {

const char* to_string(ItemKind k) { return k == ItemKind::Inference ? "Inference" : "Conjecture"; }

Json to_json(const ChecklistItem& item) {
    Json j;
    j["schema"] = kChecklistFormat;
    j["id"] = item.id;
    j["kind"] = to_string(item.kind);
    j["target"] = item.target;
    j["text"] = item.rendered_text;
    j["machineStatus"] = item.machine_status;
    j["counterexample"] = item.counterexample;
    j["machineDetail"] = item.machine_detail;
    return j;
}

Json checklist_json(const std::vector<ChecklistItem>& items) {
    Json out = Json::array();
    for (const auto& i : items) out.push_back(to_json(i));
    return out;
}

namespace {

std::string quoted_block(const std::string& text) {
    std::string out = "> ";
    for (char c : text) {
        out += c;
        if (c == '\n') out += "> ";
    }
    return out + "\n";
}

std::string statement_text(const rationale::Claim& c) {
    if (const auto* f = std::get_if<logic::Formula>(&c.statement)) return logic::print(*f);
    return std::get<rationale::InformalText>(c.statement).text;
}

}  // namespace

std::string checklist_markdown(const rationale::Rationale& r, const std::vector<ChecklistItem>& items) {
    std::string out = "# Checklist: " + r.name + "\n\n";
    out += "<!-- " + std::string(kChecklistFormat) + " -->\n\n";
    if (items.empty()) return out + kEmptyChecklistBanner + "\n";
    out += std::to_string(items.size()) + (items.size() == 1 ? " item" : " items") + " to review.\n";
    int n = 0;
    for (const auto& item : items) {
        const rationale::Claim& target = r.claim(item.target);
        out += "\n## " + std::to_string(++n) + ". " + item.id + " (" + to_string(item.kind) + ")\n\n";
        out += "**" + target.title + "**\n\n";
        if (item.kind == ItemKind::Inference) {
            out += "Premises:\n\n";
            for (const auto& c : r.decomposition_of(item.target)->children)
                out += "- " + c + ": " + statement_text(r.claim(c)) + "\n";
            out += "\nConclusion (" + item.target + "):\n\n";
        } else {
            out += "Statement:\n\n";
        }
        out += quoted_block(statement_text(target));
        out += "\nMachine status: " + item.machine_status;
        if (item.counterexample) out += " (machine counterexample attached)";
        out += "\n";
        if (!item.machine_detail.empty()) out += "\n```\n" + item.machine_detail + "\n```\n";
        if (!target.note.empty()) out += "\nNote: " + target.note + "\n";
        out += "\nVerdict: pending\n";
    }
    return out;
}

Json to_json(const StatusReport& report) {
    Json status = Json::object();
    for (const auto& [id, s] : report.status) status[id] = to_string(s);
    return {{"status", status}, {"warnings", report.warnings}};
}

Json to_json(const Judgment& j) {
    return {{"itemId", j.item_id}, {"verdict", to_string(j.verdict)}, {"note", j.note}, {"timestamp", j.timestamp}};
}

Judgment judgment_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("judgment must be an object");
    Judgment out;
    const auto id = j.find("itemId");
    if (id == j.end() || !id->is_string()) throw std::invalid_argument("judgment needs a string 'itemId'");
    out.item_id = id->get<std::string>();
    const auto v = j.find("verdict");
    if (v == j.end() || !v->is_string()) throw std::invalid_argument("judgment needs a string 'verdict'");
    auto verdict = verdict_from_string(v->get<std::string>());
    if (!verdict) throw std::invalid_argument("verdict must be accepted, doubted or pending");
    out.verdict = *verdict;
    if (auto n = j.find("note"); n != j.end()) {
        if (!n->is_string()) throw std::invalid_argument("'note' must be a string");
        out.note = n->get<std::string>();
    }
    if (auto t = j.find("timestamp"); t != j.end()) {
        if (!t->is_number_integer()) throw std::invalid_argument("'timestamp' must be an integer");
        out.timestamp = t->get<std::int64_t>();
    }
    return out;
}

}  // namespace avc::assurance

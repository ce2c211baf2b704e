#pragma once

#include "avc/assurance/assurance.hpp"

#include <json.hpp>

namespace avc::assurance {

using Json = nlohmann::ordered_json;

inline constexpr const char* kChecklistFormat = "avc-checklist v1";
inline constexpr const char* kEmptyChecklistBanner = "Checklist empty — root established pending no items.";

const char* to_string(ItemKind k);

Json to_json(const ChecklistItem& item);
Json checklist_json(const std::vector<ChecklistItem>& items);
std::string checklist_markdown(const rationale::Rationale& r, const std::vector<ChecklistItem>& items);

Json to_json(const StatusReport& report);
Json to_json(const Judgment& j);
// Throws std::invalid_argument on a malformed object.
Judgment judgment_from_json(const Json& j);

}  // namespace avc::assurance

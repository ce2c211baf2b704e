#pragma once

#include "avc/rationale/rationale.hpp"

#include <json.hpp>

namespace avc::rationale {

using Json = nlohmann::ordered_json;

inline constexpr const char* kInterchangeFormat = "avc-rationale-json v1";

Json to_json(const logic::Sort& s);
Json to_json(const logic::Term& t);
Json to_json(const logic::Formula& f);
Json to_json(const Rationale& r);

logic::Sort sort_from_json(const Json& j);
logic::Term term_from_json(const Json& j);
logic::Formula formula_from_json(const Json& j);
// Throws std::runtime_error on a malformed document.
Rationale rationale_from_json(const Json& j);

}  // namespace avc::rationale

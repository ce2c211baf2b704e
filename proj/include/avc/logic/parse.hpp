#pragma once

#include "avc/logic/formula.hpp"
#include "avc/util/errors.hpp"

#include <string_view>

namespace avc::logic {

// Parses a closed formula over `sig`. Throws ParseError on syntax, sort
// and undeclared-symbol errors; positions are relative to `text`.
Formula parse_formula(std::string_view text, const Signature& sig);

}  // namespace avc::logic

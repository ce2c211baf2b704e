#pragma once

#include "avc/logic/formula.hpp"

#include <string>

namespace avc::logic {

// Canonical concrete syntax (formula-grammar v1). parse_formula inverts it.
std::string print(const Term& term);
std::string print(const Formula& formula);

}  // namespace avc::logic

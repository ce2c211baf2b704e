#pragma once

#include "avc/logic/formula.hpp"
#include "avc/util/errors.hpp"

#include <optional>
#include <set>
#include <string>

namespace avc::logic {

// Empty result iff every symbol is declared with matching sorts, the
// formula is closed, enumerations are nonempty and duplicate-free, and
// informal atoms are normalized.
Diagnostics well_formed(const Signature& sig, const Formula& phi);

// Sort of a term, with numeric literals adopting `Real` unless the
// context fixes a sort. Diagnostics are appended on failure.
struct TermSort {
    Sort sort;
    bool literal_only = false;  // built solely from numeric literals
};
std::optional<TermSort> infer_sort(const Signature& sig, const Term& term, Diagnostics& diags,
                                   const std::vector<std::pair<std::string, Sort>>& scope = {});

std::set<std::string> string_literals(const Formula& phi);

}  // namespace avc::logic

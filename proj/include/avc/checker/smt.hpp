#pragma once

#include "avc/logic/formula.hpp"

#include <string>
#include <vector>

namespace avc::checker {

inline constexpr const char* kSmtHeader = "; avc smt v1";

// SMT-LIB 2 script whose check-sat is unsat iff the inference is valid.
// Named sorts and Str are uninterpreted; string literals are pairwise
// distinct constants; informal atoms are free Boolean constants.
std::string emit_smt(const logic::Signature& sig, const std::vector<logic::Formula>& premises,
                     const logic::Formula& conclusion);

// True when any of the formulas contains an informal atom.
bool mentions_informal(const std::vector<logic::Formula>& formulas);

}  // namespace avc::checker

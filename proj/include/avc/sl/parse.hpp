#pragma once

#include "avc/sl/ast.hpp"

#include <map>
#include <string_view>

namespace avc::sl {

inline constexpr std::string_view kSlHeader = "#!sl v1";

// Throws ParseError on syntax errors, duplicate names, assignments to
// constants and functions with a path that does not return.
SubjectProgram parse_program(std::string_view text);

// Canonical source text; parse_program inverts it up to positions.
std::string print_program(const SubjectProgram& prog);
std::string print_expr(const Expr& e);

// True when every path through the block ends in a return.
bool always_returns(const Block& body);

// Top-level constants plus function-local names bound exactly once, by a
// plain assignment of a literal. Names bound more than once anywhere are
// left out.
std::map<std::string, Value> extract_constants(const SubjectProgram& prog);

}  // namespace avc::sl

#pragma once

#include "avc/analyzers/verifiers.hpp"
#include "avc/sl/interp.hpp"

#include <functional>

namespace avc::analyzers::detail {

const sl::FunctionDef& require_function(const sl::SubjectProgram& prog, const std::string& name);

// Visits every statement, nested ones included, in source order.
void for_each_stmt(const sl::Block& body, const std::function<void(const sl::Stmt&)>& fn);

// Visits every expression under a statement list, lambdas included.
void for_each_expr(const sl::Block& body, const std::function<void(const sl::Expr&)>& fn);
void for_each_expr(const sl::Expr& e, const std::function<void(const sl::Expr&)>& fn);

bool assigns(const sl::Stmt& s, const std::string& var);
bool binds(const sl::FunctionDef& fn, const std::string& var);

// Raised by the extern stubs below; a run that hits it says nothing.
struct ExternTouched {
    std::string name;
};

sl::ExternTable refusing_externs(const sl::SubjectProgram& prog);

Evidence make_evidence(std::string verifier, EvidenceStatus status, Json details, const sl::SubjectProgram& prog);

std::string loc_text(sl::Loc loc);

}  // namespace avc::analyzers::detail

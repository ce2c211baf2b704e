#pragma once

#include "avc/sl/ast.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace avc::sl {

using ExternFn = std::function<Value(const std::vector<Value>&)>;
using ExternTable = std::map<std::string, ExternFn>;

class EvalError : public std::runtime_error {
public:
    EvalError(std::string message, SourcePos pos)
        : std::runtime_error("line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " +
                             message),
          pos_(pos) {}
    SourcePos pos() const { return pos_; }

private:
    SourcePos pos_;
};

// Big-step evaluator over exact rationals.
class Interpreter {
public:
    using Env = std::map<std::string, Value>;

    // Throws std::invalid_argument when a declared extern has no callback.
    Interpreter(const SubjectProgram& prog, ExternTable externs);

    Value call(const std::string& function, const std::vector<Value>& args);

    Value eval(const Expr& e, const Env& env);
    // Runs a block; yields the returned value if a return statement ran.
    std::optional<Value> exec(const Block& body, Env& env);

private:
    Value call_builtin(const Call& c, const Env& env, Loc loc);
    Value binary(const Binary& b, const Env& env, Loc loc);

    const SubjectProgram& prog_;
    ExternTable externs_;
    int depth_ = 0;
};

Value interpret(const SubjectProgram& prog, const std::string& function, const std::vector<Value>& args,
                const ExternTable& externs);

}  // namespace avc::sl

#pragma once

#include "avc/logic/indirect.hpp"
#include "avc/sl/value.hpp"
#include "avc/util/errors.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace avc::sl {

using logic::Indirect;
using logic::Overloaded;

// Source position that never takes part in structural equality.
struct Loc {
    int line = 0;
    int column = 0;

    SourcePos pos() const { return {line, column}; }
    bool operator==(const Loc&) const { return true; }
};

struct Expr;

struct NumLit {
    Rational value;
    bool decimal = false;  // written with a fractional part
    bool operator==(const NumLit&) const = default;
};
struct StrLit {
    std::string text;
    bool operator==(const StrLit&) const = default;
};
struct BoolLit {
    bool value;
    bool operator==(const BoolLit&) const = default;
};
struct VarRef {
    std::string name;
    bool operator==(const VarRef&) const = default;
};
struct ListLit {
    std::vector<Expr> items;
};
struct RecordLit {
    std::vector<std::pair<std::string, Expr>> fields;  // written order
};

enum class UnaryOp { Neg, Not };
enum class BinaryOp { Add, Sub, Mul, Eq, Ne, Lt, Le, Gt, Ge, In, NotIn, And, Or };

struct Unary {
    UnaryOp op;
    Indirect<Expr> operand;
};
struct Binary {
    BinaryOp op;
    Indirect<Expr> lhs;
    Indirect<Expr> rhs;
};
// Builtin, extern or program function call.
struct Call {
    std::string function;
    std::vector<Expr> args;
};
// `receiver.method(args)`; `append` requires a variable receiver.
struct MethodCall {
    Indirect<Expr> receiver;
    std::string method;
    std::vector<Expr> args;
};
// Only valid as the predicate argument of count_if.
struct Lambda {
    std::vector<std::string> params;
    Indirect<Expr> body;
};

bool operator==(const ListLit& a, const ListLit& b);
bool operator==(const RecordLit& a, const RecordLit& b);
bool operator==(const Unary& a, const Unary& b);
bool operator==(const Binary& a, const Binary& b);
bool operator==(const Call& a, const Call& b);
bool operator==(const MethodCall& a, const MethodCall& b);
bool operator==(const Lambda& a, const Lambda& b);

using ExprNodeAlias =
    std::variant<NumLit, StrLit, BoolLit, VarRef, ListLit, RecordLit, Unary, Binary, Call, MethodCall, Lambda>;

struct Expr {
    ExprNodeAlias node;
    Loc loc;

    bool operator==(const Expr&) const = default;
    template <class T>
    bool is() const {
        return std::holds_alternative<T>(node);
    }
    template <class T>
    const T& as() const {
        return std::get<T>(node);
    }
};

struct Stmt;
using Block = std::vector<Stmt>;

enum class AssignOp { Set, Add, Sub };

struct Assign {
    std::string target;
    AssignOp op = AssignOp::Set;
    Expr value;
    bool let = false;  // written with `let`
    bool operator==(const Assign&) const = default;
};
struct ExprStmt {
    Expr expr;
    bool operator==(const ExprStmt&) const = default;
};
struct IfBranch {
    Expr cond;
    Block body;
};
struct If {
    std::vector<IfBranch> branches;  // if, then each elif
    std::optional<Block> orelse;
};
struct For {
    std::string var;
    Expr iterable;
    Block body;
};
struct Return {
    Expr value;
    bool operator==(const Return&) const = default;
};

bool operator==(const IfBranch& a, const IfBranch& b);
bool operator==(const If& a, const If& b);
bool operator==(const For& a, const For& b);

using StmtNodeAlias = std::variant<Assign, ExprStmt, If, For, Return>;

struct Stmt {
    StmtNodeAlias node;
    Loc loc;

    bool operator==(const Stmt&) const = default;
    template <class T>
    bool is() const {
        return std::holds_alternative<T>(node);
    }
    template <class T>
    const T& as() const {
        return std::get<T>(node);
    }
};

struct ConstDecl {
    std::string name;
    Value value;  // Num, Str or Bool
    bool decimal = false;
    Loc loc;
    bool operator==(const ConstDecl&) const = default;
};

struct ExternDecl {
    std::string name;
    std::vector<std::string> params;
    Loc loc;
    bool operator==(const ExternDecl&) const = default;
    std::size_t arity() const { return params.size(); }
};

struct FunctionDef {
    std::string name;
    std::vector<std::string> params;
    Block body;
    Loc loc;
    bool operator==(const FunctionDef&) const = default;
};

// Declarations keep source order. Equality ignores positions and the hash.
struct SubjectProgram {
    std::vector<ConstDecl> consts;
    std::vector<ExternDecl> externs;
    std::vector<FunctionDef> functions;
    std::string source_hash;  // SHA-256 of the raw source bytes

    const ConstDecl* find_const(const std::string& name) const;
    const ExternDecl* find_extern(const std::string& name) const;
    const FunctionDef* find_function(const std::string& name) const;

    bool operator==(const SubjectProgram& o) const {
        return consts == o.consts && externs == o.externs && functions == o.functions;
    }
};

}  // namespace avc::sl

#pragma once

#include "avc/util/errors.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace avc::logic {

struct Sort {
    enum class Kind { Bool, Int, Real, Str, Named };

    Kind kind = Kind::Bool;
    std::string name;  // only for Named

    static Sort boolean() { return {Kind::Bool, {}}; }
    static Sort integer() { return {Kind::Int, {}}; }
    static Sort real() { return {Kind::Real, {}}; }
    static Sort str() { return {Kind::Str, {}}; }
    static Sort named(std::string n) { return {Kind::Named, std::move(n)}; }

    // Builtin keyword or the declared name.
    static Sort from_name(const std::string& n);

    bool is_numeric() const { return kind == Kind::Int || kind == Kind::Real; }
    std::string to_string() const;

    bool operator==(const Sort&) const = default;
};

struct FunctionDecl {
    std::vector<Sort> args;
    Sort result;

    bool operator==(const FunctionDecl&) const = default;
};

struct PredicateDecl {
    std::vector<Sort> args;

    bool operator==(const PredicateDecl&) const = default;
};

// Symbols a formula may mention. Constants are 0-ary functions.
struct Signature {
    std::set<std::string> sorts;
    std::map<std::string, FunctionDecl> functions;
    std::map<std::string, PredicateDecl> predicates;
    std::set<std::string> string_literals;

    bool declares(const std::string& name) const { return functions.contains(name) || predicates.contains(name); }

    // Name clashes, reserved names and undeclared sorts.
    Diagnostics check() const;

    bool operator==(const Signature&) const = default;
};

// Names of the form `_v<digits>` are reserved for canonical bound variables.
bool is_reserved_name(const std::string& name);

}  // namespace avc::logic

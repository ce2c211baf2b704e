#pragma once

#include "avc/sl/ast.hpp"
#include "avc/sl/value.hpp"

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace avc::analyzers {

struct ExactNum {
    Rational value;
    bool operator==(const ExactNum&) const = default;
};
struct AnyNum {
    bool operator==(const AnyNum&) const = default;
};
// A string drawn from a nonempty literal set. StrLits comes from literal
// expressions, EnumStr from merging different literals across paths; both
// describe the same strings.
struct StrLits {
    std::set<std::string> items;
    bool operator==(const StrLits&) const = default;
};
struct EnumStr {
    std::set<std::string> items;
    bool operator==(const EnumStr&) const = default;
};
struct AnyStr {
    bool operator==(const AnyStr&) const = default;
};
// List of strings; elements come from `items` unless `may_contain_unknown`.
struct ListOfStrLits {
    std::set<std::string> items;
    bool may_contain_unknown = false;
    bool operator==(const ListOfStrLits&) const = default;
};
struct AbstractValue;
struct RecordShape {
    std::map<std::string, AbstractValue> fields;
};
struct Top {
    bool operator==(const Top&) const = default;
};

struct AbstractValue {
    std::variant<ExactNum, AnyNum, StrLits, AnyStr, ListOfStrLits, RecordShape, EnumStr, Top> node;

    template <class T>
    bool is() const {
        return std::holds_alternative<T>(node);
    }
    template <class T>
    const T& as() const {
        return std::get<T>(node);
    }

    bool is_numeric() const { return is<ExactNum>() || is<AnyNum>(); }
    bool is_string() const { return is<StrLits>() || is<EnumStr>() || is<AnyStr>(); }
    // Literal set for StrLits/EnumStr, empty otherwise.
    const std::set<std::string>* string_set() const;
};

bool operator==(const RecordShape& a, const RecordShape& b);
bool operator==(const AbstractValue& a, const AbstractValue& b);

AbstractValue join(const AbstractValue& a, const AbstractValue& b);
// a ⊑ b
bool leq(const AbstractValue& a, const AbstractValue& b);
// Concretization membership: v ∈ γ(a).
bool contains(const AbstractValue& a, const sl::Value& v);

std::string to_string(const AbstractValue& a);

// Flow-sensitive abstract run of one function. Parameters and extern
// results are Top; calls to program functions are not followed.
struct FunctionSummary {
    std::vector<std::pair<sl::Loc, AbstractValue>> returns;  // one per return statement reached
};

FunctionSummary analyze_function(const sl::SubjectProgram& prog, const sl::FunctionDef& fn);

}  // namespace avc::analyzers

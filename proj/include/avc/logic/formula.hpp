#pragma once

#include "avc/logic/indirect.hpp"
#include "avc/logic/sort.hpp"
#include "avc/util/rational.hpp"

#include <string>
#include <variant>
#include <vector>

namespace avc::logic {

struct Term;

struct Variable {
    std::string name;
    Sort sort;

    bool operator==(const Variable&) const = default;
};

struct NumLiteral {
    Rational value;

    bool operator==(const NumLiteral&) const = default;
};

struct StrLiteral {
    std::string text;

    bool operator==(const StrLiteral&) const = default;
};

// Function application; `+`, `-` and `*` are the builtin arithmetic symbols.
struct Apply {
    std::string function;
    std::vector<Term> args;
};

bool operator==(const Apply& a, const Apply& b);

struct Term {
    std::variant<Variable, NumLiteral, StrLiteral, Apply> node;

    bool operator==(const Term&) const = default;
};

bool is_arithmetic(const std::string& function);

struct Formula;

struct PredicateApp {
    std::string predicate;
    std::vector<Term> args;
};

struct Equals {
    Term lhs;
    Term rhs;
};

enum class Relation { Le, Lt };

struct Compare {
    Relation relation;
    Term lhs;
    Term rhs;
};

// Membership in a finite enumeration of string literals.
struct MemberOf {
    Term element;
    std::vector<std::string> literals;
};

struct InformalAtom {
    std::string text;  // whitespace-normalized
};

struct Not {
    Indirect<Formula> body;
};

struct And {
    std::vector<Formula> items;
};

struct Or {
    std::vector<Formula> items;
};

struct Implies {
    Indirect<Formula> lhs;
    Indirect<Formula> rhs;
};

struct Iff {
    Indirect<Formula> lhs;
    Indirect<Formula> rhs;
};

struct Forall {
    std::string var;
    Sort sort;
    Indirect<Formula> body;
};

struct Exists {
    std::string var;
    Sort sort;
    Indirect<Formula> body;
};

struct TrueConst {};
struct FalseConst {};

bool operator==(const PredicateApp& a, const PredicateApp& b);
bool operator==(const Equals& a, const Equals& b);
bool operator==(const Compare& a, const Compare& b);
bool operator==(const MemberOf& a, const MemberOf& b);
bool operator==(const InformalAtom& a, const InformalAtom& b);
bool operator==(const Not& a, const Not& b);
bool operator==(const And& a, const And& b);
bool operator==(const Or& a, const Or& b);
bool operator==(const Implies& a, const Implies& b);
bool operator==(const Iff& a, const Iff& b);
bool operator==(const Forall& a, const Forall& b);
bool operator==(const Exists& a, const Exists& b);
inline bool operator==(const TrueConst&, const TrueConst&) { return true; }
inline bool operator==(const FalseConst&, const FalseConst&) { return true; }

struct Formula {
    std::variant<PredicateApp, Equals, Compare, MemberOf, InformalAtom, Not, And, Or, Implies, Iff, Forall, Exists,
                 TrueConst, FalseConst>
        node;

    bool operator==(const Formula&) const = default;

    template <class T>
    bool is() const {
        return std::holds_alternative<T>(node);
    }
    template <class T>
    const T& as() const {
        return std::get<T>(node);
    }
};


// True when the top constructor is a propositional connective or constant.
bool is_connective(const Formula& f);

namespace make {

Term var(std::string name, Sort sort);
Term num(Rational value);
Term str(std::string text);
Term app(std::string function, std::vector<Term> args = {});

Formula pred(std::string name, std::vector<Term> args = {});
Formula eq(Term lhs, Term rhs);
Formula le(Term lhs, Term rhs);
Formula lt(Term lhs, Term rhs);
Formula member(Term element, std::vector<std::string> literals);
Formula informal(std::string text);
Formula negate(Formula body);
Formula conj(std::vector<Formula> items);
Formula disj(std::vector<Formula> items);
Formula implies(Formula lhs, Formula rhs);
Formula iff(Formula lhs, Formula rhs);
Formula forall(std::string var, Sort sort, Formula body);
Formula exists(std::string var, Sort sort, Formula body);
Formula truth();
Formula falsity();

}  // namespace make

}  // namespace avc::logic

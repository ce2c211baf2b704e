#include "avc/logic/formula.hpp"

#include "avc/util/text.hpp"

#include <cctype>

namespace avc::logic {

Sort Sort::from_name(const std::string& n) {
    if (n == "Bool") return boolean();
    if (n == "Int") return integer();
    if (n == "Real") return real();
    if (n == "Str") return str();
    return named(n);
}

std::string Sort::to_string() const {
    switch (kind) {
        case Kind::Bool: return "Bool";
        case Kind::Int: return "Int";
        case Kind::Real: return "Real";
        case Kind::Str: return "Str";
        case Kind::Named: return name;
    }
    return name;
}

bool is_reserved_name(const std::string& name) {
    if (name.size() < 3 || name[0] != '_' || name[1] != 'v') return false;
    for (std::size_t i = 2; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
    return true;
}

namespace {

bool builtin_sort_name(const std::string& n) { return n == "Bool" || n == "Int" || n == "Real" || n == "Str"; }

}  // namespace

Diagnostics Signature::check() const {
    Diagnostics out;
    auto check_sort = [&](const Sort& s, const std::string& owner) {
        if (s.kind == Sort::Kind::Named && !sorts.contains(s.name))
            out.push_back({"undeclared-sort", "sort '" + s.name + "' used by '" + owner + "' is not declared"});
    };
    for (const auto& s : sorts) {
        if (builtin_sort_name(s)) out.push_back({"builtin-sort", "sort '" + s + "' is builtin and cannot be declared"});
        if (!is_identifier(s)) out.push_back({"bad-name", "sort name '" + s + "' is not an identifier"});
    }
    for (const auto& [name, decl] : functions) {
        if (predicates.contains(name))
            out.push_back({"duplicate-symbol", "'" + name + "' is declared as both function and predicate"});
        if (is_reserved_name(name) || !is_identifier(name))
            out.push_back({"bad-name", "'" + name + "' is not a usable symbol name"});
        for (const auto& a : decl.args) check_sort(a, name);
        check_sort(decl.result, name);
    }
    for (const auto& [name, decl] : predicates) {
        if (is_reserved_name(name) || !is_identifier(name))
            out.push_back({"bad-name", "'" + name + "' is not a usable symbol name"});
        for (const auto& a : decl.args) check_sort(a, name);
    }
    return out;
}

bool is_arithmetic(const std::string& function) { return function == "+" || function == "-" || function == "*"; }

bool operator==(const Apply& a, const Apply& b) { return a.function == b.function && a.args == b.args; }
bool operator==(const PredicateApp& a, const PredicateApp& b) { return a.predicate == b.predicate && a.args == b.args; }
bool operator==(const Equals& a, const Equals& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }
bool operator==(const Compare& a, const Compare& b) {
    return a.relation == b.relation && a.lhs == b.lhs && a.rhs == b.rhs;
}
bool operator==(const MemberOf& a, const MemberOf& b) { return a.element == b.element && a.literals == b.literals; }
bool operator==(const InformalAtom& a, const InformalAtom& b) { return a.text == b.text; }
bool operator==(const Not& a, const Not& b) { return a.body == b.body; }
bool operator==(const And& a, const And& b) { return a.items == b.items; }
bool operator==(const Or& a, const Or& b) { return a.items == b.items; }
bool operator==(const Implies& a, const Implies& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }
bool operator==(const Iff& a, const Iff& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }
bool operator==(const Forall& a, const Forall& b) { return a.var == b.var && a.sort == b.sort && a.body == b.body; }
bool operator==(const Exists& a, const Exists& b) { return a.var == b.var && a.sort == b.sort && a.body == b.body; }

bool is_connective(const Formula& f) {
    return f.is<Not>() || f.is<And>() || f.is<Or>() || f.is<Implies>() || f.is<Iff>() || f.is<TrueConst>() ||
           f.is<FalseConst>();
}

namespace make {

Term var(std::string name, Sort sort) { return Term{Variable{std::move(name), std::move(sort)}}; }
Term num(Rational value) { return Term{NumLiteral{std::move(value)}}; }
Term str(std::string text) { return Term{StrLiteral{std::move(text)}}; }
Term app(std::string function, std::vector<Term> args) { return Term{Apply{std::move(function), std::move(args)}}; }

Formula pred(std::string name, std::vector<Term> args) { return Formula{PredicateApp{std::move(name), std::move(args)}}; }
Formula eq(Term lhs, Term rhs) { return Formula{Equals{std::move(lhs), std::move(rhs)}}; }
Formula le(Term lhs, Term rhs) { return Formula{Compare{Relation::Le, std::move(lhs), std::move(rhs)}}; }
Formula lt(Term lhs, Term rhs) { return Formula{Compare{Relation::Lt, std::move(lhs), std::move(rhs)}}; }
Formula member(Term element, std::vector<std::string> literals) {
    return Formula{MemberOf{std::move(element), std::move(literals)}};
}
Formula informal(std::string text) { return Formula{InformalAtom{normalize_space(text)}}; }
Formula negate(Formula body) { return Formula{Not{std::move(body)}}; }
Formula conj(std::vector<Formula> items) { return Formula{And{std::move(items)}}; }
Formula disj(std::vector<Formula> items) { return Formula{Or{std::move(items)}}; }
Formula implies(Formula lhs, Formula rhs) { return Formula{Implies{std::move(lhs), std::move(rhs)}}; }
Formula iff(Formula lhs, Formula rhs) { return Formula{Iff{std::move(lhs), std::move(rhs)}}; }
Formula forall(std::string var, Sort sort, Formula body) {
    return Formula{Forall{std::move(var), std::move(sort), std::move(body)}};
}
Formula exists(std::string var, Sort sort, Formula body) {
    return Formula{Exists{std::move(var), std::move(sort), std::move(body)}};
}
Formula truth() { return Formula{TrueConst{}}; }
Formula falsity() { return Formula{FalseConst{}}; }

}  // namespace make

}  // namespace avc::logic

#include "avc/logic/well_formed.hpp"

#include "avc/logic/print.hpp"
#include "avc/util/text.hpp"

#include <set>

namespace avc::logic {

namespace {

using Scope = std::vector<std::pair<std::string, Sort>>;

bool is_integral(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

// Does a term of sort `ts` fit where `expected` is required?
bool fits(const Term& term, const TermSort& ts, const Sort& expected) {
    if (ts.literal_only) {
        if (!expected.is_numeric()) return false;
        if (expected.kind == Sort::Kind::Int) {
            if (const auto* n = std::get_if<NumLiteral>(&term.node)) return is_integral(n->value);
        }
        return true;
    }
    return ts.sort == expected;
}

void check_args(const Signature& sig, const std::string& owner, const std::vector<Sort>& params,
                const std::vector<Term>& args, Diagnostics& diags, const Scope& scope) {
    if (params.size() != args.size()) {
        diags.push_back({"arity", "'" + owner + "' expects " + std::to_string(params.size()) + " argument(s), got " +
                                      std::to_string(args.size())});
        return;
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
        auto ts = infer_sort(sig, args[i], diags, scope);
        if (ts && !fits(args[i], *ts, params[i]))
            diags.push_back({"sort-mismatch", "argument " + std::to_string(i + 1) + " of '" + owner + "' has sort " +
                                                  ts->sort.to_string() + ", expected " + params[i].to_string()});
    }
}

std::optional<Sort> common_numeric(const Term& a, const TermSort& sa, const Term& b, const TermSort& sb) {
    if (sa.literal_only && sb.literal_only) return Sort::real();
    if (sa.literal_only) return fits(a, sa, sb.sort) ? std::optional(sb.sort) : std::nullopt;
    if (sb.literal_only) return fits(b, sb, sa.sort) ? std::optional(sa.sort) : std::nullopt;
    if (sa.sort.is_numeric() && sa.sort == sb.sort) return sa.sort;
    return std::nullopt;
}

void check_formula(const Signature& sig, const Formula& f, Scope& scope, Diagnostics& diags) {
    std::visit(
        Overloaded{
            [&](const PredicateApp& p) {
                auto it = sig.predicates.find(p.predicate);
                if (it == sig.predicates.end()) {
                    diags.push_back({"undeclared-symbol", "predicate '" + p.predicate + "' is not declared"});
                    for (const auto& a : p.args) infer_sort(sig, a, diags, scope);
                    return;
                }
                check_args(sig, p.predicate, it->second.args, p.args, diags, scope);
            },
            [&](const Equals& e) {
                auto l = infer_sort(sig, e.lhs, diags, scope);
                auto r = infer_sort(sig, e.rhs, diags, scope);
                if (!l || !r) return;
                if (l->literal_only || r->literal_only) {
                    if (!common_numeric(e.lhs, *l, e.rhs, *r))
                        diags.push_back({"sort-mismatch", "cannot compare " + print(e.lhs) + " and " + print(e.rhs)});
                } else if (!(l->sort == r->sort)) {
                    diags.push_back({"sort-mismatch", "equality between sorts " + l->sort.to_string() + " and " +
                                                          r->sort.to_string()});
                }
            },
            [&](const Compare& c) {
                auto l = infer_sort(sig, c.lhs, diags, scope);
                auto r = infer_sort(sig, c.rhs, diags, scope);
                if (l && r && !common_numeric(c.lhs, *l, c.rhs, *r))
                    diags.push_back({"sort-mismatch", "ordering needs two numeric terms of one sort: " + print(c.lhs) +
                                                          ", " + print(c.rhs)});
            },
            [&](const MemberOf& m) {
                auto s = infer_sort(sig, m.element, diags, scope);
                if (s && !(s->sort == Sort::str() && !s->literal_only))
                    diags.push_back({"sort-mismatch", "membership element must have sort Str, got " + s->sort.to_string()});
                if (m.literals.empty()) diags.push_back({"empty-enumeration", "string enumeration is empty"});
                std::set<std::string> seen;
                for (const auto& l : m.literals)
                    if (!seen.insert(l).second) diags.push_back({"duplicate-literal", "enumeration repeats " + quote(l)});
            },
            [&](const InformalAtom& a) {
                if (a.text.empty()) diags.push_back({"informal-text", "informal atom text is empty"});
                else if (a.text != normalize_space(a.text))
                    diags.push_back({"informal-text", "informal atom text is not whitespace-normalized"});
            },
            [&](const Not& n) { check_formula(sig, *n.body, scope, diags); },
            [&](const And& a) {
                for (const auto& i : a.items) check_formula(sig, i, scope, diags);
            },
            [&](const Or& o) {
                for (const auto& i : o.items) check_formula(sig, i, scope, diags);
            },
            [&](const Implies& i) {
                check_formula(sig, *i.lhs, scope, diags);
                check_formula(sig, *i.rhs, scope, diags);
            },
            [&](const Iff& i) {
                check_formula(sig, *i.lhs, scope, diags);
                check_formula(sig, *i.rhs, scope, diags);
            },
            [&](const Forall& q) {
                if (q.sort.kind == Sort::Kind::Named && !sig.sorts.contains(q.sort.name))
                    diags.push_back({"undeclared-sort", "sort '" + q.sort.name + "' is not declared"});
                scope.emplace_back(q.var, q.sort);
                check_formula(sig, *q.body, scope, diags);
                scope.pop_back();
            },
            [&](const Exists& q) {
                if (q.sort.kind == Sort::Kind::Named && !sig.sorts.contains(q.sort.name))
                    diags.push_back({"undeclared-sort", "sort '" + q.sort.name + "' is not declared"});
                scope.emplace_back(q.var, q.sort);
                check_formula(sig, *q.body, scope, diags);
                scope.pop_back();
            },
            [](const TrueConst&) {},
            [](const FalseConst&) {},
        },
        f.node);
}

void collect_strings(const Term& t, std::set<std::string>& out) {
    if (const auto* s = std::get_if<StrLiteral>(&t.node)) out.insert(s->text);
    if (const auto* a = std::get_if<Apply>(&t.node))
        for (const auto& x : a->args) collect_strings(x, out);
}

void collect_strings(const Formula& f, std::set<std::string>& out) {
    std::visit(Overloaded{
                   [&](const PredicateApp& p) {
                       for (const auto& a : p.args) collect_strings(a, out);
                   },
                   [&](const Equals& e) {
                       collect_strings(e.lhs, out);
                       collect_strings(e.rhs, out);
                   },
                   [&](const Compare& c) {
                       collect_strings(c.lhs, out);
                       collect_strings(c.rhs, out);
                   },
                   [&](const MemberOf& m) {
                       collect_strings(m.element, out);
                       out.insert(m.literals.begin(), m.literals.end());
                   },
                   [&](const Not& n) { collect_strings(*n.body, out); },
                   [&](const And& a) {
                       for (const auto& i : a.items) collect_strings(i, out);
                   },
                   [&](const Or& o) {
                       for (const auto& i : o.items) collect_strings(i, out);
                   },
                   [&](const Implies& i) {
                       collect_strings(*i.lhs, out);
                       collect_strings(*i.rhs, out);
                   },
                   [&](const Iff& i) {
                       collect_strings(*i.lhs, out);
                       collect_strings(*i.rhs, out);
                   },
                   [&](const Forall& q) { collect_strings(*q.body, out); },
                   [&](const Exists& q) { collect_strings(*q.body, out); },
                   [](const auto&) {},
               },
               f.node);
}

}  // namespace

std::optional<TermSort> infer_sort(const Signature& sig, const Term& term, Diagnostics& diags, const Scope& scope) {
    return std::visit(
        Overloaded{
            [&](const Variable& v) -> std::optional<TermSort> {
                for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
                    if (it->first != v.name) continue;
                    if (!(it->second == v.sort)) {
                        diags.push_back({"sort-mismatch", "variable '" + v.name + "' is bound at sort " +
                                                              it->second.to_string() + " but used at " + v.sort.to_string()});
                        return std::nullopt;
                    }
                    return TermSort{v.sort, false};
                }
                diags.push_back({"free-variable", "variable '" + v.name + "' is not bound"});
                return std::nullopt;
            },
            [&](const NumLiteral&) -> std::optional<TermSort> { return TermSort{Sort::real(), true}; },
            [&](const StrLiteral&) -> std::optional<TermSort> { return TermSort{Sort::str(), false}; },
            [&](const Apply& a) -> std::optional<TermSort> {
                if (is_arithmetic(a.function)) {
                    if (a.args.size() != 2) {
                        diags.push_back({"arity", "arithmetic '" + a.function + "' is binary"});
                        return std::nullopt;
                    }
                    auto l = infer_sort(sig, a.args[0], diags, scope);
                    auto r = infer_sort(sig, a.args[1], diags, scope);
                    if (!l || !r) return std::nullopt;
                    if (l->literal_only && r->literal_only) return TermSort{Sort::real(), true};
                    auto s = common_numeric(a.args[0], *l, a.args[1], *r);
                    if (!s) {
                        diags.push_back({"sort-mismatch", "arithmetic needs numeric operands of one sort in " + print(term)});
                        return std::nullopt;
                    }
                    return TermSort{*s, false};
                }
                auto it = sig.functions.find(a.function);
                if (it == sig.functions.end()) {
                    diags.push_back({"undeclared-symbol", "function '" + a.function + "' is not declared"});
                    return std::nullopt;
                }
                const std::size_t before = diags.size();
                check_args(sig, a.function, it->second.args, a.args, diags, scope);
                if (diags.size() != before) return std::nullopt;
                return TermSort{it->second.result, false};
            },
        },
        term.node);
}

Diagnostics well_formed(const Signature& sig, const Formula& phi) {
    Diagnostics diags;
    Scope scope;
    check_formula(sig, phi, scope, diags);
    return diags;
}

std::set<std::string> string_literals(const Formula& phi) {
    std::set<std::string> out;
    collect_strings(phi, out);
    return out;
}

}  // namespace avc::logic

#include "avc/checker/smt.hpp"

#include "avc/logic/well_formed.hpp"

#include <map>
#include <set>

namespace avc::checker {

using namespace logic;

namespace {

std::string sym(const std::string& name) { return "|" + name + "|"; }

std::string sort_name(const Sort& s) {
    switch (s.kind) {
        case Sort::Kind::Bool: return "Bool";
        case Sort::Kind::Int: return "Int";
        case Sort::Kind::Real: return "Real";
        case Sort::Kind::Str: return "|Str|";
        case Sort::Kind::Named: return sym(s.name);
    }
    return "Bool";
}

void collect_informal(const Formula& f, std::set<std::string>& out) {
    std::visit(Overloaded{
                   [&](const InformalAtom& a) { out.insert(a.text); },
                   [&](const Not& n) { collect_informal(*n.body, out); },
                   [&](const And& a) {
                       for (const auto& x : a.items) collect_informal(x, out);
                   },
                   [&](const Or& o) {
                       for (const auto& x : o.items) collect_informal(x, out);
                   },
                   [&](const Implies& i) {
                       collect_informal(*i.lhs, out);
                       collect_informal(*i.rhs, out);
                   },
                   [&](const Iff& i) {
                       collect_informal(*i.lhs, out);
                       collect_informal(*i.rhs, out);
                   },
                   [&](const Forall& q) { collect_informal(*q.body, out); },
                   [&](const Exists& q) { collect_informal(*q.body, out); },
                   [](const auto&) {},
               },
               f.node);
}

class Emitter {
public:
    Emitter(const Signature& sig, std::map<std::string, std::string> strings, std::map<std::string, std::string> informal)
        : sig_(sig), strings_(std::move(strings)), informal_(std::move(informal)) {}

    std::string formula(const Formula& f) {
        return std::visit(
            Overloaded{
                [&](const PredicateApp& p) {
                    const auto& decl = sig_.predicates.at(p.predicate);
                    return application(sym(p.predicate), p.args, decl.args);
                },
                [&](const Equals& e) {
                    const Sort s = common_sort(e.lhs, e.rhs);
                    return "(= " + term(e.lhs, s) + " " + term(e.rhs, s) + ")";
                },
                [&](const Compare& c) {
                    const Sort s = common_sort(c.lhs, c.rhs);
                    return std::string(c.relation == Relation::Le ? "(<= " : "(< ") + term(c.lhs, s) + " " +
                           term(c.rhs, s) + ")";
                },
                [&](const MemberOf& m) {
                    const std::string el = term(m.element, Sort::str());
                    if (m.literals.size() == 1) return "(= " + el + " " + strings_.at(m.literals[0]) + ")";
                    std::string out = "(or";
                    for (const auto& lit : m.literals) out += " (= " + el + " " + strings_.at(lit) + ")";
                    return out + ")";
                },
                [&](const InformalAtom& a) { return informal_.at(a.text); },
                [&](const Not& n) { return "(not " + formula(*n.body) + ")"; },
                [&](const And& a) { return nary("and", "true", a.items); },
                [&](const Or& o) { return nary("or", "false", o.items); },
                [&](const Implies& i) { return "(=> " + formula(*i.lhs) + " " + formula(*i.rhs) + ")"; },
                [&](const Iff& i) { return "(= " + formula(*i.lhs) + " " + formula(*i.rhs) + ")"; },
                [&](const Forall& q) { return quantifier("forall", q.var, q.sort, *q.body); },
                [&](const Exists& q) { return quantifier("exists", q.var, q.sort, *q.body); },
                [](const TrueConst&) { return std::string("true"); },
                [](const FalseConst&) { return std::string("false"); },
            },
            f.node);
    }

private:
    std::string nary(const char* op, const char* unit, const std::vector<Formula>& items) {
        if (items.empty()) return unit;
        if (items.size() == 1) return formula(items[0]);
        std::string out = std::string("(") + op;
        for (const auto& x : items) out += " " + formula(x);
        return out + ")";
    }

    std::string quantifier(const char* q, const std::string& var, const Sort& s, const Formula& body) {
        scope_.emplace_back(var, s);
        std::string b = formula(body);
        scope_.pop_back();
        return std::string("(") + q + " ((" + sym(var) + " " + sort_name(s) + ")) " + b + ")";
    }

    std::string application(const std::string& head, const std::vector<Term>& args, const std::vector<Sort>& sorts) {
        if (args.empty()) return head;
        std::string out = "(" + head;
        for (std::size_t i = 0; i < args.size(); ++i) out += " " + term(args[i], sorts[i]);
        return out + ")";
    }

    Sort sort_of(const Term& t, bool& literal_only) {
        Diagnostics ignored;
        auto ts = infer_sort(sig_, t, ignored, scope_);
        literal_only = ts ? ts->literal_only : true;
        return ts ? ts->sort : Sort::real();
    }

    // Sort both sides are compared at; Int widens to Real when mixed.
    Sort common_sort(const Term& a, const Term& b) {
        bool la = false, lb = false;
        const Sort sa = sort_of(a, la), sb = sort_of(b, lb);
        if (!sa.is_numeric() || !sb.is_numeric()) return la ? sb : sa;
        if (la && lb) return Sort::real();
        if (la) return sb;
        if (lb) return sa;
        return sa == sb ? sa : Sort::real();
    }

    std::string number(const Rational& v, const Sort& expected) {
        const bool neg = v < 0;
        const Rational a = neg ? Rational(-v) : v;
        std::string out;
        if (expected.kind == Sort::Kind::Int && denominator(a) == 1) {
            out = numerator(a).str();
        } else if (is_finite_decimal(a)) {
            out = to_real_literal(a);
        } else {
            out = "(/ " + numerator(a).str() + ".0 " + denominator(a).str() + ".0)";
        }
        return neg ? "(- " + out + ")" : out;
    }

    std::string term(const Term& t, const Sort& expected) {
        return std::visit(Overloaded{
                              [&](const Variable& v) { return widen(sym(v.name), v.sort, expected); },
                              [&](const NumLiteral& n) { return number(n.value, expected); },
                              [&](const StrLiteral& s) { return strings_.at(s.text); },
                              [&](const Apply& a) {
                                  if (is_arithmetic(a.function)) {
                                      bool lit = false;
                                      Sort s = sort_of(t, lit);
                                      if (lit || expected.kind == Sort::Kind::Real) s = expected;
                                      std::string out = "(" + a.function;
                                      for (const auto& x : a.args) out += " " + term(x, s);
                                      return out + ")";
                                  }
                                  const auto& decl = sig_.functions.at(a.function);
                                  return widen(application(sym(a.function), a.args, decl.args), decl.result, expected);
                              },
                          },
                          t.node);
    }

    static std::string widen(std::string text, const Sort& actual, const Sort& expected) {
        if (actual.kind == Sort::Kind::Int && expected.kind == Sort::Kind::Real) return "(to_real " + text + ")";
        return text;
    }

    const Signature& sig_;
    std::map<std::string, std::string> strings_;
    std::map<std::string, std::string> informal_;
    std::vector<std::pair<std::string, Sort>> scope_;
};

}  // namespace

bool mentions_informal(const std::vector<Formula>& formulas) {
    std::set<std::string> found;
    for (const auto& f : formulas) collect_informal(f, found);
    return !found.empty();
}

std::string emit_smt(const Signature& sig, const std::vector<Formula>& premises, const Formula& conclusion) {
    std::set<std::string> literals = sig.string_literals;
    std::set<std::string> informal;
    for (const auto& f : premises) {
        for (auto& s : string_literals(f)) literals.insert(s);
        collect_informal(f, informal);
    }
    for (auto& s : string_literals(conclusion)) literals.insert(s);
    collect_informal(conclusion, informal);

    std::map<std::string, std::string> string_syms, informal_syms;
    std::string out = std::string(kSmtHeader) + "\n(set-option :produce-models true)\n";
    for (const auto& s : sig.sorts) out += "(declare-sort " + sym(s) + " 0)\n";
    out += "(declare-sort |Str| 0)\n";

    int i = 0;
    for (const auto& s : literals) {
        const std::string name = sym("str." + std::to_string(i++));
        string_syms.emplace(s, name);
        std::string shown = s;
        for (char& c : shown)
            if (c == '\n' || c == '\r') c = ' ';
        out += "(declare-const " + name + " |Str|) ; \"" + shown + "\"\n";
    }
    if (literals.size() >= 2) {
        out += "(assert (distinct";
        for (const auto& [s, name] : string_syms) out += " " + name;
        out += "))\n";
    }

    for (const auto& [name, decl] : sig.functions) {
        out += "(declare-fun " + sym(name) + " (";
        for (std::size_t k = 0; k < decl.args.size(); ++k) out += (k ? " " : "") + sort_name(decl.args[k]);
        out += ") " + sort_name(decl.result) + ")\n";
    }
    for (const auto& [name, decl] : sig.predicates) {
        out += "(declare-fun " + sym(name) + " (";
        for (std::size_t k = 0; k < decl.args.size(); ++k) out += (k ? " " : "") + sort_name(decl.args[k]);
        out += ") Bool)\n";
    }
    i = 0;
    for (const auto& text : informal) {
        const std::string name = sym("informal." + std::to_string(i++));
        informal_syms.emplace(text, name);
        out += "(declare-const " + name + " Bool) ; " + text + "\n";
    }

    Emitter e(sig, std::move(string_syms), std::move(informal_syms));
    for (std::size_t k = 0; k < premises.size(); ++k)
        out += "; premise " + std::to_string(k + 1) + "\n(assert " + e.formula(premises[k]) + ")\n";
    out += "; negated conclusion\n(assert (not " + e.formula(conclusion) + "))\n(check-sat)\n";
    return out;
}

}  // namespace avc::checker

#include "avc/logic/print.hpp"

#include "avc/util/text.hpp"

namespace avc::logic {

namespace {

// Term precedence: sum 1, product 2, primary 3.
int term_prec(const Term& t) {
    if (const auto* a = std::get_if<Apply>(&t.node); a && is_arithmetic(a->function) && a->args.size() == 2)
        return a->function == "*" ? 2 : 1;
    if (const auto* n = std::get_if<NumLiteral>(&t.node); n && n->value < 0) return 2;
    return 3;
}

std::string print_term(const Term& t, int ctx) {
    std::string s = std::visit(
        Overloaded{
            [](const Variable& v) { return v.name; },
            [](const NumLiteral& n) { return to_decimal_string(n.value); },
            [](const StrLiteral& s) { return quote(s.text); },
            [](const Apply& a) {
                if (is_arithmetic(a.function) && a.args.size() == 2) {
                    const int p = a.function == "*" ? 2 : 1;
                    return print_term(a.args[0], p) + " " + a.function + " " + print_term(a.args[1], p + 1);
                }
                std::string out = a.function;
                if (a.args.empty()) return out;
                out += "(";
                for (std::size_t i = 0; i < a.args.size(); ++i) {
                    if (i) out += ", ";
                    out += print_term(a.args[i], 0);
                }
                return out + ")";
            },
        },
        t.node);
    return term_prec(t) < ctx ? "(" + s + ")" : s;
}

// Formula precedence: quantifier 0, iff 1, implies 2, or 3, and 4, not 5, atom 6.
int formula_prec(const Formula& f) {
    return std::visit(Overloaded{
                          [](const Forall&) { return 0; },
                          [](const Exists&) { return 0; },
                          [](const Iff&) { return 1; },
                          [](const Implies&) { return 2; },
                          [](const Or&) { return 3; },
                          [](const And&) { return 4; },
                          [](const Not&) { return 5; },
                          [](const auto&) { return 6; },
                      },
                      f.node);
}

std::string print_formula(const Formula& f, int ctx);

std::string join_items(const std::vector<Formula>& items, const char* op, int item_ctx, const char* empty) {
    if (items.empty()) return empty;
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += std::string(" ") + op + " ";
        out += print_formula(items[i], item_ctx);
    }
    return out;
}

std::string print_formula(const Formula& f, int ctx) {
    std::string s = std::visit(
        Overloaded{
            [](const PredicateApp& p) {
                std::string out = p.predicate;
                if (p.args.empty()) return out;
                out += "(";
                for (std::size_t i = 0; i < p.args.size(); ++i) {
                    if (i) out += ", ";
                    out += print_term(p.args[i], 0);
                }
                return out + ")";
            },
            [](const Equals& e) { return print_term(e.lhs, 0) + " == " + print_term(e.rhs, 0); },
            [](const Compare& c) {
                return print_term(c.lhs, 0) + (c.relation == Relation::Le ? " <= " : " < ") + print_term(c.rhs, 0);
            },
            [](const MemberOf& m) {
                std::string out = print_term(m.element, 0) + " in {";
                for (std::size_t i = 0; i < m.literals.size(); ++i) {
                    if (i) out += ", ";
                    out += quote(m.literals[i]);
                }
                return out + "}";
            },
            [](const InformalAtom& a) { return "informal " + quote(a.text); },
            [](const Not& n) { return "!" + print_formula(*n.body, 5); },
            [](const And& a) { return join_items(a.items, "&&", 5, "true"); },
            [](const Or& o) { return join_items(o.items, "||", 4, "false"); },
            [](const Implies& i) { return print_formula(*i.lhs, 3) + " -> " + print_formula(*i.rhs, 2); },
            [](const Iff& i) { return print_formula(*i.lhs, 2) + " <-> " + print_formula(*i.rhs, 2); },
            [](const Forall& q) { return "forall " + q.var + ":" + q.sort.to_string() + ". " + print_formula(*q.body, 0); },
            [](const Exists& q) { return "exists " + q.var + ":" + q.sort.to_string() + ". " + print_formula(*q.body, 0); },
            [](const TrueConst&) { return std::string("true"); },
            [](const FalseConst&) { return std::string("false"); },
        },
        f.node);
    return formula_prec(f) < ctx ? "(" + s + ")" : s;
}

}  // namespace

std::string print(const Term& term) { return print_term(term, 0); }
std::string print(const Formula& formula) { return print_formula(formula, 0); }

}  // namespace avc::logic

#include "avc/sl/parse.hpp"
#include "avc/util/text.hpp"

namespace avc::sl {

namespace {

std::string sl_quote(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out.push_back(c);
        }
    }
    return out + "\"";
}

enum Prec { kLambda = 0, kOr = 1, kAnd = 2, kNot = 3, kCmp = 4, kAdd = 5, kMul = 6, kNeg = 7, kPostfix = 8, kAtom = 9 };

const char* op_text(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Eq: return "==";
        case BinaryOp::Ne: return "!=";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::In: return "in";
        case BinaryOp::NotIn: return "not in";
        case BinaryOp::And: return "and";
        case BinaryOp::Or: return "or";
    }
    return "?";
}

int prec_of(BinaryOp op) {
    switch (op) {
        case BinaryOp::Or: return kOr;
        case BinaryOp::And: return kAnd;
        case BinaryOp::Add:
        case BinaryOp::Sub: return kAdd;
        case BinaryOp::Mul: return kMul;
        default: return kCmp;
    }
}

int prec_of(const Expr& e) {
    if (e.is<Lambda>()) return kLambda;
    if (e.is<Binary>()) return prec_of(e.as<Binary>().op);
    if (e.is<Unary>()) return e.as<Unary>().op == UnaryOp::Not ? kNot : kNeg;
    if (e.is<MethodCall>()) return kPostfix;
    return kAtom;
}

std::string number(const NumLit& n) {
    return n.decimal ? to_real_literal(n.value) : to_decimal_string(n.value);
}

std::string expr(const Expr& e, int min_prec);

std::string list(const std::vector<Expr>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + expr(items[i], kLambda);
    return out;
}

std::string expr(const Expr& e, int min_prec) {
    std::string s = std::visit(
        Overloaded{
            [](const NumLit& n) { return number(n); },
            [](const StrLit& s) { return sl_quote(s.text); },
            [](const BoolLit& b) { return std::string(b.value ? "True" : "False"); },
            [](const VarRef& v) { return v.name; },
            [](const ListLit& l) { return "[" + list(l.items) + "]"; },
            [](const RecordLit& r) {
                std::string out = "{";
                for (std::size_t i = 0; i < r.fields.size(); ++i)
                    out += (i ? ", " : "") + sl_quote(r.fields[i].first) + ": " + expr(r.fields[i].second, kLambda);
                return out + "}";
            },
            [](const Unary& u) {
                if (u.op == UnaryOp::Not) return "not " + expr(*u.operand, kNot);
                return "-" + expr(*u.operand, kNeg);
            },
            [](const Binary& b) {
                const int p = prec_of(b.op);
                // Comparisons do not chain; everything else associates left.
                const int left = p == kCmp ? p + 1 : p;
                return expr(*b.lhs, left) + " " + op_text(b.op) + " " + expr(*b.rhs, p + 1);
            },
            [](const Call& c) { return c.function + "(" + list(c.args) + ")"; },
            [](const MethodCall& m) { return expr(*m.receiver, kPostfix) + "." + m.method + "(" + list(m.args) + ")"; },
            [](const Lambda& l) {
                std::string out = "lambda ";
                for (std::size_t i = 0; i < l.params.size(); ++i) out += (i ? ", " : "") + l.params[i];
                return out + ": " + expr(*l.body, kLambda);
            },
        },
        e.node);
    return prec_of(e) < min_prec ? "(" + s + ")" : s;
}

void block(const Block& b, int depth, std::string& out);

void stmt(const Stmt& s, int depth, std::string& out) {
    const std::string pad(static_cast<std::size_t>(depth) * 4, ' ');
    std::visit(Overloaded{
                   [&](const Assign& a) {
                       const char* op = a.op == AssignOp::Set ? " = " : a.op == AssignOp::Add ? " += " : " -= ";
                       out += pad + (a.let ? "let " : "") + a.target + op + expr(a.value, kLambda) + "\n";
                   },
                   [&](const ExprStmt& e) { out += pad + expr(e.expr, kLambda) + "\n"; },
                   [&](const If& i) {
                       for (std::size_t k = 0; k < i.branches.size(); ++k) {
                           out += pad + (k ? "elif " : "if ") + expr(i.branches[k].cond, kLambda) + ":\n";
                           block(i.branches[k].body, depth + 1, out);
                       }
                       if (i.orelse) {
                           out += pad + "else:\n";
                           block(*i.orelse, depth + 1, out);
                       }
                   },
                   [&](const For& f) {
                       out += pad + "for " + f.var + " in " + expr(f.iterable, kLambda) + ":\n";
                       block(f.body, depth + 1, out);
                   },
                   [&](const Return& r) { out += pad + "return " + expr(r.value, kLambda) + "\n"; },
               },
               s.node);
}

void block(const Block& b, int depth, std::string& out) {
    for (const auto& s : b) stmt(s, depth, out);
}

std::string const_value(const ConstDecl& c) {
    if (c.value.is_num()) {
        const Rational& v = c.value.as_num();
        return c.decimal ? to_real_literal(v) : to_decimal_string(v);
    }
    if (c.value.is_str()) return sl_quote(c.value.as_str());
    return to_string(c.value);
}

}  // namespace

std::string print_expr(const Expr& e) { return expr(e, kLambda); }

std::string print_program(const SubjectProgram& prog) {
    std::string out = std::string(kSlHeader) + "\n";
    if (!prog.consts.empty()) out += "\n";
    for (const auto& c : prog.consts) out += "const " + c.name + " = " + const_value(c) + "\n";
    if (!prog.externs.empty()) out += "\n";
    for (const auto& e : prog.externs) {
        out += "extern " + e.name + "(";
        for (std::size_t i = 0; i < e.params.size(); ++i) out += (i ? ", " : "") + e.params[i];
        out += ")\n";
    }
    for (const auto& f : prog.functions) {
        out += "\ndef " + f.name + "(";
        for (std::size_t i = 0; i < f.params.size(); ++i) out += (i ? ", " : "") + f.params[i];
        out += "):\n";
        block(f.body, 1, out);
    }
    return out;
}

}  // namespace avc::sl

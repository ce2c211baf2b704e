#include "avc/sl/parse.hpp"

#include "avc/util/hash.hpp"
#include "lexer.hpp"

#include <algorithm>
#include <set>

namespace avc::sl {

using detail::Tok;
using detail::Token;

bool operator==(const ListLit& a, const ListLit& b) { return a.items == b.items; }
bool operator==(const RecordLit& a, const RecordLit& b) { return a.fields == b.fields; }
bool operator==(const Unary& a, const Unary& b) { return a.op == b.op && a.operand == b.operand; }
bool operator==(const Binary& a, const Binary& b) { return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs; }
bool operator==(const Call& a, const Call& b) { return a.function == b.function && a.args == b.args; }
bool operator==(const MethodCall& a, const MethodCall& b) {
    return a.method == b.method && a.receiver == b.receiver && a.args == b.args;
}
bool operator==(const Lambda& a, const Lambda& b) { return a.params == b.params && a.body == b.body; }
bool operator==(const IfBranch& a, const IfBranch& b) { return a.cond == b.cond && a.body == b.body; }
bool operator==(const If& a, const If& b) { return a.branches == b.branches && a.orelse == b.orelse; }
bool operator==(const For& a, const For& b) { return a.var == b.var && a.iterable == b.iterable && a.body == b.body; }

const ConstDecl* SubjectProgram::find_const(const std::string& name) const {
    auto it = std::find_if(consts.begin(), consts.end(), [&](const auto& c) { return c.name == name; });
    return it == consts.end() ? nullptr : &*it;
}
const ExternDecl* SubjectProgram::find_extern(const std::string& name) const {
    auto it = std::find_if(externs.begin(), externs.end(), [&](const auto& c) { return c.name == name; });
    return it == externs.end() ? nullptr : &*it;
}
const FunctionDef* SubjectProgram::find_function(const std::string& name) const {
    auto it = std::find_if(functions.begin(), functions.end(), [&](const auto& c) { return c.name == name; });
    return it == functions.end() ? nullptr : &*it;
}

namespace {

const std::set<std::string> kBuiltins{"len", "min", "max", "round", "count_if", "set"};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    SubjectProgram program() {
        SubjectProgram p;
        skip_newlines();
        while (!at(Tok::End)) {
            if (accept_kw("const")) {
                p.consts.push_back(const_decl());
            } else if (accept_kw("extern")) {
                p.externs.push_back(extern_decl());
            } else if (peek_kw("def")) {
                p.functions.push_back(function());
            } else {
                fail("expected 'const', 'extern' or 'def'");
            }
            skip_newlines();
        }
        return p;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    bool at(Tok k) const { return cur().kind == k; }
    bool peek_kw(std::string_view w) const { return at(Tok::Keyword) && cur().text == w; }
    bool peek_op(std::string_view o) const { return at(Tok::Op) && cur().text == o; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, cur().loc.pos()); }

    Token take() { return toks_[pos_++]; }

    bool accept_kw(std::string_view w) {
        if (!peek_kw(w)) return false;
        ++pos_;
        return true;
    }
    bool accept_op(std::string_view o) {
        if (!peek_op(o)) return false;
        ++pos_;
        return true;
    }
    void expect_op(std::string_view o) {
        if (!accept_op(o)) fail("expected '" + std::string(o) + "'");
    }
    void expect_kw(std::string_view w) {
        if (!accept_kw(w)) fail("expected '" + std::string(w) + "'");
    }
    std::string name(const char* what) {
        if (!at(Tok::Name)) fail(std::string("expected ") + what);
        return take().text;
    }
    void end_of_line() {
        if (at(Tok::End)) return;
        if (!at(Tok::Newline)) fail("expected end of line");
        ++pos_;
    }
    void skip_newlines() {
        while (at(Tok::Newline)) ++pos_;
    }

    ConstDecl const_decl() {
        ConstDecl c;
        c.loc = cur().loc;
        c.name = name("constant name");
        expect_op("=");
        const bool neg = accept_op("-");
        if (at(Tok::Number)) {
            NumLit n = number(take());
            c.value = Value::num(neg ? Rational(-n.value) : n.value);
            c.decimal = n.decimal;
        } else if (neg) {
            fail("expected a number after '-'");
        } else if (at(Tok::String)) {
            c.value = Value::str(take().text);
        } else if (peek_kw("True") || peek_kw("False")) {
            c.value = Value::boolean(take().text == "True");
        } else {
            fail("constant value must be a literal");
        }
        end_of_line();
        return c;
    }

    std::vector<std::string> params() {
        std::vector<std::string> out;
        expect_op("(");
        if (!accept_op(")")) {
            do {
                const Loc at = cur().loc;
                std::string p = name("parameter name");
                if (std::find(out.begin(), out.end(), p) != out.end())
                    throw ParseError("duplicate parameter '" + p + "'", at.pos());
                out.push_back(std::move(p));
            } while (accept_op(","));
            expect_op(")");
        }
        return out;
    }

    ExternDecl extern_decl() {
        ExternDecl e;
        e.loc = cur().loc;
        e.name = name("extern name");
        e.params = params();
        end_of_line();
        return e;
    }

    FunctionDef function() {
        FunctionDef f;
        f.loc = cur().loc;
        expect_kw("def");
        f.name = name("function name");
        f.params = params();
        expect_op(":");
        f.body = block();
        return f;
    }

    Block block() {
        Block out;
        if (!at(Tok::Newline)) {
            out.push_back(simple_statement());
            return out;
        }
        ++pos_;
        if (!at(Tok::Indent)) fail("expected an indented block");
        ++pos_;
        while (!at(Tok::Dedent) && !at(Tok::End)) out.push_back(statement());
        if (at(Tok::Dedent)) ++pos_;
        return out;
    }

    Stmt statement() {
        const Loc loc = cur().loc;
        if (accept_kw("if")) {
            If s;
            Expr cond = expr();
            expect_op(":");
            s.branches.push_back({std::move(cond), block()});
            while (accept_kw("elif")) {
                Expr c = expr();
                expect_op(":");
                s.branches.push_back({std::move(c), block()});
            }
            if (accept_kw("else")) {
                expect_op(":");
                s.orelse = block();
            }
            return {std::move(s), loc};
        }
        if (accept_kw("for")) {
            For s;
            s.var = name("loop variable");
            expect_kw("in");
            s.iterable = expr();
            expect_op(":");
            s.body = block();
            return {std::move(s), loc};
        }
        return simple_statement();
    }

    Stmt simple_statement() {
        const Loc loc = cur().loc;
        if (accept_kw("return")) {
            Stmt s{Return{expr()}, loc};
            end_of_line();
            return s;
        }
        const bool let = accept_kw("let");
        if (at(Tok::Name) && pos_ + 1 < toks_.size() && toks_[pos_ + 1].kind == Tok::Op) {
            const std::string& o = toks_[pos_ + 1].text;
            if (o == "=" || (!let && (o == "+=" || o == "-="))) {
                Assign a;
                a.target = take().text;
                a.op = o == "=" ? AssignOp::Set : o == "+=" ? AssignOp::Add : AssignOp::Sub;
                a.let = let;
                ++pos_;
                a.value = expr();
                end_of_line();
                return {std::move(a), loc};
            }
        }
        if (let) fail("expected 'name = value' after 'let'");
        Expr e = expr();
        if (!e.is<Call>() && !e.is<MethodCall>()) throw ParseError("expression statement must be a call", loc.pos());
        end_of_line();
        return {ExprStmt{std::move(e)}, loc};
    }

    // Expressions, lowest precedence first.
    Expr expr() {
        if (peek_kw("lambda")) {
            const Loc loc = take().loc;
            std::vector<std::string> ps;
            do ps.push_back(name("lambda parameter"));
            while (accept_op(","));
            expect_op(":");
            return {Lambda{std::move(ps), expr()}, loc};
        }
        return or_expr();
    }

    Expr binary(BinaryOp op, Expr lhs, Expr rhs, Loc loc) { return {Binary{op, std::move(lhs), std::move(rhs)}, loc}; }

    Expr or_expr() {
        Expr e = and_expr();
        while (peek_kw("or")) {
            const Loc loc = take().loc;
            e = binary(BinaryOp::Or, std::move(e), and_expr(), loc);
        }
        return e;
    }

    Expr and_expr() {
        Expr e = not_expr();
        while (peek_kw("and")) {
            const Loc loc = take().loc;
            e = binary(BinaryOp::And, std::move(e), not_expr(), loc);
        }
        return e;
    }

    Expr not_expr() {
        if (peek_kw("not")) {
            const Loc loc = take().loc;
            return {Unary{UnaryOp::Not, not_expr()}, loc};
        }
        return comparison();
    }

    std::optional<BinaryOp> comparison_op() {
        if (at(Tok::Op)) {
            static const std::pair<const char*, BinaryOp> ops[] = {{"==", BinaryOp::Eq}, {"!=", BinaryOp::Ne},
                                                                  {"<=", BinaryOp::Le}, {">=", BinaryOp::Ge},
                                                                  {"<", BinaryOp::Lt},  {">", BinaryOp::Gt}};
            for (auto [t, op] : ops)
                if (cur().text == t) {
                    ++pos_;
                    return op;
                }
            return std::nullopt;
        }
        if (accept_kw("in")) return BinaryOp::In;
        if (peek_kw("not") && pos_ + 1 < toks_.size() && toks_[pos_ + 1].kind == Tok::Keyword &&
            toks_[pos_ + 1].text == "in") {
            pos_ += 2;
            return BinaryOp::NotIn;
        }
        return std::nullopt;
    }

    Expr comparison() {
        Expr e = additive();
        const Loc loc = cur().loc;
        if (auto op = comparison_op()) {
            e = binary(*op, std::move(e), additive(), loc);
            const Loc again = cur().loc;
            if (comparison_op()) throw ParseError("chained comparisons are not supported", again.pos());
        }
        return e;
    }

    Expr additive() {
        Expr e = multiplicative();
        while (peek_op("+") || peek_op("-")) {
            const Token t = take();
            e = binary(t.text == "+" ? BinaryOp::Add : BinaryOp::Sub, std::move(e), multiplicative(), t.loc);
        }
        return e;
    }

    Expr multiplicative() {
        Expr e = unary();
        while (peek_op("*")) {
            const Loc loc = take().loc;
            e = binary(BinaryOp::Mul, std::move(e), unary(), loc);
        }
        return e;
    }

    Expr unary() {
        if (peek_op("-")) {
            const Loc loc = take().loc;
            return {Unary{UnaryOp::Neg, unary()}, loc};
        }
        return postfix();
    }

    std::vector<Expr> args() {
        std::vector<Expr> out;
        expect_op("(");
        if (!accept_op(")")) {
            do out.push_back(expr());
            while (accept_op(","));
            expect_op(")");
        }
        return out;
    }

    Expr postfix() {
        Expr e = primary();
        while (peek_op(".")) {
            const Loc loc = take().loc;
            std::string method = name("method name");
            if (method == "append" && !e.is<VarRef>()) throw ParseError("append needs a variable receiver", loc.pos());
            if (method != "append" && method != "get") throw ParseError("unknown method '" + method + "'", loc.pos());
            std::vector<Expr> a = args();
            e = Expr{MethodCall{std::move(e), std::move(method), std::move(a)}, loc};
        }
        return e;
    }

    NumLit number(const Token& t) {
        const auto v = parse_decimal(t.text);
        if (!v) throw ParseError("malformed number '" + t.text + "'", t.loc.pos());
        return {*v, t.text.find('.') != std::string::npos};
    }

    Expr primary() {
        const Loc loc = cur().loc;
        if (at(Tok::Number)) return {number(take()), loc};
        if (at(Tok::String)) return {StrLit{take().text}, loc};
        if (peek_kw("True") || peek_kw("False")) return {BoolLit{take().text == "True"}, loc};
        if (at(Tok::Name)) {
            std::string n = take().text;
            if (peek_op("(")) return {Call{std::move(n), args()}, loc};
            return {VarRef{std::move(n)}, loc};
        }
        if (accept_op("(")) {
            Expr e = expr();
            expect_op(")");
            return e;
        }
        if (accept_op("[")) {
            ListLit l;
            if (!accept_op("]")) {
                do l.items.push_back(expr());
                while (accept_op(","));
                expect_op("]");
            }
            return {std::move(l), loc};
        }
        if (accept_op("{")) {
            RecordLit r;
            if (!accept_op("}")) {
                do {
                    if (!at(Tok::String)) fail("record keys must be string literals");
                    std::string key = take().text;
                    expect_op(":");
                    r.fields.emplace_back(std::move(key), expr());
                } while (accept_op(","));
                expect_op("}");
            }
            return {std::move(r), loc};
        }
        fail(at(Tok::End) || at(Tok::Newline) ? "unexpected end of line" : "unexpected '" + cur().text + "'");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// Post-parse checks that need the whole program.
class Checker {
public:
    explicit Checker(const SubjectProgram& p) : p_(p) {}

    void run() {
        std::set<std::string> names;
        auto declare = [&](const std::string& n, Loc loc) {
            if (!names.insert(n).second) throw ParseError("duplicate name '" + n + "'", loc.pos());
            if (kBuiltins.contains(n)) throw ParseError("'" + n + "' is a builtin", loc.pos());
        };
        for (const auto& c : p_.consts) declare(c.name, c.loc);
        for (const auto& e : p_.externs) declare(e.name, e.loc);
        for (const auto& f : p_.functions) declare(f.name, f.loc);
        for (const auto& f : p_.functions) {
            for (const auto& param : f.params) global(param, f.loc);
            block(f.body);
            if (!always_returns(f.body))
                throw ParseError("function '" + f.name + "' has a path that does not return", f.loc.pos());
        }
    }

private:
    void global(const std::string& n, Loc loc) {
        if (p_.find_const(n) || p_.find_extern(n) || p_.find_function(n))
            throw ParseError("cannot rebind '" + n + "'", loc.pos());
    }

    void block(const Block& b) {
        for (const auto& s : b) stmt(s);
    }

    void stmt(const Stmt& s) {
        std::visit(Overloaded{
                       [&](const Assign& a) {
                           global(a.target, s.loc);
                           expr(a.value, false);
                       },
                       [&](const ExprStmt& e) { expr(e.expr, false); },
                       [&](const If& i) {
                           for (const auto& br : i.branches) {
                               expr(br.cond, false);
                               block(br.body);
                           }
                           if (i.orelse) block(*i.orelse);
                       },
                       [&](const For& f) {
                           global(f.var, s.loc);
                           expr(f.iterable, false);
                           block(f.body);
                       },
                       [&](const Return& r) { expr(r.value, false); },
                   },
                   s.node);
    }

    void expr(const Expr& e, bool lambda_ok) {
        std::visit(Overloaded{
                       [&](const ListLit& l) {
                           for (const auto& x : l.items) expr(x, false);
                       },
                       [&](const RecordLit& r) {
                           for (const auto& [k, x] : r.fields) expr(x, false);
                       },
                       [&](const Unary& u) { expr(*u.operand, false); },
                       [&](const Binary& b) {
                           expr(*b.lhs, false);
                           expr(*b.rhs, false);
                       },
                       [&](const Call& c) {
                           if (!kBuiltins.contains(c.function) && !p_.find_extern(c.function) &&
                               !p_.find_function(c.function))
                               throw ParseError("call to undeclared function '" + c.function + "'", e.loc.pos());
                           for (std::size_t i = 0; i < c.args.size(); ++i)
                               expr(c.args[i], c.function == "count_if" && i == 1);
                       },
                       [&](const MethodCall& m) {
                           expr(*m.receiver, false);
                           for (const auto& x : m.args) expr(x, false);
                       },
                       [&](const Lambda& l) {
                           if (!lambda_ok) throw ParseError("lambda is only allowed as the predicate of count_if", e.loc.pos());
                           for (const auto& param : l.params) global(param, e.loc);
                           expr(*l.body, false);
                       },
                       [](const auto&) {},
                   },
                   e.node);
    }

    const SubjectProgram& p_;
};

}  // namespace

bool always_returns(const Block& body) {
    for (const auto& s : body) {
        if (s.is<Return>()) return true;
        if (s.is<If>()) {
            const If& i = s.as<If>();
            if (!i.orelse || !always_returns(*i.orelse)) continue;
            if (std::all_of(i.branches.begin(), i.branches.end(), [](const IfBranch& b) { return always_returns(b.body); }))
                return true;
        }
    }
    return false;
}

SubjectProgram parse_program(std::string_view text) {
    SubjectProgram p = Parser(detail::tokenize(text)).program();
    Checker(p).run();
    p.source_hash = sha256_hex(text);
    return p;
}

namespace {

bool is_literal(const Expr& e) {
    if (e.is<NumLit>() || e.is<StrLit>() || e.is<BoolLit>()) return true;
    if (e.is<Unary>()) {
        const Unary& u = e.as<Unary>();
        return u.op == UnaryOp::Neg && u.operand->is<NumLit>();
    }
    return false;
}

Value literal_value(const Expr& e) {
    if (e.is<NumLit>()) return Value::num(e.as<NumLit>().value);
    if (e.is<StrLit>()) return Value::str(e.as<StrLit>().text);
    if (e.is<BoolLit>()) return Value::boolean(e.as<BoolLit>().value);
    return Value::num(-e.as<Unary>().operand->as<NumLit>().value);
}

void count_bindings(const Block& b, std::map<std::string, int>& counts, std::map<std::string, const Assign*>& first) {
    for (const auto& s : b) {
        std::visit(Overloaded{
                       [&](const Assign& a) {
                           if (counts[a.target]++ == 0) first[a.target] = &a;
                       },
                       [&](const If& i) {
                           for (const auto& br : i.branches) count_bindings(br.body, counts, first);
                           if (i.orelse) count_bindings(*i.orelse, counts, first);
                       },
                       [&](const For& f) {
                           counts[f.var] += 2;  // rebound every iteration
                           count_bindings(f.body, counts, first);
                       },
                       [](const auto&) {},
                   },
                   s.node);
    }
}

}  // namespace

std::map<std::string, Value> extract_constants(const SubjectProgram& prog) {
    std::map<std::string, Value> out;
    for (const auto& c : prog.consts) out.emplace(c.name, c.value);
    std::map<std::string, int> counts;
    std::map<std::string, const Assign*> first;
    for (const auto& f : prog.functions) {
        for (const auto& p : f.params) counts[p] += 2;
        count_bindings(f.body, counts, first);
    }
    for (const auto& [name, n] : counts) {
        if (n != 1) continue;
        const Assign* a = first.at(name);
        if (a->op == AssignOp::Set && is_literal(a->value)) out.emplace(name, literal_value(a->value));
    }
    return out;
}

}  // namespace avc::sl

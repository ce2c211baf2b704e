#include "avc/sl/interp.hpp"

namespace avc::sl {

namespace {

constexpr int kMaxDepth = 200;

[[noreturn]] void fail(const std::string& msg, Loc loc) { throw EvalError(msg, loc.pos()); }

const Rational& num(const Value& v, const char* what, Loc loc) {
    if (!v.is_num()) fail(std::string(what) + " needs a number, got " + v.kind_name(), loc);
    return v.as_num();
}

bool truth(const Value& v, Loc loc) {
    if (!v.is_bool()) fail(std::string("condition must be a bool, got ") + v.kind_name(), loc);
    return v.as_bool();
}

const std::vector<Value>& iterable(const Value& v, Loc loc) {
    if (v.is_list()) return v.as_list().items;
    if (v.is_set()) return v.as_set().items;
    fail(std::string("cannot iterate over a ") + v.kind_name(), loc);
}

bool member(const Value& item, const Value& coll, Loc loc) {
    if (coll.is_list()) {
        for (const auto& x : coll.as_list().items)
            if (x == item) return true;
        return false;
    }
    if (coll.is_set()) return coll.as_set().contains(item);
    if (coll.is_record()) {
        if (!item.is_str()) fail("record membership needs a string key", loc);
        return coll.as_record().find(item.as_str()) != nullptr;
    }
    if (coll.is_str()) {
        if (!item.is_str()) fail("substring test needs a string", loc);
        return coll.as_str().find(item.as_str()) != std::string::npos;
    }
    fail(std::string("'in' needs a list, set, record or string, got ") + coll.kind_name(), loc);
}

}  // namespace

Interpreter::Interpreter(const SubjectProgram& prog, ExternTable externs) : prog_(prog), externs_(std::move(externs)) {
    for (const auto& e : prog_.externs)
        if (!externs_.contains(e.name)) throw std::invalid_argument("no callback for extern '" + e.name + "'");
}

Value Interpreter::call(const std::string& function, const std::vector<Value>& args) {
    const FunctionDef* f = prog_.find_function(function);
    if (!f) throw std::invalid_argument("no function named '" + function + "'");
    if (f->params.size() != args.size())
        fail("'" + function + "' takes " + std::to_string(f->params.size()) + " arguments, got " +
                 std::to_string(args.size()),
             f->loc);
    if (depth_ >= kMaxDepth) fail("call depth limit exceeded", f->loc);
    ++depth_;
    Env env;
    for (std::size_t i = 0; i < args.size(); ++i) env[f->params[i]] = args[i];
    std::optional<Value> r = exec(f->body, env);
    --depth_;
    if (!r) fail("'" + function + "' finished without returning", f->loc);
    return std::move(*r);
}

std::optional<Value> Interpreter::exec(const Block& body, Env& env) {
    for (const auto& s : body) {
        std::optional<Value> ret;
        std::visit(Overloaded{
                       [&](const Assign& a) {
                           Value v = eval(a.value, env);
                           if (a.op == AssignOp::Set) {
                               env[a.target] = std::move(v);
                               return;
                           }
                           auto it = env.find(a.target);
                           if (it == env.end()) fail("undefined variable '" + a.target + "'", s.loc);
                           const Rational& lhs = num(it->second, "augmented assignment", s.loc);
                           const Rational& rhs = num(v, "augmented assignment", s.loc);
                           it->second = Value::num(a.op == AssignOp::Add ? Rational(lhs + rhs) : Rational(lhs - rhs));
                       },
                       [&](const ExprStmt& e) {
                           if (e.expr.is<MethodCall>() && e.expr.as<MethodCall>().method == "append") {
                               const MethodCall& m = e.expr.as<MethodCall>();
                               const std::string& target = m.receiver->as<VarRef>().name;
                               if (m.args.size() != 1) fail("append takes one argument", e.expr.loc);
                               auto it = env.find(target);
                               if (it == env.end()) fail("undefined variable '" + target + "'", e.expr.loc);
                               if (!it->second.is_list())
                                   fail(std::string("append needs a list, got ") + it->second.kind_name(), e.expr.loc);
                               Value item = eval(m.args[0], env);
                               std::get<ListValue>(it->second.data).items.push_back(std::move(item));
                               return;
                           }
                           eval(e.expr, env);
                       },
                       [&](const If& i) {
                           for (const auto& br : i.branches)
                               if (truth(eval(br.cond, env), br.cond.loc)) {
                                   ret = exec(br.body, env);
                                   return;
                               }
                           if (i.orelse) ret = exec(*i.orelse, env);
                       },
                       [&](const For& f) {
                           const Value coll = eval(f.iterable, env);
                           for (const auto& item : iterable(coll, f.iterable.loc)) {
                               env[f.var] = item;
                               ret = exec(f.body, env);
                               if (ret) return;
                           }
                       },
                       [&](const Return& r) { ret = eval(r.value, env); },
                   },
                   s.node);
        if (ret) return ret;
    }
    return std::nullopt;
}

Value Interpreter::eval(const Expr& e, const Env& env) {
    return std::visit(
        Overloaded{
            [](const NumLit& n) { return Value::num(n.value); },
            [](const StrLit& s) { return Value::str(s.text); },
            [](const BoolLit& b) { return Value::boolean(b.value); },
            [&](const VarRef& v) -> Value {
                if (auto it = env.find(v.name); it != env.end()) return it->second;
                if (const ConstDecl* c = prog_.find_const(v.name)) return c->value;
                fail("undefined variable '" + v.name + "'", e.loc);
            },
            [&](const ListLit& l) {
                std::vector<Value> items;
                for (const auto& x : l.items) items.push_back(eval(x, env));
                return Value::list(std::move(items));
            },
            [&](const RecordLit& r) {
                std::vector<std::pair<std::string, Value>> fields;
                for (const auto& [k, x] : r.fields) fields.emplace_back(k, eval(x, env));
                return Value::record(std::move(fields));
            },
            [&](const Unary& u) {
                const Value v = eval(*u.operand, env);
                if (u.op == UnaryOp::Not) return Value::boolean(!truth(v, e.loc));
                return Value::num(-num(v, "negation", e.loc));
            },
            [&](const Binary& b) { return binary(b, env, e.loc); },
            [&](const Call& c) -> Value {
                if (const ExternDecl* x = prog_.find_extern(c.function)) {
                    if (x->arity() != c.args.size())
                        fail("extern '" + c.function + "' takes " + std::to_string(x->arity()) + " arguments", e.loc);
                    std::vector<Value> args;
                    for (const auto& a : c.args) args.push_back(eval(a, env));
                    return externs_.at(c.function)(args);
                }
                if (prog_.find_function(c.function)) {
                    std::vector<Value> args;
                    for (const auto& a : c.args) args.push_back(eval(a, env));
                    return call(c.function, args);
                }
                return call_builtin(c, env, e.loc);
            },
            [&](const MethodCall& m) -> Value {
                if (m.method == "append") fail("append has no value", e.loc);
                const Value recv = eval(*m.receiver, env);
                if (!recv.is_record()) fail(std::string("get needs a record, got ") + recv.kind_name(), e.loc);
                if (m.args.empty() || m.args.size() > 2) fail("get takes one or two arguments", e.loc);
                const Value key = eval(m.args[0], env);
                if (!key.is_str()) fail("record keys are strings", e.loc);
                if (const Value* v = recv.as_record().find(key.as_str())) return *v;
                if (m.args.size() == 2) return eval(m.args[1], env);
                fail("missing record field '" + key.as_str() + "'", e.loc);
            },
            [&](const Lambda&) -> Value { fail("lambda is only allowed as the predicate of count_if", e.loc); },
        },
        e.node);
}

Value Interpreter::binary(const Binary& b, const Env& env, Loc loc) {
    if (b.op == BinaryOp::And || b.op == BinaryOp::Or) {
        const bool lhs = truth(eval(*b.lhs, env), b.lhs->loc);
        if (b.op == BinaryOp::And && !lhs) return Value::boolean(false);
        if (b.op == BinaryOp::Or && lhs) return Value::boolean(true);
        return Value::boolean(truth(eval(*b.rhs, env), b.rhs->loc));
    }
    const Value l = eval(*b.lhs, env);
    const Value r = eval(*b.rhs, env);
    switch (b.op) {
        case BinaryOp::Add:
            if (l.is_str() && r.is_str()) return Value::str(l.as_str() + r.as_str());
            if (l.is_list() && r.is_list()) {
                std::vector<Value> items = l.as_list().items;
                items.insert(items.end(), r.as_list().items.begin(), r.as_list().items.end());
                return Value::list(std::move(items));
            }
            if (!l.is_num() || !r.is_num())
                fail(std::string("cannot add ") + l.kind_name() + " and " + r.kind_name(), loc);
            return Value::num(l.as_num() + r.as_num());
        case BinaryOp::Sub: return Value::num(num(l, "subtraction", loc) - num(r, "subtraction", loc));
        case BinaryOp::Mul: return Value::num(num(l, "multiplication", loc) * num(r, "multiplication", loc));
        case BinaryOp::Eq: return Value::boolean(l == r);
        case BinaryOp::Ne: return Value::boolean(!(l == r));
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge: {
            if (!((l.is_num() && r.is_num()) || (l.is_str() && r.is_str())))
                fail(std::string("cannot compare ") + l.kind_name() + " and " + r.kind_name(), loc);
            const auto c = l <=> r;
            switch (b.op) {
                case BinaryOp::Lt: return Value::boolean(c < 0);
                case BinaryOp::Le: return Value::boolean(c <= 0);
                case BinaryOp::Gt: return Value::boolean(c > 0);
                default: return Value::boolean(c >= 0);
            }
        }
        case BinaryOp::In: return Value::boolean(member(l, r, loc));
        case BinaryOp::NotIn: return Value::boolean(!member(l, r, loc));
        default: break;
    }
    fail("bad operator", loc);
}

Value Interpreter::call_builtin(const Call& c, const Env& env, Loc loc) {
    const std::string& f = c.function;
    if (f == "count_if") {
        if (c.args.size() != 2 || !c.args[1].is<Lambda>()) fail("count_if takes a list and a one-argument lambda", loc);
        const Lambda& lam = c.args[1].as<Lambda>();
        if (lam.params.size() != 1) fail("count_if predicate takes one argument", loc);
        const Value coll = eval(c.args[0], env);
        Env inner = env;
        Rational n = 0;
        for (const auto& item : iterable(coll, c.args[0].loc)) {
            inner[lam.params[0]] = item;
            if (truth(eval(*lam.body, inner), lam.body->loc)) n += 1;
        }
        return Value::num(n);
    }
    std::vector<Value> args;
    for (const auto& a : c.args) args.push_back(eval(a, env));
    if (f == "len") {
        if (args.size() != 1) fail("len takes one argument", loc);
        const Value& v = args[0];
        if (v.is_list()) return Value::num(v.as_list().items.size());
        if (v.is_set()) return Value::num(v.as_set().items.size());
        if (v.is_record()) return Value::num(v.as_record().fields.size());
        if (v.is_str()) return Value::num(v.as_str().size());
        fail(std::string("len of a ") + v.kind_name(), loc);
    }
    if (f == "min" || f == "max") {
        std::vector<Value> xs = args;
        if (xs.size() == 1 && xs[0].is_list()) xs = xs[0].as_list().items;
        if (xs.empty()) fail(f + " of nothing", loc);
        Rational best = num(xs[0], f.c_str(), loc);
        for (const auto& x : xs) {
            const Rational& v = num(x, f.c_str(), loc);
            if (f == "min" ? v < best : v > best) best = v;
        }
        return Value::num(best);
    }
    if (f == "round") {
        if (args.empty() || args.size() > 2) fail("round takes one or two arguments", loc);
        int digits = 0;
        if (args.size() == 2) {
            const Rational& d = num(args[1], "round", loc);
            if (denominator(d) != 1 || d < 0 || d > 30) fail("round digits must be a small non-negative integer", loc);
            digits = static_cast<int>(numerator(d));
        }
        return Value::num(round_half_away(num(args[0], "round", loc), digits));
    }
    if (f == "set") {
        if (args.empty()) return Value::set({});
        if (args.size() != 1) fail("set takes at most one argument", loc);
        try {
            return Value::set(iterable(args[0], loc));
        } catch (const std::invalid_argument& ex) {
            fail(ex.what(), loc);
        }
    }
    fail("call to undeclared function '" + f + "'", loc);
}

Value interpret(const SubjectProgram& prog, const std::string& function, const std::vector<Value>& args,
                const ExternTable& externs) {
    return Interpreter(prog, externs).call(function, args);
}

}  // namespace avc::sl

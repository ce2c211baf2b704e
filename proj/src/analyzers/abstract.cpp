#include "avc/analyzers/abstract.hpp"

#include "avc/util/text.hpp"

#include <algorithm>
#include <optional>

namespace avc::analyzers {

using namespace sl;

const std::set<std::string>* AbstractValue::string_set() const {
    if (const auto* s = std::get_if<StrLits>(&node)) return &s->items;
    if (const auto* e = std::get_if<EnumStr>(&node)) return &e->items;
    return nullptr;
}

bool operator==(const RecordShape& a, const RecordShape& b) { return a.fields == b.fields; }
bool operator==(const AbstractValue& a, const AbstractValue& b) { return a.node == b.node; }

namespace {

AbstractValue top() { return {Top{}}; }

std::set<std::string> set_union(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::set<std::string> out = a;
    out.insert(b.begin(), b.end());
    return out;
}

bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

AbstractValue join(const AbstractValue& a, const AbstractValue& b) {
    if (a == b) return a;
    if (a.is<Top>() || b.is<Top>()) return top();
    if (a.is_numeric() && b.is_numeric()) return {AnyNum{}};
    if (a.is_string() && b.is_string()) {
        const auto* sa = a.string_set();
        const auto* sb = b.string_set();
        if (!sa || !sb) return {AnyStr{}};
        std::set<std::string> u = set_union(*sa, *sb);
        if (a.is<StrLits>() && b.is<StrLits>() && *sa == *sb) return a;
        return {EnumStr{std::move(u)}};
    }
    if (a.is<ListOfStrLits>() && b.is<ListOfStrLits>()) {
        const auto& la = a.as<ListOfStrLits>();
        const auto& lb = b.as<ListOfStrLits>();
        return {ListOfStrLits{set_union(la.items, lb.items), la.may_contain_unknown || lb.may_contain_unknown}};
    }
    if (a.is<RecordShape>() && b.is<RecordShape>()) {
        const auto& ra = a.as<RecordShape>().fields;
        const auto& rb = b.as<RecordShape>().fields;
        if (ra.size() != rb.size()) return top();
        RecordShape out;
        for (const auto& [k, v] : ra) {
            auto it = rb.find(k);
            if (it == rb.end()) return top();
            out.fields.emplace(k, join(v, it->second));
        }
        return {std::move(out)};
    }
    return top();
}

bool leq(const AbstractValue& a, const AbstractValue& b) {
    if (b.is<Top>()) return true;
    if (a.is<Top>()) return false;
    if (b.is<AnyNum>()) return a.is_numeric();
    if (b.is<ExactNum>()) return a == b;
    if (b.is<AnyStr>()) return a.is_string();
    if (const auto* sb = b.string_set()) {
        const auto* sa = a.string_set();
        return sa && subset(*sa, *sb);
    }
    if (b.is<ListOfStrLits>()) {
        if (!a.is<ListOfStrLits>()) return false;
        const auto& la = a.as<ListOfStrLits>();
        const auto& lb = b.as<ListOfStrLits>();
        return subset(la.items, lb.items) && (!la.may_contain_unknown || lb.may_contain_unknown);
    }
    if (b.is<RecordShape>()) {
        if (!a.is<RecordShape>()) return false;
        const auto& ra = a.as<RecordShape>().fields;
        const auto& rb = b.as<RecordShape>().fields;
        if (ra.size() != rb.size()) return false;
        for (const auto& [k, v] : ra) {
            auto it = rb.find(k);
            if (it == rb.end() || !leq(v, it->second)) return false;
        }
        return true;
    }
    return false;
}

bool contains(const AbstractValue& a, const Value& v) {
    return std::visit(Overloaded{
                          [&](const ExactNum& n) { return v.is_num() && v.as_num() == n.value; },
                          [&](const AnyNum&) { return v.is_num(); },
                          [&](const StrLits& s) { return v.is_str() && s.items.contains(v.as_str()); },
                          [&](const EnumStr& s) { return v.is_str() && s.items.contains(v.as_str()); },
                          [&](const AnyStr&) { return v.is_str(); },
                          [&](const ListOfStrLits& l) {
                              if (!v.is_list()) return false;
                              for (const auto& item : v.as_list().items) {
                                  if (!item.is_str()) return false;
                                  if (!l.may_contain_unknown && !l.items.contains(item.as_str())) return false;
                              }
                              return true;
                          },
                          [&](const RecordShape& r) {
                              if (!v.is_record()) return false;
                              const auto& fields = v.as_record().fields;
                              if (fields.size() != r.fields.size()) return false;
                              for (const auto& [k, fv] : fields) {
                                  auto it = r.fields.find(k);
                                  if (it == r.fields.end() || !contains(it->second, fv)) return false;
                              }
                              return true;
                          },
                          [&](const Top&) { return true; },
                      },
                      a.node);
}

namespace {

std::string string_set_text(const std::set<std::string>& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& x : s) {
        out += (first ? "" : ", ") + quote(x);
        first = false;
    }
    return out + "}";
}

}  // namespace

std::string to_string(const AbstractValue& a) {
    return std::visit(Overloaded{
                          [](const ExactNum& n) { return "Num " + to_decimal_string(n.value); },
                          [](const AnyNum&) { return std::string("Num"); },
                          [](const StrLits& s) { return "Str " + string_set_text(s.items); },
                          [](const EnumStr& s) { return "Enum " + string_set_text(s.items); },
                          [](const AnyStr&) { return std::string("Str"); },
                          [](const ListOfStrLits& l) {
                              return "List " + string_set_text(l.items) + (l.may_contain_unknown ? " + Str" : "");
                          },
                          [](const RecordShape& r) {
                              std::string out = "Record {";
                              bool first = true;
                              for (const auto& [k, v] : r.fields) {
                                  out += (first ? "" : ", ") + quote(k) + ": " + to_string(v);
                                  first = false;
                              }
                              return out + "}";
                          },
                          [](const Top&) { return std::string("Top"); },
                      },
                      a.node);
}

namespace {

using AbsEnv = std::map<std::string, AbstractValue>;

// Variables missing on one side were unbound on that path; reading them
// there fails at run time, so the bound side's value is kept.
AbsEnv join_env(const AbsEnv& a, const AbsEnv& b) {
    AbsEnv out = a;
    for (const auto& [k, v] : b) {
        auto it = out.find(k);
        if (it == out.end())
            out.emplace(k, v);
        else
            it->second = join(it->second, v);
    }
    return out;
}

AbstractValue of_value(const Value& v) {
    if (v.is_num()) return {ExactNum{v.as_num()}};
    if (v.is_str()) return {StrLits{{v.as_str()}}};
    return top();
}

class Analyzer {
public:
    explicit Analyzer(const SubjectProgram& prog) : prog_(prog) {}

    FunctionSummary run(const FunctionDef& fn) {
        AbsEnv env;
        for (const auto& p : fn.params) env[p] = top();
        exec(fn.body, env);
        return std::move(summary_);
    }

private:
    // Returns the environment on fall-through, or nullopt when every path
    // returned.
    std::optional<AbsEnv> exec(const Block& body, AbsEnv env) {
        for (const auto& s : body) {
            std::optional<AbsEnv> next = step(s, std::move(env));
            if (!next) return std::nullopt;
            env = std::move(*next);
        }
        return env;
    }

    std::optional<AbsEnv> step(const Stmt& s, AbsEnv env) {
        if (const auto* a = std::get_if<Assign>(&s.node)) {
            AbstractValue v = eval(a->value, env);
            if (a->op == AssignOp::Set) {
                env[a->target] = std::move(v);
            } else {
                auto it = env.find(a->target);
                AbstractValue cur = it == env.end() ? top() : it->second;
                env[a->target] = arith(a->op == AssignOp::Add ? BinaryOp::Add : BinaryOp::Sub, cur, v, true);
            }
            return env;
        }
        if (const auto* e = std::get_if<ExprStmt>(&s.node)) {
            if (e->expr.is<MethodCall>() && e->expr.as<MethodCall>().method == "append") {
                const auto& m = e->expr.as<MethodCall>();
                const std::string& target = m.receiver->as<VarRef>().name;
                AbstractValue item = m.args.size() == 1 ? eval(m.args[0], env) : top();
                auto it = env.find(target);
                AbstractValue list = it == env.end() ? top() : it->second;
                env[target] = append(list, item);
            }
            return env;
        }
        if (const auto* i = std::get_if<If>(&s.node)) {
            std::optional<AbsEnv> out;
            auto merge = [&](std::optional<AbsEnv> e) {
                if (!e) return;
                out = out ? join_env(*out, *e) : std::move(*e);
            };
            for (const auto& br : i->branches) merge(exec(br.body, env));
            merge(i->orelse ? exec(*i->orelse, env) : std::optional<AbsEnv>(env));
            return out;
        }
        if (const auto* f = std::get_if<For>(&s.node)) {
            AbsEnv head = env;
            for (int round = 0;; ++round) {
                AbsEnv body_in = head;
                body_in[f->var] = top();
                std::optional<AbsEnv> body_out = exec(f->body, body_in);
                AbsEnv next = body_out ? join_env(head, *body_out) : head;
                if (next == head) break;
                if (round >= kWidenAfter) {
                    for (auto& [k, v] : next)
                        if (auto it = head.find(k); it == head.end() || !(it->second == v)) v = top();
                    head = std::move(next);
                    continue;
                }
                head = std::move(next);
            }
            return head;
        }
        const auto& r = std::get<Return>(s.node);
        summary_.returns.emplace_back(s.loc, eval(r.value, env));
        return std::nullopt;
    }

    static constexpr int kWidenAfter = 8;

    static AbstractValue append(const AbstractValue& list, const AbstractValue& item) {
        if (!list.is<ListOfStrLits>()) return top();
        ListOfStrLits out = list.as<ListOfStrLits>();
        if (const auto* s = item.string_set())
            out.items.insert(s->begin(), s->end());
        else if (item.is<AnyStr>())
            out.may_contain_unknown = true;
        else
            return top();
        return {std::move(out)};
    }

    // Runtime `+` needs two numbers, two strings or two lists; `-`, `*` and
    // augmented assignment need numbers. A successful result is typed by
    // either known side.
    static AbstractValue arith(BinaryOp op, const AbstractValue& a, const AbstractValue& b, bool numeric_only) {
        if (a.is<ExactNum>() && b.is<ExactNum>()) {
            const Rational& x = a.as<ExactNum>().value;
            const Rational& y = b.as<ExactNum>().value;
            if (op == BinaryOp::Add) return {ExactNum{x + y}};
            if (op == BinaryOp::Sub) return {ExactNum{x - y}};
            return {ExactNum{x * y}};
        }
        if (numeric_only || op != BinaryOp::Add || a.is_numeric() || b.is_numeric()) return {AnyNum{}};
        if (a.is_string() || b.is_string()) return {AnyStr{}};
        if (a.is<ListOfStrLits>() && b.is<ListOfStrLits>()) return join(a, b);
        return top();
    }

    AbstractValue eval(const Expr& e, const AbsEnv& env) {
        return std::visit(
            Overloaded{
                [](const NumLit& n) -> AbstractValue { return {ExactNum{n.value}}; },
                [](const StrLit& s) -> AbstractValue { return {StrLits{{s.text}}}; },
                [](const BoolLit&) { return top(); },
                [&](const VarRef& v) -> AbstractValue {
                    if (auto it = env.find(v.name); it != env.end()) return it->second;
                    if (const ConstDecl* c = prog_.find_const(v.name)) return of_value(c->value);
                    return top();
                },
                [&](const ListLit& l) -> AbstractValue {
                    ListOfStrLits out;
                    for (const auto& item : l.items) {
                        AbstractValue v = eval(item, env);
                        if (const auto* s = v.string_set())
                            out.items.insert(s->begin(), s->end());
                        else if (v.is<AnyStr>())
                            out.may_contain_unknown = true;
                        else
                            return top();
                    }
                    return {std::move(out)};
                },
                [&](const RecordLit& r) -> AbstractValue {
                    RecordShape out;
                    for (const auto& [k, v] : r.fields) out.fields[k] = eval(v, env);
                    return {std::move(out)};
                },
                [&](const Unary& u) -> AbstractValue {
                    if (u.op == UnaryOp::Not) return top();
                    AbstractValue v = eval(*u.operand, env);
                    if (v.is<ExactNum>()) return {ExactNum{-v.as<ExactNum>().value}};
                    return {AnyNum{}};
                },
                [&](const Binary& b) -> AbstractValue {
                    switch (b.op) {
                        case BinaryOp::Add:
                        case BinaryOp::Sub:
                        case BinaryOp::Mul:
                            return arith(b.op, eval(*b.lhs, env), eval(*b.rhs, env), false);
                        default: return top();
                    }
                },
                [&](const Call& c) -> AbstractValue { return call(c, env); },
                [](const MethodCall&) { return top(); },
                [](const Lambda&) { return top(); },
            },
            e.node);
    }

    AbstractValue call(const Call& c, const AbsEnv& env) {
        if (c.function == "len" || c.function == "count_if") return {AnyNum{}};
        if (c.function == "min" || c.function == "max" || c.function == "round") {
            if (c.args.empty()) return top();
            std::vector<AbstractValue> args;
            for (const auto& a : c.args) args.push_back(eval(a, env));
            if (c.function == "round") {
                if (args[0].is<ExactNum>() && (args.size() == 1 || args[1].is<ExactNum>())) {
                    const Rational digits = args.size() == 1 ? Rational(0) : args[1].as<ExactNum>().value;
                    if (boost::multiprecision::denominator(digits) == 1 && digits >= 0 && digits <= 30)
                        return {ExactNum{round_half_away(args[0].as<ExactNum>().value,
                                                         static_cast<int>(boost::multiprecision::numerator(digits)))}};
                }
                return {AnyNum{}};
            }
            auto exact = [](const AbstractValue& a) { return a.is<ExactNum>(); };
            if (args.size() >= 2 && std::all_of(args.begin(), args.end(), exact)) {
                Rational best = args[0].as<ExactNum>().value;
                for (const auto& a : args) {
                    const Rational& v = a.as<ExactNum>().value;
                    if (c.function == "min" ? v < best : v > best) best = v;
                }
                return {ExactNum{best}};
            }
            return {AnyNum{}};
        }
        return top();
    }

    const SubjectProgram& prog_;
    FunctionSummary summary_;
};

}  // namespace

FunctionSummary analyze_function(const SubjectProgram& prog, const FunctionDef& fn) { return Analyzer(prog).run(fn); }

}  // namespace avc::analyzers

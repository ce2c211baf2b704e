#include "common.hpp"

#include "avc/sl/parse.hpp"

#include <optional>

namespace avc::analyzers {

using namespace sl;
using detail::ExternTouched;

namespace {

// The variable every return reports as the decision, if they agree.
std::optional<std::string> decision_variable(const FunctionDef& fn) {
    std::optional<std::string> found;
    bool consistent = true;
    detail::for_each_stmt(fn.body, [&](const Stmt& s) {
        const auto* r = std::get_if<Return>(&s.node);
        if (!r) return;
        std::optional<std::string> name;
        if (r->value.is<VarRef>()) {
            name = r->value.as<VarRef>().name;
        } else if (r->value.is<RecordLit>()) {
            for (const auto& [k, v] : r->value.as<RecordLit>().fields)
                if (k == "decision" && v.is<VarRef>()) name = v.as<VarRef>().name;
        }
        if (!name || (found && *found != *name)) consistent = false;
        if (name) found = name;
    });
    if (!consistent) return std::nullopt;
    return found;
}

std::optional<std::string> returned_score_expr(const FunctionDef& fn, const std::string& score_var) {
    std::optional<std::string> out;
    detail::for_each_stmt(fn.body, [&](const Stmt& s) {
        const auto* r = std::get_if<Return>(&s.node);
        if (!r || !r->value.is<RecordLit>()) return;
        for (const auto& [k, v] : r->value.as<RecordLit>().fields)
            if (k == "score" && !(v.is<VarRef>() && v.as<VarRef>().name == score_var)) out = print_expr(v);
    });
    return out;
}

std::optional<Rational> numeric(const Expr& e, const std::map<std::string, Value>& consts) {
    if (e.is<NumLit>()) return e.as<NumLit>().value;
    if (e.is<VarRef>()) {
        auto it = consts.find(e.as<VarRef>().name);
        if (it != consts.end() && it->second.is_num()) return it->second.as_num();
    }
    if (e.is<Unary>() && e.as<Unary>().op == UnaryOp::Neg)
        if (auto v = numeric(*e.as<Unary>().operand, consts)) return -*v;
    return std::nullopt;
}

std::optional<std::string> assigned_literal(const Block& b, const std::string& var) {
    if (b.size() != 1 || !b[0].is<Assign>()) return std::nullopt;
    const Assign& a = b[0].as<Assign>();
    if (a.target != var || a.op != AssignOp::Set || !a.value.is<StrLit>()) return std::nullopt;
    return a.value.as<StrLit>().text;
}

struct Ladder {
    std::vector<Rational> thresholds;
    std::vector<std::string> decisions;  // one per branch, then the else
};

std::optional<Ladder> match_ladder(const Stmt& s, const std::string& score_var, const std::string& decision_var,
                                   const std::map<std::string, Value>& consts) {
    if (!s.is<If>()) return std::nullopt;
    const If& i = s.as<If>();
    if (!i.orelse) return std::nullopt;
    Ladder out;
    for (const auto& br : i.branches) {
        if (!br.cond.is<Binary>()) return std::nullopt;
        const Binary& b = br.cond.as<Binary>();
        if (b.op != BinaryOp::Ge && b.op != BinaryOp::Gt) return std::nullopt;
        if (!b.lhs->is<VarRef>() || b.lhs->as<VarRef>().name != score_var) return std::nullopt;
        auto t = numeric(*b.rhs, consts);
        auto d = assigned_literal(br.body, decision_var);
        if (!t || !d) return std::nullopt;
        out.thresholds.push_back(*t);
        out.decisions.push_back(*d);
    }
    auto last = assigned_literal(*i.orelse, decision_var);
    if (!last) return std::nullopt;
    out.decisions.push_back(*last);
    return out;
}

int rank_of(const std::vector<std::string>& order, const std::string& d) {
    auto it = std::find(order.begin(), order.end(), d);
    return it == order.end() ? -1 : static_cast<int>(it - order.begin());
}

}  // namespace

Evidence verify_threshold_ladder(const SubjectProgram& prog, const std::string& function, const std::string& score_var,
                                 const std::vector<std::string>& order) {
    if (order.size() < 2 || std::set<std::string>(order.begin(), order.end()).size() != order.size())
        throw AnalysisError("decision order needs at least two distinct literals");
    const FunctionDef& fn = detail::require_function(prog, function);
    if (!detail::binds(fn, score_var))
        throw AnalysisError("function '" + function + "' has no variable '" + score_var + "'");

    Json details;
    details["function"] = function;
    details["score"] = score_var;
    details["order"] = order;
    auto unknown = [&](const std::string& why) {
        details["reason"] = why;
        return detail::make_evidence("threshold-ladder", EvidenceStatus::Unknown, details, prog);
    };

    const auto decision = decision_variable(fn);
    if (!decision) return unknown("returns do not name a single decision variable");
    details["decisionVar"] = *decision;
    if (*decision == score_var) return unknown("decision and score are the same variable");

    std::vector<const Stmt*> slice;
    for (const auto& s : fn.body) {
        bool touches = false;
        detail::for_each_stmt({s}, [&](const Stmt& inner) { touches = touches || detail::assigns(inner, *decision); });
        if (touches) slice.push_back(&s);
    }
    if (slice.empty()) return unknown("decision variable is never assigned at the top level");

    const auto consts = extract_constants(prog);
    if (slice.size() == 1)
        if (auto ladder = match_ladder(*slice[0], score_var, *decision, consts)) {
            bool ok = true;
            for (std::size_t k = 1; k < ladder->thresholds.size(); ++k)
                ok = ok && ladder->thresholds[k] < ladder->thresholds[k - 1];
            for (std::size_t k = 0; k < ladder->decisions.size(); ++k) {
                const int r = rank_of(order, ladder->decisions[k]);
                ok = ok && r >= 0 && (k == 0 || r < rank_of(order, ladder->decisions[k - 1]));
            }
            if (ok) {
                details["pattern"] = "ladder";
                Json ts = Json::array();
                for (const auto& t : ladder->thresholds) ts.push_back(to_decimal_string(t));
                details["thresholds"] = ts;
                details["decisions"] = ladder->decisions;
                std::string note = "checked: the decision is a non-decreasing step function of '" + score_var +
                                   "' at " + detail::loc_text(slice[0]->loc);
                if (auto shown = returned_score_expr(fn, score_var))
                    note += "; the returned score is " + *shown + ", so two outputs with equal returned scores may"
                            " still differ in decision near a threshold";
                details["strengthening"] = note;
                return detail::make_evidence("threshold-ladder", EvidenceStatus::Verified, details, prog);
            }
        }

    // No recognizable ladder: sample the decision computation.
    std::set<Rational> points;
    for (const Stmt* s : slice)
        detail::for_each_expr(Block{*s}, [&](const Expr& e) {
            if (auto v = numeric(e, consts)) points.insert(*v);
        });
    std::set<Rational> grid;
    const Rational eps(1, 1000000);
    if (points.empty()) points.insert(0);
    for (const auto& p : points) {
        grid.insert(p - eps);
        grid.insert(p);
        grid.insert(p + eps);
    }
    for (auto it = points.begin(); std::next(it) != points.end(); ++it) grid.insert((*it + *std::next(it)) / 2);
    grid.insert(*points.begin() - 1);
    grid.insert(*points.rbegin() + 1);

    struct Sample {
        Rational score;
        std::string decision;
        int rank;
    };
    std::vector<Sample> samples;
    int failed = 0;
    for (const auto& x : grid) {
        try {
            Interpreter interp(prog, detail::refusing_externs(prog));
            Interpreter::Env env(consts.begin(), consts.end());
            env[score_var] = Value::num(x);
            for (const Stmt* s : slice)
                if (interp.exec(Block{*s}, env)) break;
            auto it = env.find(*decision);
            if (it == env.end() || !it->second.is_str()) {
                ++failed;
                continue;
            }
            samples.push_back({x, it->second.as_str(), rank_of(order, it->second.as_str())});
        } catch (const EvalError&) {
            ++failed;
        } catch (const ExternTouched&) {
            ++failed;
        }
    }
    details["samples"] = samples.size();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].rank < 0) continue;
        for (std::size_t j = samples.size(); j-- > i + 1;) {
            if (samples[j].rank < 0 || samples[j].rank >= samples[i].rank) continue;
            details["witness"] = Json::array(
                {{{"score", to_decimal_string(samples[i].score)}, {"decision", samples[i].decision}},
                 {{"score", to_decimal_string(samples[j].score)}, {"decision", samples[j].decision}}});
            return detail::make_evidence("threshold-ladder", EvidenceStatus::Refuted, details, prog);
        }
    }
    if (failed) return unknown("decision computation could not be evaluated at " + std::to_string(failed) + " sample points");
    return unknown("no ladder pattern; sampling found no violation");
}

}  // namespace avc::analyzers

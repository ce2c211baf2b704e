#include "common.hpp"

namespace avc::analyzers {

std::string to_string(EvidenceStatus s) {
    switch (s) {
        case EvidenceStatus::Verified: return "Verified";
        case EvidenceStatus::Refuted: return "Refuted";
        case EvidenceStatus::Unknown: return "Unknown";
    }
    return "Unknown";
}

Json to_json(const Evidence& e) {
    Json j;
    j["claimId"] = e.claim_id;
    j["verifier"] = e.verifier;
    j["status"] = to_string(e.status);
    j["details"] = e.details;
    j["subjectHash"] = e.subject_hash;
    return j;
}

Evidence evidence_from_json(const Json& j) {
    Evidence e;
    e.claim_id = j.at("claimId").get<std::string>();
    e.verifier = j.at("verifier").get<std::string>();
    const std::string s = j.at("status").get<std::string>();
    if (s == "Verified")
        e.status = EvidenceStatus::Verified;
    else if (s == "Refuted")
        e.status = EvidenceStatus::Refuted;
    else if (s == "Unknown")
        e.status = EvidenceStatus::Unknown;
    else
        throw std::invalid_argument("unknown evidence status '" + s + "'");
    e.details = j.at("details");
    e.subject_hash = j.at("subjectHash").get<std::string>();
    return e;
}

namespace detail {

using namespace sl;

const FunctionDef& require_function(const SubjectProgram& prog, const std::string& name) {
    if (const FunctionDef* f = prog.find_function(name)) return *f;
    throw AnalysisError("unknown function '" + name + "'");
}

void for_each_stmt(const Block& body, const std::function<void(const Stmt&)>& fn) {
    for (const auto& s : body) {
        fn(s);
        if (const auto* i = std::get_if<If>(&s.node)) {
            for (const auto& br : i->branches) for_each_stmt(br.body, fn);
            if (i->orelse) for_each_stmt(*i->orelse, fn);
        } else if (const auto* f = std::get_if<For>(&s.node)) {
            for_each_stmt(f->body, fn);
        }
    }
}

void for_each_expr(const Expr& e, const std::function<void(const Expr&)>& fn) {
    fn(e);
    std::visit(Overloaded{
                   [&](const ListLit& l) {
                       for (const auto& x : l.items) for_each_expr(x, fn);
                   },
                   [&](const RecordLit& r) {
                       for (const auto& [k, x] : r.fields) for_each_expr(x, fn);
                   },
                   [&](const Unary& u) { for_each_expr(*u.operand, fn); },
                   [&](const Binary& b) {
                       for_each_expr(*b.lhs, fn);
                       for_each_expr(*b.rhs, fn);
                   },
                   [&](const Call& c) {
                       for (const auto& x : c.args) for_each_expr(x, fn);
                   },
                   [&](const MethodCall& m) {
                       for_each_expr(*m.receiver, fn);
                       for (const auto& x : m.args) for_each_expr(x, fn);
                   },
                   [&](const Lambda& l) { for_each_expr(*l.body, fn); },
                   [](const auto&) {},
               },
               e.node);
}

void for_each_expr(const Block& body, const std::function<void(const Expr&)>& fn) {
    for_each_stmt(body, [&](const Stmt& s) {
        std::visit(Overloaded{
                       [&](const Assign& a) { for_each_expr(a.value, fn); },
                       [&](const ExprStmt& e) { for_each_expr(e.expr, fn); },
                       [&](const If& i) {
                           for (const auto& br : i.branches) for_each_expr(br.cond, fn);
                       },
                       [&](const For& f) { for_each_expr(f.iterable, fn); },
                       [&](const Return& r) { for_each_expr(r.value, fn); },
                   },
                   s.node);
    });
}

bool assigns(const Stmt& s, const std::string& var) {
    if (const auto* a = std::get_if<Assign>(&s.node)) return a->target == var;
    if (const auto* f = std::get_if<For>(&s.node)) return f->var == var;
    if (const auto* e = std::get_if<ExprStmt>(&s.node))
        if (e->expr.is<MethodCall>()) {
            const auto& m = e->expr.as<MethodCall>();
            return m.method == "append" && m.receiver->is<VarRef>() && m.receiver->as<VarRef>().name == var;
        }
    return false;
}

bool binds(const FunctionDef& fn, const std::string& var) {
    if (std::find(fn.params.begin(), fn.params.end(), var) != fn.params.end()) return true;
    bool found = false;
    for_each_stmt(fn.body, [&](const Stmt& s) { found = found || assigns(s, var); });
    return found;
}

ExternTable refusing_externs(const SubjectProgram& prog) {
    ExternTable t;
    for (const auto& e : prog.externs) {
        const std::string name = e.name;
        t[name] = [name](const std::vector<Value>&) -> Value { throw ExternTouched{name}; };
    }
    return t;
}

Evidence make_evidence(std::string verifier, EvidenceStatus status, Json details, const SubjectProgram& prog) {
    Evidence e;
    e.verifier = std::move(verifier);
    e.status = status;
    e.details = std::move(details);
    e.subject_hash = prog.source_hash;
    return e;
}

std::string loc_text(Loc loc) { return std::to_string(loc.line) + ":" + std::to_string(loc.column); }

}  // namespace detail
}  // namespace avc::analyzers

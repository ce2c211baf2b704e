#include "common.hpp"

#include "avc/sl/parse.hpp"

namespace avc::analyzers {

using namespace sl;

Evidence verify_string_inventory(const SubjectProgram& prog, const std::string& function, const std::string& sink,
                                 const std::set<std::string>& claimed) {
    const FunctionDef& fn = detail::require_function(prog, function);
    if (!detail::binds(fn, sink)) throw AnalysisError("function '" + function + "' has no variable '" + sink + "'");

    std::vector<std::string> inventory;  // first-appearance order
    std::vector<std::string> opaque;
    auto add = [&](const std::string& s) {
        if (std::find(inventory.begin(), inventory.end(), s) == inventory.end()) inventory.push_back(s);
    };
    if (std::find(fn.params.begin(), fn.params.end(), sink) != fn.params.end())
        opaque.push_back("'" + sink + "' is a parameter");

    detail::for_each_stmt(fn.body, [&](const Stmt& s) {
        if (!detail::assigns(s, sink)) return;
        const std::string at = detail::loc_text(s.loc);
        if (const auto* a = std::get_if<Assign>(&s.node)) {
            if (a->op == AssignOp::Set && a->value.is<ListLit>()) {
                bool literal = true;
                for (const auto& item : a->value.as<ListLit>().items) literal = literal && item.is<StrLit>();
                if (literal) {
                    for (const auto& item : a->value.as<ListLit>().items) add(item.as<StrLit>().text);
                    return;
                }
            }
            opaque.push_back(at + ": " + sink + " = " + print_expr(a->value));
        } else if (const auto* e = std::get_if<ExprStmt>(&s.node)) {
            const auto& m = e->expr.as<MethodCall>();
            if (m.args.size() == 1 && m.args[0].is<StrLit>())
                add(m.args[0].as<StrLit>().text);
            else
                opaque.push_back(at + ": " + print_expr(e->expr));
        } else {
            opaque.push_back(at + ": loop variable");
        }
    });

    Json details;
    details["function"] = function;
    details["sink"] = sink;
    details["inventory"] = inventory;
    details["claimed"] = claimed.size();

    for (const auto& s : inventory)
        if (!claimed.contains(s)) {
            details["witness"] = s;
            return detail::make_evidence("string-inventory", EvidenceStatus::Refuted, details, prog);
        }
    if (!opaque.empty()) {
        details["nonLiteral"] = opaque;
        return detail::make_evidence("string-inventory", EvidenceStatus::Unknown, details, prog);
    }

    // The returned list must be the sink itself, not some other value.
    const std::set<std::string> inv(inventory.begin(), inventory.end());
    std::vector<std::string> untraced;
    for (const auto& [loc, v] : analyze_function(prog, fn).returns) {
        const AbstractValue* list = &v;
        if (v.is<RecordShape>()) {
            auto it = v.as<RecordShape>().fields.find(sink);
            list = it == v.as<RecordShape>().fields.end() ? nullptr : &it->second;
        }
        bool ok = list && list->is<ListOfStrLits>() && !list->as<ListOfStrLits>().may_contain_unknown;
        if (ok)
            for (const auto& s : list->as<ListOfStrLits>().items) ok = ok && inv.contains(s);
        if (!ok) untraced.push_back("return at " + detail::loc_text(loc) + " is " + to_string(v));
    }
    if (!untraced.empty()) {
        details["untraced"] = untraced;
        return detail::make_evidence("string-inventory", EvidenceStatus::Unknown, details, prog);
    }
    return detail::make_evidence("string-inventory", EvidenceStatus::Verified, details, prog);
}

}  // namespace avc::analyzers

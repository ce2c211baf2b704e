#include "common.hpp"

#include "avc/util/text.hpp"

#include <algorithm>

namespace avc::analyzers {

using namespace sl;
using detail::ExternTouched;

namespace {

std::string spec_text(const FieldSpec& f) {
    switch (f.kind) {
        case FieldSpec::Kind::Num: return "Real";
        case FieldSpec::Kind::Str: return "Str";
        case FieldSpec::Kind::ListStr: return "ListStr";
        case FieldSpec::Kind::Enum: break;
    }
    std::string out = "{";
    for (const auto& s : f.allowed) out += (out.size() > 1 ? ", " : "") + quote(s);
    return out + "}";
}

// Empty when the abstract value is known to meet the field spec.
std::string abstract_gap(const AbstractValue& v, const FieldSpec& f) {
    switch (f.kind) {
        case FieldSpec::Kind::Num:
            if (v.is_numeric()) return "";
            break;
        case FieldSpec::Kind::Str:
            if (v.is_string()) return "";
            break;
        case FieldSpec::Kind::Enum:
            if (const auto* s = v.string_set()) {
                for (const auto& x : *s)
                    if (!f.allowed.contains(x)) return "may be " + quote(x);
                return "";
            }
            break;
        case FieldSpec::Kind::ListStr:
            if (v.is<ListOfStrLits>() && !v.as<ListOfStrLits>().may_contain_unknown) return "";
            break;
    }
    return "is " + to_string(v);
}

std::string concrete_gap(const Value& out, const ShapeSpec& spec) {
    if (!out.is_record()) return std::string("returned a ") + out.kind_name() + ", not a record";
    for (const auto& [name, f] : spec) {
        const Value* v = out.as_record().find(name);
        if (!v) return "field '" + name + "' is missing";
        bool ok = false;
        switch (f.kind) {
            case FieldSpec::Kind::Num: ok = v->is_num(); break;
            case FieldSpec::Kind::Str: ok = v->is_str(); break;
            case FieldSpec::Kind::Enum: ok = v->is_str() && f.allowed.contains(v->as_str()); break;
            case FieldSpec::Kind::ListStr:
                ok = v->is_list() && std::all_of(v->as_list().items.begin(), v->as_list().items.end(),
                                                 [](const Value& x) { return x.is_str(); });
                break;
        }
        if (!ok) return "field '" + name + "' is " + to_string(*v) + ", expected " + spec_text(f);
    }
    return "";
}

// Plain seeds plus up to eight literals the function compares against.
std::vector<std::vector<Value>> probe_inputs(const FunctionDef& fn) {
    std::vector<Value> seeds{Value::num(0), Value::str(""), Value::list({}), Value::record({}), Value::boolean(true)};
    std::set<Value> extra;
    detail::for_each_expr(fn.body, [&](const Expr& e) {
        if (extra.size() >= 8) return;
        if (e.is<NumLit>()) extra.insert(Value::num(e.as<NumLit>().value));
        if (e.is<StrLit>()) extra.insert(Value::str(e.as<StrLit>().text));
    });
    for (const auto& v : extra)
        if (std::find(seeds.begin(), seeds.end(), v) == seeds.end()) seeds.push_back(v);
    const std::size_t arity = fn.params.size();
    std::vector<std::vector<Value>> out;
    if (arity <= 3) {
        std::vector<std::size_t> idx(arity, 0);
        while (true) {
            std::vector<Value> args;
            for (auto i : idx) args.push_back(seeds[i]);
            out.push_back(std::move(args));
            std::size_t k = 0;
            while (k < arity && ++idx[k] == seeds.size()) idx[k++] = 0;
            if (k == arity) break;
        }
    } else {
        for (const auto& s : seeds) out.emplace_back(arity, s);
    }
    return out;
}

}  // namespace

Evidence verify_output_shape(const SubjectProgram& prog, const std::string& function, const ShapeSpec& spec) {
    const FunctionDef& fn = detail::require_function(prog, function);
    FunctionSummary summary = analyze_function(prog, fn);

    Json details;
    details["function"] = function;
    Json spec_json = Json::object();
    for (const auto& [name, f] : spec) spec_json[name] = spec_text(f);
    details["spec"] = spec_json;
    Json returns = Json::array();
    std::vector<std::string> gaps;
    for (const auto& [loc, v] : summary.returns) {
        returns.push_back({{"at", detail::loc_text(loc)}, {"shape", to_string(v)}});
        if (!v.is<RecordShape>()) {
            gaps.push_back("return at " + detail::loc_text(loc) + " is " + to_string(v));
            continue;
        }
        const auto& fields = v.as<RecordShape>().fields;
        for (const auto& [name, f] : spec) {
            auto it = fields.find(name);
            if (it == fields.end()) {
                gaps.push_back("return at " + detail::loc_text(loc) + " has no field '" + name + "'");
                continue;
            }
            if (std::string g = abstract_gap(it->second, f); !g.empty())
                gaps.push_back("return at " + detail::loc_text(loc) + ": field '" + name + "' " + g);
        }
    }
    details["returns"] = returns;
    if (gaps.empty()) return detail::make_evidence("output-shape", EvidenceStatus::Verified, details, prog);
    details["gaps"] = gaps;

    // Only a concrete run that never consulted an extern may refute.
    for (const auto& args : probe_inputs(fn)) {
        Value out;
        try {
            out = interpret(prog, function, args, detail::refusing_externs(prog));
        } catch (const EvalError&) {
            continue;
        } catch (const ExternTouched&) {
            continue;
        }
        if (std::string g = concrete_gap(out, spec); !g.empty()) {
            Json input = Json::array();
            for (const auto& a : args) input.push_back(to_string(a));
            details["witness"] = {{"input", input}, {"output", to_string(out)}, {"violation", g}};
            return detail::make_evidence("output-shape", EvidenceStatus::Refuted, details, prog);
        }
    }
    return detail::make_evidence("output-shape", EvidenceStatus::Unknown, details, prog);
}

}  // namespace avc::analyzers

#include "avc/rationale/interchange.hpp"

#include <stdexcept>

namespace avc::rationale {

using namespace logic;

namespace {

[[noreturn]] void malformed(const std::string& what) { throw std::runtime_error("malformed interchange document: " + what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string text_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string()) malformed(std::string("field '") + key + "' is not a string");
    return v.get<std::string>();
}

Json sorts_json(const std::vector<Sort>& sorts) {
    Json out = Json::array();
    for (const auto& s : sorts) out.push_back(to_json(s));
    return out;
}

std::vector<Sort> sorts_from(const Json& j) {
    if (!j.is_array()) malformed("sort list is not an array");
    std::vector<Sort> out;
    for (const auto& s : j) out.push_back(sort_from_json(s));
    return out;
}

Json terms_json(const std::vector<Term>& terms) {
    Json out = Json::array();
    for (const auto& t : terms) out.push_back(to_json(t));
    return out;
}

std::vector<Term> terms_from(const Json& j) {
    if (!j.is_array()) malformed("argument list is not an array");
    std::vector<Term> out;
    for (const auto& t : j) out.push_back(term_from_json(t));
    return out;
}

Json formulas_json(const std::vector<Formula>& items) {
    Json out = Json::array();
    for (const auto& f : items) out.push_back(to_json(f));
    return out;
}

std::vector<Formula> formulas_from(const Json& j) {
    if (!j.is_array()) malformed("item list is not an array");
    std::vector<Formula> out;
    for (const auto& f : j) out.push_back(formula_from_json(f));
    return out;
}

std::vector<std::string> strings_from(const Json& j) {
    if (!j.is_array()) malformed("expected an array of strings");
    std::vector<std::string> out;
    for (const auto& s : j) {
        if (!s.is_string()) malformed("expected an array of strings");
        out.push_back(s.get<std::string>());
    }
    return out;
}

const char* hint_kind_name(HintValue::Kind k) {
    switch (k) {
        case HintValue::Kind::Word: return "Word";
        case HintValue::Kind::String: return "String";
        case HintValue::Kind::Set: return "Set";
        case HintValue::Kind::List: return "List";
    }
    return "Word";
}

}  // namespace

Json to_json(const Sort& s) { return s.to_string(); }

Sort sort_from_json(const Json& j) {
    if (!j.is_string()) malformed("sort is not a string");
    return Sort::from_name(j.get<std::string>());
}

Json to_json(const Term& t) {
    return std::visit(Overloaded{
                          [](const Variable& v) {
                              return Json{{"kind", "Variable"}, {"name", v.name}, {"sort", to_json(v.sort)}};
                          },
                          [](const NumLiteral& n) {
                              return Json{{"kind", "NumLiteral"}, {"value", to_decimal_string(n.value)}};
                          },
                          [](const StrLiteral& s) { return Json{{"kind", "StrLiteral"}, {"text", s.text}}; },
                          [](const Apply& a) {
                              return Json{{"kind", "Apply"}, {"function", a.function}, {"args", terms_json(a.args)}};
                          },
                      },
                      t.node);
}

Term term_from_json(const Json& j) {
    const std::string kind = text_field(j, "kind");
    if (kind == "Variable") return make::var(text_field(j, "name"), sort_from_json(field(j, "sort")));
    if (kind == "NumLiteral") {
        const std::string text = text_field(j, "value");
        if (auto v = parse_decimal(text)) return make::num(*v);
        try {
            return make::num(Rational(text));
        } catch (const std::exception&) {
            malformed("bad numeric literal '" + text + "'");
        }
    }
    if (kind == "StrLiteral") return make::str(text_field(j, "text"));
    if (kind == "Apply") return make::app(text_field(j, "function"), terms_from(field(j, "args")));
    malformed("unknown term kind '" + kind + "'");
}

Json to_json(const Formula& f) {
    return std::visit(
        Overloaded{
            [](const PredicateApp& p) {
                return Json{{"kind", "PredicateApp"}, {"predicate", p.predicate}, {"args", terms_json(p.args)}};
            },
            [](const Equals& e) { return Json{{"kind", "Equals"}, {"lhs", to_json(e.lhs)}, {"rhs", to_json(e.rhs)}}; },
            [](const Compare& c) {
                return Json{{"kind", "Compare"},
                            {"relation", c.relation == Relation::Le ? "<=" : "<"},
                            {"lhs", to_json(c.lhs)},
                            {"rhs", to_json(c.rhs)}};
            },
            [](const MemberOf& m) {
                return Json{{"kind", "MemberOf"}, {"element", to_json(m.element)}, {"literals", m.literals}};
            },
            [](const InformalAtom& a) { return Json{{"kind", "InformalAtom"}, {"text", a.text}}; },
            [](const Not& n) { return Json{{"kind", "Not"}, {"body", to_json(*n.body)}}; },
            [](const And& a) { return Json{{"kind", "And"}, {"items", formulas_json(a.items)}}; },
            [](const Or& o) { return Json{{"kind", "Or"}, {"items", formulas_json(o.items)}}; },
            [](const Implies& i) {
                return Json{{"kind", "Implies"}, {"lhs", to_json(*i.lhs)}, {"rhs", to_json(*i.rhs)}};
            },
            [](const Iff& i) { return Json{{"kind", "Iff"}, {"lhs", to_json(*i.lhs)}, {"rhs", to_json(*i.rhs)}}; },
            [](const Forall& q) {
                return Json{{"kind", "Forall"}, {"var", q.var}, {"sort", to_json(q.sort)}, {"body", to_json(*q.body)}};
            },
            [](const Exists& q) {
                return Json{{"kind", "Exists"}, {"var", q.var}, {"sort", to_json(q.sort)}, {"body", to_json(*q.body)}};
            },
            [](const TrueConst&) { return Json{{"kind", "TrueConst"}}; },
            [](const FalseConst&) { return Json{{"kind", "FalseConst"}}; },
        },
        f.node);
}

Formula formula_from_json(const Json& j) {
    const std::string kind = text_field(j, "kind");
    auto sub = [&](const char* key) { return formula_from_json(field(j, key)); };
    auto term = [&](const char* key) { return term_from_json(field(j, key)); };
    if (kind == "PredicateApp") return make::pred(text_field(j, "predicate"), terms_from(field(j, "args")));
    if (kind == "Equals") return make::eq(term("lhs"), term("rhs"));
    if (kind == "Compare") {
        const std::string rel = text_field(j, "relation");
        if (rel == "<=") return make::le(term("lhs"), term("rhs"));
        if (rel == "<") return make::lt(term("lhs"), term("rhs"));
        malformed("unknown relation '" + rel + "'");
    }
    // Built directly: make::member would sort and deduplicate, and the
    // document is meant to carry the value exactly.
    if (kind == "MemberOf") return Formula{MemberOf{term("element"), strings_from(field(j, "literals"))}};
    if (kind == "InformalAtom") return Formula{InformalAtom{text_field(j, "text")}};
    if (kind == "Not") return Formula{Not{Indirect<Formula>(sub("body"))}};
    if (kind == "And") return Formula{And{formulas_from(field(j, "items"))}};
    if (kind == "Or") return Formula{Or{formulas_from(field(j, "items"))}};
    if (kind == "Implies") return make::implies(sub("lhs"), sub("rhs"));
    if (kind == "Iff") return make::iff(sub("lhs"), sub("rhs"));
    if (kind == "Forall") return make::forall(text_field(j, "var"), sort_from_json(field(j, "sort")), sub("body"));
    if (kind == "Exists") return make::exists(text_field(j, "var"), sort_from_json(field(j, "sort")), sub("body"));
    if (kind == "TrueConst") return make::truth();
    if (kind == "FalseConst") return make::falsity();
    malformed("unknown formula kind '" + kind + "'");
}

Json to_json(const Rationale& r) {
    Json sig;
    sig["sorts"] = Json(r.signature.sorts);
    Json fns = Json::object();
    for (const auto& [name, decl] : r.signature.functions)
        fns[name] = Json{{"args", sorts_json(decl.args)}, {"result", to_json(decl.result)}};
    sig["functions"] = std::move(fns);
    Json preds = Json::object();
    for (const auto& [name, decl] : r.signature.predicates) preds[name] = Json{{"args", sorts_json(decl.args)}};
    sig["predicates"] = std::move(preds);
    sig["stringLiterals"] = Json(r.signature.string_literals);

    Json claims = Json::array();
    for (const auto& [id, c] : r.claims) {
        Json cj;
        cj["id"] = c.id;
        cj["title"] = c.title;
        if (const auto* f = std::get_if<Formula>(&c.statement))
            cj["statement"] = Json{{"kind", "Formal"}, {"formula", to_json(*f)}};
        else
            cj["statement"] = Json{{"kind", "Informal"}, {"text", std::get<InformalText>(c.statement).text}};
        if (c.verify) {
            Json config = Json::array();
            for (const auto& [key, value] : c.verify->config)
                config.push_back(Json{{"key", key}, {"kind", hint_kind_name(value.kind)}, {"items", value.items}});
            cj["verifyHint"] = Json{{"verifier", c.verify->verifier}, {"config", std::move(config)}};
        } else {
            cj["verifyHint"] = nullptr;
        }
        cj["note"] = c.note;
        claims.push_back(std::move(cj));
    }

    Json decs = Json::array();
    for (const auto& d : r.decompositions) decs.push_back(Json{{"parent", d.parent}, {"children", d.children}});

    Json out;
    out["format"] = kInterchangeFormat;
    out["name"] = r.name;
    out["signature"] = std::move(sig);
    out["root"] = r.root;
    out["claims"] = std::move(claims);
    out["decompositions"] = std::move(decs);
    out["subjectRef"] = r.subject ? Json{{"path", r.subject->path}, {"sha256", r.subject->sha256}} : Json(nullptr);
    return out;
}

Rationale rationale_from_json(const Json& j) {
    if (text_field(j, "format") != kInterchangeFormat) malformed("unsupported format '" + text_field(j, "format") + "'");
    Rationale r;
    r.name = text_field(j, "name");
    r.root = text_field(j, "root");

    const Json& sig = field(j, "signature");
    for (const auto& s : strings_from(field(sig, "sorts"))) r.signature.sorts.insert(s);
    const Json& fns = field(sig, "functions");
    if (!fns.is_object()) malformed("functions is not an object");
    for (const auto& [name, decl] : fns.items())
        r.signature.functions.emplace(name, FunctionDecl{sorts_from(field(decl, "args")), sort_from_json(field(decl, "result"))});
    const Json& preds = field(sig, "predicates");
    if (!preds.is_object()) malformed("predicates is not an object");
    for (const auto& [name, decl] : preds.items())
        r.signature.predicates.emplace(name, PredicateDecl{sorts_from(field(decl, "args"))});
    for (const auto& s : strings_from(field(sig, "stringLiterals"))) r.signature.string_literals.insert(s);

    const Json& claims = field(j, "claims");
    if (!claims.is_array()) malformed("claims is not an array");
    for (const auto& cj : claims) {
        Claim c;
        c.id = text_field(cj, "id");
        c.title = text_field(cj, "title");
        const Json& st = field(cj, "statement");
        const std::string kind = text_field(st, "kind");
        if (kind == "Formal")
            c.statement = formula_from_json(field(st, "formula"));
        else if (kind == "Informal")
            c.statement = InformalText{text_field(st, "text")};
        else
            malformed("unknown statement kind '" + kind + "'");
        const Json& hint = field(cj, "verifyHint");
        if (!hint.is_null()) {
            VerifyHint h;
            h.verifier = text_field(hint, "verifier");
            const Json& config = field(hint, "config");
            if (!config.is_array()) malformed("verifier config is not an array");
            for (const auto& entry : config) {
                const std::string k = text_field(entry, "kind");
                HintValue v;
                if (k == "Word") v.kind = HintValue::Kind::Word;
                else if (k == "String") v.kind = HintValue::Kind::String;
                else if (k == "Set") v.kind = HintValue::Kind::Set;
                else if (k == "List") v.kind = HintValue::Kind::List;
                else malformed("unknown hint value kind '" + k + "'");
                v.items = strings_from(field(entry, "items"));
                if ((v.kind == HintValue::Kind::Word || v.kind == HintValue::Kind::String) && v.items.size() != 1)
                    malformed("scalar hint value must have one item");
                h.config.emplace_back(text_field(entry, "key"), std::move(v));
            }
            c.verify = std::move(h);
        }
        c.note = text_field(cj, "note");
        if (!r.claims.emplace(c.id, c).second) malformed("duplicate claim id '" + c.id + "'");
    }

    const Json& decs = field(j, "decompositions");
    if (!decs.is_array()) malformed("decompositions is not an array");
    for (const auto& dj : decs) r.decompositions.push_back({text_field(dj, "parent"), strings_from(field(dj, "children"))});

    const Json& subject = field(j, "subjectRef");
    if (!subject.is_null()) r.subject = SubjectRef{text_field(subject, "path"), text_field(subject, "sha256")};
    return r;
}

}  // namespace avc::rationale

#include "common.hpp"

namespace avc::analyzers {

using rationale::HintValue;
using rationale::VerifyHint;

namespace {

const HintValue& need(const VerifyHint& h, const std::string& key) {
    if (const HintValue* v = h.find(key)) return *v;
    throw AnalysisError("verifier '" + h.verifier + "' needs '" + key + "'");
}

const std::string& scalar(const VerifyHint& h, const std::string& key) {
    const HintValue& v = need(h, key);
    if (v.kind != HintValue::Kind::Word && v.kind != HintValue::Kind::String)
        throw AnalysisError("'" + key + "' must be a single name");
    return v.scalar();
}

const logic::MemberOf* find_member(const logic::Formula& f) {
    using namespace logic;
    return std::visit(Overloaded{
                          [](const MemberOf& m) -> const MemberOf* { return &m; },
                          [](const Not& n) { return find_member(*n.body); },
                          [](const And& a) -> const MemberOf* {
                              for (const auto& x : a.items)
                                  if (const auto* m = find_member(x)) return m;
                              return nullptr;
                          },
                          [](const Or& o) -> const MemberOf* {
                              for (const auto& x : o.items)
                                  if (const auto* m = find_member(x)) return m;
                              return nullptr;
                          },
                          [](const Implies& i) {
                              const auto* m = find_member(*i.rhs);
                              return m ? m : find_member(*i.lhs);
                          },
                          [](const Iff& i) {
                              const auto* m = find_member(*i.rhs);
                              return m ? m : find_member(*i.lhs);
                          },
                          [](const Forall& q) { return find_member(*q.body); },
                          [](const Exists& q) { return find_member(*q.body); },
                          [](const auto&) -> const MemberOf* { return nullptr; },
                      },
                      f.node);
}

const logic::Formula& formal(const rationale::Claim& c) {
    if (const auto* f = std::get_if<logic::Formula>(&c.statement)) return *f;
    throw AnalysisError("claim '" + c.id + "' is informal");
}

Evidence dispatch(const rationale::Claim& claim, const sl::SubjectProgram& prog) {
    const VerifyHint& h = *claim.verify;
    if (h.verifier == "output-shape") {
        ShapeSpec spec;
        for (const auto& [key, v] : h.config) {
            if (key == "fn") continue;
            FieldSpec f;
            if (v.kind == HintValue::Kind::Set || v.kind == HintValue::Kind::List) {
                f.kind = FieldSpec::Kind::Enum;
                f.allowed = {v.items.begin(), v.items.end()};
            } else if (v.kind == HintValue::Kind::Word && (v.scalar() == "Real" || v.scalar() == "Num")) {
                f.kind = FieldSpec::Kind::Num;
            } else if (v.kind == HintValue::Kind::Word && v.scalar() == "Str") {
                f.kind = FieldSpec::Kind::Str;
            } else if (v.kind == HintValue::Kind::Word && v.scalar() == "ListStr") {
                f.kind = FieldSpec::Kind::ListStr;
            } else {
                throw AnalysisError("field '" + key + "': expected Real, Str, ListStr or a literal set");
            }
            spec.emplace(key, std::move(f));
        }
        if (spec.empty()) throw AnalysisError("output-shape names no fields");
        return verify_output_shape(prog, scalar(h, "fn"), spec);
    }
    if (h.verifier == "string-inventory") {
        const auto* m = find_member(formal(claim));
        if (!m) throw AnalysisError("claim '" + claim.id + "' has no membership formula to compare against");
        return verify_string_inventory(prog, scalar(h, "fn"), scalar(h, "sink"), {m->literals.begin(), m->literals.end()});
    }
    if (h.verifier == "threshold-ladder") {
        const HintValue& order = need(h, "order");
        if (order.kind != HintValue::Kind::List) throw AnalysisError("'order' must be a [...] list");
        return verify_threshold_ladder(prog, scalar(h, "fn"), scalar(h, "score"), order.items);
    }
    if (h.verifier == "const-relation") {
        std::map<std::string, std::string> binding;
        for (const auto& [key, v] : h.config) {
            if (v.kind != HintValue::Kind::Word) throw AnalysisError("binding '" + key + "' must name a constant");
            binding[key] = v.scalar();
        }
        return verify_const_relation(prog, formal(claim), binding);
    }
    throw AnalysisError("unregistered verifier '" + h.verifier + "'");
}

}  // namespace

Evidence run_verifier(const rationale::Claim& claim, const sl::SubjectProgram& prog) {
    if (!claim.verify) throw std::invalid_argument("claim '" + claim.id + "' has no verify hint");
    Evidence e;
    try {
        e = dispatch(claim, prog);
    } catch (const AnalysisError& err) {
        e = detail::make_evidence(claim.verify->verifier, EvidenceStatus::Unknown, {{"error", err.what()}}, prog);
    }
    e.claim_id = claim.id;
    return e;
}

std::vector<std::string> hinted_leaves(const rationale::Rationale& r) {
    std::vector<std::string> out;
    for (const auto& id : r.preorder())
        if (r.is_leaf(id) && r.claim(id).verify) out.push_back(id);
    return out;
}

void check_subject(const rationale::Rationale& r, const sl::SubjectProgram& prog) {
    if (r.subject && r.subject->sha256 != prog.source_hash)
        throw StaleSubjectError("stale subject: rationale pins " + r.subject->path + " at sha256:" + r.subject->sha256 +
                                " but the program hashes to sha256:" + prog.source_hash);
}

EvidenceMap run_verifiers(const rationale::Rationale& r, const sl::SubjectProgram& prog) {
    check_subject(r, prog);
    EvidenceMap out;
    for (const auto& id : hinted_leaves(r)) out.emplace(id, run_verifier(r.claim(id), prog));
    return out;
}

}  // namespace avc::analyzers

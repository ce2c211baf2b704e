#include "common.hpp"

#include "avc/logic/print.hpp"
#include "avc/sl/parse.hpp"

#include <optional>

namespace avc::analyzers {

using namespace logic;

namespace {

struct Missing {
    std::string name;
};

class RelationEval {
public:
    RelationEval(const std::map<std::string, std::string>& binding, const std::map<std::string, sl::Value>& consts)
        : binding_(binding), consts_(consts) {}

    bool holds(const Formula& f) {
        return std::visit(
            Overloaded{
                [&](const Equals& e) { return term(e.lhs) == term(e.rhs); },
                [&](const Compare& c) {
                    return c.relation == Relation::Le ? term(c.lhs) <= term(c.rhs) : term(c.lhs) < term(c.rhs);
                },
                [&](const Not& n) { return !holds(*n.body); },
                [&](const And& a) {
                    bool all = true;
                    for (const auto& x : a.items) all = holds(x) && all;
                    return all;
                },
                [&](const Or& o) {
                    bool any = false;
                    for (const auto& x : o.items) any = holds(x) || any;
                    return any;
                },
                [&](const Implies& i) { return !holds(*i.lhs) || holds(*i.rhs); },
                [&](const Iff& i) { return holds(*i.lhs) == holds(*i.rhs); },
                [](const TrueConst&) { return true; },
                [](const FalseConst&) { return false; },
                [&](const auto&) -> bool {
                    throw AnalysisError("relation may only use =, <=, < and connectives: " + print(f));
                },
            },
            f.node);
    }

    Rational term(const Term& t) {
        return std::visit(Overloaded{
                              [](const NumLiteral& n) { return n.value; },
                              [&](const Apply& a) -> Rational {
                                  if (is_arithmetic(a.function)) {
                                      std::vector<Rational> xs;
                                      for (const auto& x : a.args) xs.push_back(term(x));
                                      if (a.function == "-" && xs.size() == 1) return -xs[0];
                                      Rational acc = xs.at(0);
                                      for (std::size_t k = 1; k < xs.size(); ++k) {
                                          if (a.function == "+") acc += xs[k];
                                          else if (a.function == "-") acc -= xs[k];
                                          else acc *= xs[k];
                                      }
                                      return acc;
                                  }
                                  if (!a.args.empty()) throw AnalysisError("relation applies '" + a.function + "'");
                                  auto b = binding_.find(a.function);
                                  if (b == binding_.end())
                                      throw AnalysisError("'" + a.function + "' has no binding");
                                  auto c = consts_.find(b->second);
                                  if (c == consts_.end() || !c->second.is_num()) throw Missing{b->second};
                                  used_[a.function] = c->second.as_num();
                                  return c->second.as_num();
                              },
                              [&](const auto&) -> Rational {
                                  throw AnalysisError("relation may only use bound constants and numbers: " + print(t));
                              },
                          },
                          t.node);
    }

    const std::map<std::string, Rational>& used() const { return used_; }

private:
    const std::map<std::string, std::string>& binding_;
    const std::map<std::string, sl::Value>& consts_;
    std::map<std::string, Rational> used_;
};

}  // namespace

Evidence verify_const_relation(const sl::SubjectProgram& prog, const Formula& relation,
                               const std::map<std::string, std::string>& binding) {
    if (binding.empty()) throw AnalysisError("const-relation needs at least one binding");
    const auto consts = sl::extract_constants(prog);
    Json details;
    details["relation"] = print(relation);
    Json b = Json::object();
    for (const auto& [k, v] : binding) b[k] = v;
    details["binding"] = b;

    RelationEval eval(binding, consts);
    bool ok = false;
    try {
        ok = eval.holds(relation);
    } catch (const Missing& m) {
        details["missing"] = m.name;
        return detail::make_evidence("const-relation", EvidenceStatus::Unknown, details, prog);
    }
    Json values = Json::object();
    for (const auto& [k, v] : eval.used()) values[binding.at(k)] = to_decimal_string(v);
    details["constants"] = values;
    return detail::make_evidence("const-relation", ok ? EvidenceStatus::Verified : EvidenceStatus::Refuted, details,
                                 prog);
}

}  // namespace avc::analyzers

#pragma once

// Random well-formed formulas over a small fixed signature, for property tests.

#include "avc/logic/formula.hpp"

#include <random>
#include <string>
#include <vector>

namespace avc::testing {

using namespace avc::logic;

inline Signature gen_signature() {
    Signature sig;
    sig.sorts = {"A", "B"};
    sig.functions["f"] = {{Sort::named("A")}, Sort::named("B")};
    sig.functions["g"] = {{Sort::named("B")}, Sort::real()};
    sig.functions["c"] = {{}, Sort::named("A")};
    sig.functions["k"] = {{}, Sort::real()};
    sig.functions["name"] = {{Sort::named("A")}, Sort::str()};
    sig.predicates["P"] = {{Sort::named("A")}};
    sig.predicates["Q"] = {{Sort::named("B")}};
    sig.predicates["R"] = {{Sort::named("A"), Sort::named("B")}};
    sig.predicates["p"] = {{}};
    sig.predicates["S"] = {{Sort::str()}};
    return sig;
}

class FormulaGen {
public:
    explicit FormulaGen(unsigned seed) : rng_(seed) {}

    std::mt19937& rng() { return rng_; }

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
    bool coin() { return pick(2) == 0; }

    Formula formula(int depth) {
        scope_.clear();
        return gen(depth);
    }

    std::string text() {
        static const char* words[] = {"alpha", "beta gamma", "say \"hi\"", "back\\slash", "x", "Weights ok"};
        return words[pick(6)];
    }

    Rational number() {
        Rational r(pick(2001) - 1000);
        if (coin()) r /= 100;
        return r;
    }

private:
    Formula gen(int depth) {
        if (depth <= 0 || pick(4) == 0) return atom();
        switch (pick(8)) {
            case 0: return make::negate(gen(depth - 1));
            case 1: return make::conj(items(depth));
            case 2: return make::disj(items(depth));
            case 3: return make::implies(gen(depth - 1), gen(depth - 1));
            case 4: return make::iff(gen(depth - 1), gen(depth - 1));
            case 5:
            case 6: {
                std::string v = fresh();
                Sort s = coin() ? Sort::named("A") : Sort::named("B");
                scope_.emplace_back(v, s);
                Formula body = gen(depth - 1);
                scope_.pop_back();
                return pick(2) ? make::forall(v, s, body) : make::exists(v, s, body);
            }
            default: return atom();
        }
    }

    std::vector<Formula> items(int depth) {
        std::vector<Formula> out;
        const int n = 2 + pick(2);
        for (int i = 0; i < n; ++i) out.push_back(gen(depth - 1));
        return out;
    }

    std::string fresh() {
        static const char* names[] = {"x", "y", "z", "w", "u1", "v2"};
        return names[pick(6)];
    }

    Formula atom() {
        switch (pick(9)) {
            case 0: return make::pred("P", {term(Sort::named("A"), 2)});
            case 1: return make::pred("Q", {term(Sort::named("B"), 2)});
            case 2: return make::pred("R", {term(Sort::named("A"), 2), term(Sort::named("B"), 2)});
            case 3: return make::pred("p");
            case 4: return make::eq(term(Sort::named("A"), 2), term(Sort::named("A"), 2));
            case 5: return coin() ? make::le(term(Sort::real(), 2), term(Sort::real(), 2))
                                  : make::lt(term(Sort::real(), 2), term(Sort::real(), 2));
            case 6: {
                std::vector<std::string> lits{"a", "b c", "q\"uote"};
                lits.resize(1 + pick(3));
                return make::member(term(Sort::str(), 1), lits);
            }
            case 7: return make::informal(text());
            default: return coin() ? make::truth() : make::falsity();
        }
    }

    Term term(const Sort& s, int depth) {
        std::vector<std::string> vars;
        for (const auto& [n, vs] : scope_)
            if (vs == s) vars.push_back(n);
        // Innermost binding of a name wins, so only offer names whose
        // innermost binding has this sort.
        std::vector<std::string> usable;
        for (const auto& v : vars) {
            for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
                if (it->first != v) continue;
                if (it->second == s) usable.push_back(v);
                break;
            }
        }
        if (!usable.empty() && coin()) return make::var(usable[pick(static_cast<int>(usable.size()))], s);
        if (s == Sort::named("A")) return make::app("c");
        if (s == Sort::named("B")) return make::app("f", {term(Sort::named("A"), depth - 1)});
        if (s == Sort::str()) return coin() ? make::str(text()) : make::app("name", {term(Sort::named("A"), depth - 1)});
        // Real
        if (depth > 0) {
            switch (pick(5)) {
                case 0: return make::app("+", {term(s, depth - 1), term(s, depth - 1)});
                case 1: return make::app("*", {term(s, depth - 1), term(s, depth - 1)});
                case 2: return make::app("-", {term(s, depth - 1), term(s, depth - 1)});
                case 3: return make::app("g", {term(Sort::named("B"), depth - 1)});
                default: break;
            }
        }
        return coin() ? make::num(number()) : make::app("k");
    }

    std::mt19937 rng_;
    std::vector<std::pair<std::string, Sort>> scope_;
};

// Renames every binder to a random fresh name, preserving meaning.
class AlphaRenamer {
public:
    explicit AlphaRenamer(unsigned seed) : rng_(seed) {}

    Formula operator()(const Formula& f) {
        env_.clear();
        return go(f);
    }

private:
    std::string fresh() { return "t" + std::to_string(counter_++ * 7 + std::uniform_int_distribution<int>(0, 6)(rng_)); }

    Term term(const Term& t) {
        if (const auto* v = std::get_if<Variable>(&t.node)) {
            for (auto it = env_.rbegin(); it != env_.rend(); ++it)
                if (it->first == v->name) return make::var(it->second, v->sort);
            return t;
        }
        if (const auto* a = std::get_if<Apply>(&t.node)) {
            std::vector<Term> args;
            for (const auto& x : a->args) args.push_back(term(x));
            return make::app(a->function, args);
        }
        return t;
    }

    std::vector<Term> terms(const std::vector<Term>& ts) {
        std::vector<Term> out;
        for (const auto& t : ts) out.push_back(term(t));
        return out;
    }

    std::vector<Formula> all(const std::vector<Formula>& fs) {
        std::vector<Formula> out;
        for (const auto& f : fs) out.push_back(go(f));
        return out;
    }

    Formula go(const Formula& f) {
        return std::visit(Overloaded{
                              [&](const PredicateApp& p) { return make::pred(p.predicate, terms(p.args)); },
                              [&](const Equals& e) { return make::eq(term(e.lhs), term(e.rhs)); },
                              [&](const Compare& c) { return Formula{Compare{c.relation, term(c.lhs), term(c.rhs)}}; },
                              [&](const MemberOf& m) { return make::member(term(m.element), m.literals); },
                              [&](const Not& n) { return make::negate(go(*n.body)); },
                              [&](const And& a) { return make::conj(all(a.items)); },
                              [&](const Or& o) { return make::disj(all(o.items)); },
                              [&](const Implies& i) { return make::implies(go(*i.lhs), go(*i.rhs)); },
                              [&](const Iff& i) { return make::iff(go(*i.lhs), go(*i.rhs)); },
                              [&](const Forall& q) {
                                  std::string n = fresh();
                                  env_.emplace_back(q.var, n);
                                  Formula b = go(*q.body);
                                  env_.pop_back();
                                  return make::forall(n, q.sort, b);
                              },
                              [&](const Exists& q) {
                                  std::string n = fresh();
                                  env_.emplace_back(q.var, n);
                                  Formula b = go(*q.body);
                                  env_.pop_back();
                                  return make::exists(n, q.sort, b);
                              },
                              [&](const auto&) { return f; },
                          },
                          f.node);
    }

    std::mt19937 rng_;
    int counter_ = 0;
    std::vector<std::pair<std::string, std::string>> env_;
};

}  // namespace avc::testing

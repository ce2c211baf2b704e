#include "avc/logic/normalize.hpp"

#include "avc/logic/print.hpp"

#include <algorithm>
#include <functional>

namespace avc::logic {

namespace {

using Renaming = std::vector<std::pair<std::string, std::string>>;

std::string canonical_name(std::size_t depth) { return "_v" + std::to_string(depth); }

Term rename_term(const Term& t, const Renaming& env) {
    return std::visit(Overloaded{
                          [&](const Variable& v) {
                              for (auto it = env.rbegin(); it != env.rend(); ++it)
                                  if (it->first == v.name) return make::var(it->second, v.sort);
                              return t;
                          },
                          [&](const Apply& a) {
                              std::vector<Term> args;
                              args.reserve(a.args.size());
                              for (const auto& x : a.args) args.push_back(rename_term(x, env));
                              return make::app(a.function, std::move(args));
                          },
                          [&](const auto&) { return t; },
                      },
                      t.node);
}

std::vector<Term> rename_terms(const std::vector<Term>& ts, const Renaming& env) {
    std::vector<Term> out;
    out.reserve(ts.size());
    for (const auto& t : ts) out.push_back(rename_term(t, env));
    return out;
}

// Bound variables become `_v<depth>`; depth counts enclosing binders.
Formula rename(const Formula& f, Renaming& env) {
    auto sub = [&](const Formula& g) { return rename(g, env); };
    auto subs = [&](const std::vector<Formula>& gs) {
        std::vector<Formula> out;
        out.reserve(gs.size());
        for (const auto& g : gs) out.push_back(rename(g, env));
        return out;
    };
    return std::visit(
        Overloaded{
            [&](const PredicateApp& p) { return make::pred(p.predicate, rename_terms(p.args, env)); },
            [&](const Equals& e) { return make::eq(rename_term(e.lhs, env), rename_term(e.rhs, env)); },
            [&](const Compare& c) {
                return Formula{Compare{c.relation, rename_term(c.lhs, env), rename_term(c.rhs, env)}};
            },
            [&](const MemberOf& m) { return make::member(rename_term(m.element, env), m.literals); },
            [&](const Not& n) { return make::negate(sub(*n.body)); },
            [&](const And& a) { return make::conj(subs(a.items)); },
            [&](const Or& o) { return make::disj(subs(o.items)); },
            [&](const Implies& i) { return make::implies(sub(*i.lhs), sub(*i.rhs)); },
            [&](const Iff& i) { return make::iff(sub(*i.lhs), sub(*i.rhs)); },
            [&](const Forall& q) {
                std::string name = canonical_name(env.size());
                env.emplace_back(q.var, name);
                Formula body = rename(*q.body, env);
                env.pop_back();
                return make::forall(name, q.sort, std::move(body));
            },
            [&](const Exists& q) {
                std::string name = canonical_name(env.size());
                env.emplace_back(q.var, name);
                Formula body = rename(*q.body, env);
                env.pop_back();
                return make::exists(name, q.sort, std::move(body));
            },
            [&](const auto&) { return f; },
        },
        f.node);
}

void sort_items(std::vector<Formula>& items) {
    std::vector<std::pair<std::pair<std::size_t, std::string>, Formula>> keyed;
    keyed.reserve(items.size());
    for (auto& f : items) {
        std::string text = print(f);
        const std::size_t h = std::hash<std::string>{}(text);
        keyed.push_back({{h, std::move(text)}, std::move(f)});
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    items.clear();
    for (auto& k : keyed) items.push_back(std::move(k.second));
}

template <class Node>
Formula rebuild_flat(std::vector<Formula> items, Formula empty) {
    std::vector<Formula> flat;
    for (auto& f : items) {
        if (const auto* inner = std::get_if<Node>(&f.node))
            flat.insert(flat.end(), inner->items.begin(), inner->items.end());
        else
            flat.push_back(std::move(f));
    }
    if (flat.empty()) return empty;
    if (flat.size() == 1) return std::move(flat.front());
    sort_items(flat);
    return Formula{Node{std::move(flat)}};
}

Formula simplify(const Formula& f) {
    return std::visit(
        Overloaded{
            [&](const MemberOf& m) {
                std::vector<std::string> lits = m.literals;
                std::sort(lits.begin(), lits.end());
                lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
                return make::member(m.element, std::move(lits));
            },
            [&](const Not& n) {
                Formula body = simplify(*n.body);
                if (const auto* inner = std::get_if<Not>(&body.node)) return inner->body.get();
                return make::negate(std::move(body));
            },
            [&](const And& a) {
                std::vector<Formula> items;
                for (const auto& i : a.items) items.push_back(simplify(i));
                return rebuild_flat<And>(std::move(items), make::truth());
            },
            [&](const Or& o) {
                std::vector<Formula> items;
                for (const auto& i : o.items) items.push_back(simplify(i));
                return rebuild_flat<Or>(std::move(items), make::falsity());
            },
            [&](const Implies& i) { return make::implies(simplify(*i.lhs), simplify(*i.rhs)); },
            [&](const Iff& i) { return make::iff(simplify(*i.lhs), simplify(*i.rhs)); },
            [&](const Forall& q) {
                Formula body = simplify(*q.body);
                if (const auto* conj = std::get_if<And>(&body.node)) {
                    std::vector<Formula> items;
                    for (const auto& i : conj->items) items.push_back(make::forall(q.var, q.sort, i));
                    return rebuild_flat<And>(std::move(items), make::truth());
                }
                return make::forall(q.var, q.sort, std::move(body));
            },
            [&](const Exists& q) {
                Formula body = simplify(*q.body);
                if (const auto* disj = std::get_if<Or>(&body.node)) {
                    std::vector<Formula> items;
                    for (const auto& i : disj->items) items.push_back(make::exists(q.var, q.sort, i));
                    return rebuild_flat<Or>(std::move(items), make::falsity());
                }
                return make::exists(q.var, q.sort, std::move(body));
            },
            [&](const auto&) { return f; },
        },
        f.node);
}

}  // namespace

Formula normalize(const Formula& phi) {
    Renaming env;
    return simplify(rename(phi, env));
}

}  // namespace avc::logic

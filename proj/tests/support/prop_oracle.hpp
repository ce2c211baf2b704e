#pragma once

// Truth-table oracle for Tier 1 on random propositional inferences.

#include "avc/checker/inference.hpp"
#include "avc/logic/formula.hpp"

#include <random>

namespace avc::testing {

using namespace logic;

inline logic::Signature prop_sig(int n) {
    logic::Signature sig;
    for (int i = 0; i < n; ++i) sig.predicates["p" + std::to_string(i)] = {};
    return sig;
}

// Independent evaluator: propositional formulas over 0-ary predicates.
inline bool eval_prop(const logic::Formula& f, unsigned assignment) {
    return std::visit(Overloaded{
                          [&](const PredicateApp& p) { return ((assignment >> std::stoi(p.predicate.substr(1))) & 1u) != 0; },
                          [&](const Not& n) { return !eval_prop(*n.body, assignment); },
                          [&](const And& a) {
                              for (const auto& x : a.items)
                                  if (!eval_prop(x, assignment)) return false;
                              return true;
                          },
                          [&](const Or& o) {
                              for (const auto& x : o.items)
                                  if (eval_prop(x, assignment)) return true;
                              return false;
                          },
                          [&](const Implies& i) { return !eval_prop(*i.lhs, assignment) || eval_prop(*i.rhs, assignment); },
                          [&](const Iff& i) { return eval_prop(*i.lhs, assignment) == eval_prop(*i.rhs, assignment); },
                          [](const TrueConst&) { return true; },
                          [](const FalseConst&) { return false; },
                          [](const auto&) -> bool { throw std::logic_error("not propositional"); },
                      },
                      f.node);
}

class PropGen {
public:
    PropGen(unsigned seed, int atoms) : rng_(seed), atoms_(atoms) {}
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    Formula gen(int depth) {
        if (depth == 0 || pick(3) == 0) {
            if (pick(12) == 0) return pick(2) ? make::truth() : make::falsity();
            return make::pred("p" + std::to_string(pick(atoms_)));
        }
        switch (pick(5)) {
            case 0: return make::negate(gen(depth - 1));
            case 1: return make::conj({gen(depth - 1), gen(depth - 1), gen(depth - 1)});
            case 2: return make::disj({gen(depth - 1), gen(depth - 1)});
            case 3: return make::implies(gen(depth - 1), gen(depth - 1));
            default: return make::iff(gen(depth - 1), gen(depth - 1));
        }
    }

private:
    std::mt19937 rng_;
    int atoms_;
};

struct Tier1Stats {
    int samples = 0;
    int valid = 0;             // valid according to the truth table
    int disagreements = 0;     // Tier 1 MachineValid differs from the table
    int invalid_verdicts = 0;  // Tier 1 must never answer MachineInvalid
};

// Sample i uses 1 + i % 10 atoms.
inline Tier1Stats tier1_vs_truth_tables(int samples) {
    Tier1Stats st;
    for (int i = 0; i < samples; ++i) {
        const int atoms = 1 + i % 10;
        PropGen g(1000 + static_cast<unsigned>(i), atoms);
        const Signature sig = prop_sig(atoms);
        std::vector<Formula> premises;
        const int np = g.pick(4);
        for (int k = 0; k < np; ++k) premises.push_back(g.gen(3));
        const Formula conclusion = g.gen(3);

        bool oracle = true;
        for (unsigned a = 0; a < (1u << atoms) && oracle; ++a) {
            bool all = true;
            for (const auto& pr : premises) all = all && eval_prop(pr, a);
            if (all && !eval_prop(conclusion, a)) oracle = false;
        }
        ++st.samples;
        st.valid += oracle;
        const auto v = checker::check_tier1(sig, premises, conclusion);
        if ((v.status == checker::VerdictStatus::MachineValid) != oracle) ++st.disagreements;
        if (v.status == checker::VerdictStatus::MachineInvalid) ++st.invalid_verdicts;
    }
    return st;
}

}  // namespace avc::testing

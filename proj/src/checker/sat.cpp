#include "avc/checker/sat.hpp"

#include <cstdlib>

namespace avc::checker {

using namespace logic;

namespace {

enum : std::int8_t { kFalse = -1, kUnset = 0, kTrue = 1 };

class Dpll {
public:
    Dpll(const Cnf& cnf, std::uint64_t budget) : cnf_(cnf), budget_(budget), value_(cnf.num_vars + 1, kUnset) {}

    SatResult run() {
        SatResult out;
        for (const auto& c : cnf_.clauses)
            if (c.empty()) {
                out.answer = SatAnswer::Unsat;
                return out;
            }
        if (!propagate()) {
            out.answer = SatAnswer::Unsat;
            return out;
        }
        while (true) {
            const int v = next_unassigned();
            if (v == 0) {
                out.answer = SatAnswer::Sat;
                out.model.assign(value_.size(), false);
                for (std::size_t i = 1; i < value_.size(); ++i) out.model[i] = value_[i] == kTrue;
                out.decisions = decisions_;
                return out;
            }
            if (decisions_ >= budget_) {
                out.answer = SatAnswer::Budget;
                out.decisions = decisions_;
                return out;
            }
            ++decisions_;
            levels_.push_back({trail_.size(), v, false});
            assign(-v);
            while (!propagate()) {
                if (!backtrack()) {
                    out.answer = SatAnswer::Unsat;
                    out.decisions = decisions_;
                    return out;
                }
            }
        }
    }

private:
    struct Level {
        std::size_t trail_start;
        int var;
        bool flipped;
    };

    std::int8_t lit_value(int lit) const {
        const std::int8_t v = value_[std::abs(lit)];
        return lit > 0 ? v : static_cast<std::int8_t>(-v);
    }

    void assign(int lit) {
        value_[std::abs(lit)] = lit > 0 ? kTrue : kFalse;
        trail_.push_back(lit);
    }

    // Unit propagation to a fixpoint; false on conflict.
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& clause : cnf_.clauses) {
                int unset = 0, last = 0;
                bool satisfied = false;
                for (int lit : clause) {
                    const std::int8_t v = lit_value(lit);
                    if (v == kTrue) {
                        satisfied = true;
                        break;
                    }
                    if (v == kUnset) {
                        ++unset;
                        last = lit;
                    }
                }
                if (satisfied) continue;
                if (unset == 0) return false;
                if (unset == 1) {
                    assign(last);
                    changed = true;
                }
            }
        }
        return true;
    }

    bool backtrack() {
        while (!levels_.empty()) {
            Level& top = levels_.back();
            while (trail_.size() > top.trail_start) {
                value_[std::abs(trail_.back())] = kUnset;
                trail_.pop_back();
            }
            if (!top.flipped) {
                top.flipped = true;
                assign(top.var);
                return true;
            }
            levels_.pop_back();
        }
        return false;
    }

    int next_unassigned() const {
        for (std::size_t v = 1; v < value_.size(); ++v)
            if (value_[v] == kUnset) return static_cast<int>(v);
        return 0;
    }

    const Cnf& cnf_;
    std::uint64_t budget_;
    std::uint64_t decisions_ = 0;
    std::vector<std::int8_t> value_;
    std::vector<int> trail_;
    std::vector<Level> levels_;
};

class Encoder {
public:
    explicit Encoder(int num_atoms) { cnf_.num_vars = num_atoms; }

    int lit(const Prop& p) {
        return std::visit(Overloaded{
                              [&](const PAtom& a) { return a.id + 1; },
                              [&](const PConst& c) {
                                  const int v = cnf_.fresh();
                                  cnf_.clauses.push_back({c.value ? v : -v});
                                  return v;
                              },
                              [&](const PNot& n) { return -lit(*n.body); },
                              [&](const PAnd& a) { return gate(a.items, true); },
                              [&](const POr& o) { return gate(o.items, false); },
                              [&](const PImplies& i) {
                                  const int l = lit(*i.lhs), r = lit(*i.rhs), v = cnf_.fresh();
                                  // v <-> (!l || r)
                                  cnf_.clauses.push_back({-v, -l, r});
                                  cnf_.clauses.push_back({v, l});
                                  cnf_.clauses.push_back({v, -r});
                                  return v;
                              },
                              [&](const PIff& i) {
                                  const int l = lit(*i.lhs), r = lit(*i.rhs), v = cnf_.fresh();
                                  cnf_.clauses.push_back({-v, -l, r});
                                  cnf_.clauses.push_back({-v, l, -r});
                                  cnf_.clauses.push_back({v, l, r});
                                  cnf_.clauses.push_back({v, -l, -r});
                                  return v;
                              },
                          },
                          p.node);
    }

    Cnf finish(int root) {
        cnf_.clauses.push_back({root});
        return std::move(cnf_);
    }

private:
    int gate(const std::vector<Prop>& items, bool is_and) {
        std::vector<int> lits;
        for (const auto& p : items) lits.push_back(lit(p));
        const int v = cnf_.fresh();
        const int s = is_and ? 1 : -1;
        // and: v -> each item, all items -> v. or is the dual.
        std::vector<int> big{s * v};
        for (int l : lits) {
            cnf_.clauses.push_back({-s * v, s * l});
            big.push_back(-s * l);
        }
        cnf_.clauses.push_back(std::move(big));
        return v;
    }

    Cnf cnf_;
};

}  // namespace

SatResult solve(const Cnf& cnf, std::uint64_t max_decisions) { return Dpll(cnf, max_decisions).run(); }

Cnf tseitin(const Prop& prop, int num_atoms) {
    Encoder e(num_atoms);
    const int root = e.lit(prop);
    return e.finish(root);
}

}  // namespace avc::checker

#pragma once

#include "avc/logic/atomize.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace avc::checker {

// Literals are nonzero ints: +v is variable v, -v its negation (DIMACS style).
struct Cnf {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;

    int fresh() { return ++num_vars; }
};

enum class SatAnswer { Sat, Unsat, Budget };

struct SatResult {
    SatAnswer answer = SatAnswer::Budget;
    std::vector<bool> model;  // index v holds variable v; index 0 unused
    std::uint64_t decisions = 0;
};

// DPLL with unit propagation and chronological backtracking. Gives up with
// Budget after `max_decisions` branching steps.
SatResult solve(const Cnf& cnf, std::uint64_t max_decisions);

// Tseitin encoding of `prop` asserted true. Atom ids map to variables
// 1..num_atoms; auxiliary variables follow.
Cnf tseitin(const logic::Prop& prop, int num_atoms);

}  // namespace avc::checker

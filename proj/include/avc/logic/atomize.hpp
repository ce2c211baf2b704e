#pragma once

#include "avc/logic/formula.hpp"

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace avc::logic {

struct Prop;

struct PAtom {
    int id;  // index into Atomization::atoms
    bool operator==(const PAtom&) const = default;
};
struct PConst {
    bool value;
    bool operator==(const PConst&) const = default;
};
struct PNot {
    Indirect<Prop> body;
};
struct PAnd {
    std::vector<Prop> items;
};
struct POr {
    std::vector<Prop> items;
};
struct PImplies {
    Indirect<Prop> lhs, rhs;
};
struct PIff {
    Indirect<Prop> lhs, rhs;
};

bool operator==(const PNot& a, const PNot& b);
bool operator==(const PAnd& a, const PAnd& b);
bool operator==(const POr& a, const POr& b);
bool operator==(const PImplies& a, const PImplies& b);
bool operator==(const PIff& a, const PIff& b);

// Propositional skeleton over numbered atoms.
struct Prop {
    std::variant<PAtom, PConst, PNot, PAnd, POr, PImplies, PIff> node;
    bool operator==(const Prop&) const = default;
};

struct Atomization {
    std::vector<Prop> skeletons;  // one per input formula
    std::vector<Formula> atoms;   // atom id -> subformula
};

// Maps every maximal non-connective subformula to an atom; structurally
// equal subformulas share one atom. Inputs are expected normalized.
Atomization atomize(std::span<const Formula> formulas);

std::string print(const Prop& prop);  // atoms print as a1, a2, ...

}  // namespace avc::logic

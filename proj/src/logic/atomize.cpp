#include "avc/logic/atomize.hpp"

#include "avc/logic/print.hpp"

#include <map>

namespace avc::logic {

bool operator==(const PNot& a, const PNot& b) { return a.body == b.body; }
bool operator==(const PAnd& a, const PAnd& b) { return a.items == b.items; }
bool operator==(const POr& a, const POr& b) { return a.items == b.items; }
bool operator==(const PImplies& a, const PImplies& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }
bool operator==(const PIff& a, const PIff& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }

namespace {

class Atomizer {
public:
    Prop skeleton(const Formula& f) {
        return std::visit(
            Overloaded{
                [&](const Not& n) { return Prop{PNot{skeleton(*n.body)}}; },
                [&](const And& a) { return Prop{PAnd{skeletons(a.items)}}; },
                [&](const Or& o) { return Prop{POr{skeletons(o.items)}}; },
                [&](const Implies& i) { return Prop{PImplies{skeleton(*i.lhs), skeleton(*i.rhs)}}; },
                [&](const Iff& i) { return Prop{PIff{skeleton(*i.lhs), skeleton(*i.rhs)}}; },
                [&](const TrueConst&) { return Prop{PConst{true}}; },
                [&](const FalseConst&) { return Prop{PConst{false}}; },
                [&](const auto&) { return Prop{PAtom{intern(f)}}; },
            },
            f.node);
    }

    std::vector<Formula> take_atoms() { return std::move(atoms_); }

private:
    std::vector<Prop> skeletons(const std::vector<Formula>& fs) {
        std::vector<Prop> out;
        out.reserve(fs.size());
        for (const auto& f : fs) out.push_back(skeleton(f));
        return out;
    }

    // The canonical printer is injective, so its text is a structural key.
    int intern(const Formula& f) {
        auto [it, inserted] = ids_.emplace(print(f), static_cast<int>(atoms_.size()));
        if (inserted) atoms_.push_back(f);
        return it->second;
    }

    std::map<std::string, int> ids_;
    std::vector<Formula> atoms_;
};

std::string print_prop(const Prop& p, int ctx) {
    int prec = 6;
    std::string s = std::visit(Overloaded{
                                   [&](const PAtom& a) { return "a" + std::to_string(a.id + 1); },
                                   [&](const PConst& c) { return std::string(c.value ? "true" : "false"); },
                                   [&](const PNot& n) {
                                       prec = 5;
                                       return "!" + print_prop(*n.body, 5);
                                   },
                                   [&](const PAnd& a) {
                                       prec = 4;
                                       std::string out;
                                       for (std::size_t i = 0; i < a.items.size(); ++i)
                                           out += (i ? " && " : "") + print_prop(a.items[i], 5);
                                       return a.items.empty() ? std::string("true") : out;
                                   },
                                   [&](const POr& o) {
                                       prec = 3;
                                       std::string out;
                                       for (std::size_t i = 0; i < o.items.size(); ++i)
                                           out += (i ? " || " : "") + print_prop(o.items[i], 4);
                                       return o.items.empty() ? std::string("false") : out;
                                   },
                                   [&](const PImplies& i) {
                                       prec = 2;
                                       return print_prop(*i.lhs, 3) + " -> " + print_prop(*i.rhs, 2);
                                   },
                                   [&](const PIff& i) {
                                       prec = 1;
                                       return print_prop(*i.lhs, 2) + " <-> " + print_prop(*i.rhs, 2);
                                   },
                               },
                               p.node);
    return prec < ctx ? "(" + s + ")" : s;
}

}  // namespace

Atomization atomize(std::span<const Formula> formulas) {
    Atomizer a;
    Atomization out;
    for (const auto& f : formulas) out.skeletons.push_back(a.skeleton(f));
    out.atoms = a.take_atoms();
    return out;
}

std::string print(const Prop& prop) { return print_prop(prop, 0); }

}  // namespace avc::logic

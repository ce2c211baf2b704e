#include "avc/rationale/rationale.hpp"

#include "avc/logic/well_formed.hpp"

#include <algorithm>
#include <set>

namespace avc::rationale {

const HintValue* VerifyHint::find(const std::string& key) const {
    for (const auto& [k, v] : config)
        if (k == key) return &v;
    return nullptr;
}

const Claim& Rationale::claim(const std::string& id) const {
    auto it = claims.find(id);
    if (it == claims.end()) throw std::out_of_range("unknown claim '" + id + "'");
    return it->second;
}

const Decomposition* Rationale::decomposition_of(const std::string& id) const {
    for (const auto& d : decompositions)
        if (d.parent == id) return &d;
    return nullptr;
}

std::optional<std::string> Rationale::parent_of(const std::string& id) const {
    for (const auto& d : decompositions)
        if (std::find(d.children.begin(), d.children.end(), id) != d.children.end()) return d.parent;
    return std::nullopt;
}

std::vector<std::string> Rationale::preorder() const {
    std::vector<std::string> out;
    if (!claims.contains(root)) return out;
    std::set<std::string> seen;
    std::vector<std::string> stack{root};
    while (!stack.empty()) {
        std::string id = stack.back();
        stack.pop_back();
        if (!seen.insert(id).second || !claims.contains(id)) continue;
        out.push_back(id);
        if (const auto* d = decomposition_of(id))
            for (auto it = d->children.rbegin(); it != d->children.rend(); ++it) stack.push_back(*it);
    }
    return out;
}

logic::Formula statement_formula(const Claim& claim) {
    if (const auto* f = std::get_if<logic::Formula>(&claim.statement)) return *f;
    return logic::make::informal(std::get<InformalText>(claim.statement).text);
}

const std::vector<VerifierSpec>& builtin_verifiers() {
    static const std::vector<VerifierSpec> specs{
        {"output-shape", {"fn"}},
        {"string-inventory", {"fn", "sink"}},
        {"threshold-ladder", {"fn", "score", "order"}},
        {"const-relation", {}},
    };
    return specs;
}

Diagnostics validate_structure(const Rationale& r) { return validate_structure(r, builtin_verifiers()); }

Diagnostics validate_structure(const Rationale& r, const std::vector<VerifierSpec>& verifiers) {
    Diagnostics out;
    for (auto& d : r.signature.check()) out.push_back(std::move(d));

    if (!r.claims.contains(r.root)) out.push_back({"missing-root", "root claim '" + r.root + "' is not defined"});

    std::map<std::string, int> parent_edges;
    std::set<std::string> parents;
    for (const auto& d : r.decompositions) {
        if (!r.claims.contains(d.parent))
            out.push_back({"unknown-claim", "decomposition parent '" + d.parent + "' is not a claim"});
        if (!parents.insert(d.parent).second)
            out.push_back({"duplicate-decomposition", "claim '" + d.parent + "' is decomposed more than once"});
        if (d.children.empty()) out.push_back({"empty-decomposition", "decomposition of '" + d.parent + "' has no children"});
        for (const auto& c : d.children) {
            if (!r.claims.contains(c))
                out.push_back({"unknown-claim", "decomposition of '" + d.parent + "' names unknown claim '" + c + "'"});
            if (++parent_edges[c] == 2)
                out.push_back({"duplicate-child", "claim '" + c + "' appears as a child more than once"});
        }
    }
    if (parent_edges.contains(r.root))
        out.push_back({"root-has-parent", "root claim '" + r.root + "' is a child of another claim"});

    // Every claim must hang off the root by exactly one path.
    if (r.claims.contains(r.root)) {
        std::set<std::string> reached;
        std::set<std::string> on_path;
        bool cycle = false;
        auto visit = [&](auto&& self, const std::string& id) -> void {
            if (on_path.contains(id)) {
                cycle = true;
                return;
            }
            if (!reached.insert(id).second) return;
            on_path.insert(id);
            if (const auto* d = r.decomposition_of(id))
                for (const auto& c : d->children)
                    if (r.claims.contains(c)) self(self, c);
            on_path.erase(id);
        };
        visit(visit, r.root);
        const std::set<std::string> from_root = reached;
        for (const auto& [id, c] : r.claims) visit(visit, id);
        if (cycle) out.push_back({"cycle", "the decomposition relation contains a cycle"});
        for (const auto& [id, c] : r.claims)
            if (!from_root.contains(id)) out.push_back({"orphan", "claim '" + id + "' is not reachable from the root"});
    }

    for (const auto& [id, claim] : r.claims) {
        if (const auto* f = std::get_if<logic::Formula>(&claim.statement))
            for (const auto& d : logic::well_formed(r.signature, *f))
                out.push_back({d.code, "claim '" + id + "': " + d.message});
        if (!claim.verify) continue;
        if (!r.is_leaf(id))
            out.push_back({"hint-on-internal", "claim '" + id + "' has a verify hint but is decomposed"});
        auto spec = std::find_if(verifiers.begin(), verifiers.end(),
                                 [&](const VerifierSpec& s) { return s.name == claim.verify->verifier; });
        if (spec == verifiers.end()) {
            out.push_back({"unknown-verifier", "claim '" + id + "' names unregistered verifier '" + claim.verify->verifier + "'"});
            continue;
        }
        for (const auto& key : spec->required_keys)
            if (!claim.verify->find(key))
                out.push_back({"missing-hint-key", "claim '" + id + "': verifier '" + spec->name + "' needs '" + key + "'"});
    }
    return out;
}

Rationale parse_rationale(std::string_view text) {
    Rationale r = parse_rationale_syntax(text);
    if (Diagnostics d = validate_structure(r); !d.empty()) throw ValidationError(std::move(d));
    return r;
}

}  // namespace avc::rationale

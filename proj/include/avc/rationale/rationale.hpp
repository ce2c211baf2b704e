#pragma once

#include "avc/logic/formula.hpp"
#include "avc/util/errors.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace avc::rationale {

// A verifier configuration value: a bare word, a string, a `{...}` string
// set or a `[...]` string list.
struct HintValue {
    enum class Kind { Word, String, Set, List };

    Kind kind = Kind::Word;
    std::vector<std::string> items;  // one item for Word and String

    static HintValue word(std::string w) { return {Kind::Word, {std::move(w)}}; }
    static HintValue string(std::string s) { return {Kind::String, {std::move(s)}}; }

    const std::string& scalar() const { return items.front(); }
    bool operator==(const HintValue&) const = default;
};

struct VerifyHint {
    std::string verifier;
    std::vector<std::pair<std::string, HintValue>> config;  // keys unique, in written order

    const HintValue* find(const std::string& key) const;
    bool operator==(const VerifyHint&) const = default;
};

struct InformalText {
    std::string text;  // whitespace-normalized
    bool operator==(const InformalText&) const = default;
};

using Statement = std::variant<logic::Formula, InformalText>;

struct Claim {
    std::string id;
    std::string title;
    Statement statement;
    std::optional<VerifyHint> verify;
    std::string note;  // empty when absent

    bool operator==(const Claim&) const = default;
};

struct Decomposition {
    std::string parent;
    std::vector<std::string> children;

    bool operator==(const Decomposition&) const = default;
};

struct SubjectRef {
    std::string path;
    std::string sha256;

    bool operator==(const SubjectRef&) const = default;
};

struct Rationale {
    std::string name;
    logic::Signature signature;
    std::string root;
    std::map<std::string, Claim> claims;
    std::vector<Decomposition> decompositions;  // ordered by parent id
    std::optional<SubjectRef> subject;

    const Claim& claim(const std::string& id) const;
    const Decomposition* decomposition_of(const std::string& id) const;
    // Conjectures are exactly the leaves.
    bool is_leaf(const std::string& id) const { return decomposition_of(id) == nullptr; }
    // Parent of `id` in the tree, if any.
    std::optional<std::string> parent_of(const std::string& id) const;
    // Depth-first preorder from the root, children in written order. Claims
    // unreachable from the root are not listed.
    std::vector<std::string> preorder() const;

    bool operator==(const Rationale&) const = default;
};

// Formal statements as-is; informal text becomes an informal atom.
logic::Formula statement_formula(const Claim& claim);

// Structural or formula-level problems found after a syntactically valid
// parse.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(Diagnostics d)
        : std::runtime_error("rationale is invalid:\n" + format_diagnostics(d)), diags_(std::move(d)) {}
    const Diagnostics& diagnostics() const { return diags_; }

private:
    Diagnostics diags_;
};

struct VerifierSpec {
    std::string name;
    std::vector<std::string> required_keys;
};

// The verifier kinds the analyzers register.
const std::vector<VerifierSpec>& builtin_verifiers();

// Syntax only: throws ParseError. Duplicate claim ids and formula errors
// are syntax errors; tree-shape problems are not checked.
Rationale parse_rationale_syntax(std::string_view text);

// Syntax plus validate_structure; throws ValidationError on diagnostics.
Rationale parse_rationale(std::string_view text);

Diagnostics validate_structure(const Rationale& r);
Diagnostics validate_structure(const Rationale& r, const std::vector<VerifierSpec>& verifiers);

// Canonical DSL text (rationale v1).
std::string print_rationale(const Rationale& r);

}  // namespace avc::rationale

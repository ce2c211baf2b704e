#pragma once

#include "avc/analyzers/abstract.hpp"
#include "avc/logic/formula.hpp"
#include "avc/rationale/rationale.hpp"
#include "avc/sl/ast.hpp"

#include <json.hpp>

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace avc::analyzers {

using Json = nlohmann::ordered_json;

enum class EvidenceStatus { Verified, Refuted, Unknown };

std::string to_string(EvidenceStatus s);

struct Evidence {
    std::string claim_id;
    std::string verifier;
    EvidenceStatus status = EvidenceStatus::Unknown;
    Json details = Json::object();
    std::string subject_hash;

    bool operator==(const Evidence&) const = default;
};

Json to_json(const Evidence& e);
Evidence evidence_from_json(const Json& j);

using EvidenceMap = std::map<std::string, Evidence>;

// Bad verifier input: unknown function or variable, malformed configuration.
class AnalysisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The rationale names a different program revision than the one supplied.
class StaleSubjectError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Per-field constraint for verify_output_shape.
struct FieldSpec {
    enum class Kind { Num, Str, Enum, ListStr };
    Kind kind = Kind::Num;
    std::set<std::string> allowed;  // Enum only
};

using ShapeSpec = std::map<std::string, FieldSpec>;

Evidence verify_output_shape(const sl::SubjectProgram& prog, const std::string& function, const ShapeSpec& spec);

Evidence verify_string_inventory(const sl::SubjectProgram& prog, const std::string& function, const std::string& sink,
                                 const std::set<std::string>& claimed);

Evidence verify_threshold_ladder(const sl::SubjectProgram& prog, const std::string& function,
                                 const std::string& score_var, const std::vector<std::string>& order);

// `binding` maps nullary function names of the relation to program constants.
Evidence verify_const_relation(const sl::SubjectProgram& prog, const logic::Formula& relation,
                               const std::map<std::string, std::string>& binding);

// Dispatches one hinted claim. Verifier errors become Unknown evidence with
// an "error" detail.
Evidence run_verifier(const rationale::Claim& claim, const sl::SubjectProgram& prog);

// Hinted leaves in tree order.
std::vector<std::string> hinted_leaves(const rationale::Rationale& r);

// Throws StaleSubjectError when the rationale pins another program hash.
void check_subject(const rationale::Rationale& r, const sl::SubjectProgram& prog);

EvidenceMap run_verifiers(const rationale::Rationale& r, const sl::SubjectProgram& prog);

}  // namespace avc::analyzers

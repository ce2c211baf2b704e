#pragma once

#include "avc/assurance/assurance.hpp"
#include "avc/sl/ast.hpp"

#include <json.hpp>

namespace avc::pipeline {

using Json = nlohmann::ordered_json;

struct AnalysisOptions {
    checker::SolverConfig solver;
    checker::Tier1Limits limits;
};

struct AnalysisResult {
    assurance::EvidenceMap evidence;
    assurance::VerdictMap verdicts;
    std::string program_hash;

    bool operator==(const AnalysisResult& o) const;
};

// One job per decomposition and per hinted leaf. The serial version is the
// reference; the parallel one runs the same jobs under OpenMP and must give
// identical results apart from timings.
AnalysisResult analyze_serial(const rationale::Rationale& r, const sl::SubjectProgram& prog,
                              const AnalysisOptions& opts);
AnalysisResult analyze_parallel(const rationale::Rationale& r, const sl::SubjectProgram& prog,
                                const AnalysisOptions& opts);

// Decomposition parents in tree order.
std::vector<std::string> decomposition_order(const rationale::Rationale& r);

Json report_json(const rationale::Rationale& r, const AnalysisResult& a);
std::string report_text(const rationale::Rationale& r, const AnalysisResult& a);
std::string report_markdown(const rationale::Rationale& r, const AnalysisResult& a);

// Round-trip for the on-disk cache; timings are not kept.
Json result_to_json(const AnalysisResult& a);
AnalysisResult result_from_json(const Json& j);

}  // namespace avc::pipeline

#pragma once

#include "avc/checker/inference.hpp"
#include "avc/rationale/rationale.hpp"
#include "avc/util/text.hpp"

#include <string>
#include <utility>
#include <vector>

namespace avc::testing {

inline const char* kCorpusRationale = "corpus/aml.rationale";
inline const char* kCorpusProgram = "corpus/aml.sl";

inline rationale::Rationale corpus() { return rationale::parse_rationale(read_file(kCorpusRationale)); }

// Premises (children) and conclusion (parent) of the decomposition of `parent`.
inline std::pair<std::vector<logic::Formula>, logic::Formula> inference_of(const rationale::Rationale& r,
                                                                          const std::string& parent) {
    std::vector<logic::Formula> premises;
    for (const auto& c : r.decomposition_of(parent)->children) premises.push_back(rationale::statement_formula(r.claim(c)));
    return {premises, rationale::statement_formula(r.claim(parent))};
}

// Empty when no solver was found at configure time.
inline std::string solver_path() { return AVC_Z3_PATH; }

inline checker::SolverConfig solver_config() {
    checker::SolverConfig cfg;
    cfg.command = solver_path() + " -in";
    cfg.enabled = !solver_path().empty();
    cfg.timeout_seconds = 20;
    return cfg;
}

}  // namespace avc::testing

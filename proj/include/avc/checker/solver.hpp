#pragma once

#include "avc/checker/inference.hpp"

#include <optional>
#include <string>

namespace avc::checker {

struct SolverRun {
    std::optional<std::string> answer;  // "sat", "unsat" or "unknown"
    std::string output;                 // full standard output
    std::string failure;                // empty unless the run failed
    int exit_code = -1;
    bool timed_out = false;
};

// Runs the configured solver command on `script` through /bin/sh.
SolverRun run_solver(const SolverConfig& cfg, const std::string& script);

}  // namespace avc::checker

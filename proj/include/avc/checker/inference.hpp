#pragma once

#include "avc/logic/formula.hpp"

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace avc::checker {

enum class VerdictStatus { MachineValid, MachineInvalid, Unknown };

const char* to_string(VerdictStatus s);

struct InferenceVerdict {
    VerdictStatus status = VerdictStatus::Unknown;
    int tier = 1;
    std::string diagnostic;  // abstract countermodel, solver model or reason
    std::chrono::duration<double> elapsed{0};
};

struct SolverConfig {
    // Shell command. `{file}` is replaced by the path of a script file;
    // without it the script arrives on standard input.
    std::string command = "z3 -in";
    double timeout_seconds = 5.0;
    bool enabled = false;
};

struct Tier1Limits {
    int max_atoms = 256;
    std::uint64_t max_decisions = 1'000'000;
};

InferenceVerdict check_tier1(const logic::Signature& sig, const std::vector<logic::Formula>& premises,
                             const logic::Formula& conclusion, const Tier1Limits& limits = {});

InferenceVerdict check_tier2(const logic::Signature& sig, const std::vector<logic::Formula>& premises,
                             const logic::Formula& conclusion, const SolverConfig& cfg);

// Tier 1, then Tier 2 when Tier 1 is inconclusive and the solver is enabled.
InferenceVerdict check_inference(const logic::Signature& sig, const std::vector<logic::Formula>& premises,
                                 const logic::Formula& conclusion, const SolverConfig& cfg,
                                 const Tier1Limits& limits = {});

}  // namespace avc::checker

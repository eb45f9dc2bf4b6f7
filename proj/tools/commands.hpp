#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "schurtele/schur_weyl.hpp"

namespace schurtele::cli {

/// Bad flags or preconditions on user input; exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// What a command produced and the process exit code.
struct CommandOutput {
    std::string text;
    int exit_code = 0;
};

/// "bell[:d]", "product[:d]" or "schmidt:p1,p2,…[@a1,a2,…]" (phases in radians).
StateVector parse_state(const std::string& spec);

/// Comma-separated reals.
std::vector<double> parse_list(const std::string& text);

struct StateArgs {
    std::string state;
    std::string schmidt;
    std::string phases;
};
StateVector resolve_state(const StateArgs& args);

struct DecomposeArgs {
    StateArgs state;
    int n = 0;
    std::uint64_t seed = 0;
};
CommandOutput cmd_decompose(const DecomposeArgs& args);

struct TeleportArgs {
    StateArgs state;
    int n = 0;
    std::uint64_t seed = 0;
    bool transcript = false;
};
CommandOutput cmd_teleport(const TeleportArgs& args);

struct BoundSweepArgs {
    double p1 = 0.5;
    int n_max = 30;
    int d = 2;
    std::uint64_t seed = 0;
};
CommandOutput cmd_bound_sweep(const BoundSweepArgs& args);

struct FisherArgs {
    std::string model;
    std::string model_file;
    std::string theta;
    std::uint64_t seed = 0;
};
CommandOutput cmd_fisher(const FisherArgs& args);

struct GapArgs {
    double a = 1.0;
    double b = 1.0;
    double beta_a = 0.0;
    double beta_b = 0.0;
    std::string sign = "+";
    std::uint64_t seed = 0;
};
CommandOutput cmd_gap(const GapArgs& args);

struct AnticopyArgs {
    std::string theta = "1.0,0.5";
    std::uint64_t seed = 0;
};
CommandOutput cmd_anticopy(const AnticopyArgs& args);

struct DetectArgs {
    std::vector<std::string> states;
    std::uint64_t seed = 0;
};
CommandOutput cmd_detect(const DetectArgs& args);

struct AdditivityArgs {
    int protocols = 50;
    std::uint64_t seed = 0;
};
CommandOutput cmd_additivity(const AdditivityArgs& args);

struct TwoStageArgs {
    std::string model_a = "qubit-polar";
    std::string model_b = "qubit-phase";
    double theta = 1.0;
    int n = 400;
    int trials = 2000;
    bool one_stage = false;
    std::string format = "json";
    std::uint64_t seed = 0;
};
CommandOutput cmd_two_stage(const TwoStageArgs& args);

/// {"error": kind, "message": …, "seed": …} for computation failures.
std::string error_json(const std::string& kind, const std::string& message, std::uint64_t seed);

}  // namespace schurtele::cli

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "schurtele/schur_weyl.hpp"
#include "schurtele/teleport.hpp"
#include "schurtele/two_stage.hpp"

namespace {

using namespace schurtele::cli;

struct Common {
    std::uint64_t seed = 0;
    std::string output;
};

void add_common(CLI::App* sub, Common& common) {
    sub->add_option("--seed", common.seed, "Random seed, echoed into the output")->capture_default_str();
    sub->add_option("--output", common.output,
                    "Write the result here instead of stdout; relative paths resolve against $SCHURTELE_OUTPUT_DIR when set");
}

void add_state(CLI::App* sub, StateArgs& state) {
    sub->add_option("--state", state.state, "bell[:d], product[:d] or schmidt:p1,p2,...[@phase1,phase2,...]");
    sub->add_option("--schmidt", state.schmidt, "Schmidt coefficients p1,p2,... summing to 1");
    sub->add_option("--phases", state.phases, "Phases (radians) of the Schmidt terms; needs --schmidt");
}

std::filesystem::path resolve_output(const std::string& output) {
    std::filesystem::path path(output);
    if (path.is_relative()) {
        if (const char* dir = std::getenv("SCHURTELE_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
    }
    return path;
}

int emit(const CommandOutput& out, const std::string& output) {
    if (output.empty()) {
        std::cout << out.text;
        return out.exit_code;
    }
    const auto path = resolve_output(output);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        std::cerr << "cannot write " << path.string() << "\n";
        return 1;
    }
    os << out.text;
    return out.exit_code;
}

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const schurtele::NothingToTeleport*>(&e)) return "nothing_to_teleport";
    if (dynamic_cast<const schurtele::SizeLimitError*>(&e)) return "size_limit";
    if (dynamic_cast<const schurtele::EstimationFailure*>(&e)) return "estimation_failure";
    if (dynamic_cast<const std::domain_error*>(&e)) return "domain_error";
    if (dynamic_cast<const std::invalid_argument*>(&e)) return "invalid_argument";
    return "computation_failed";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schur-Weyl self-teleportation and local estimation experiments"};
    app.require_subcommand(1);
    Common common;
    std::function<CommandOutput()> run;

    DecomposeArgs decompose;
    auto* sub = app.add_subcommand("decompose",
                                   "Split |phi>^n into Schur-Weyl blocks and report the weights q_lambda of each "
                                   "irrep, computed with isotypic projectors and checked against d_lambda s_lambda(p). "
                                   "Partitions of zero weight are omitted.");
    add_state(sub, decompose.state);
    sub->add_option("--n", decompose.n, "Number of copies")->required();
    add_common(sub, common);
    sub->callback([&] { decompose.seed = common.seed; run = [&] { return cmd_decompose(decompose); }; });

    TeleportArgs teleport;
    sub = app.add_subcommand("teleport",
                             "Run the LOCC self-teleportation of Alice's half of |phi>^n to Bob: project onto the "
                             "good irreps, measure the Haar-covariant POVM, recover on Bob's side. Reports success "
                             "probability, fidelities and the analytic lower bound. A product state gives the "
                             "structured error nothing_to_teleport with exit code 1.");
    add_state(sub, teleport.state);
    sub->add_option("--n", teleport.n, "Number of copies")->required();
    sub->add_flag("--transcript", teleport.transcript, "Include the LOCC message transcript");
    add_common(sub, common);
    sub->callback([&] { teleport.seed = common.seed; run = [&] { return cmd_teleport(teleport); }; });

    BoundSweepArgs sweep;
    sub = app.add_subcommand("bound-sweep",
                             "CSV of the ideal teleportation fidelity sum over good irreps and its lower bound "
                             "1 - d(2d-3)!/((d-2)!(d-1)!) (n+1)^{d(d+1)/2} p1^n for n = 1..n-max, with spectrum "
                             "(p1, (1-p1)/(d-1), ...). Columns: n,fidelity,bound.");
    sub->add_option("--p1", sweep.p1, "Largest Schmidt coefficient, in (0, 1]")->required();
    sub->add_option("--n-max", sweep.n_max, "Largest n")->capture_default_str();
    sub->add_option("--d", sweep.d, "Local dimension")->capture_default_str();
    add_common(sub, common);
    sub->callback([&] { sweep.seed = common.seed; run = [&] { return cmd_bound_sweep(sweep); }; });

    FisherArgs fisher;
    sub = app.add_subcommand("fisher",
                             "SLD Fisher matrix J^S, Berry form J~ and Kahler-angle cosines beta of a pure-state "
                             "family at theta, plus the weighted Cramer-Rao value and the Fisher matrix of a "
                             "computational-basis measurement.");
    sub->add_option("--model", fisher.model, "qubit-full, qubit-conjugate, real-amplitude, qubit-polar, qubit-phase");
    sub->add_option("--model-file", fisher.model_file, "Tabulated one-parameter model (JSON)");
    sub->add_option("--theta", fisher.theta, "Parameter point, comma-separated")->required();
    add_common(sub, common);
    sub->callback([&] { fisher.seed = common.seed; run = [&] { return cmd_fisher(fisher); }; });

    GapArgs gap;
    sub = app.add_subcommand("gap",
                             "Global-versus-LOCC optimum for the conformal two-parameter product family: "
                             "beta = (a betaA +/- b betaB)/(a+b), global 1 + sqrt(1 - beta^2), LOCC the weighted "
                             "average of the local optima, and their difference.");
    sub->add_option("--a", gap.a, "Weight of Alice's family")->capture_default_str();
    sub->add_option("--b", gap.b, "Weight of Bob's family")->capture_default_str();
    sub->add_option("--betaA", gap.beta_a, "Alice's beta in [0,1]")->required();
    sub->add_option("--betaB", gap.beta_b, "Bob's beta in [0,1]")->required();
    sub->add_option("--sign", gap.sign, "+ or -")->capture_default_str();
    add_common(sub, common);
    sub->callback([&] { gap.seed = common.seed; run = [&] { return cmd_gap(gap); }; });

    AnticopyArgs anticopy;
    sub = app.add_subcommand("anticopy",
                             "Anti-copy pair: a qubit family and its complex conjugate. Reports each side's beta "
                             "(1), the product family's beta (0), the resulting LOCC gap and the weighted "
                             "Cramer-Rao endpoints.");
    sub->add_option("--theta", anticopy.theta, "Parameter point theta1,theta2")->capture_default_str();
    add_common(sub, common);
    sub->callback([&] { anticopy.seed = common.seed; run = [&] { return cmd_anticopy(anticopy); }; });

    DetectArgs detect;
    sub = app.add_subcommand("detect",
                             "Checks the perfect-detection condition: the largest pairwise overlap "
                             "|<phi|phi'>|^2 against the largest Schmidt coefficient. Needs at least two states.");
    sub->add_option("--states,--state", detect.states, "State specs (bell, product, schmidt:...)")->required();
    add_common(sub, common);
    sub->callback([&] { detect.seed = common.seed; run = [&] { return cmd_detect(detect); }; });

    AdditivityArgs additivity;
    sub = app.add_subcommand("additivity",
                             "Fisher additivity under adaptive LOCC: for random product qubit models and random "
                             "2-3 round adaptive protocols, compares the Fisher information of the full outcome "
                             "distribution with the sum of Alice's and Bob's chain contributions.");
    sub->add_option("--protocols", additivity.protocols, "Number of random protocols")->capture_default_str();
    add_common(sub, common);
    sub->callback([&] { additivity.seed = common.seed; run = [&] { return cmd_additivity(additivity); }; });

    TwoStageArgs two;
    sub = app.add_subcommand("two-stage",
                             "Monte-Carlo two-stage local estimation: ceil(sqrt(n)) copies per party in the "
                             "computational basis, then the remaining copies in each party's optimal basis at the "
                             "rough estimate; reports n*MSE against the reference 1/(QFI_A + QFI_B).");
    sub->add_option("--model-a", two.model_a, "Alice's one-parameter qubit family")->capture_default_str();
    sub->add_option("--model-b", two.model_b, "Bob's one-parameter qubit family")->capture_default_str();
    sub->add_option("--theta", two.theta, "True parameter")->capture_default_str();
    sub->add_option("--n", two.n, "Copies per trial (at least 25)")->capture_default_str();
    sub->add_option("--trials", two.trials, "Monte-Carlo trials")->capture_default_str();
    sub->add_flag("--one-stage", two.one_stage, "Measure every copy in the computational basis");
    sub->add_option("--format", two.format, "json (summary) or csv (per-trial estimates)")->capture_default_str();
    add_common(sub, common);
    sub->callback([&] { two.seed = common.seed; run = [&] { return cmd_two_stage(two); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        return emit(run(), common.output);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        emit({error_json(error_kind(e), e.what(), common.seed), 1}, common.output);
        return 1;
    }
}

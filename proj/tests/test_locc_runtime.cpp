#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "oracles.hpp"
#include "schurtele/locc_runtime.hpp"
#include "schurtele/models.hpp"
#include "schurtele/protocols.hpp"
#include "schurtele/two_stage.hpp"

using namespace schurtele;

namespace {

ParamPoint pt(double x) { return ParamPoint::Constant(1, x); }

Eigen::MatrixXcd haar(int dim, std::uint64_t seed) {
    Rng rng = stream_rng(seed, 0);
    return sample_haar_unitary(dim, rng);
}

// Path distribution computed directly from the instruments, without the runtime.
double direct_probability(const Eigen::MatrixXcd& basis_a, const Eigen::MatrixXcd& basis_b, const Eigen::MatrixXcd& m, int x,
                          int y) {
    return std::norm((basis_a.col(x).adjoint() * m * basis_b.col(y).conjugate())(0, 0));
}

}  // namespace

TEST_CASE("a protocol without rounds leaves the state alone") {
    LoccProtocol empty;
    empty.id = "empty";
    const Eigen::MatrixXcd m = StateVector::from_schmidt({0.8, 0.2}).coefficient_matrix();
    const LoccTranscript t = run_locc(empty, m, 3);
    CHECK(t.messages.empty());
    CHECK((t.final_state - m).norm() < 1e-15);
    CHECK(t.path_probability() == 1.0);
}

TEST_CASE("instrument validation") {
    Instrument leaky;
    leaky.branches.push_back({"half", Eigen::MatrixXcd::Identity(2, 2) * 0.5, {}});
    CHECK(leaky.completeness_defect() == doctest::Approx(0.75));
    CHECK_THROWS_AS(leaky.validate(2), std::invalid_argument);
    LoccProtocol p;
    p.id = "leaky";
    p.rounds.push_back({Party::Alice, [leaky](const History&) { return leaky; }});
    CHECK_THROWS_AS(run_locc(p, StateVector::bell(), 0), std::invalid_argument);
    CHECK_THROWS_AS(projective_instrument(Eigen::MatrixXcd::Identity(2, 2)).validate(3), std::invalid_argument);
    CHECK(idle_instrument(4).completeness_defect() < 1e-15);
}

TEST_CASE("single-round Born rule") {
    const Eigen::MatrixXcd basis = haar(2, 1);
    LoccProtocol p;
    p.id = "alice-only";
    p.rounds.push_back({Party::Alice, [basis](const History&) { return projective_instrument(basis); }});
    const PureStateModel model = product_model(qubit_polar_model(), qubit_phase_model());
    const auto dist = joint_outcome_distribution(p, model, pt(0.8));
    const Eigen::MatrixXcd m = StateVector(model.state(pt(0.8)), {2, 2}).coefficient_matrix();
    for (int x = 0; x < 2; ++x) {
        const double expected = (basis.col(x).adjoint() * m).squaredNorm();
        CHECK(dist.at({std::to_string(x)}) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("two-round path sums and direct probabilities") {
    const Eigen::MatrixXcd ba = haar(2, 2), bb = haar(2, 3);
    const LoccProtocol p = product_measurement_protocol(ba, bb);
    const PureStateModel model = product_model(qubit_full_model(), qubit_conjugate_model());
    for (int k = 0; k < 100; ++k) {
        ParamPoint theta(2);
        theta << 0.1 + 2.9 * k / 100.0, -3.0 + 6.0 * k / 100.0;
        const auto dist = joint_outcome_distribution(p, model, theta);
        double total = 0.0;
        for (const auto& [key, prob] : dist) total += prob;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        const Eigen::MatrixXcd m = StateVector(model.state(theta), {2, 2}).coefficient_matrix();
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                CHECK(dist.at({std::to_string(x), std::to_string(y)}) == doctest::Approx(direct_probability(ba, bb, m, x, y)).epsilon(1e-10));
    }
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto paths = enumerate_paths(random_adaptive_protocol(s, 3), StateVector::from_schmidt({0.6, 0.4}).coefficient_matrix());
        double total = 0.0;
        for (const auto& r : paths) total += r.probability;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("chain factorization on product inputs") {
    Rng rng = stream_rng(4, 0);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Eigen::VectorXcd a = sample_haar_unitary(2, rng).col(0);
        const Eigen::VectorXcd b = sample_haar_unitary(2, rng).col(0);
        for (const auto& f : chain_factorization(random_adaptive_protocol(s, 3), a, b))
            CHECK(std::abs(f.joint - f.alice_chain * f.bob_chain) < 1e-12);
    }
}

TEST_CASE("no signalling from Alice's choice to Bob's marginal") {
    const Eigen::MatrixXcd bb = haar(2, 5);
    const Eigen::MatrixXcd m = StateVector::from_schmidt({0.7, 0.3}, {0.0, 0.9}).coefficient_matrix();
    std::vector<double> reference;
    for (std::uint64_t s = 10; s < 15; ++s) {
        const auto paths = enumerate_paths(product_measurement_protocol(haar(2, s), bb), m);
        std::vector<double> marginal(2, 0.0);
        for (const auto& r : paths) marginal[r.messages.back().label == "0" ? 0 : 1] += r.probability;
        if (reference.empty()) reference = marginal;
        CHECK(marginal[0] == doctest::Approx(reference[0]).epsilon(1e-12));
    }
}

TEST_CASE("Fisher additivity under LOCC") {
    SUBCASE("non-adaptive") {
        const AdditivityReport r = verify_fisher_additivity(product_measurement_protocol(haar(2, 6), haar(2, 7)),
                                                            qubit_polar_model(), qubit_phase_model(), pt(1.1));
        CHECK(r.cross <= 1e-8);
        CHECK(r.paths == 4);
    }
    SUBCASE("adaptive, 20 points") {
        Rng rng = stream_rng(8, 0);
        const PureStateModel a = random_qubit_model(rng, 1);
        const PureStateModel b = random_qubit_model(rng, 1);
        for (int k = 0; k < 20; ++k) {
            const ParamPoint theta = pt(-2.5 + 5.0 * k / 19.0);
            CHECK(verify_fisher_additivity(random_adaptive_protocol(100 + k, 2 + k % 2), a, b, theta).cross <= 1e-8);
            CHECK(verify_fisher_additivity(adaptive_qubit_protocol(0.3, 1.7), a, b, theta).cross <= 1e-8);
        }
    }
    SUBCASE("anticopy pair") {
        const auto [a, b] = anticopy_model();
        ParamPoint theta(2);
        theta << 1.0, 0.5;
        const AdditivityReport r = verify_fisher_additivity(random_adaptive_protocol(3, 3), a, b, theta);
        CHECK(r.j_total.rows() == 2);
        CHECK(r.cross <= 1e-8);
    }
    CHECK_THROWS_AS(verify_fisher_additivity(adaptive_qubit_protocol(0.0, 1.0), qubit_polar_model(), qubit_full_model(), pt(1.0)),
                    std::invalid_argument);
}

TEST_CASE("teleport protocol reproduces the direct simulation") {
    const TeleportPlan plan = make_teleport_plan(3, 2);
    const StateVector phi = StateVector::from_schmidt({0.6, 0.4}, {0.0, 0.7});
    const LoccProtocol protocol = teleport_protocol(plan);
    const Eigen::MatrixXcd m = tensor_power(phi.coefficient_matrix(), 3);
    int compared = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const LoccTranscript t = run_locc(protocol, m, seed);
        REQUIRE(t.messages.size() == 2);
        if (t.messages[0].label != "povm") {
            CHECK(t.messages[1].label == "idle");
            continue;
        }
        ++compared;
        const TeleportResult direct = run_teleport(phi, plan, seed);
        CHECK(t.messages[1].label == "reconstruct");
        CHECK(std::abs(t.messages[0].probability - direct.success_prob) < 1e-10);
        CHECK(std::abs(t.messages[0].density - direct.outcome_density) < 1e-10);
        CHECK(std::abs(t.messages[1].probability - 1.0) < 1e-10);
        CHECK((t.final_state - direct.transcript.final_state).norm() < 1e-10);
    }
    CHECK(compared > 0);
}

TEST_CASE("teleport protocol success frequency") {
    const TeleportPlan plan = make_teleport_plan(3, 2);
    const LoccProtocol protocol = teleport_protocol(plan);
    const Eigen::MatrixXcd m = tensor_power(StateVector::bell().coefficient_matrix(), 3);
    const int shots = 5000;
    int hits = 0;
    for (int s = 0; s < shots; ++s) hits += run_locc(protocol, m, static_cast<std::uint64_t>(s)).messages[0].label == "povm";
    const double expected = ideal_fidelity(ProbabilityVector({0.5, 0.5}), 3);
    CHECK(expected == doctest::Approx(0.5));
    CHECK(std::abs(hits / double(shots) - expected) <= 3.0 * std::sqrt(expected * (1 - expected) / shots));
}

TEST_CASE("transcripts are deterministic and serialize") {
    const LoccProtocol p = random_adaptive_protocol(9, 3);
    const Eigen::MatrixXcd m = StateVector::from_schmidt({0.55, 0.45}).coefficient_matrix();
    const std::string a = transcript_to_json(run_locc(p, m, 42));
    CHECK(a == transcript_to_json(run_locc(p, m, 42)));
    const auto j = nlohmann::json::parse(a);
    CHECK(j["seed"] == 42);
    CHECK(j["rounds"].size() == 3);
    CHECK(j["final_state_hash"].get<std::string>().size() == 16);
    for (const auto& r : j["rounds"]) CHECK(r["prob"].get<double>() >= 0.0);
    bool differs = false;
    for (std::uint64_t s = 0; s < 10 && !differs; ++s) differs = transcript_to_json(run_locc(p, m, s)) != a;
    CHECK(differs);
}

TEST_CASE("two-stage estimation: argument handling") {
    const PureStateModel polar = qubit_polar_model(), phase = qubit_phase_model();
    const EstimationReport empty = two_stage_estimate(polar, phase, 1.0, 100, 0, 1);
    CHECK(empty.estimates.empty());
    CHECK(empty.trials == 0);
    CHECK_THROWS_AS(two_stage_estimate(polar, phase, 1.0, 24, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(two_stage_estimate(polar, phase, 3.5, 100, 1, 1), std::domain_error);
    CHECK_THROWS_AS(two_stage_estimate(polar, qubit_full_model(), 1.0, 100, 1, 1), std::invalid_argument);
    // Computational-basis counts carry no information about a pure phase.
    CHECK_THROWS_AS(two_stage_estimate(phase, phase, 1.0, 100, 1, 1), EstimationFailure);
    const EstimationReport r = two_stage_estimate(polar, phase, 1.0, 100, 3, 5);
    CHECK(r.to_csv().rfind("seed,trial,estimate,stage1_estimate\n", 0) == 0);
    CHECK(r.stage1_copies == 10);
}

TEST_CASE("maximum likelihood recovers the polar angle from exact counts") {
    const PureStateModel polar = qubit_polar_model();
    Dataset d{&polar, Eigen::MatrixXcd::Identity(2, 2), {0, 0}};
    const double theta = 1.2;
    d.counts = {static_cast<int>(std::round(1e6 * std::pow(std::cos(theta / 2), 2))),
                static_cast<int>(std::round(1e6 * std::pow(std::sin(theta / 2), 2)))};
    CHECK(maximum_likelihood({d}, 1e-6, std::numbers::pi - 1e-6) == doctest::Approx(theta).epsilon(1e-5));
}

TEST_CASE("two-stage scheme approaches the local Fisher bound") {
    const EstimationReport r = two_stage_estimate(qubit_polar_model(), qubit_phase_model(), 1.0, 400, 2000, 11);
    // 16·(1/16 + 1/16) = 2.
    CHECK(r.fisher == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(r.n_mse / r.reference == doctest::Approx(1.0).epsilon(0.10));
    const EstimationReport again = two_stage_estimate(qubit_polar_model(), qubit_phase_model(), 1.0, 400, 20, 11);
    for (std::size_t k = 0; k < again.estimates.size(); ++k) CHECK(again.estimates[k] == r.estimates[k]);
}

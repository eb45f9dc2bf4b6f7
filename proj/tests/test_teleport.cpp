#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "schurtele/teleport.hpp"

using namespace schurtele;

namespace {

std::vector<std::string> names(const std::vector<Partition>& ps) {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(p.to_string());
    return out;
}

double overlap(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return std::norm((a.conjugate().cwiseProduct(b)).sum());
}

}  // namespace

TEST_CASE("good sets") {
    CHECK(names(good_set(2, 2)) == std::vector<std::string>{"(1,1)"});
    CHECK(names(good_set(4, 2)) == std::vector<std::string>{"(3,1)", "(2,2)"});
    CHECK(good_set(1, 2).empty());
    for (int n = 1; n <= 10; ++n) {
        const auto good = good_set(n, 3);
        for (const auto& lambda : enumerate_partitions(n, 3)) {
            const bool in = std::find(good.begin(), good.end(), lambda) != good.end();
            CHECK(in == (dim_u(lambda) <= dim_v(lambda)));
        }
    }
}

TEST_CASE("ideal fidelity values") {
    const ProbabilityVector bell({0.5, 0.5});
    CHECK(ideal_fidelity(bell, 2) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(ideal_fidelity(bell, 4) == doctest::Approx(0.6875).epsilon(1e-12));
    const ProbabilityVector product({1.0, 0.0});
    for (int n = 1; n <= 20; ++n) CHECK(ideal_fidelity(product, n) == 0.0);
    for (int n = 1; n <= 20; ++n)
        CHECK(ideal_fidelity(ProbabilityVector({0.7, 0.3}), n) + ideal_infidelity(ProbabilityVector({0.7, 0.3}), n) ==
              doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fidelity lower bound arithmetic") {
    // d = 2 coefficient is 2.
    for (int n = 1; n <= 10; ++n)
        CHECK(fidelity_lower_bound(0.7, n, 2) == doctest::Approx(1.0 - 2.0 * std::pow(n + 1.0, 3) * std::pow(0.7, n)));
    CHECK(fidelity_lower_bound(0.5, 20, 2) == doctest::Approx(1.0 - 2.0 * 9261.0 / 1048576.0).epsilon(1e-14));
    CHECK(fidelity_lower_bound(0.5, 20, 2) == doctest::Approx(0.98234).epsilon(1e-5));
    CHECK(fidelity_lower_bound(0.5, 4, 2) < 0.0);
    // d = 3: 3·3!/(1!·2!) = 9.
    CHECK(fidelity_lower_bound(0.5, 5, 3) == doctest::Approx(1.0 - 9.0 * std::pow(6.0, 6) * std::pow(0.5, 5)));
    CHECK_THROWS_AS(fidelity_lower_bound(0.5, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(fidelity_lower_bound(1.5, 4, 2), std::invalid_argument);
}

TEST_CASE("Haar unitaries") {
    Rng rng = stream_rng(1, 0);
    for (int dim : {1, 2, 5, 16, 64}) {
        const Eigen::MatrixXcd u = sample_haar_unitary(dim, rng);
        CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(dim, dim)).norm() < 1e-12);
    }
    CHECK(std::abs(std::abs(sample_haar_unitary(1, rng)(0, 0)) - 1.0) < 1e-14);
    // ∫ U dU = 0.
    const int samples = 10000;
    for (int dim : {1, 3}) {
        Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(dim, dim);
        for (int k = 0; k < samples; ++k) mean += sample_haar_unitary(dim, rng);
        mean /= samples;
        CHECK(mean.operatorNorm() <= 5.0 / std::sqrt(samples) * dim);
    }
}

TEST_CASE("Kraus operators") {
    const TeleportPlan plan2 = make_teleport_plan(2, 2);
    Rng rng = stream_rng(2, 0);
    const auto outcome = plan2.sample_outcome(rng);
    const Eigen::RowVectorXcd a = kraus_operator(plan2, outcome);
    // One entry of modulus one, supported on the singlet.
    const auto& singlet = plan2.basis->block(Partition({1, 1})).vectors;
    CHECK(std::abs(std::abs((a * singlet.cast<cplx>())(0)) - 1.0) < 1e-12);
    CHECK(a.norm() == doctest::Approx(1.0));

    const TeleportPlan plan4 = make_teleport_plan(4, 2);
    const auto out4 = plan4.sample_outcome(rng);
    for (const auto& [lambda, u] : out4) CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.rows())).norm() < 1e-10);
    const Eigen::RowVectorXcd a4 = kraus_operator(plan4, out4);
    CHECK((a4 * plan4.basis->block(Partition({4, 0})).vectors.cast<cplx>()).norm() < 1e-12);

    OutcomeUnitaries missing = out4;
    missing.erase(missing.begin());
    CHECK_THROWS_AS(kraus_operator(plan4, missing), std::invalid_argument);
    OutcomeUnitaries wrong = out4;
    wrong.begin()->second = Eigen::MatrixXcd::Identity(7, 7);
    CHECK_THROWS_AS(kraus_operator(plan4, wrong), std::invalid_argument);
}

TEST_CASE("POVM completeness by Monte Carlo") {
    // E[A†A] is the good-subspace projector. Each sample has norm 11 here, and
    // √N·error sits near 5.4 independently of N; 8/√N clears every seed tried.
    const TeleportPlan plan = make_teleport_plan(4, 2);
    const Eigen::MatrixXcd target = plan.good_projector().cast<cplx>();
    Rng rng = stream_rng(3, 0);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(target.rows(), target.cols());
    int drawn = 0;
    for (int samples : {500, 8000}) {
        while (drawn < samples) {
            const Eigen::RowVectorXcd a = kraus_operator(plan, plan.sample_outcome(rng));
            sum += a.adjoint() * a;
            ++drawn;
        }
        CHECK((sum / drawn - target).operatorNorm() <= 8.0 / std::sqrt(drawn));
    }
    CHECK(std::abs((sum / drawn).trace().real() - target.trace().real()) < 1e-9);
}

TEST_CASE("embedding is an isometry on its support") {
    const TeleportPlan plan = make_teleport_plan(4, 2);
    const Eigen::MatrixXcd e = plan.embedding();
    const Eigen::MatrixXcd support = plan.embedding_support().cast<cplx>();
    CHECK((e.adjoint() * e - support).norm() < 1e-10);
}

TEST_CASE("Bell teleport at n = 4") {
    const TeleportResult r = run_teleport(StateVector::bell(), 4, 3);
    CHECK(std::abs(r.fidelity - 0.6875) <= 1e-9);
    CHECK(std::abs(r.success_prob - 0.6875) <= 1e-9);
    CHECK(r.target_fidelity >= 1 - 1e-8);
    CHECK(r.one_sided_residual <= 1e-10);
    CHECK(r.outcome_density == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.unconditional_fidelity == doctest::Approx(r.success_prob * r.conditional_fidelity));
    CHECK(r.transcript.messages.size() == 2);
    CHECK(r.transcript.path_probability() == doctest::Approx(r.success_prob).epsilon(1e-10));
    CHECK(r.final_state.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("teleported state carries the weights coherently") {
    const StateVector phi = StateVector::from_schmidt({0.7, 0.3}, {0.2, 1.3});
    const TeleportResult r = run_teleport(phi, 4, 11);
    CHECK(r.target_fidelity >= 1 - 1e-8);
    // Relative phases across λ: compare block overlaps with the target.
    const TeleportPlan plan = make_teleport_plan(4, 2);
    const Eigen::MatrixXcd target = teleport_target(standard_form(phi, 4), plan);
    std::vector<cplx> ratios;
    for (const auto& lambda : plan.good) {
        const Eigen::MatrixXcd v = plan.basis->block(lambda).vectors.cast<cplx>();
        const Eigen::MatrixXcd pr = v * v.adjoint();
        const Eigen::MatrixXcd mine = pr * r.final_state * pr.transpose();
        const Eigen::MatrixXcd theirs = pr * target * pr.transpose();
        ratios.push_back((theirs.conjugate().cwiseProduct(mine)).sum() / theirs.squaredNorm());
    }
    for (const auto& c : ratios) CHECK(std::abs(c - ratios.front()) < 1e-8);
}

TEST_CASE("outcome independence over 20 seeds") {
    const TeleportPlan plan = make_teleport_plan(4, 2);
    const StateVector phi = StateVector::from_schmidt({0.6, 0.4});
    std::vector<Eigen::MatrixXcd> finals;
    for (std::uint64_t seed = 0; seed < 20; ++seed) finals.push_back(run_teleport(phi, plan, seed).final_state);
    for (std::size_t i = 0; i < finals.size(); ++i)
        for (std::size_t j = i + 1; j < finals.size(); ++j) CHECK(overlap(finals[i], finals[j]) >= 1 - 1e-9);
}

TEST_CASE("product inputs have nothing to teleport; n = 1 is vacuous") {
    for (int n = 1; n <= 5; ++n) {
        if (n == 1) {
            const TeleportResult r = run_teleport(StateVector::product(), 1);
            CHECK(r.vacuous);
            CHECK(r.fidelity == 0.0);
        } else {
            CHECK_THROWS_AS(run_teleport(StateVector::product(), n), NothingToTeleport);
        }
    }
    const TeleportResult bell1 = run_teleport(StateVector::bell(), 1);
    CHECK(bell1.vacuous);
    CHECK(bell1.fidelity == 0.0);
}

TEST_CASE("plan size limits and argument checks") {
    CHECK_THROWS_AS(make_teleport_plan(8, 2), SizeLimitError);
    CHECK_THROWS_AS(run_teleport(StateVector::bell(3), make_teleport_plan(2, 2)), std::invalid_argument);
}

TEST_CASE("qutrit teleport matches the analytic weights") {
    const StateVector phi = StateVector::from_schmidt({0.5, 0.3, 0.2});
    const TeleportResult r = run_teleport(phi, 3, 4);
    CHECK(std::abs(r.success_prob - ideal_fidelity(ProbabilityVector({0.5, 0.3, 0.2}), 3)) <= 1e-9);
    CHECK(r.target_fidelity >= 1 - 1e-8);
}

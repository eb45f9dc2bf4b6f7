#include "schurtele/protocols.hpp"

#include <cmath>

namespace schurtele {

LoccProtocol teleport_protocol(const TeleportPlan& plan) {
    LoccProtocol p;
    p.id = "teleport-n" + std::to_string(plan.n) + "-d" + std::to_string(plan.d);
    p.alice_factors = plan.n;
    const auto size = plan.basis->blocks.front().vectors.rows();
    const Eigen::MatrixXcd good = plan.good_projector().cast<cplx>();
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(size, size);

    p.rounds.push_back({Party::Alice, [plan, good, eye](const History&) {
                            Instrument inst;
                            inst.branches.push_back({"fail", eye - good, {}});
                            ContinuousFamily family;
                            family.label = "povm";
                            family.total_effect = good;
                            family.sample = [plan](Rng& rng) {
                                const OutcomeUnitaries outcome = plan.sample_outcome(rng);
                                Branch b;
                                b.label = "povm";
                                b.kraus = kraus_operator(plan, outcome);
                                for (const auto& [lambda, u] : outcome) b.payload.push_back(u);
                                return b;
                            };
                            inst.continuous = std::move(family);
                            return inst;
                        }});

    const Eigen::MatrixXcd embedding = plan.embedding();
    const Eigen::MatrixXcd off_support = eye - plan.embedding_support().cast<cplx>();
    p.rounds.push_back({Party::Bob, [plan, embedding, off_support, size](const History& history) {
                            if (history.empty() || history.back().label != "povm") return idle_instrument(size);
                            // OutcomeUnitaries iterates in key order, matching the payload order.
                            OutcomeUnitaries outcome;
                            for (const auto& lambda : plan.good) outcome[lambda];
                            const auto& payload = history.back().payload;
                            if (payload.size() != outcome.size())
                                throw std::invalid_argument("teleport_protocol: payload does not match the good set");
                            std::size_t k = 0;
                            for (auto& [lambda, u] : outcome) u = payload[k++];
                            const Eigen::MatrixXcd recovery = plan.recovery_operator(outcome);
                            Eigen::MatrixXcd rest = Eigen::MatrixXcd::Zero(size * size, size);
                            rest.topRows(size) = off_support * recovery;
                            Instrument inst;
                            inst.branches.push_back({"reconstruct", embedding * recovery, {}});
                            inst.branches.push_back({"off-support", rest, {}});
                            return inst;
                        }});
    return p;
}

LoccProtocol product_measurement_protocol(const Eigen::MatrixXcd& basis_a, const Eigen::MatrixXcd& basis_b) {
    LoccProtocol p;
    p.id = "product-measurement";
    p.alice_factors = 1;
    p.rounds.push_back({Party::Alice, [basis_a](const History&) { return projective_instrument(basis_a); }});
    p.rounds.push_back({Party::Bob, [basis_b](const History&) { return projective_instrument(basis_b); }});
    return p;
}

namespace {

Eigen::MatrixXcd rotated_basis(double angle) {
    Eigen::MatrixXcd b(2, 2);
    b << std::cos(angle / 2), -std::sin(angle / 2), std::sin(angle / 2), std::cos(angle / 2);
    return b;
}

}  // namespace

LoccProtocol adaptive_qubit_protocol(double angle_after_0, double angle_after_1) {
    LoccProtocol p;
    p.id = "adaptive-qubit";
    p.alice_factors = 1;
    p.rounds.push_back({Party::Alice, [](const History&) { return projective_instrument(Eigen::MatrixXcd::Identity(2, 2)); }});
    p.rounds.push_back({Party::Bob, [angle_after_0, angle_after_1](const History& h) {
                            const double angle = h.back().label == "0" ? angle_after_0 : angle_after_1;
                            return projective_instrument(rotated_basis(angle));
                        }});
    return p;
}

}  // namespace schurtele

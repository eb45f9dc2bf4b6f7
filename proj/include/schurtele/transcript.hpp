#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace schurtele {

enum class Party { Alice, Bob };

const char* party_name(Party party);

/// One classical message. For continuous outcomes `probability` is the
/// probability of the continuous branch as a whole and `density` the
/// outcome density relative to the family's reference measure.
struct Message {
    int round = 0;
    Party party = Party::Alice;
    std::string label;
    double probability = 1.0;
    bool continuous = false;
    double density = 1.0;
    std::vector<Eigen::MatrixXcd> payload;
};

struct LoccTranscript {
    std::string protocol_id;
    std::uint64_t seed = 0;
    std::vector<Message> messages;
    /// Coefficient matrix of the final bipartite pure state (rows: Alice's
    /// local space, columns: Bob's).
    Eigen::MatrixXcd final_state;

    /// Product of the recorded branch probabilities.
    double path_probability() const;
};

/// FNV-1a over the raw bytes of the amplitudes.
std::uint64_t state_hash(const Eigen::MatrixXcd& state);

/// {protocol_id, seed, rounds: [{round, party, outcome, prob, ...}], final_state_hash}
std::string transcript_to_json(const LoccTranscript& transcript);

}  // namespace schurtele

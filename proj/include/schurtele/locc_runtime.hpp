#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "schurtele/estimation.hpp"
#include "schurtele/random.hpp"
#include "schurtele/transcript.hpp"

namespace schurtele {

/// One labelled outcome of a local instrument. The Kraus operator maps the
/// owner's current local space to a (possibly different) output space.
struct Branch {
    std::string label;
    Eigen::MatrixXcd kraus;
    std::vector<Eigen::MatrixXcd> payload;  ///< classical data sent along with the label
};

/// A continuum of outcomes sampled from a reference measure. `total_effect`
/// is the integral of K†K over that measure.
struct ContinuousFamily {
    std::string label;
    Eigen::MatrixXcd total_effect;
    std::function<Branch(Rng&)> sample;
};

struct Instrument {
    std::vector<Branch> branches;
    std::optional<ContinuousFamily> continuous;

    /// Σ K†K (+ total_effect) − I in operator norm.
    double completeness_defect() const;

    /// Throws std::invalid_argument unless the defect is ≤ 1e-10 and the
    /// Kraus operators all act on a space of dimension `input_dim`.
    void validate(Eigen::Index input_dim) const;
};

using History = std::vector<Message>;

struct Round {
    Party party = Party::Alice;
    std::function<Instrument(const History&)> instrument;
};

struct LoccProtocol {
    std::string id;
    int alice_factors = 1;  ///< leading tensor factors of the input owned by Alice
    std::vector<Round> rounds;
};

/// Samples one execution. Branch choice draws one uniform per round from
/// stream_rng(seed, 0); a continuous family draws its outcome from
/// stream_rng(seed, 1 + round). The state is renormalized after every round.
LoccTranscript run_locc(const LoccProtocol& protocol, const Eigen::MatrixXcd& coefficients, std::uint64_t seed);
LoccTranscript run_locc(const LoccProtocol& protocol, const StateVector& input, std::uint64_t seed);

/// One classical path with its unnormalized conditional state.
struct PathRecord {
    History messages;
    double probability = 0.0;
    Eigen::MatrixXcd final_state;  ///< unnormalized
};

inline constexpr std::size_t kMaxPaths = 100000;

/// Every path of a protocol whose instruments are all discrete; zero-probability
/// branches are kept so that path sets do not depend on the input. Throws
/// std::invalid_argument on a continuous family and std::length_error past kMaxPaths.
std::vector<PathRecord> enumerate_paths(const LoccProtocol& protocol, const Eigen::MatrixXcd& coefficients);

/// Key: the sequence of labels along a path.
using PathKey = std::vector<std::string>;
using OutcomeDistribution = std::map<PathKey, double>;

/// Exact distribution over label sequences for input |φ_θ⟩ (split as
/// alice_factors | rest).
OutcomeDistribution joint_outcome_distribution(const LoccProtocol& protocol, const PureStateModel& model,
                                               const ParamPoint& theta);

/// For a product input a ⊗ b, each path probability split into the product of
/// Alice's conditionals (computed from her local vector alone) and Bob's.
struct ChainFactor {
    PathKey key;
    double joint = 0.0;
    double alice_chain = 0.0;
    double bob_chain = 0.0;
};
std::vector<ChainFactor> chain_factorization(const LoccProtocol& protocol, const Eigen::VectorXcd& alice,
                                             const Eigen::VectorXcd& bob);

struct AdditivityReport {
    Eigen::MatrixXd j_total;
    Eigen::MatrixXd j_a;  ///< Fisher with Bob's input frozen at θ0
    Eigen::MatrixXd j_b;  ///< Fisher with Alice's input frozen at θ0
    double cross = 0.0;   ///< max |J_total − J_A − J_B|
    std::size_t paths = 0;
};

/// Classical Fisher information of the path distribution for the product
/// family φ^A_θ ⊗ φ^B_θ, and of its two frozen variants. Path probabilities
/// are ‖K_path ψ_θ‖² with θ-independent K_path, so ∂p comes from ∂ψ
/// (analytic, or Richardson differences with step 1e-5).
AdditivityReport verify_fisher_additivity(const LoccProtocol& protocol, const PureStateModel& model_a,
                                          const PureStateModel& model_b, const ParamPoint& theta0);

/// Adaptive protocol on a qubit pair: `rounds` rounds (2 or 3) alternating
/// between the parties, each instrument a random 2- or 3-outcome isometry
/// slice drawn from a seed hashed from (seed, round, history labels).
LoccProtocol random_adaptive_protocol(std::uint64_t seed, int rounds);

/// Projective measurement in the columns of `basis` on one party, no adaptivity.
Instrument projective_instrument(const Eigen::MatrixXcd& basis);

/// Single round doing nothing on `party`'s space of dimension `dim`.
Instrument idle_instrument(Eigen::Index dim);

}  // namespace schurtele

#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "schurtele/partitions.hpp"
#include "schurtele/random.hpp"
#include "schurtele/schur_weyl.hpp"
#include "schurtele/transcript.hpp"

namespace schurtele {

/// Step I found no weight in the good subspace (product input).
class NothingToTeleport : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A_n = {λ ⊢ n : dim U_λ ≤ d_λ}.
std::vector<Partition> good_set(int n, int d);

/// Σ_{λ ∈ A_n} d_λ s_λ(p).
double ideal_fidelity(const ProbabilityVector& p, int n);

/// Σ_{λ ∉ A_n} d_λ s_λ(p), summed directly to avoid cancellation.
double ideal_infidelity(const ProbabilityVector& p, int n);

/// 1 − d(2d−3)!/((d−2)!(d−1)!) (n+1)^{d(d+1)/2} p₁^n; may be negative.
/// Throws std::invalid_argument for d < 2.
double fidelity_lower_bound(double p1, int n, int d);

/// Per-λ outcome of Alice's measurement: one unitary on V_λ for each λ ∈ A_n.
using OutcomeUnitaries = std::map<Partition, Eigen::MatrixXcd>;

struct KrausOutcome {
    OutcomeUnitaries unitaries;
    Eigen::RowVectorXcd operator_row;  ///< A_{U} as a functional on H_A^⊗n
};

/// Everything the two parties agree on before the run. Both sides use the
/// same Schur basis.
struct TeleportPlan {
    int n = 0;
    int d = 0;
    std::vector<Partition> good;
    std::shared_ptr<const SchurBasis> basis;

    /// Projector onto ⊕_{λ ∈ A_n} W_λ in the computational basis.
    Eigen::MatrixXd good_projector() const;

    /// Draws {U_λ} from the Haar measure on U(V_λ), λ ∈ A_n in plan order.
    OutcomeUnitaries sample_outcome(Rng& rng) const;

    /// ⊕_{λ ∈ A_n} 1_{U_λ} ⊗ U_λ^T on Bob's V index, identity elsewhere.
    Eigen::MatrixXcd recovery_operator(const OutcomeUnitaries& unitaries) const;

    /// Bob's isometry H_B^⊗n → H_{B'}^⊗n ⊗ H_B^⊗n: the first dim U_λ
    /// vectors of V_{λ,B} become U_{λ,B'} and a fresh |Φ_λ⟩ is placed on
    /// V_{λ,B'} ⊗ V_{λ,B}. Zero outside that support.
    Eigen::MatrixXcd embedding() const;

    /// Projector onto the support of embedding().
    Eigen::MatrixXd embedding_support() const;
};

/// Requires d^{2n} ≤ 2^14.
TeleportPlan make_teleport_plan(int n, int d, std::uint64_t seed = 0);
TeleportPlan make_teleport_plan(std::shared_ptr<const SchurBasis> basis);

/// A = ⊕_{λ ∈ A_n} √d_λ Σ_{i < dim U_λ} ⟨e_i^λ|⟨f_i^λ| U_λ^†, as a row vector.
/// Throws std::invalid_argument on a missing λ or a wrongly sized unitary.
Eigen::RowVectorXcd kraus_operator(const TeleportPlan& plan, const OutcomeUnitaries& unitaries);

struct TeleportResult {
    int n = 0;
    int d = 0;
    std::uint64_t seed = 0;
    std::vector<double> schmidt;
    std::vector<Partition> good;
    bool vacuous = false;  ///< A_n is empty

    double success_prob = 0.0;           ///< simulated ‖P_A |φ⟩^⊗n‖²
    double analytic_success_prob = 0.0;  ///< Σ_{A_n} d_λ s_λ(p)
    double fidelity = 0.0;               ///< headline Σ_{A_n} q_λ
    double conditional_fidelity = 0.0;   ///< |⟨φ^⊗n|final⟩|² of the simulated state
    double unconditional_fidelity = 0.0; ///< success_prob × conditional_fidelity
    double bound = 0.0;                  ///< fidelity_lower_bound(p₁, n, d)
    double target_fidelity = 0.0;        ///< overlap² with ⊕_{A_n} √q_λ|φ_λ⟩|Φ_λ⟩ (normalized)
    double one_sided_residual = 0.0;     ///< ‖P_A M − P_A M P_B‖
    double outcome_density = 0.0;        ///< ‖A_U ψ‖² after step I

    /// Final state as a d^n × d^n coefficient matrix (rows B', columns B).
    Eigen::MatrixXcd final_state;
    LoccTranscript transcript;
};

/// Runs steps I–III on |φ⟩^⊗n. The outcome unitaries come from
/// stream_rng(seed, 1). Throws NothingToTeleport when step I succeeds with
/// probability below 1e-12.
TeleportResult run_teleport(const StateVector& phi, int n, std::uint64_t seed = 0);
TeleportResult run_teleport(const StateVector& phi, const TeleportPlan& plan, std::uint64_t seed = 0);

/// ⊕_{λ ∈ A_n} √q_λ |φ_λ⟩|Φ_λ⟩, normalized, as rows B' (Alice's role) and
/// columns B.
Eigen::MatrixXcd teleport_target(const StandardForm& form, const TeleportPlan& plan);

}  // namespace schurtele

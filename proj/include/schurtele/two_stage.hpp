#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "schurtele/estimation.hpp"

namespace schurtele {

/// The likelihood stayed flat after every grid refinement.
class EstimationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EstimationReport {
    int n_copies = 0;
    int trials = 0;
    int stage1_copies = 0;
    bool adaptive = true;
    double theta = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> estimates;
    std::vector<double> stage1_estimates;  ///< empty for the one-stage scheme
    double mean = 0.0;
    double mse = 0.0;
    double n_mse = 0.0;
    double fisher = 0.0;     ///< QFI_A + QFI_B at θ (= 16 (J^S_A + J^S_B))
    double reference = 0.0;  ///< 1 / fisher

    /// Header `seed,trial,estimate,stage1_estimate`, one row per trial.
    std::string to_csv() const;
};

struct TwoStageOptions {
    bool adaptive = true;   ///< false: every copy in the stage-1 basis
    int grid_points = 512;
    int max_retries = 3;    ///< grid refinements (×4 each) before EstimationFailure
};

/// Optimal projective basis for a one-parameter pure family at θ:
/// (φ ± ĥ)/√2 with ĥ the normalized horizontal part of ∂φ.
Eigen::MatrixXcd optimal_local_basis(const PureStateModel& model, double theta);

/// Grid maximum likelihood with golden-section refinement. Each dataset is
/// (model, basis columns, counts per column).
struct Dataset {
    const PureStateModel* model = nullptr;
    Eigen::MatrixXcd basis;
    std::vector<int> counts;
};
double maximum_likelihood(const std::vector<Dataset>& data, double lower, double upper,
                          const TwoStageOptions& options = {});

/// Two-party local scheme on n copies of φ^A_θ ⊗ φ^B_θ: each party measures
/// ⌈√n⌉ copies in the computational basis, the pooled stage-1 ML estimate θ̃
/// picks each party's optimal basis for the remaining copies, and the final
/// estimate is the ML over all counts. Trial t draws from stream_rng(seed, t).
/// Requires one-parameter qubit models and n ≥ 25.
EstimationReport two_stage_estimate(const PureStateModel& model_a, const PureStateModel& model_b, double theta,
                                    int n, int trials, std::uint64_t seed, const TwoStageOptions& options = {});

}  // namespace schurtele

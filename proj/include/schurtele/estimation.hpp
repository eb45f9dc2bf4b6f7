#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "schurtele/schur_weyl.hpp"

namespace schurtele {

using ParamPoint = Eigen::VectorXd;

/// θ ↦ |φ_θ⟩ on a box domain. `derivative` is optional; when absent,
/// derivatives come from central differences with one Richardson step.
struct PureStateModel {
    std::string name;
    int param_dim = 1;
    std::vector<int> dims;  ///< local dimensions of the state space
    std::function<Eigen::VectorXcd(const ParamPoint&)> state;
    std::function<Eigen::VectorXcd(const ParamPoint&, int)> derivative;
    ParamPoint lower;
    ParamPoint upper;

    int hilbert_dim() const;
    bool has_analytic_derivative() const { return static_cast<bool>(derivative); }

    /// True when θ lies strictly inside the domain.
    bool interior(const ParamPoint& theta) const;
};

/// Step used for every finite difference in this module.
inline constexpr double kFiniteDifferenceStep = 1e-5;

/// ∂_i |φ_θ⟩, analytic when available.
Eigen::VectorXcd state_derivative(const PureStateModel& model, const ParamPoint& theta, int i);

/// Same derivative, always by finite differences (for cross-checks).
Eigen::VectorXcd state_derivative_numeric(const PureStateModel& model, const ParamPoint& theta, int i);

/// |l_{θ,i}⟩ = ½(∂_i φ − ⟨φ|∂_i φ⟩ φ). Throws std::domain_error off the interior.
Eigen::VectorXcd horizontal_lift(const PureStateModel& model, const ParamPoint& theta, int i);

struct FisherData {
    Eigen::MatrixXd j_s;      ///< Re⟨l_i|l_j⟩
    Eigen::MatrixXd j_tilde;  ///< Im⟨l_i|l_j⟩, antisymmetrized exactly
    std::vector<double> betas;  ///< Kähler-angle cosines, descending, ceil(D/2) entries
    int rank = 0;             ///< numerical rank of j_s
    bool degenerate = false;  ///< rank < D
};

/// Singular values of S^{-1/2} J̃ S^{-1/2}, one per ± pair. The
/// pseudo-inverse drops eigenvalues below 1e-10 × the largest.
std::vector<double> kahler_betas(const Eigen::MatrixXd& j_s, const Eigen::MatrixXd& j_tilde, int* rank = nullptr);

FisherData fisher_data(const PureStateModel& model, const ParamPoint& theta);

struct ExpansionCheck {
    double lhs = 0.0;  ///< 1 − |⟨φ_θ|φ_{θ+dθ}⟩|²
    double rhs = 0.0;  ///< 4 Σ J^S_ij dθ^i dθ^j
};

/// Requires ‖dθ‖ ≤ 1e-3.
ExpansionCheck bures_expansion_check(const PureStateModel& model, const ParamPoint& theta, const ParamPoint& dtheta);

/// Σ_j 4 / (1 + √(1 − β_j²)).
double weighted_cr_value(std::span<const double> betas);

struct Povm {
    std::vector<Eigen::MatrixXcd> elements;
    std::vector<std::string> labels;

    /// Throws std::invalid_argument unless every element is PSD (eigenvalue
    /// floor −1e-12) and the elements sum to the identity within 1e-10.
    void validate() const;

    static Povm projective(const Eigen::MatrixXcd& basis_columns);
};

struct MeasurementFisher {
    Eigen::MatrixXd j;
    bool boundary_warning = false;  ///< some p(x) < 1e-12 had a nonzero derivative
};

/// Classical Fisher matrix of x ↦ ⟨φ_θ|M_x|φ_θ⟩ by central differences.
MeasurementFisher measurement_fisher(const Povm& povm, const PureStateModel& model, const ParamPoint& theta);

/// θ ↦ |φ^A_θ⟩ ⊗ |φ^B_θ⟩, with the product rule when both derivatives are analytic.
PureStateModel product_model(const PureStateModel& a, const PureStateModel& b);

struct BetaPair {
    double plus = 0.0;
    double minus = 0.0;
};

/// (a β_A ± b β_B)/(a + b).
BetaPair beta_combination(double a, double b, double beta_a, double beta_b);

enum class Sign { Plus, Minus };

struct GapReport {
    double beta = 0.0;
    double global_best = 0.0;
    double locc_best = 0.0;
    double gap = 0.0;
};

/// Both ends of the LOCC-vs-global chain for the conformal two-parameter case.
GapReport locc_gap(double a, double b, double beta_a, double beta_b, Sign sign);

/// The qubit pair |φ^A_θ⟩ = (e^{−iθ₂/2} cos θ₁/2, e^{iθ₂/2} sin θ₁/2) and its
/// complex conjugate.
std::pair<PureStateModel, PureStateModel> anticopy_model();

struct DetectionCheck {
    double lhs = 0.0;  ///< max pairwise |⟨φ_θ|φ_θ'⟩|²
    double rhs = 0.0;  ///< max largest Schmidt coefficient
    bool holds = false;
};

/// Throws std::invalid_argument for fewer than two states.
DetectionCheck detection_condition(std::span<const StateVector> states);

}  // namespace schurtele

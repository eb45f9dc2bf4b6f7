#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "schurtele/partitions.hpp"

namespace schurtele {

using cplx = std::complex<double>;

/// Raised when a dense construction would exceed the desk-scale limits.
class SizeLimitError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Raised when |φ⟩^⊗n does not factor over the u/v index split.
class BasisAlignmentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Amplitudes over a tensor product of local dimensions; the first factor is
/// the most significant digit of the flat index.
struct StateVector {
    Eigen::VectorXcd amplitudes;
    std::vector<int> dims;

    StateVector() = default;
    StateVector(Eigen::VectorXcd amps, std::vector<int> local_dims);

    double norm() const { return amplitudes.norm(); }
    StateVector normalized() const;

    /// For a two-factor state, the dims[0] × dims[1] coefficient matrix.
    Eigen::MatrixXcd coefficient_matrix() const;

    /// Σ_i √p_i e^{iα_i} |ii⟩ on C^d ⊗ C^d.
    static StateVector from_schmidt(const std::vector<double>& spectrum, const std::vector<double>& phases = {});
    static StateVector bell(int d = 2);
    static StateVector product(int d = 2);
};

/// Squared Schmidt coefficients of a bipartite state, non-increasing.
std::vector<double> schmidt_spectrum(const StateVector& state);

/// |⟨a|b⟩|² for normalized inputs.
double state_fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

/// A permutation of {0,…,n−1}; entry k is the image of k.
using Permutation = std::vector<int>;

Permutation compose(const Permutation& sigma, const Permutation& tau);  // σ∘τ
Permutation inverse(const Permutation& sigma);
Permutation identity_permutation(int n);
Permutation transposition(int n, int i, int j);
Partition cycle_type(const Permutation& sigma);

/// Flat index of the basis vector obtained by moving tensor factor k of
/// `index` to position σ(k).
std::uint64_t permute_index(std::uint64_t index, const Permutation& sigma, int d);

/// Operator on (C^d)^⊗n moving tensor factor k to slot σ(k), so that
/// op(σ∘τ) = op(σ)·op(τ). Limited to d^n ≤ 2^14.
Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic> permutation_operator(const Permutation& sigma, int d);

/// P_λ = (d_λ/n!) Σ_σ χ_λ(σ) op(σ). Limited to n ≤ 8 (d = 2), n ≤ 6 (d = 3)
/// and d^n ≤ 2^10 in general.
Eigen::MatrixXd isotypic_projector(const Partition& lambda);

/// A standard Young tableau stored as the row of each entry 0..n−1.
using YamanouchiWord = std::vector<int>;

std::vector<YamanouchiWord> standard_tableaux(const Partition& lambda);

/// Orthonormal basis of W_λ = U_λ ⊗ V_λ. Column u·dim_v + v of `vectors`
/// is the basis vector |u, v⟩. The v index follows `tableaux`, and S_n acts
/// on it by a real orthogonal matrix identical for every u.
struct SchurBlock {
    Partition lambda;
    std::uint64_t dim_u = 0;
    std::uint64_t dim_v = 0;
    std::vector<YamanouchiWord> tableaux;
    Eigen::MatrixXd vectors;

    Eigen::Index column(std::uint64_t u, std::uint64_t v) const {
        return static_cast<Eigen::Index>(u * dim_v + v);
    }
};

inline constexpr int kSchurBasisVersion = 1;

struct SchurBasis {
    int n = 0;
    int d = 0;
    std::uint64_t seed = 0;
    int version = kSchurBasisVersion;
    std::vector<SchurBlock> blocks;

    const SchurBlock& block(const Partition& lambda) const;

    /// All blocks side by side (d^n × d^n orthogonal), with block offsets.
    Eigen::MatrixXd matrix() const;
    std::vector<Eigen::Index> offsets() const;
};

/// Limited to d^n ≤ 2^10. The construction is deterministic; `seed` is
/// recorded for cache keying.
SchurBasis build_schur_basis(int n, int d, std::uint64_t seed = 0);

/// Writes the basis in a versioned binary format; load() reproduces
/// bit-identical amplitudes.
void save_schur_basis(const SchurBasis& basis, const std::filesystem::path& path);
SchurBasis load_schur_basis(const std::filesystem::path& path);

/// Looks for basis-n<n>-d<d>-s<seed>-v<version>.bin under `dir`; builds and
/// stores it on a miss.
SchurBasis cached_schur_basis(const std::filesystem::path& dir, int n, int d, std::uint64_t seed = 0);

struct StandardFormBlock {
    Partition lambda;
    double weight = 0.0;         ///< q_λ = a_λ²
    Eigen::MatrixXcd phi;        ///< |φ_λ⟩ as dim_u × dim_u (rows U_A, cols U_B); empty when q_λ ≈ 0
    Eigen::MatrixXcd entangled;  ///< |Φ_λ⟩ as dim_v × dim_v (rows V_A, cols V_B)
};

struct StandardForm {
    int n = 0;
    int d = 0;
    std::vector<StandardFormBlock> blocks;
    double reassembly_residual = 0.0;  ///< ‖|φ⟩^⊗n − ⊕ √q_λ|φ_λ⟩|Φ_λ⟩‖
    double cross_block_max = 0.0;      ///< max |amplitude| on λ_A ≠ λ_B blocks

    const StandardFormBlock& block(const Partition& lambda) const;
    std::map<Partition, double> weights() const;
};

/// Coefficients of |φ⟩^⊗n regrouped as A^n ⊗ B^n: the n-fold Kronecker power
/// of the d × d coefficient matrix.
Eigen::MatrixXcd tensor_power(const Eigen::MatrixXcd& coefficients, int n);

/// Decomposes |φ⟩^⊗n with the same Schur basis on both sides. Requires
/// d^{2n} ≤ 2^14; throws BasisAlignmentError when the reassembly residual
/// exceeds 1e-8.
StandardForm standard_form(const StateVector& phi, int n, const SchurBasis& basis);
StandardForm standard_form(const StateVector& phi, int n);

/// q_λ = d_λ · s_λ(p).
std::map<Partition, double> weights_analytic(const ProbabilityVector& p, int n);

}  // namespace schurtele

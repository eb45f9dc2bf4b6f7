#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace schurtele {

/// Raised when an exact integer result does not fit in 64 bits.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Young index λ ⊢ n with exactly d entries (trailing zeros explicit).
class Partition {
public:
    Partition() = default;

    /// Pads `parts` with zeros up to `d` entries. Throws std::invalid_argument
    /// when the parts are not non-increasing, contain negatives, or have more
    /// than `d` nonzero entries.
    Partition(std::vector<int> parts, int d);

    /// Uses parts.size() as d.
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int n() const { return n_; }
    int d() const { return static_cast<int>(parts_.size()); }
    int operator[](int i) const { return parts_[static_cast<std::size_t>(i)]; }

    /// Number of nonzero parts.
    int length() const;

    /// λ/n as a probability vector.
    std::vector<double> normalized() const;

    /// "(3,1,0)"
    std::string to_string() const;

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

private:
    std::vector<int> parts_;
    int n_ = 0;
};

/// Every λ ⊢ n with at most d parts, in decreasing lexicographic order.
std::vector<Partition> enumerate_partitions(int n, int d);

/// dim U_λ, the SU(d) irrep dimension (Weyl dimension formula).
std::uint64_t dim_u(const Partition& lambda);

/// d_λ = dim V_λ, the S_n irrep dimension.
std::uint64_t dim_v(const Partition& lambda);

/// Number of standard Young tableaux by the hook-length formula.
std::uint64_t hook_length_count(const Partition& lambda);

/// Size of the conjugacy class of S_n with the given cycle type.
std::uint64_t class_size(const Partition& cycle_type);

/// χ_λ(μ) by the Murnaghan–Nakayama rule, μ read as a cycle type.
std::int64_t character(const Partition& lambda, const Partition& mu);

/// Full character table for S_n. Rows and columns both follow
/// enumerate_partitions(n, n).
std::vector<std::vector<std::int64_t>> character_table(int n);

/// Schmidt spectrum p_1 ≥ … ≥ p_d, Σ p = 1.
class ProbabilityVector {
public:
    /// Sorts into non-increasing order; throws std::invalid_argument when an
    /// entry is outside [0,1] or the sum differs from 1 by more than 1e-12.
    explicit ProbabilityVector(std::vector<double> entries);

    const std::vector<double>& entries() const { return entries_; }
    int size() const { return static_cast<int>(entries_.size()); }
    double operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
    double largest() const { return entries_.front(); }

private:
    std::vector<double> entries_;
};

/// s_λ(x_1,…,x_d) by summing over semistandard tableaux (Gelfand–Tsetlin
/// patterns). Requires x.size() == λ.d().
double schur_polynomial_tableaux(const Partition& lambda, std::span<const double> x);

/// s_λ(x) as the Jacobi–Trudi determinant det[h_{λ_i − i + j}(x)].
double schur_polynomial_jacobi_trudi(const Partition& lambda, std::span<const double> x);

/// s_λ(p): tableau sum for d ≤ 3 and n ≤ 14, Jacobi–Trudi otherwise.
double schur_polynomial(const Partition& lambda, const ProbabilityVector& p);

/// Shannon entropy in nats.
double shannon_entropy(std::span<const double> q);

/// D(q‖p) in nats; +inf when q puts mass where p has none.
double relative_entropy(std::span<const double> q, std::span<const double> p);

struct BoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// |log(d_λ)/n − H(λ/n)| ≤ (d²+2d)/(2n)·log(n+d).
BoundCheck entropy_bound_check(const Partition& lambda);

/// log dim U_λ ≤ d² log n.
BoundCheck dimension_rate_check(const Partition& lambda);

using NormalizedRegion = std::function<bool(std::span<const double>)>;

/// Σ_{λ/n ∈ R} d_λ s_λ(p) ≤ (n+1)^{d(d+1)/2} exp(−n min D(λ/n ‖ p)), the
/// minimum taken over the realized points λ/n ∈ R.
BoundCheck large_deviation_bound(const ProbabilityVector& p, const NormalizedRegion& region, int n);

}  // namespace schurtele

#pragma once

// Independent reference computations used by the tests. None of these call
// the library routine they are checked against.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "schurtele/partitions.hpp"
#include "schurtele/schur_weyl.hpp"

namespace oracle {

// Standard Young tableaux counted by repeatedly removing a corner box.
inline std::uint64_t count_standard_tableaux(std::vector<int> shape) {
    static std::map<std::vector<int>, std::uint64_t> memo;
    while (!shape.empty() && shape.back() == 0) shape.pop_back();
    if (shape.empty()) return 1;
    if (auto it = memo.find(shape); it != memo.end()) return it->second;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < shape.size(); ++i) {
        const bool corner = (i + 1 == shape.size()) || shape[i + 1] < shape[i];
        if (!corner) continue;
        auto smaller = shape;
        --smaller[i];
        total += count_standard_tableaux(smaller);
    }
    memo[shape] = total;
    return total;
}

// Semistandard fillings of `shape` with entries 0..d−1, as weight vectors.
inline void for_each_ssyt(const std::vector<int>& shape, int d,
                          const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<std::pair<int, int>> cells;
    for (std::size_t r = 0; r < shape.size(); ++r)
        for (int c = 0; c < shape[r]; ++c) cells.emplace_back(static_cast<int>(r), c);
    std::vector<std::vector<int>> fill(shape.size());
    for (std::size_t r = 0; r < shape.size(); ++r) fill[r].assign(static_cast<std::size_t>(shape[r]), -1);
    std::vector<int> weight(static_cast<std::size_t>(d), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == cells.size()) {
            visit(weight);
            return;
        }
        const auto [r, c] = cells[k];
        int lo = 0;
        if (c > 0) lo = std::max(lo, fill[r][c - 1]);
        if (r > 0) lo = std::max(lo, fill[r - 1][c] + 1);
        for (int v = lo; v < d; ++v) {
            fill[r][c] = v;
            ++weight[static_cast<std::size_t>(v)];
            rec(k + 1);
            --weight[static_cast<std::size_t>(v)];
        }
        fill[r][c] = -1;
    };
    rec(0);
}

inline std::uint64_t count_ssyt(const std::vector<int>& shape, int d) {
    std::uint64_t n = 0;
    for_each_ssyt(shape, d, [&](const std::vector<int>&) { ++n; });
    return n;
}

inline double schur_by_ssyt(const std::vector<int>& shape, const std::vector<double>& x) {
    double total = 0.0;
    for_each_ssyt(shape, static_cast<int>(x.size()), [&](const std::vector<int>& w) {
        double term = 1.0;
        for (std::size_t i = 0; i < w.size(); ++i) term *= std::pow(x[i], w[i]);
        total += term;
    });
    return total;
}

// ⟨ψ|P_λ ⊗ 1|ψ⟩ for |φ⟩^⊗n, using the character projector on Alice's side.
inline double projector_weight(const schurtele::StateVector& phi, int n, const schurtele::Partition& lambda) {
    const Eigen::MatrixXcd c = schurtele::tensor_power(phi.coefficient_matrix(), n);
    const Eigen::MatrixXcd p = schurtele::isotypic_projector(lambda).cast<std::complex<double>>();
    return (c.adjoint() * p * c).trace().real();
}

inline Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    Eigen::VectorXcd out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
    return f;
}

// All permutations of {0..n−1} in lexicographic order.
inline std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace oracle

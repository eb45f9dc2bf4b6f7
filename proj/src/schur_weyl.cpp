#include "schurtele/schur_weyl.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace schurtele {

namespace {

constexpr std::uint64_t kPermutationLimit = std::uint64_t{1} << 14;
constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 10;

std::uint64_t checked_power(int d, int n, std::uint64_t limit, const char* what) {
    std::uint64_t size = 1;
    for (int i = 0; i < n; ++i) {
        size *= static_cast<std::uint64_t>(d);
        if (size > limit) throw SizeLimitError(std::string(what) + ": d^n exceeds the desk-scale limit");
    }
    return size;
}

// Rows of `dst` are rows of `src` permuted by a transposition of tensor slots.
void add_transposed_rows(const Eigen::MatrixXd& src, const std::vector<std::uint64_t>& perm, Eigen::MatrixXd& dst) {
    for (Eigen::Index x = 0; x < src.rows(); ++x) dst.row(x) += src.row(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(x)]));
}

std::vector<std::uint64_t> index_map(const Permutation& sigma, int d, std::uint64_t size) {
    std::vector<std::uint64_t> map(size);
    for (std::uint64_t x = 0; x < size; ++x) map[x] = permute_index(x, sigma, d);
    return map;
}

std::vector<int> contents(const YamanouchiWord& word) {
    std::vector<int> row_fill;
    std::vector<int> c(word.size());
    for (std::size_t k = 0; k < word.size(); ++k) {
        const auto r = static_cast<std::size_t>(word[k]);
        if (row_fill.size() <= r) row_fill.resize(r + 1, 0);
        c[k] = row_fill[r] - word[k];
        ++row_fill[r];
    }
    return c;
}

bool is_yamanouchi(const YamanouchiWord& word, int rows) {
    std::vector<int> fill(static_cast<std::size_t>(rows), 0);
    for (int r : word) {
        ++fill[static_cast<std::size_t>(r)];
        if (r > 0 && fill[static_cast<std::size_t>(r)] > fill[static_cast<std::size_t>(r - 1)]) return false;
    }
    return true;
}

// Joint eigenspaces of the Jucys–Murphy elements X_k = Σ_{j<k} (j k), keyed by
// content prefix. Each parent is diagonalized once and split among children.
class JucysMurphyTree {
public:
    JucysMurphyTree(int n, int d) : n_(n), d_(d), size_(checked_power(d, n, kDenseLimit, "build_schur_basis")) {
        for (int k = 1; k < n; ++k) {
            std::vector<std::vector<std::uint64_t>> maps;
            for (int j = 0; j < k; ++j) maps.push_back(index_map(transposition(n, j, k), d, size_));
            transpositions_.push_back(std::move(maps));
        }
    }

    const Eigen::MatrixXd& subspace(const std::vector<int>& prefix) {
        if (auto it = subspaces_.find(prefix); it != subspaces_.end()) return it->second;
        if (prefix.size() == 1) {
            return subspaces_.emplace(prefix, Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(size_),
                                                                         static_cast<Eigen::Index>(size_)))
                .first->second;
        }
        const std::vector<int> parent(prefix.begin(), prefix.end() - 1);
        const Eigen::MatrixXd& s = subspace(parent);
        const auto& eig = spectrum(parent, s);
        const double target = prefix.back();
        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
            if (std::abs(eig.eigenvalues()(i) - target) < 0.5) keep.push_back(i);
        Eigen::MatrixXd child(s.rows(), static_cast<Eigen::Index>(keep.size()));
        for (std::size_t c = 0; c < keep.size(); ++c)
            child.col(static_cast<Eigen::Index>(c)) = s * eig.eigenvectors().col(keep[c]);
        return subspaces_.emplace(prefix, std::move(child)).first->second;
    }

private:
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& spectrum(const std::vector<int>& parent, const Eigen::MatrixXd& s) {
        if (auto it = spectra_.find(parent); it != spectra_.end()) return it->second;
        const std::size_t k = parent.size();  // next tensor slot to add
        Eigen::MatrixXd xs = Eigen::MatrixXd::Zero(s.rows(), s.cols());
        for (const auto& perm : transpositions_[k - 1]) add_transposed_rows(s, perm, xs);
        Eigen::MatrixXd h = s.transpose() * xs;
        h = 0.5 * (h + h.transpose()).eval();
        return spectra_.emplace(parent, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h)).first->second;
    }

    int n_;
    int d_;
    std::uint64_t size_;
    std::vector<std::vector<std::vector<std::uint64_t>>> transpositions_;
    std::map<std::vector<int>, Eigen::MatrixXd> subspaces_;
    std::map<std::vector<int>, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>> spectra_;
};

// Gram–Schmidt on the projections of e_0, e_1, … so the gauge depends only
// on the subspace, not on the eigensolver.
Eigen::MatrixXd canonical_basis(const Eigen::MatrixXd& s) {
    const Eigen::Index rank = s.cols();
    Eigen::MatrixXd out(s.rows(), rank);
    Eigen::Index found = 0;
    for (Eigen::Index x = 0; x < s.rows() && found < rank; ++x) {
        Eigen::VectorXd v = s * s.row(x).transpose();
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index j = 0; j < found; ++j) v -= out.col(j).dot(v) * out.col(j);
        const double norm = v.norm();
        if (norm > 1e-6) out.col(found++) = v / norm;
    }
    if (found != rank) throw std::logic_error("canonical_basis: subspace rank deficiency");
    return out;
}

SchurBlock build_block(const Partition& lambda, JucysMurphyTree& tree,
                       const std::vector<std::vector<std::uint64_t>>& adjacent) {
    SchurBlock block;
    block.lambda = lambda;
    block.dim_u = dim_u(lambda);
    block.dim_v = dim_v(lambda);
    block.tableaux = standard_tableaux(lambda);

    const YamanouchiWord& first = block.tableaux.front();
    const auto first_contents = contents(first);
    const Eigen::MatrixXd& gz = tree.subspace(first_contents);
    if (static_cast<std::uint64_t>(gz.cols()) != block.dim_u)
        throw std::logic_error("build_schur_basis: Gelfand–Tsetlin subspace has wrong dimension for " + lambda.to_string());
    const Eigen::MatrixXd seed_vectors = canonical_basis(gz);

    std::map<YamanouchiWord, std::size_t> position;
    for (std::size_t i = 0; i < block.tableaux.size(); ++i) position[block.tableaux[i]] = i;

    const auto rows = gz.rows();
    const auto du = static_cast<Eigen::Index>(block.dim_u);
    std::vector<Eigen::MatrixXd> per_tableau(block.tableaux.size());
    std::vector<bool> done(block.tableaux.size(), false);
    per_tableau[0] = seed_vectors;
    done[0] = true;

    // Young's orthogonal form: s_k v_T = v_T / r + sqrt(1 − 1/r²) v_{s_k T}.
    std::deque<std::size_t> queue{0};
    const int n = lambda.n();
    while (!queue.empty()) {
        const std::size_t t = queue.front();
        queue.pop_front();
        const YamanouchiWord& word = block.tableaux[t];
        const auto c = contents(word);
        for (int k = 0; k + 1 < n; ++k) {
            if (word[static_cast<std::size_t>(k)] == word[static_cast<std::size_t>(k + 1)]) continue;
            YamanouchiWord swapped = word;
            std::swap(swapped[static_cast<std::size_t>(k)], swapped[static_cast<std::size_t>(k + 1)]);
            if (!is_yamanouchi(swapped, lambda.d())) continue;
            const std::size_t target = position.at(swapped);
            if (done[target]) continue;
            const double r = c[static_cast<std::size_t>(k + 1)] - c[static_cast<std::size_t>(k)];
            const Eigen::MatrixXd& v = per_tableau[t];
            Eigen::MatrixXd sv(rows, du);
            const auto& perm = adjacent[static_cast<std::size_t>(k)];
            for (Eigen::Index x = 0; x < rows; ++x) sv.row(x) = v.row(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(x)]));
            per_tableau[target] = (sv - v / r) / std::sqrt(1.0 - 1.0 / (r * r));
            done[target] = true;
            queue.push_back(target);
        }
    }

    const auto dv = static_cast<Eigen::Index>(block.dim_v);
    block.vectors.resize(rows, du * dv);
    for (Eigen::Index u = 0; u < du; ++u)
        for (Eigen::Index v = 0; v < dv; ++v) block.vectors.col(u * dv + v) = per_tableau[static_cast<std::size_t>(v)].col(u);
    return block;
}

}  // namespace

StateVector::StateVector(Eigen::VectorXcd amps, std::vector<int> local_dims)
    : amplitudes(std::move(amps)), dims(std::move(local_dims)) {
    Eigen::Index total = 1;
    for (int dim : dims) {
        if (dim < 1) throw std::invalid_argument("StateVector: local dimensions must be positive");
        total *= dim;
    }
    if (total != amplitudes.size()) throw std::invalid_argument("StateVector: dims do not match amplitude count");
}

StateVector StateVector::normalized() const {
    const double nrm = norm();
    if (nrm == 0.0) throw std::invalid_argument("StateVector: cannot normalize the zero vector");
    return StateVector(amplitudes / nrm, dims);
}

Eigen::MatrixXcd StateVector::coefficient_matrix() const {
    if (dims.size() != 2) throw std::invalid_argument("coefficient_matrix: state must have two factors");
    Eigen::MatrixXcd m(dims[0], dims[1]);
    for (int a = 0; a < dims[0]; ++a)
        for (int b = 0; b < dims[1]; ++b) m(a, b) = amplitudes(a * dims[1] + b);
    return m;
}

StateVector StateVector::from_schmidt(const std::vector<double>& spectrum, const std::vector<double>& phases) {
    const int d = static_cast<int>(spectrum.size());
    if (d < 1) throw std::invalid_argument("from_schmidt: empty spectrum");
    if (!phases.empty() && static_cast<int>(phases.size()) != d)
        throw std::invalid_argument("from_schmidt: phases must match the spectrum length");
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(d * d);
    for (int i = 0; i < d; ++i) {
        if (spectrum[static_cast<std::size_t>(i)] < 0.0) throw std::invalid_argument("from_schmidt: negative coefficient");
        const double phase = phases.empty() ? 0.0 : phases[static_cast<std::size_t>(i)];
        amps(i * d + i) = std::sqrt(spectrum[static_cast<std::size_t>(i)]) * std::polar(1.0, phase);
    }
    return StateVector(std::move(amps), {d, d}).normalized();
}

StateVector StateVector::bell(int d) { return from_schmidt(std::vector<double>(static_cast<std::size_t>(d), 1.0 / d)); }

StateVector StateVector::product(int d) {
    std::vector<double> spectrum(static_cast<std::size_t>(d), 0.0);
    spectrum[0] = 1.0;
    return from_schmidt(spectrum);
}

std::vector<double> schmidt_spectrum(const StateVector& state) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(state.coefficient_matrix());
    std::vector<double> p;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) p.push_back(std::pow(svd.singularValues()(i), 2));
    std::sort(p.begin(), p.end(), std::greater<>());
    return p;
}

double state_fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return std::norm(a.dot(b)); }

Permutation compose(const Permutation& sigma, const Permutation& tau) {
    if (sigma.size() != tau.size()) throw std::invalid_argument("compose: size mismatch");
    Permutation out(sigma.size());
    for (std::size_t k = 0; k < tau.size(); ++k) out[k] = sigma[static_cast<std::size_t>(tau[k])];
    return out;
}

Permutation inverse(const Permutation& sigma) {
    Permutation out(sigma.size());
    for (std::size_t k = 0; k < sigma.size(); ++k) out[static_cast<std::size_t>(sigma[k])] = static_cast<int>(k);
    return out;
}

Permutation identity_permutation(int n) {
    Permutation p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Permutation transposition(int n, int i, int j) {
    Permutation p = identity_permutation(n);
    std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
    return p;
}

Partition cycle_type(const Permutation& sigma) {
    const int n = static_cast<int>(sigma.size());
    std::vector<bool> seen(sigma.size(), false);
    std::vector<int> cycles;
    for (int k = 0; k < n; ++k) {
        if (seen[static_cast<std::size_t>(k)]) continue;
        int len = 0;
        for (int j = k; !seen[static_cast<std::size_t>(j)]; j = sigma[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = true;
            ++len;
        }
        cycles.push_back(len);
    }
    std::sort(cycles.begin(), cycles.end(), std::greater<>());
    return Partition(cycles, n);
}

std::uint64_t permute_index(std::uint64_t index, const Permutation& sigma, int d) {
    const int n = static_cast<int>(sigma.size());
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(n));
    for (int k = n - 1; k >= 0; --k) {
        digits[static_cast<std::size_t>(k)] = index % static_cast<std::uint64_t>(d);
        index /= static_cast<std::uint64_t>(d);
    }
    std::vector<std::uint64_t> moved(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) moved[static_cast<std::size_t>(sigma[static_cast<std::size_t>(k)])] = digits[static_cast<std::size_t>(k)];
    std::uint64_t out = 0;
    for (int k = 0; k < n; ++k) out = out * static_cast<std::uint64_t>(d) + moved[static_cast<std::size_t>(k)];
    return out;
}

Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic> permutation_operator(const Permutation& sigma, int d) {
    const int n = static_cast<int>(sigma.size());
    const std::uint64_t size = checked_power(d, n, kPermutationLimit, "permutation_operator");
    Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic> op(static_cast<Eigen::Index>(size));
    for (std::uint64_t x = 0; x < size; ++x)
        op.indices()(static_cast<Eigen::Index>(x)) = static_cast<int>(permute_index(x, sigma, d));
    return op;
}

Eigen::MatrixXd isotypic_projector(const Partition& lambda) {
    const int n = lambda.n();
    const int d = lambda.d();
    if ((d <= 2 && n > 8) || (d >= 3 && n > 6)) throw SizeLimitError("isotypic_projector: n beyond desk-scale limit");
    const auto size = static_cast<Eigen::Index>(checked_power(d, n, kDenseLimit, "isotypic_projector"));

    const auto classes = enumerate_partitions(n, n);
    std::map<Partition, std::int64_t> chi;
    const Partition padded(lambda.parts(), n);
    for (const auto& mu : classes) chi[mu] = character(padded, mu);

    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(size, size);
    Permutation sigma = identity_permutation(n);
    do {
        const auto c = static_cast<double>(chi.at(cycle_type(sigma)));
        if (c == 0.0) continue;
        for (Eigen::Index x = 0; x < size; ++x)
            p(static_cast<Eigen::Index>(permute_index(static_cast<std::uint64_t>(x), sigma, d)), x) += c;
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    double n_factorial = 1.0;
    for (int i = 2; i <= n; ++i) n_factorial *= i;
    return p * (static_cast<double>(dim_v(lambda)) / n_factorial);
}

std::vector<YamanouchiWord> standard_tableaux(const Partition& lambda) {
    std::vector<YamanouchiWord> out;
    YamanouchiWord word;
    std::vector<int> fill(static_cast<std::size_t>(lambda.d()), 0);
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(word.size()) == lambda.n()) {
            out.push_back(word);
            return;
        }
        for (int r = 0; r < lambda.d(); ++r) {
            const auto ru = static_cast<std::size_t>(r);
            if (fill[ru] >= lambda[r]) continue;
            if (r > 0 && fill[ru] >= fill[ru - 1]) continue;
            ++fill[ru];
            word.push_back(r);
            self(self);
            word.pop_back();
            --fill[ru];
        }
    };
    rec(rec);
    return out;
}

const SchurBlock& SchurBasis::block(const Partition& lambda) const {
    for (const auto& b : blocks)
        if (b.lambda == lambda) return b;
    throw std::out_of_range("SchurBasis: no block for " + lambda.to_string());
}

std::vector<Eigen::Index> SchurBasis::offsets() const {
    std::vector<Eigen::Index> out;
    Eigen::Index at = 0;
    for (const auto& b : blocks) {
        out.push_back(at);
        at += b.vectors.cols();
    }
    return out;
}

Eigen::MatrixXd SchurBasis::matrix() const {
    Eigen::Index cols = 0;
    for (const auto& b : blocks) cols += b.vectors.cols();
    Eigen::MatrixXd m(blocks.empty() ? 0 : blocks.front().vectors.rows(), cols);
    Eigen::Index at = 0;
    for (const auto& b : blocks) {
        m.middleCols(at, b.vectors.cols()) = b.vectors;
        at += b.vectors.cols();
    }
    return m;
}

SchurBasis build_schur_basis(int n, int d, std::uint64_t seed) {
    if (n < 1 || d < 1) throw std::invalid_argument("build_schur_basis: n and d must be positive");
    JucysMurphyTree tree(n, d);
    const std::uint64_t size = checked_power(d, n, kDenseLimit, "build_schur_basis");
    std::vector<std::vector<std::uint64_t>> adjacent;
    for (int k = 0; k + 1 < n; ++k) adjacent.push_back(index_map(transposition(n, k, k + 1), d, size));

    SchurBasis basis;
    basis.n = n;
    basis.d = d;
    basis.seed = seed;
    for (const auto& lambda : enumerate_partitions(n, d)) basis.blocks.push_back(build_block(lambda, tree, adjacent));
    return basis;
}

const StandardFormBlock& StandardForm::block(const Partition& lambda) const {
    for (const auto& b : blocks)
        if (b.lambda == lambda) return b;
    throw std::out_of_range("StandardForm: no block for " + lambda.to_string());
}

std::map<Partition, double> StandardForm::weights() const {
    std::map<Partition, double> w;
    for (const auto& b : blocks) w[b.lambda] = b.weight;
    return w;
}

Eigen::MatrixXcd tensor_power(const Eigen::MatrixXcd& coefficients, int n) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Ones(1, 1);
    for (int k = 0; k < n; ++k) {
        Eigen::MatrixXcd next(out.rows() * coefficients.rows(), out.cols() * coefficients.cols());
        for (Eigen::Index i = 0; i < out.rows(); ++i)
            for (Eigen::Index j = 0; j < out.cols(); ++j)
                next.block(i * coefficients.rows(), j * coefficients.cols(), coefficients.rows(), coefficients.cols()) =
                    out(i, j) * coefficients;
        out = std::move(next);
    }
    return out;
}

StandardForm standard_form(const StateVector& phi, int n) {
    if (phi.dims.size() != 2 || phi.dims[0] != phi.dims[1])
        throw std::invalid_argument("standard_form: φ must live on C^d ⊗ C^d");
    checked_power(phi.dims[0], 2 * n, kPermutationLimit, "standard_form");
    return standard_form(phi, n, build_schur_basis(n, phi.dims[0]));
}

StandardForm standard_form(const StateVector& phi, int n, const SchurBasis& basis) {
    if (phi.dims.size() != 2 || phi.dims[0] != phi.dims[1])
        throw std::invalid_argument("standard_form: φ must live on C^d ⊗ C^d");
    const int d = phi.dims[0];
    if (basis.n != n || basis.d != d) throw std::invalid_argument("standard_form: basis does not match (n, d)");
    checked_power(d, 2 * n, kPermutationLimit, "standard_form");
    if (std::abs(phi.norm() - 1.0) > 1e-10) throw std::invalid_argument("standard_form: φ must be normalized");

    const Eigen::MatrixXd b = basis.matrix();
    const Eigen::MatrixXcd c = b.transpose().cast<cplx>() * tensor_power(phi.coefficient_matrix(), n) * b.cast<cplx>();
    const auto offsets = basis.offsets();

    StandardForm form;
    form.n = n;
    form.d = d;
    Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Zero(c.rows(), c.cols());

    for (std::size_t i = 0; i < basis.blocks.size(); ++i) {
        const SchurBlock& blk = basis.blocks[i];
        const auto du = static_cast<Eigen::Index>(blk.dim_u);
        const auto dv = static_cast<Eigen::Index>(blk.dim_v);
        for (std::size_t j = 0; j < basis.blocks.size(); ++j) {
            if (i == j) continue;
            const auto cross = c.block(offsets[i], offsets[j], blk.vectors.cols(), basis.blocks[j].vectors.cols());
            if (cross.size() > 0) form.cross_block_max = std::max(form.cross_block_max, cross.cwiseAbs().maxCoeff());
        }

        const Eigen::MatrixXcd diag = c.block(offsets[i], offsets[i], du * dv, du * dv);
        // Regroup (u_A v_A),(u_B v_B) into (u_A u_B) × (v_A v_B).
        Eigen::MatrixXcd regrouped(du * du, dv * dv);
        for (Eigen::Index ua = 0; ua < du; ++ua)
            for (Eigen::Index va = 0; va < dv; ++va)
                for (Eigen::Index ub = 0; ub < du; ++ub)
                    for (Eigen::Index vb = 0; vb < dv; ++vb)
                        regrouped(ua * du + ub, va * dv + vb) = diag(ua * dv + va, ub * dv + vb);

        StandardFormBlock out;
        out.lambda = blk.lambda;
        out.weight = diag.squaredNorm();
        out.entangled = Eigen::MatrixXcd::Identity(dv, dv) / std::sqrt(static_cast<double>(dv));

        if (out.weight > 1e-24) {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(regrouped, Eigen::ComputeThinU | Eigen::ComputeThinV);
            const double sigma = svd.singularValues()(0);
            Eigen::VectorXcd left = svd.matrixU().col(0);
            Eigen::VectorXcd right = svd.matrixV().col(0).conjugate();
            // Gauge: the V-part overlaps the canonical Σ|vv⟩/√d_λ with a positive real.
            cplx overlap = 0.0;
            for (Eigen::Index v = 0; v < dv; ++v) overlap += right(v * dv + v);
            if (std::abs(overlap) > 1e-12) {
                const cplx phase = std::conj(overlap) / std::abs(overlap);
                right *= phase;
                left /= phase;
            }
            out.phi = Eigen::Map<Eigen::MatrixXcd>(left.data(), du, du).transpose() * (sigma / std::sqrt(out.weight));
            out.entangled = Eigen::Map<Eigen::MatrixXcd>(right.data(), dv, dv).transpose();

            const double amp = std::sqrt(out.weight);
            for (Eigen::Index ua = 0; ua < du; ++ua)
                for (Eigen::Index va = 0; va < dv; ++va)
                    for (Eigen::Index ub = 0; ub < du; ++ub)
                        for (Eigen::Index vb = 0; vb < dv; ++vb)
                            rebuilt(offsets[i] + ua * dv + va, offsets[i] + ub * dv + vb) =
                                amp * out.phi(ua, ub) * out.entangled(va, vb);
        }
        form.blocks.push_back(std::move(out));
    }

    form.reassembly_residual = (c - rebuilt).norm();
    if (form.reassembly_residual > 1e-8)
        throw BasisAlignmentError("standard_form: |φ⟩^⊗n does not factor over the Schur basis (residual " +
                                  std::to_string(form.reassembly_residual) + ")");
    return form;
}

std::map<Partition, double> weights_analytic(const ProbabilityVector& p, int n) {
    std::map<Partition, double> w;
    for (const auto& lambda : enumerate_partitions(n, p.size()))
        w[lambda] = static_cast<double>(dim_v(lambda)) * schur_polynomial(lambda, p);
    return w;
}

}  // namespace schurtele

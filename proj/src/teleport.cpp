#include "schurtele/teleport.hpp"

#include <cmath>

namespace schurtele {

Rng stream_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

Eigen::MatrixXcd sample_haar_unitary(int dim, Rng& rng) {
    if (dim < 1) throw std::invalid_argument("sample_haar_unitary: dim must be positive");
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd g(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) g(i, j) = cplx(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
    const Eigen::MatrixXcd& r = qr.matrixQR();
    for (int j = 0; j < dim; ++j) {
        const cplx diag = r(j, j);
        q.col(j) *= (std::abs(diag) > 0.0) ? diag / std::abs(diag) : cplx(1.0);
    }
    return q;
}

std::vector<Partition> good_set(int n, int d) {
    std::vector<Partition> out;
    for (const auto& lambda : enumerate_partitions(n, d))
        if (dim_u(lambda) <= dim_v(lambda)) out.push_back(lambda);
    return out;
}

double ideal_fidelity(const ProbabilityVector& p, int n) {
    double total = 0.0;
    for (const auto& lambda : good_set(n, p.size()))
        total += static_cast<double>(dim_v(lambda)) * schur_polynomial(lambda, p);
    return total;
}

double ideal_infidelity(const ProbabilityVector& p, int n) {
    double total = 0.0;
    for (const auto& lambda : enumerate_partitions(n, p.size()))
        if (dim_u(lambda) > dim_v(lambda)) total += static_cast<double>(dim_v(lambda)) * schur_polynomial(lambda, p);
    return total;
}

double fidelity_lower_bound(double p1, int n, int d) {
    if (d < 2) throw std::invalid_argument("fidelity_lower_bound: requires d >= 2");
    if (!(p1 > 0.0 && p1 <= 1.0)) throw std::invalid_argument("fidelity_lower_bound: p1 must lie in (0,1]");
    // d(2d−3)!/((d−2)!(d−1)!) = d · C(2d−3, d−1)
    double coefficient = d;
    for (int k = 1; k <= d - 1; ++k) coefficient *= static_cast<double>(d - 2 + k) / k;
    return 1.0 - coefficient * std::pow(n + 1.0, d * (d + 1) / 2.0) * std::pow(p1, n);
}

Eigen::MatrixXd TeleportPlan::good_projector() const {
    const auto size = basis->blocks.front().vectors.rows();
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(size, size);
    for (const auto& lambda : good) {
        const auto& v = basis->block(lambda).vectors;
        p += v * v.transpose();
    }
    return p;
}

OutcomeUnitaries TeleportPlan::sample_outcome(Rng& rng) const {
    OutcomeUnitaries out;
    for (const auto& lambda : good) out[lambda] = sample_haar_unitary(static_cast<int>(dim_v(lambda)), rng);
    return out;
}

Eigen::MatrixXcd TeleportPlan::recovery_operator(const OutcomeUnitaries& unitaries) const {
    const auto size = basis->blocks.front().vectors.rows();
    // Identity on the bad blocks, 1 ⊗ U^T on the good ones.
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(size, size);
    for (const auto& lambda : good) {
        const auto& blk = basis->block(lambda);
        const auto it = unitaries.find(lambda);
        if (it == unitaries.end()) throw std::invalid_argument("recovery_operator: missing unitary for " + lambda.to_string());
        const Eigen::MatrixXcd& u = it->second;
        const auto du = static_cast<Eigen::Index>(blk.dim_u);
        const auto dv = static_cast<Eigen::Index>(blk.dim_v);
        Eigen::MatrixXcd local = Eigen::MatrixXcd::Zero(du * dv, du * dv);
        for (Eigen::Index a = 0; a < du; ++a) local.block(a * dv, a * dv, dv, dv) = u.transpose();
        const Eigen::MatrixXcd v = blk.vectors.cast<cplx>();
        r += v * (local - Eigen::MatrixXcd::Identity(du * dv, du * dv)) * v.transpose();
    }
    return r;
}

Eigen::MatrixXcd TeleportPlan::embedding() const {
    const auto size = basis->blocks.front().vectors.rows();
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(size * size, size);
    for (const auto& lambda : good) {
        const auto& blk = basis->block(lambda);
        const auto du = blk.dim_u;
        const auto dv = blk.dim_v;
        const double norm = 1.0 / std::sqrt(static_cast<double>(dv));
        for (std::uint64_t ub = 0; ub < du; ++ub) {
            for (std::uint64_t v = 0; v < du; ++v) {
                Eigen::VectorXd image = Eigen::VectorXd::Zero(size * size);
                for (std::uint64_t vp = 0; vp < dv; ++vp) {
                    const auto left = blk.vectors.col(blk.column(v, vp));
                    const auto right = blk.vectors.col(blk.column(ub, vp));
                    for (Eigen::Index i = 0; i < size; ++i)
                        if (left(i) != 0.0) image.segment(i * size, size) += left(i) * right;
                }
                e += (norm * image).cast<cplx>() * blk.vectors.col(blk.column(ub, v)).transpose().cast<cplx>();
            }
        }
    }
    return e;
}

Eigen::MatrixXd TeleportPlan::embedding_support() const {
    const auto size = basis->blocks.front().vectors.rows();
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(size, size);
    for (const auto& lambda : good) {
        const auto& blk = basis->block(lambda);
        for (std::uint64_t ub = 0; ub < blk.dim_u; ++ub)
            for (std::uint64_t v = 0; v < blk.dim_u; ++v) {
                const auto col = blk.vectors.col(blk.column(ub, v));
                p += col * col.transpose();
            }
    }
    return p;
}

TeleportPlan make_teleport_plan(std::shared_ptr<const SchurBasis> basis) {
    if (!basis) throw std::invalid_argument("make_teleport_plan: null basis");
    std::uint64_t joint = 1;
    for (int i = 0; i < 2 * basis->n; ++i) {
        joint *= static_cast<std::uint64_t>(basis->d);
        if (joint > (std::uint64_t{1} << 14)) throw SizeLimitError("make_teleport_plan: d^{2n} exceeds 2^14");
    }
    TeleportPlan plan;
    plan.n = basis->n;
    plan.d = basis->d;
    plan.good = good_set(basis->n, basis->d);
    plan.basis = std::move(basis);
    return plan;
}

TeleportPlan make_teleport_plan(int n, int d, std::uint64_t seed) {
    std::uint64_t joint = 1;
    for (int i = 0; i < 2 * n; ++i) {
        joint *= static_cast<std::uint64_t>(d);
        if (joint > (std::uint64_t{1} << 14)) throw SizeLimitError("make_teleport_plan: d^{2n} exceeds 2^14");
    }
    return make_teleport_plan(std::make_shared<const SchurBasis>(build_schur_basis(n, d, seed)));
}

Eigen::RowVectorXcd kraus_operator(const TeleportPlan& plan, const OutcomeUnitaries& unitaries) {
    const auto size = plan.basis->blocks.front().vectors.rows();
    Eigen::RowVectorXcd a = Eigen::RowVectorXcd::Zero(size);
    for (const auto& lambda : plan.good) {
        const auto it = unitaries.find(lambda);
        if (it == unitaries.end()) throw std::invalid_argument("kraus_operator: missing unitary for " + lambda.to_string());
        const auto& blk = plan.basis->block(lambda);
        const Eigen::MatrixXcd& u = it->second;
        if (u.rows() != static_cast<Eigen::Index>(blk.dim_v) || u.cols() != static_cast<Eigen::Index>(blk.dim_v))
            throw std::invalid_argument("kraus_operator: unitary for " + lambda.to_string() + " has the wrong size");
        const double scale = std::sqrt(static_cast<double>(blk.dim_v));
        // ⟨e_i|⟨f_i|U† = Σ_v conj(U_{v,i}) ⟨e_i, f_v|
        for (std::uint64_t i = 0; i < blk.dim_u; ++i)
            for (std::uint64_t v = 0; v < blk.dim_v; ++v)
                a += scale * std::conj(u(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(i))) *
                     blk.vectors.col(blk.column(i, v)).transpose().cast<cplx>();
    }
    return a;
}

Eigen::MatrixXcd teleport_target(const StandardForm& form, const TeleportPlan& plan) {
    const auto& basis = *plan.basis;
    const auto size = basis.blocks.front().vectors.rows();
    Eigen::MatrixXcd target = Eigen::MatrixXcd::Zero(size, size);
    for (const auto& lambda : plan.good) {
        const auto& fb = form.block(lambda);
        if (fb.phi.size() == 0) continue;
        const auto& blk = basis.block(lambda);
        const Eigen::MatrixXcd v = blk.vectors.cast<cplx>();
        const auto du = static_cast<Eigen::Index>(blk.dim_u);
        const auto dv = static_cast<Eigen::Index>(blk.dim_v);
        Eigen::MatrixXcd local(du * dv, du * dv);
        for (Eigen::Index ua = 0; ua < du; ++ua)
            for (Eigen::Index va = 0; va < dv; ++va)
                for (Eigen::Index ub = 0; ub < du; ++ub)
                    for (Eigen::Index vb = 0; vb < dv; ++vb)
                        local(ua * dv + va, ub * dv + vb) = fb.phi(ua, ub) * fb.entangled(va, vb);
        target += std::sqrt(fb.weight) * v * local * v.transpose();
    }
    const double nrm = target.norm();
    if (nrm > 0.0) target /= nrm;
    return target;
}

TeleportResult run_teleport(const StateVector& phi, int n, std::uint64_t seed) {
    if (phi.dims.size() != 2 || phi.dims[0] != phi.dims[1])
        throw std::invalid_argument("run_teleport: φ must live on C^d ⊗ C^d");
    return run_teleport(phi, make_teleport_plan(n, phi.dims[0], seed), seed);
}

TeleportResult run_teleport(const StateVector& phi, const TeleportPlan& plan, std::uint64_t seed) {
    if (phi.dims.size() != 2 || phi.dims[0] != plan.d || phi.dims[1] != plan.d)
        throw std::invalid_argument("run_teleport: φ does not match the plan's local dimension");
    if (std::abs(phi.norm() - 1.0) > 1e-10) throw std::invalid_argument("run_teleport: φ must be normalized");

    TeleportResult res;
    res.n = plan.n;
    res.d = plan.d;
    res.seed = seed;
    res.schmidt = schmidt_spectrum(phi);
    res.good = plan.good;
    const ProbabilityVector p(res.schmidt);
    res.analytic_success_prob = ideal_fidelity(p, plan.n);
    res.bound = fidelity_lower_bound(p.largest(), plan.n, plan.d);
    res.transcript.protocol_id = "self-teleport";
    res.transcript.seed = seed;

    if (plan.good.empty()) {
        res.vacuous = true;
        return res;
    }

    // Step I: Alice projects onto ⊕_{A_n} W_{λ,A}.
    const Eigen::MatrixXcd state = tensor_power(phi.coefficient_matrix(), plan.n);
    const Eigen::MatrixXcd proj = plan.good_projector().cast<cplx>();
    Eigen::MatrixXcd projected = proj * state;
    res.success_prob = projected.squaredNorm();
    res.one_sided_residual = (projected - projected * proj).norm();
    if (res.success_prob < 1e-12)
        throw NothingToTeleport("run_teleport: nothing to teleport (step I success probability " +
                                std::to_string(res.success_prob) + ")");
    projected /= std::sqrt(res.success_prob);

    // Step II: Alice measures {A_U} and announces {U_λ}.
    Rng rng = stream_rng(seed, 1);
    const OutcomeUnitaries outcome = plan.sample_outcome(rng);
    const Eigen::RowVectorXcd kraus = kraus_operator(plan, outcome);
    const Eigen::VectorXcd bob = (kraus * projected).transpose();
    res.outcome_density = bob.squaredNorm();

    // Step III: Bob undoes U_λ and rebuilds |Φ_λ⟩ next to the teleported part.
    const Eigen::VectorXcd embedded = plan.embedding() * (plan.recovery_operator(outcome) * bob);
    const Eigen::VectorXcd final_vec = embedded / embedded.norm();
    const auto size = state.rows();
    res.final_state = Eigen::Map<const Eigen::MatrixXcd>(final_vec.data(), size, size).transpose();

    res.fidelity = res.analytic_success_prob;
    res.conditional_fidelity = std::norm((state.conjugate().cwiseProduct(res.final_state)).sum());
    res.unconditional_fidelity = res.success_prob * res.conditional_fidelity;

    const StandardForm form = standard_form(phi, plan.n, *plan.basis);
    const Eigen::MatrixXcd target = teleport_target(form, plan);
    res.target_fidelity = std::norm((target.conjugate().cwiseProduct(res.final_state)).sum());

    Message povm;
    povm.round = 0;
    povm.party = Party::Alice;
    povm.label = "povm";
    povm.probability = res.success_prob;
    povm.continuous = true;
    povm.density = res.outcome_density;
    for (const auto& [lambda, u] : outcome) povm.payload.push_back(u);
    Message recover;
    recover.round = 1;
    recover.party = Party::Bob;
    recover.label = "reconstruct";
    recover.probability = 1.0;
    res.transcript.messages = {povm, recover};
    res.transcript.final_state = final_vec.transpose();
    return res;
}

}  // namespace schurtele

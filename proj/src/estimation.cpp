#include "schurtele/estimation.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace schurtele {

namespace {

// Central difference with one Richardson level: (4 D(h/2) − D(h)) / 3.
template <typename F>
auto richardson(F&& f, const ParamPoint& theta, int i) {
    const double h = kFiniteDifferenceStep;
    auto central = [&](double step) {
        ParamPoint plus = theta;
        ParamPoint minus = theta;
        plus(i) += step;
        minus(i) -= step;
        return ((f(plus) - f(minus)) / (2.0 * step)).eval();
    };
    const auto coarse = central(h);
    const auto fine = central(h / 2.0);
    return ((4.0 * fine - coarse) / 3.0).eval();
}

void require_interior(const PureStateModel& model, const ParamPoint& theta) {
    if (theta.size() != model.param_dim) throw std::invalid_argument(model.name + ": parameter dimension mismatch");
    if (!model.interior(theta)) throw std::domain_error(model.name + ": θ is not interior to the model domain");
}

}  // namespace

int PureStateModel::hilbert_dim() const {
    int total = 1;
    for (int d : dims) total *= d;
    return total;
}

bool PureStateModel::interior(const ParamPoint& theta) const {
    const double margin = 2.0 * kFiniteDifferenceStep;
    for (int i = 0; i < param_dim; ++i) {
        if (lower.size() == param_dim && theta(i) - margin <= lower(i)) return false;
        if (upper.size() == param_dim && theta(i) + margin >= upper(i)) return false;
    }
    return true;
}

Eigen::VectorXcd state_derivative_numeric(const PureStateModel& model, const ParamPoint& theta, int i) {
    require_interior(model, theta);
    return richardson([&](const ParamPoint& t) { return model.state(t); }, theta, i);
}

Eigen::VectorXcd state_derivative(const PureStateModel& model, const ParamPoint& theta, int i) {
    require_interior(model, theta);
    if (model.derivative) return model.derivative(theta, i);
    return state_derivative_numeric(model, theta, i);
}

Eigen::VectorXcd horizontal_lift(const PureStateModel& model, const ParamPoint& theta, int i) {
    const Eigen::VectorXcd phi = model.state(theta);
    const Eigen::VectorXcd dphi = state_derivative(model, theta, i);
    return 0.5 * (dphi - phi.dot(dphi) * phi);
}

std::vector<double> kahler_betas(const Eigen::MatrixXd& j_s, const Eigen::MatrixXd& j_tilde, int* rank) {
    const auto dim = j_s.rows();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (j_s + j_s.transpose()));
    const double largest = eig.eigenvalues().size() ? eig.eigenvalues().maxCoeff() : 0.0;
    Eigen::MatrixXd inv_sqrt = Eigen::MatrixXd::Zero(dim, dim);
    int kept = 0;
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double ev = eig.eigenvalues()(k);
        if (largest > 0.0 && ev > 1e-10 * largest) {
            inv_sqrt += eig.eigenvectors().col(k) * eig.eigenvectors().col(k).transpose() / std::sqrt(ev);
            ++kept;
        }
    }
    if (rank) *rank = kept;
    const Eigen::MatrixXd k = inv_sqrt * j_tilde * inv_sqrt;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(k);
    std::vector<double> sv(svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size());
    std::sort(sv.begin(), sv.end(), std::greater<>());
    std::vector<double> betas;
    // √(1 − β²) magnifies rounding near β = 1, so snap values within 1e-12 of 0 or 1.
    for (std::size_t j = 0; j < sv.size(); j += 2) {
        double beta = sv[j];
        if (std::abs(beta - 1.0) < 1e-12) beta = 1.0;
        if (beta < 1e-12) beta = 0.0;
        betas.push_back(beta);
    }
    return betas;
}

FisherData fisher_data(const PureStateModel& model, const ParamPoint& theta) {
    const int dim = model.param_dim;
    std::vector<Eigen::VectorXcd> lifts;
    for (int i = 0; i < dim; ++i) lifts.push_back(horizontal_lift(model, theta, i));

    FisherData out;
    out.j_s.resize(dim, dim);
    out.j_tilde.resize(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const cplx g = lifts[static_cast<std::size_t>(i)].dot(lifts[static_cast<std::size_t>(j)]);
            out.j_s(i, j) = g.real();
            out.j_tilde(i, j) = g.imag();
        }
    }
    out.j_s = (0.5 * (out.j_s + out.j_s.transpose())).eval();
    out.j_tilde = (0.5 * (out.j_tilde - out.j_tilde.transpose())).eval();
    out.betas = kahler_betas(out.j_s, out.j_tilde, &out.rank);
    out.degenerate = out.rank < dim;
    return out;
}

ExpansionCheck bures_expansion_check(const PureStateModel& model, const ParamPoint& theta, const ParamPoint& dtheta) {
    if (dtheta.norm() > 1e-3) throw std::invalid_argument("bures_expansion_check: displacement must satisfy ‖dθ‖ ≤ 1e-3");
    ExpansionCheck out;
    if (dtheta.norm() == 0.0) return out;
    const Eigen::VectorXcd a = model.state(theta);
    const Eigen::VectorXcd b = model.state(theta + dtheta);
    out.lhs = 1.0 - std::norm(a.dot(b));
    const FisherData fd = fisher_data(model, theta);
    out.rhs = 4.0 * dtheta.dot(fd.j_s * dtheta);
    return out;
}

double weighted_cr_value(std::span<const double> betas) {
    double total = 0.0;
    for (double b : betas) {
        if (b < 0.0 || b > 1.0 + 1e-9) throw std::invalid_argument("weighted_cr_value: β outside [0,1]");
        const double clipped = std::min(b, 1.0);
        total += 4.0 / (1.0 + std::sqrt(1.0 - clipped * clipped));
    }
    return total;
}

void Povm::validate() const {
    if (elements.empty()) throw std::invalid_argument("Povm: no elements");
    const auto dim = elements.front().rows();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& e : elements) {
        if (e.rows() != dim || e.cols() != dim) throw std::invalid_argument("Povm: element size mismatch");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (e + e.adjoint()));
        if (eig.eigenvalues().minCoeff() < -1e-12) throw std::invalid_argument("Povm: element is not positive semidefinite");
        sum += e;
    }
    if ((sum - Eigen::MatrixXcd::Identity(dim, dim)).norm() > 1e-10)
        throw std::invalid_argument("Povm: elements do not sum to the identity");
}

Povm Povm::projective(const Eigen::MatrixXcd& basis_columns) {
    Povm p;
    for (Eigen::Index k = 0; k < basis_columns.cols(); ++k) {
        p.elements.push_back(basis_columns.col(k) * basis_columns.col(k).adjoint());
        p.labels.push_back(std::to_string(k));
    }
    return p;
}

MeasurementFisher measurement_fisher(const Povm& povm, const PureStateModel& model, const ParamPoint& theta) {
    povm.validate();
    require_interior(model, theta);
    const int dim = model.param_dim;
    const auto count = static_cast<Eigen::Index>(povm.elements.size());
    auto probs = [&](const ParamPoint& t) {
        const Eigen::VectorXcd phi = model.state(t);
        Eigen::VectorXd p(count);
        for (Eigen::Index x = 0; x < count; ++x) p(x) = phi.dot(povm.elements[static_cast<std::size_t>(x)] * phi).real();
        return p;
    };
    const Eigen::VectorXd p0 = probs(theta);
    Eigen::MatrixXd grads(count, dim);
    for (int i = 0; i < dim; ++i) grads.col(i) = richardson(probs, theta, i);

    MeasurementFisher out;
    out.j = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index x = 0; x < count; ++x) {
        if (p0(x) < 1e-12) {
            if (grads.row(x).norm() > 1e-8) out.boundary_warning = true;
            continue;
        }
        out.j += grads.row(x).transpose() * grads.row(x) / p0(x);
    }
    return out;
}

PureStateModel product_model(const PureStateModel& a, const PureStateModel& b) {
    if (a.param_dim != b.param_dim) throw std::invalid_argument("product_model: parameter dimensions differ");
    PureStateModel m;
    m.name = a.name + "*" + b.name;
    m.param_dim = a.param_dim;
    m.dims = a.dims;
    m.dims.insert(m.dims.end(), b.dims.begin(), b.dims.end());
    m.lower = a.lower.cwiseMax(b.lower);
    m.upper = a.upper.cwiseMin(b.upper);
    auto kron = [](const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
        Eigen::VectorXcd out(x.size() * y.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
        return out;
    };
    m.state = [a, b, kron](const ParamPoint& t) { return kron(a.state(t), b.state(t)); };
    if (a.derivative && b.derivative) {
        m.derivative = [a, b, kron](const ParamPoint& t, int i) {
            return (kron(a.derivative(t, i), b.state(t)) + kron(a.state(t), b.derivative(t, i))).eval();
        };
    }
    return m;
}

BetaPair beta_combination(double a, double b, double beta_a, double beta_b) {
    if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("beta_combination: a and b must be positive");
    return {(a * beta_a + b * beta_b) / (a + b), (a * beta_a - b * beta_b) / (a + b)};
}

GapReport locc_gap(double a, double b, double beta_a, double beta_b, Sign sign) {
    const BetaPair pair = beta_combination(a, b, beta_a, beta_b);
    GapReport out;
    out.beta = (sign == Sign::Plus) ? pair.plus : pair.minus;
    out.global_best = 1.0 + std::sqrt(std::max(0.0, 1.0 - out.beta * out.beta));
    out.locc_best = (a * (1.0 + std::sqrt(std::max(0.0, 1.0 - beta_a * beta_a))) +
                     b * (1.0 + std::sqrt(std::max(0.0, 1.0 - beta_b * beta_b)))) /
                    (a + b);
    out.gap = out.global_best - out.locc_best;
    return out;
}

DetectionCheck detection_condition(std::span<const StateVector> states) {
    if (states.size() < 2) throw std::invalid_argument("detection_condition: needs at least two states");
    DetectionCheck out;
    for (std::size_t i = 0; i < states.size(); ++i) {
        out.rhs = std::max(out.rhs, schmidt_spectrum(states[i]).front());
        for (std::size_t j = i + 1; j < states.size(); ++j) {
            if (states[i].amplitudes.size() != states[j].amplitudes.size())
                throw std::invalid_argument("detection_condition: states live on different spaces");
            out.lhs = std::max(out.lhs, std::norm(states[i].amplitudes.dot(states[j].amplitudes)));
        }
    }
    out.holds = out.lhs >= out.rhs;
    return out;
}

}  // namespace schurtele

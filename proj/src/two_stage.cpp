#include "schurtele/two_stage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "schurtele/random.hpp"

namespace schurtele {

std::string EstimationReport::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "seed,trial,estimate,stage1_estimate\n";
    for (std::size_t t = 0; t < estimates.size(); ++t) {
        os << seed << ',' << t << ',' << estimates[t] << ',';
        if (t < stage1_estimates.size()) os << stage1_estimates[t];
        os << '\n';
    }
    return os.str();
}

Eigen::MatrixXcd optimal_local_basis(const PureStateModel& model, double theta) {
    const double margin = 4.0 * kFiniteDifferenceStep;
    const double t = std::clamp(theta, model.lower(0) + margin, model.upper(0) - margin);
    const ParamPoint p = ParamPoint::Constant(1, t);
    const Eigen::VectorXcd phi = model.state(p).normalized();
    const Eigen::VectorXcd dphi = state_derivative(model, p, 0);
    Eigen::VectorXcd h = dphi - phi.dot(dphi) * phi;
    const double norm = h.norm();
    if (norm < 1e-12) throw EstimationFailure("optimal_local_basis: model is stationary at θ");
    h /= norm;
    Eigen::MatrixXcd basis(phi.size(), 2);
    basis.col(0) = (phi + h) / std::sqrt(2.0);
    basis.col(1) = (phi - h) / std::sqrt(2.0);
    return basis;
}

namespace {

double log_likelihood(const std::vector<Dataset>& data, double theta) {
    const ParamPoint p = ParamPoint::Constant(1, theta);
    double total = 0.0;
    for (const auto& d : data) {
        const Eigen::VectorXcd phi = d.model->state(p);
        for (std::size_t k = 0; k < d.counts.size(); ++k) {
            if (d.counts[k] == 0) continue;
            const double prob = std::norm(d.basis.col(static_cast<Eigen::Index>(k)).dot(phi));
            total += d.counts[k] * std::log(std::max(prob, 1e-300));
        }
    }
    return total;
}

}  // namespace

double maximum_likelihood(const std::vector<Dataset>& data, double lower, double upper, const TwoStageOptions& options) {
    if (!(upper > lower)) throw std::invalid_argument("maximum_likelihood: empty parameter interval");
    int points = options.grid_points;
    for (int attempt = 0; attempt <= options.max_retries; ++attempt, points *= 4) {
        const double step = (upper - lower) / points;
        double best = -std::numeric_limits<double>::infinity();
        double worst = std::numeric_limits<double>::infinity();
        int best_k = 0;
        for (int k = 0; k < points; ++k) {
            const double value = log_likelihood(data, lower + (k + 0.5) * step);
            if (value > best) {
                best = value;
                best_k = k;
            }
            worst = std::min(worst, value);
        }
        if (best - worst <= 1e-12 * (1.0 + std::abs(best))) continue;

        // Golden-section search on the two cells around the grid maximum.
        double a = std::max(lower, lower + (best_k - 0.5) * step);
        double b = std::min(upper, lower + (best_k + 1.5) * step);
        const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - ratio * (b - a);
        double d = a + ratio * (b - a);
        double fc = log_likelihood(data, c);
        double fd = log_likelihood(data, d);
        for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
            if (fc >= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - ratio * (b - a);
                fc = log_likelihood(data, c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + ratio * (b - a);
                fd = log_likelihood(data, d);
            }
        }
        return 0.5 * (a + b);
    }
    throw EstimationFailure("maximum_likelihood: likelihood is flat on every grid");
}

namespace {

std::vector<int> sample_counts(const PureStateModel& model, const Eigen::MatrixXcd& basis, double theta, int copies,
                               Rng& rng) {
    const Eigen::VectorXcd phi = model.state(ParamPoint::Constant(1, theta)).normalized();
    const double p0 = std::clamp(std::norm(basis.col(0).dot(phi)), 0.0, 1.0);
    std::binomial_distribution<int> draw(copies, p0);
    const int first = draw(rng);
    return {first, copies - first};
}

void require_qubit_scalar(const PureStateModel& m) {
    if (m.param_dim != 1 || m.hilbert_dim() != 2)
        throw std::invalid_argument("two_stage_estimate: " + m.name + " is not a one-parameter qubit family");
}

double quantum_fisher(const PureStateModel& m, double theta) {
    const ParamPoint p = ParamPoint::Constant(1, theta);
    const Eigen::VectorXcd phi = m.state(p);
    const Eigen::VectorXcd dphi = state_derivative(m, p, 0);
    return 4.0 * (dphi - phi.dot(dphi) * phi).squaredNorm();
}

}  // namespace

EstimationReport two_stage_estimate(const PureStateModel& model_a, const PureStateModel& model_b, double theta,
                                    int n, int trials, std::uint64_t seed, const TwoStageOptions& options) {
    require_qubit_scalar(model_a);
    require_qubit_scalar(model_b);
    if (n < 25) throw std::invalid_argument("two_stage_estimate: need n ≥ 25");
    if (trials < 0) throw std::invalid_argument("two_stage_estimate: negative trial count");
    const double lower = std::max(model_a.lower(0), model_b.lower(0));
    const double upper = std::min(model_a.upper(0), model_b.upper(0));
    if (!(theta > lower && theta < upper)) throw std::domain_error("two_stage_estimate: θ outside the common domain");

    EstimationReport rep;
    rep.n_copies = n;
    rep.trials = trials;
    rep.adaptive = options.adaptive;
    rep.theta = theta;
    rep.seed = seed;
    rep.stage1_copies = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    while ((rep.stage1_copies - 1) * (rep.stage1_copies - 1) >= n) --rep.stage1_copies;
    while (rep.stage1_copies * rep.stage1_copies < n) ++rep.stage1_copies;
    rep.fisher = quantum_fisher(model_a, theta) + quantum_fisher(model_b, theta);
    rep.reference = 1.0 / rep.fisher;
    if (trials == 0) return rep;

    const Eigen::MatrixXcd z = Eigen::MatrixXcd::Identity(2, 2);
    const int m = options.adaptive ? rep.stage1_copies : n;
    double sum = 0.0;
    double sq = 0.0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = stream_rng(seed, static_cast<std::uint64_t>(t));
        std::vector<Dataset> data;
        data.push_back({&model_a, z, sample_counts(model_a, z, theta, m, rng)});
        data.push_back({&model_b, z, sample_counts(model_b, z, theta, m, rng)});
        if (options.adaptive) {
            const double rough = maximum_likelihood(data, lower, upper, options);
            rep.stage1_estimates.push_back(rough);
            const Eigen::MatrixXcd basis_a = optimal_local_basis(model_a, rough);
            const Eigen::MatrixXcd basis_b = optimal_local_basis(model_b, rough);
            data.push_back({&model_a, basis_a, sample_counts(model_a, basis_a, theta, n - m, rng)});
            data.push_back({&model_b, basis_b, sample_counts(model_b, basis_b, theta, n - m, rng)});
        }
        const double estimate = maximum_likelihood(data, lower, upper, options);
        rep.estimates.push_back(estimate);
        sum += estimate;
        sq += (estimate - theta) * (estimate - theta);
    }
    rep.mean = sum / trials;
    rep.mse = sq / trials;
    rep.n_mse = n * rep.mse;
    return rep;
}

}  // namespace schurtele

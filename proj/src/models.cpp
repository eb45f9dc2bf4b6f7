#include "schurtele/models.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <json.hpp>

namespace schurtele {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

ParamPoint point(std::initializer_list<double> values) {
    ParamPoint p(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double v : values) p(i++) = v;
    return p;
}

Eigen::MatrixXcd random_hermitian(int dim, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd g(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) g(i, j) = cplx(gauss(rng), gauss(rng));
    return 0.5 * (g + g.adjoint());
}

}  // namespace

PureStateModel qubit_full_model() {
    PureStateModel m;
    m.name = "qubit-full";
    m.param_dim = 2;
    m.dims = {2};
    m.lower = point({0.0, -kPi});
    m.upper = point({kPi, kPi});
    m.state = [](const ParamPoint& t) {
        Eigen::VectorXcd v(2);
        v << std::exp(-kI * t(1) / 2.0) * std::cos(t(0) / 2.0), std::exp(kI * t(1) / 2.0) * std::sin(t(0) / 2.0);
        return v;
    };
    m.derivative = [](const ParamPoint& t, int i) {
        Eigen::VectorXcd v(2);
        const cplx e_minus = std::exp(-kI * t(1) / 2.0);
        const cplx e_plus = std::exp(kI * t(1) / 2.0);
        if (i == 0) {
            v << -0.5 * e_minus * std::sin(t(0) / 2.0), 0.5 * e_plus * std::cos(t(0) / 2.0);
        } else {
            v << -0.5 * kI * e_minus * std::cos(t(0) / 2.0), 0.5 * kI * e_plus * std::sin(t(0) / 2.0);
        }
        return v;
    };
    return m;
}

PureStateModel qubit_conjugate_model() {
    PureStateModel base = qubit_full_model();
    PureStateModel m = base;
    m.name = "qubit-conjugate";
    m.state = [base](const ParamPoint& t) { return base.state(t).conjugate().eval(); };
    m.derivative = [base](const ParamPoint& t, int i) { return base.derivative(t, i).conjugate().eval(); };
    return m;
}

PureStateModel real_amplitude_model() {
    PureStateModel m;
    m.name = "real-amplitude";
    m.param_dim = 2;
    m.dims = {3};
    m.lower = point({0.0, -kPi});
    m.upper = point({kPi, kPi});
    m.state = [](const ParamPoint& t) {
        Eigen::VectorXcd v(3);
        v << std::cos(t(0)), std::sin(t(0)) * std::cos(t(1)), std::sin(t(0)) * std::sin(t(1));
        return v;
    };
    m.derivative = [](const ParamPoint& t, int i) {
        Eigen::VectorXcd v(3);
        if (i == 0) {
            v << -std::sin(t(0)), std::cos(t(0)) * std::cos(t(1)), std::cos(t(0)) * std::sin(t(1));
        } else {
            v << 0.0, -std::sin(t(0)) * std::sin(t(1)), std::sin(t(0)) * std::cos(t(1));
        }
        return v;
    };
    return m;
}

PureStateModel qubit_polar_model() {
    PureStateModel m;
    m.name = "qubit-polar";
    m.param_dim = 1;
    m.dims = {2};
    m.lower = point({0.0});
    m.upper = point({kPi});
    m.state = [](const ParamPoint& t) {
        Eigen::VectorXcd v(2);
        v << std::cos(t(0) / 2.0), std::sin(t(0) / 2.0);
        return v;
    };
    m.derivative = [](const ParamPoint& t, int) {
        Eigen::VectorXcd v(2);
        v << -0.5 * std::sin(t(0) / 2.0), 0.5 * std::cos(t(0) / 2.0);
        return v;
    };
    return m;
}

PureStateModel qubit_phase_model() {
    PureStateModel m;
    m.name = "qubit-phase";
    m.param_dim = 1;
    m.dims = {2};
    m.lower = point({0.0});
    m.upper = point({kPi});
    const double s = 1.0 / std::sqrt(2.0);
    m.state = [s](const ParamPoint& t) {
        Eigen::VectorXcd v(2);
        v << s * std::exp(-kI * t(0) / 2.0), s * std::exp(kI * t(0) / 2.0);
        return v;
    };
    m.derivative = [s](const ParamPoint& t, int) {
        Eigen::VectorXcd v(2);
        v << -0.5 * kI * s * std::exp(-kI * t(0) / 2.0), 0.5 * kI * s * std::exp(kI * t(0) / 2.0);
        return v;
    };
    return m;
}

PureStateModel random_qubit_model(Rng& rng, int param_dim) {
    struct Generator {
        Eigen::MatrixXcd vectors;
        Eigen::VectorXd energies;
        Eigen::MatrixXcd hamiltonian;
        Eigen::MatrixXcd evolve(double t) const {
            Eigen::VectorXcd phases(energies.size());
            for (Eigen::Index k = 0; k < energies.size(); ++k) phases(k) = std::exp(-kI * energies(k) * t);
            return vectors * phases.asDiagonal() * vectors.adjoint();
        }
    };
    std::vector<Generator> gens;
    for (int k = 0; k < param_dim; ++k) {
        Generator g;
        g.hamiltonian = random_hermitian(2, rng);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(g.hamiltonian);
        g.vectors = eig.eigenvectors();
        g.energies = eig.eigenvalues();
        gens.push_back(std::move(g));
    }
    const Eigen::VectorXcd psi0 = sample_haar_unitary(2, rng).col(0);

    PureStateModel m;
    m.name = "random-qubit";
    m.param_dim = param_dim;
    m.dims = {2};
    m.lower = ParamPoint::Constant(param_dim, -3.0);
    m.upper = ParamPoint::Constant(param_dim, 3.0);
    m.state = [gens, psi0](const ParamPoint& t) {
        Eigen::VectorXcd v = psi0;
        for (Eigen::Index k = static_cast<Eigen::Index>(gens.size()) - 1; k >= 0; --k)
            v = gens[static_cast<std::size_t>(k)].evolve(t(k)) * v;
        return v;
    };
    m.derivative = [gens, psi0](const ParamPoint& t, int i) {
        Eigen::VectorXcd v = psi0;
        for (Eigen::Index k = static_cast<Eigen::Index>(gens.size()) - 1; k >= 0; --k) {
            const auto& g = gens[static_cast<std::size_t>(k)];
            v = g.evolve(t(k)) * v;
            if (k == i) v = (-kI * g.hamiltonian * v).eval();
        }
        return v;
    };
    return m;
}

std::vector<std::string> model_names() {
    return {"qubit-full", "qubit-conjugate", "real-amplitude", "qubit-polar", "qubit-phase"};
}

PureStateModel model_by_name(const std::string& name) {
    if (name == "qubit-full") return qubit_full_model();
    if (name == "qubit-conjugate") return qubit_conjugate_model();
    if (name == "real-amplitude") return real_amplitude_model();
    if (name == "qubit-polar") return qubit_polar_model();
    if (name == "qubit-phase") return qubit_phase_model();
    throw std::invalid_argument("unknown model '" + name + "'");
}

std::pair<PureStateModel, PureStateModel> anticopy_model() { return {qubit_full_model(), qubit_conjugate_model()}; }

PureStateModel tabulated_model_from_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    const auto grid = doc.at("grid").get<std::vector<double>>();
    const auto& amps_json = doc.at("amplitudes");
    if (grid.size() < 3) throw std::invalid_argument("tabulated model: need at least three grid points");
    if (amps_json.size() != grid.size()) throw std::invalid_argument("tabulated model: one amplitude vector per grid point");
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] > grid[k - 1])) throw std::invalid_argument("tabulated model: grid must be increasing");

    std::vector<Eigen::VectorXcd> samples;
    for (const auto& row : amps_json) {
        Eigen::VectorXcd v(static_cast<Eigen::Index>(row.size()));
        for (std::size_t i = 0; i < row.size(); ++i)
            v(static_cast<Eigen::Index>(i)) = cplx(row[i].at(0).get<double>(), row[i].at(1).get<double>());
        if (!samples.empty() && v.size() != samples.front().size())
            throw std::invalid_argument("tabulated model: amplitude vectors differ in length");
        samples.push_back(v.normalized());
    }

    // Catmull–Rom tangents on a non-uniform grid.
    const std::size_t count = grid.size();
    std::vector<Eigen::VectorXcd> tangents(count);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t lo = (k == 0) ? 0 : k - 1;
        const std::size_t hi = (k + 1 == count) ? k : k + 1;
        tangents[k] = (samples[hi] - samples[lo]) / (grid[hi] - grid[lo]);
    }

    PureStateModel m;
    m.name = doc.value("name", std::string("tabulated"));
    m.param_dim = 1;
    m.dims = doc.contains("dims") ? doc.at("dims").get<std::vector<int>>()
                                  : std::vector<int>{static_cast<int>(samples.front().size())};
    m.lower = ParamPoint::Constant(1, grid.front());
    m.upper = ParamPoint::Constant(1, grid.back());
    m.state = [grid, samples, tangents](const ParamPoint& t) {
        const double x = t(0);
        auto it = std::upper_bound(grid.begin(), grid.end(), x);
        std::size_t k = (it == grid.begin()) ? 0 : static_cast<std::size_t>(it - grid.begin()) - 1;
        k = std::min(k, grid.size() - 2);
        const double h = grid[k + 1] - grid[k];
        const double s = (x - grid[k]) / h;
        const double h00 = 2 * s * s * s - 3 * s * s + 1;
        const double h10 = s * s * s - 2 * s * s + s;
        const double h01 = -2 * s * s * s + 3 * s * s;
        const double h11 = s * s * s - s * s;
        Eigen::VectorXcd v = h00 * samples[k] + h10 * h * tangents[k] + h01 * samples[k + 1] + h11 * h * tangents[k + 1];
        return (v / v.norm()).eval();
    };
    return m;
}

PureStateModel load_tabulated_model(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open model file " + path.string());
    std::stringstream buf;
    buf << is.rdbuf();
    return tabulated_model_from_json(buf.str());
}

}  // namespace schurtele

#include "schurtele/locc_runtime.hpp"

#include <cmath>
#include <cstring>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace schurtele {

const char* party_name(Party party) { return party == Party::Alice ? "A" : "B"; }

double LoccTranscript::path_probability() const {
    double p = 1.0;
    for (const auto& m : messages) p *= m.probability;
    return p;
}

std::uint64_t state_hash(const Eigen::MatrixXcd& state) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const void* data, std::size_t len) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= bytes[i];
            h *= 1099511628211ULL;
        }
    };
    const std::int64_t rows = state.rows();
    const std::int64_t cols = state.cols();
    mix(&rows, sizeof rows);
    mix(&cols, sizeof cols);
    mix(state.data(), static_cast<std::size_t>(state.size()) * sizeof(cplx));
    return h;
}

std::string transcript_to_json(const LoccTranscript& transcript) {
    nlohmann::ordered_json doc;
    doc["protocol_id"] = transcript.protocol_id;
    doc["seed"] = transcript.seed;
    auto rounds = nlohmann::ordered_json::array();
    for (const auto& m : transcript.messages) {
        nlohmann::ordered_json r;
        r["round"] = m.round;
        r["party"] = party_name(m.party);
        r["outcome"] = m.label;
        r["prob"] = m.probability;
        if (m.continuous) r["density"] = m.density;
        rounds.push_back(r);
    }
    doc["rounds"] = rounds;
    std::ostringstream hash;
    hash << std::hex << std::setw(16) << std::setfill('0') << state_hash(transcript.final_state);
    doc["final_state_hash"] = hash.str();
    return doc.dump(2);
}

double Instrument::completeness_defect() const {
    Eigen::Index dim = -1;
    if (!branches.empty()) dim = branches.front().kraus.cols();
    else if (continuous) dim = continuous->total_effect.cols();
    if (dim < 0) return 1.0;
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& b : branches) {
        if (b.kraus.cols() != dim) return INFINITY;
        sum += b.kraus.adjoint() * b.kraus;
    }
    if (continuous) {
        if (continuous->total_effect.rows() != dim || continuous->total_effect.cols() != dim) return INFINITY;
        sum += continuous->total_effect;
    }
    return (sum - Eigen::MatrixXcd::Identity(dim, dim)).operatorNorm();
}

void Instrument::validate(Eigen::Index input_dim) const {
    if (branches.empty() && !continuous) throw std::invalid_argument("instrument has no outcomes");
    for (const auto& b : branches)
        if (b.kraus.cols() != input_dim)
            throw std::invalid_argument("instrument branch '" + b.label + "' acts on the wrong dimension");
    if (continuous && continuous->total_effect.cols() != input_dim)
        throw std::invalid_argument("continuous family acts on the wrong dimension");
    const double defect = completeness_defect();
    if (!(defect <= 1e-10))
        throw std::invalid_argument("instrument is not trace preserving (defect " + std::to_string(defect) + ")");
}

namespace {

Eigen::MatrixXcd apply(Party party, const Eigen::MatrixXcd& kraus, const Eigen::MatrixXcd& state) {
    return party == Party::Alice ? (kraus * state).eval() : (state * kraus.transpose()).eval();
}

Eigen::Index local_dim(Party party, const Eigen::MatrixXcd& state) {
    return party == Party::Alice ? state.rows() : state.cols();
}

// ⟨ψ|E ⊗ 1|ψ⟩ (Alice) or ⟨ψ|1 ⊗ E|ψ⟩ (Bob) for a coefficient matrix.
double effect_weight(Party party, const Eigen::MatrixXcd& effect, const Eigen::MatrixXcd& state) {
    if (party == Party::Alice) return (state.adjoint() * effect * state).trace().real();
    return (state.conjugate().adjoint() * effect * state.transpose()).trace().real();
}

Message make_message(int round, Party party, const Branch& branch, double probability) {
    Message m;
    m.round = round;
    m.party = party;
    m.label = branch.label;
    m.probability = probability;
    m.payload = branch.payload;
    return m;
}

Eigen::MatrixXcd split_input(const StateVector& input, int alice_factors) {
    if (alice_factors < 0 || alice_factors > static_cast<int>(input.dims.size()))
        throw std::invalid_argument("run_locc: alice_factors out of range");
    Eigen::Index rows = 1;
    for (int k = 0; k < alice_factors; ++k) rows *= input.dims[static_cast<std::size_t>(k)];
    const Eigen::Index cols = input.amplitudes.size() / rows;
    // Row-major split: the leading factors index rows.
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = input.amplitudes(r * cols + c);
    return m;
}

}  // namespace

LoccTranscript run_locc(const LoccProtocol& protocol, const Eigen::MatrixXcd& coefficients, std::uint64_t seed) {
    LoccTranscript out;
    out.protocol_id = protocol.id;
    out.seed = seed;
    const double norm = coefficients.norm();
    if (!(norm > 0.0)) throw std::invalid_argument("run_locc: zero input state");
    Eigen::MatrixXcd state = coefficients / norm;
    Rng selector = stream_rng(seed, 0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    for (std::size_t r = 0; r < protocol.rounds.size(); ++r) {
        const Round& round = protocol.rounds[r];
        const int index = static_cast<int>(r);
        const Instrument inst = round.instrument(out.messages);
        inst.validate(local_dim(round.party, state));

        std::vector<double> weights;
        double total = 0.0;
        for (const auto& b : inst.branches) {
            weights.push_back(apply(round.party, b.kraus, state).squaredNorm());
            total += weights.back();
        }
        double continuous_weight = 0.0;
        if (inst.continuous) {
            continuous_weight = std::max(0.0, effect_weight(round.party, inst.continuous->total_effect, state));
            total += continuous_weight;
        }

        const double u = uniform(selector) * total;
        double acc = 0.0;
        std::optional<std::size_t> chosen;
        for (std::size_t k = 0; k < weights.size(); ++k) {
            if (weights[k] <= 0.0) continue;
            acc += weights[k];
            if (u < acc) {
                chosen = k;
                break;
            }
        }
        if (!chosen && !(inst.continuous && continuous_weight > 0.0)) {
            // Rounding pushed u past the last positive weight.
            for (std::size_t k = weights.size(); k-- > 0;)
                if (weights[k] > 0.0) {
                    chosen = k;
                    break;
                }
        }

        if (chosen) {
            const Branch& b = inst.branches[*chosen];
            const double p = weights[*chosen] / total;
            state = apply(round.party, b.kraus, state);
            state /= state.norm();
            out.messages.push_back(make_message(index, round.party, b, p));
        } else {
            Rng sampler = stream_rng(seed, 1 + r);
            const Branch b = inst.continuous->sample(sampler);
            if (b.kraus.cols() != local_dim(round.party, state))
                throw std::invalid_argument("continuous outcome acts on the wrong dimension");
            state = apply(round.party, b.kraus, state);
            const double weight = state.squaredNorm();
            Message m = make_message(index, round.party, b, continuous_weight / total);
            m.label = b.label.empty() ? inst.continuous->label : b.label;
            m.continuous = true;
            m.density = weight / continuous_weight;
            if (!(weight > 0.0)) throw std::runtime_error("run_locc: sampled continuous outcome annihilates the state");
            state /= std::sqrt(weight);
            out.messages.push_back(std::move(m));
        }
    }
    out.final_state = state;
    return out;
}

LoccTranscript run_locc(const LoccProtocol& protocol, const StateVector& input, std::uint64_t seed) {
    return run_locc(protocol, split_input(input, protocol.alice_factors), seed);
}

namespace {

void enumerate_into(const LoccProtocol& protocol, std::size_t r, History& history, const Eigen::MatrixXcd& state,
                    double probability, std::vector<PathRecord>& out) {
    if (r == protocol.rounds.size()) {
        if (out.size() >= kMaxPaths) throw std::length_error("enumerate_paths: more than 1e5 paths");
        out.push_back({history, probability, state});
        return;
    }
    const Round& round = protocol.rounds[r];
    const Instrument inst = round.instrument(history);
    if (inst.continuous) throw std::invalid_argument("enumerate_paths: continuous outcomes cannot be enumerated");
    inst.validate(local_dim(round.party, state));
    const double before = state.squaredNorm();
    for (const auto& b : inst.branches) {
        const Eigen::MatrixXcd next = apply(round.party, b.kraus, state);
        const double after = next.squaredNorm();
        const double conditional = before > 0.0 ? after / before : 0.0;
        history.push_back(make_message(static_cast<int>(r), round.party, b, conditional));
        enumerate_into(protocol, r + 1, history, next, after, out);
        history.pop_back();
    }
}

PathKey key_of(const History& h) {
    PathKey key;
    for (const auto& m : h) key.push_back(m.label);
    return key;
}

}  // namespace

std::vector<PathRecord> enumerate_paths(const LoccProtocol& protocol, const Eigen::MatrixXcd& coefficients) {
    std::vector<PathRecord> out;
    History history;
    enumerate_into(protocol, 0, history, coefficients, coefficients.squaredNorm(), out);
    return out;
}

OutcomeDistribution joint_outcome_distribution(const LoccProtocol& protocol, const PureStateModel& model,
                                               const ParamPoint& theta) {
    const StateVector input(model.state(theta), model.dims);
    OutcomeDistribution dist;
    for (const auto& path : enumerate_paths(protocol, split_input(input.normalized(), protocol.alice_factors)))
        dist[key_of(path.messages)] += path.probability;
    return dist;
}

namespace {

void chain_into(const LoccProtocol& protocol, std::size_t r, History& history, const Eigen::VectorXcd& a,
                const Eigen::VectorXcd& b, double pa, double pb, std::vector<ChainFactor>& out) {
    if (r == protocol.rounds.size()) {
        const Eigen::MatrixXcd joint = a * b.transpose();
        out.push_back({key_of(history), joint.squaredNorm(), pa, pb});
        return;
    }
    const Round& round = protocol.rounds[r];
    const Instrument inst = round.instrument(history);
    if (inst.continuous) throw std::invalid_argument("chain_factorization: continuous outcomes cannot be enumerated");
    const Eigen::VectorXcd& local = round.party == Party::Alice ? a : b;
    inst.validate(local.size());
    const double before = local.squaredNorm();
    for (const auto& br : inst.branches) {
        const Eigen::VectorXcd next = br.kraus * local;
        const double conditional = before > 0.0 ? next.squaredNorm() / before : 0.0;
        history.push_back(make_message(static_cast<int>(r), round.party, br, conditional));
        if (round.party == Party::Alice)
            chain_into(protocol, r + 1, history, next, b, pa * conditional, pb, out);
        else
            chain_into(protocol, r + 1, history, a, next, pa, pb * conditional, out);
        history.pop_back();
    }
}

}  // namespace

std::vector<ChainFactor> chain_factorization(const LoccProtocol& protocol, const Eigen::VectorXcd& alice,
                                             const Eigen::VectorXcd& bob) {
    std::vector<ChainFactor> out;
    History history;
    chain_into(protocol, 0, history, alice.normalized(), bob.normalized(), 1.0, 1.0, out);
    return out;
}

namespace {

// Σ_paths ∂_i p ∂_j p / p for p = ‖K_path M‖², given M and its derivatives.
Eigen::MatrixXd path_fisher(const LoccProtocol& protocol, const Eigen::MatrixXcd& m,
                            const std::vector<Eigen::MatrixXcd>& dm, std::size_t* path_count) {
    const auto base = enumerate_paths(protocol, m);
    std::vector<std::vector<PathRecord>> moved;
    for (const auto& d : dm) moved.push_back(enumerate_paths(protocol, d));
    const auto dim = static_cast<Eigen::Index>(dm.size());
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd grad(dim);
    for (std::size_t k = 0; k < base.size(); ++k) {
        const double p = base[k].final_state.squaredNorm();
        if (!(p > 1e-300)) continue;
        for (Eigen::Index i = 0; i < dim; ++i) {
            const auto& moved_state = moved[static_cast<std::size_t>(i)][k].final_state;
            grad(i) = 2.0 * (base[k].final_state.conjugate().cwiseProduct(moved_state)).sum().real();
        }
        j += grad * grad.transpose() / p;
    }
    if (path_count) *path_count = base.size();
    return j;
}

Eigen::MatrixXcd outer(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return a * b.transpose(); }

}  // namespace

AdditivityReport verify_fisher_additivity(const LoccProtocol& protocol, const PureStateModel& model_a,
                                          const PureStateModel& model_b, const ParamPoint& theta0) {
    if (model_a.param_dim != model_b.param_dim)
        throw std::invalid_argument("verify_fisher_additivity: models must share the parameter");
    if (protocol.alice_factors != static_cast<int>(model_a.dims.size()))
        throw std::invalid_argument("verify_fisher_additivity: protocol split does not match the product model");
    const int dim = model_a.param_dim;
    const Eigen::VectorXcd a = model_a.state(theta0);
    const Eigen::VectorXcd b = model_b.state(theta0);
    std::vector<Eigen::VectorXcd> da, db;
    for (int i = 0; i < dim; ++i) {
        da.push_back(state_derivative(model_a, theta0, i));
        db.push_back(state_derivative(model_b, theta0, i));
    }

    std::vector<Eigen::MatrixXcd> d_total, d_a, d_b;
    for (int i = 0; i < dim; ++i) {
        const auto k = static_cast<std::size_t>(i);
        d_a.push_back(outer(da[k], b));
        d_b.push_back(outer(a, db[k]));
        d_total.push_back(d_a.back() + d_b.back());
    }
    const Eigen::MatrixXcd m = outer(a, b);

    AdditivityReport out;
    out.j_total = path_fisher(protocol, m, d_total, &out.paths);
    out.j_a = path_fisher(protocol, m, d_a, nullptr);
    out.j_b = path_fisher(protocol, m, d_b, nullptr);
    out.cross = (out.j_total - out.j_a - out.j_b).cwiseAbs().maxCoeff();
    return out;
}

Instrument projective_instrument(const Eigen::MatrixXcd& basis) {
    Instrument inst;
    for (Eigen::Index k = 0; k < basis.cols(); ++k)
        inst.branches.push_back({std::to_string(k), basis.col(k) * basis.col(k).adjoint(), {}});
    return inst;
}

Instrument idle_instrument(Eigen::Index dim) {
    Instrument inst;
    inst.branches.push_back({"idle", Eigen::MatrixXcd::Identity(dim, dim), {}});
    return inst;
}

namespace {

std::uint64_t history_seed(std::uint64_t seed, std::size_t round, const History& history) {
    std::uint64_t h = 1469598103934665603ULL ^ seed;
    auto mix = [&h](std::uint64_t v) {
        for (int k = 0; k < 8; ++k) {
            h ^= (v >> (8 * k)) & 0xffU;
            h *= 1099511628211ULL;
        }
    };
    mix(round);
    for (const auto& m : history) {
        for (char c : m.label) mix(static_cast<unsigned char>(c));
        mix(0xff);
    }
    return h;
}

}  // namespace

LoccProtocol random_adaptive_protocol(std::uint64_t seed, int rounds) {
    if (rounds < 1) throw std::invalid_argument("random_adaptive_protocol: need at least one round");
    LoccProtocol p;
    p.id = "fuzz-" + std::to_string(seed) + "-r" + std::to_string(rounds);
    p.alice_factors = 1;
    Rng rng = stream_rng(seed, 0);
    const Party first = (rng() & 1U) ? Party::Alice : Party::Bob;
    for (int r = 0; r < rounds; ++r) {
        const Party party = (r % 2 == 0) ? first : (first == Party::Alice ? Party::Bob : Party::Alice);
        const std::size_t index = static_cast<std::size_t>(r);
        p.rounds.push_back({party, [seed, index, party](const History& history) {
                                Rng local = stream_rng(history_seed(seed, index, history), 0);
                                const int outcomes = 2 + static_cast<int>(local() % 2U);
                                const Eigen::MatrixXcd u = sample_haar_unitary(2 * outcomes, local);
                                Instrument inst;
                                const std::string prefix = std::string(party_name(party)) + std::to_string(index) + ":";
                                for (int k = 0; k < outcomes; ++k)
                                    inst.branches.push_back({prefix + std::to_string(k), u.block(2 * k, 0, 2, 2), {}});
                                return inst;
                            }});
    }
    return p;
}

}  // namespace schurtele

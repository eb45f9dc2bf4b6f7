#include "commands.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "schurtele/estimation.hpp"
#include "schurtele/locc_runtime.hpp"
#include "schurtele/models.hpp"
#include "schurtele/partitions.hpp"
#include "schurtele/teleport.hpp"
#include "schurtele/two_stage.hpp"

namespace schurtele::cli {

using Json = nlohmann::ordered_json;

namespace {

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

double parse_real(const std::string& token) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + token + "'");
    }
    if (used != token.size()) throw UsageError("not a number: '" + token + "'");
    return value;
}

int parse_dim(const std::string& spec, const std::string& prefix) {
    if (spec == prefix) return 2;
    const std::string tail = spec.substr(prefix.size());
    if (tail.size() < 2 || tail[0] != ':') throw UsageError("malformed state spec '" + spec + "'");
    const double d = parse_real(tail.substr(1));
    if (d < 2 || d > 8 || d != std::floor(d)) throw UsageError("state dimension must be an integer in [2, 8]");
    return static_cast<int>(d);
}

StateVector from_spectrum(std::vector<double> spectrum, const std::vector<double>& phases) {
    if (spectrum.size() < 2) throw UsageError("a Schmidt spectrum needs at least two entries");
    double sum = 0.0;
    for (double p : spectrum) {
        if (!(p >= 0.0)) throw UsageError("Schmidt coefficients must be non-negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw UsageError("Schmidt coefficients must sum to 1");
    if (!phases.empty() && phases.size() != spectrum.size())
        throw UsageError("one phase per Schmidt coefficient is required");
    for (double& p : spectrum) p /= sum;
    return StateVector::from_schmidt(spectrum, phases);
}

Json spectrum_json(const std::vector<double>& p) {
    Json out = Json::array();
    for (double x : p) out.push_back(x);
    return out;
}

ProbabilityVector spectrum_of(const StateVector& phi) {
    std::vector<double> p = schmidt_spectrum(phi);
    double sum = 0.0;
    for (double x : p) sum += x;
    for (double& x : p) x /= sum;
    return ProbabilityVector(p);
}

Json matrix_json(const Eigen::MatrixXd& m) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(row);
    }
    return out;
}

ParamPoint parse_point(const std::string& text, int dim) {
    const auto values = parse_list(text);
    if (static_cast<int>(values.size()) != dim)
        throw UsageError("--theta needs " + std::to_string(dim) + " comma-separated values");
    ParamPoint p(dim);
    for (int i = 0; i < dim; ++i) p(i) = values[static_cast<std::size_t>(i)];
    return p;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) out.push_back(parse_real(token));
    if (out.empty()) throw UsageError("empty list");
    return out;
}

StateVector parse_state(const std::string& spec) {
    if (spec.rfind("bell", 0) == 0) return StateVector::bell(parse_dim(spec, "bell"));
    if (spec.rfind("product", 0) == 0) return StateVector::product(parse_dim(spec, "product"));
    if (spec.rfind("schmidt:", 0) == 0) {
        const std::string body = spec.substr(8);
        const auto at = body.find('@');
        const auto spectrum = parse_list(body.substr(0, at));
        const auto phases = at == std::string::npos ? std::vector<double>{} : parse_list(body.substr(at + 1));
        return from_spectrum(spectrum, phases);
    }
    throw UsageError("unknown state spec '" + spec + "' (expected bell, product or schmidt:p1,p2,...)");
}

StateVector resolve_state(const StateArgs& args) {
    if (!args.state.empty() && !args.schmidt.empty()) throw UsageError("give either --state or --schmidt, not both");
    if (!args.schmidt.empty())
        return from_spectrum(parse_list(args.schmidt), args.phases.empty() ? std::vector<double>{} : parse_list(args.phases));
    if (!args.phases.empty()) throw UsageError("--phases requires --schmidt");
    if (args.state.empty()) throw UsageError("a state is required (--state or --schmidt)");
    return parse_state(args.state);
}

std::string error_json(const std::string& kind, const std::string& message, std::uint64_t seed) {
    Json doc;
    doc["error"] = kind;
    doc["message"] = message;
    doc["seed"] = seed;
    return dump(doc);
}

CommandOutput cmd_decompose(const DecomposeArgs& args) {
    const StateVector phi = resolve_state(args.state);
    if (args.n < 1) throw UsageError("--n must be positive");
    const int d = phi.dims.front();
    const ProbabilityVector p = spectrum_of(phi);
    const auto analytic = weights_analytic(p, args.n);

    std::optional<StandardForm> form;
    double joint = 1.0;
    for (int i = 0; i < 2 * args.n; ++i) joint *= d;
    if (joint <= 16384.0) form = standard_form(phi, args.n, build_schur_basis(args.n, d, args.seed));

    Json doc;
    doc["command"] = "decompose";
    doc["seed"] = args.seed;
    doc["n"] = args.n;
    doc["d"] = d;
    doc["schmidt_spectrum"] = spectrum_json(p.entries());
    doc["method"] = form ? "projector" : "analytic";
    Json weights = Json::array();
    double total = 0.0;
    for (const auto& lambda : enumerate_partitions(args.n, d)) {
        const double q_analytic = analytic.at(lambda);
        const double q = form ? form->block(lambda).weight : q_analytic;
        total += q;
        if (std::max(q, q_analytic) < 1e-14) continue;
        Json w;
        w["lambda"] = lambda.to_string();
        w["q"] = q;
        w["q_analytic"] = q_analytic;
        w["good"] = dim_u(lambda) <= dim_v(lambda);
        w["dim_u"] = dim_u(lambda);
        w["dim_v"] = dim_v(lambda);
        weights.push_back(w);
    }
    doc["weights"] = weights;
    doc["weight_sum"] = total;
    if (form) doc["reassembly_residual"] = form->reassembly_residual;
    return {dump(doc), 0};
}

CommandOutput cmd_teleport(const TeleportArgs& args) {
    const StateVector phi = resolve_state(args.state);
    if (args.n < 1) throw UsageError("--n must be positive");
    const int d = phi.dims.front();
    const ProbabilityVector p = spectrum_of(phi);
    Json doc;
    doc["command"] = "teleport";
    doc["n"] = args.n;
    doc["d"] = d;
    doc["schmidt_spectrum"] = spectrum_json(p.entries());
    Json good = Json::array();
    for (const auto& lambda : good_set(args.n, d)) good.push_back(lambda.to_string());
    doc["good_set"] = good;
    try {
        const TeleportResult r = run_teleport(phi, args.n, args.seed);
        doc["vacuous"] = r.vacuous;
        doc["success_prob"] = r.success_prob;
        doc["analytic_success_prob"] = r.analytic_success_prob;
        doc["fidelity"] = r.fidelity;
        doc["conditional_fidelity"] = r.conditional_fidelity;
        doc["unconditional_fidelity"] = r.unconditional_fidelity;
        doc["target_fidelity"] = r.target_fidelity;
        doc["outcome_density"] = r.outcome_density;
        doc["bound"] = r.bound;
        doc["seed"] = args.seed;
        if (args.transcript) {
            LoccTranscript t = r.transcript;
            t.protocol_id = "teleport-n" + std::to_string(args.n) + "-d" + std::to_string(d);
            t.seed = args.seed;
            doc["transcript"] = Json::parse(transcript_to_json(t));
        }
        return {dump(doc), 0};
    } catch (const NothingToTeleport& e) {
        Json err;
        err["error"] = "nothing_to_teleport";
        err["message"] = e.what();
        err["n"] = args.n;
        err["d"] = d;
        err["schmidt_spectrum"] = doc["schmidt_spectrum"];
        err["fidelity"] = 0.0;
        err["seed"] = args.seed;
        return {dump(err), 1};
    }
}

CommandOutput cmd_bound_sweep(const BoundSweepArgs& args) {
    if (args.d < 2) throw UsageError("--d must be at least 2");
    if (!(args.p1 > 0.0 && args.p1 <= 1.0)) throw UsageError("--p1 must lie in (0, 1]");
    if (args.p1 < 1.0 / args.d - 1e-15) throw UsageError("--p1 must be the largest coefficient (≥ 1/d)");
    if (args.n_max < 1) throw UsageError("--n-max must be positive");
    std::vector<double> spectrum(static_cast<std::size_t>(args.d), (1.0 - args.p1) / (args.d - 1));
    spectrum[0] = args.p1;
    const ProbabilityVector p(spectrum);
    std::ostringstream os;
    os.precision(17);
    os << "n,fidelity,bound\n";
    for (int n = 1; n <= args.n_max; ++n)
        os << n << ',' << ideal_fidelity(p, n) << ',' << fidelity_lower_bound(args.p1, n, args.d) << '\n';
    return {os.str(), 0};
}

CommandOutput cmd_fisher(const FisherArgs& args) {
    if (args.model.empty() == args.model_file.empty()) throw UsageError("give exactly one of --model and --model-file");
    PureStateModel model;
    if (!args.model.empty()) {
        try {
            model = model_by_name(args.model);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    } else {
        model = load_tabulated_model(args.model_file);
    }
    const ParamPoint theta = parse_point(args.theta, model.param_dim);
    const FisherData fd = fisher_data(model, theta);
    const auto z = measurement_fisher(Povm::projective(Eigen::MatrixXcd::Identity(model.hilbert_dim(), model.hilbert_dim())),
                                      model, theta);
    Json doc;
    doc["command"] = "fisher";
    doc["seed"] = args.seed;
    doc["model"] = model.name;
    doc["theta"] = parse_list(args.theta);
    doc["j_s"] = matrix_json(fd.j_s);
    doc["j_tilde"] = matrix_json(fd.j_tilde);
    doc["betas"] = fd.betas;
    doc["rank"] = fd.rank;
    doc["degenerate"] = fd.degenerate;
    doc["weighted_cr"] = weighted_cr_value(fd.betas);
    doc["computational_basis_fisher"] = matrix_json(z.j);
    doc["boundary_warning"] = z.boundary_warning;
    doc["derivatives"] = model.has_analytic_derivative() ? "analytic" : "finite-difference";
    doc["finite_difference_step"] = kFiniteDifferenceStep;
    return {dump(doc), 0};
}

CommandOutput cmd_gap(const GapArgs& args) {
    if (args.sign != "+" && args.sign != "-") throw UsageError("--sign must be + or -");
    if (!(args.a > 0.0 && args.b > 0.0)) throw UsageError("--a and --b must be positive");
    for (double beta : {args.beta_a, args.beta_b})
        if (!(beta >= 0.0 && beta <= 1.0)) throw UsageError("β values must lie in [0, 1]");
    const GapReport g = locc_gap(args.a, args.b, args.beta_a, args.beta_b, args.sign == "+" ? Sign::Plus : Sign::Minus);
    Json doc;
    doc["command"] = "gap";
    doc["seed"] = args.seed;
    doc["a"] = args.a;
    doc["b"] = args.b;
    doc["betaA"] = args.beta_a;
    doc["betaB"] = args.beta_b;
    doc["sign"] = args.sign;
    doc["beta"] = g.beta;
    doc["global_best"] = g.global_best;
    doc["locc_best"] = g.locc_best;
    doc["gap"] = g.gap;
    return {dump(doc), 0};
}

CommandOutput cmd_anticopy(const AnticopyArgs& args) {
    const auto [a, b] = anticopy_model();
    const ParamPoint theta = parse_point(args.theta, 2);
    const FisherData fa = fisher_data(a, theta);
    const FisherData fb = fisher_data(b, theta);
    const FisherData fp = fisher_data(product_model(a, b), theta);
    const GapReport g = locc_gap(1.0, 1.0, fa.betas.front(), fb.betas.front(), Sign::Minus);
    Json doc;
    doc["command"] = "anticopy";
    doc["seed"] = args.seed;
    doc["theta"] = parse_list(args.theta);
    doc["betaA"] = fa.betas.front();
    doc["betaB"] = fb.betas.front();
    doc["betaProduct"] = fp.betas.front();
    doc["gap"] = g.gap;
    doc["j_s_A"] = matrix_json(fa.j_s);
    doc["j_s_B"] = matrix_json(fb.j_s);
    const std::vector<double> zero{0.0}, one{1.0};
    doc["weighted_cr_beta0"] = weighted_cr_value(zero);
    doc["weighted_cr_beta1"] = weighted_cr_value(one);
    return {dump(doc), 0};
}

CommandOutput cmd_detect(const DetectArgs& args) {
    if (args.states.size() < 2) throw UsageError("detect needs at least two states");
    std::vector<StateVector> states;
    for (const auto& s : args.states) states.push_back(parse_state(s));
    for (const auto& s : states)
        if (s.dims != states.front().dims) throw UsageError("all states must have the same local dimensions");
    const DetectionCheck c = detection_condition(states);
    Json doc;
    doc["command"] = "detect";
    doc["seed"] = args.seed;
    doc["states"] = args.states;
    doc["max_overlap"] = c.lhs;
    doc["max_schmidt"] = c.rhs;
    doc["holds"] = c.holds;
    return {dump(doc), 0};
}

CommandOutput cmd_additivity(const AdditivityArgs& args) {
    if (args.protocols < 1) throw UsageError("--protocols must be positive");
    Json doc;
    doc["command"] = "additivity";
    doc["seed"] = args.seed;
    doc["tolerance"] = 1e-8;
    Json runs = Json::array();
    double worst = 0.0;
    for (int k = 0; k < args.protocols; ++k) {
        Rng rng = stream_rng(args.seed, static_cast<std::uint64_t>(k));
        const PureStateModel ma = random_qubit_model(rng, 1);
        const PureStateModel mb = random_qubit_model(rng, 1);
        const int rounds = 2 + static_cast<int>(rng() % 2U);
        const double theta0 = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
        const LoccProtocol protocol = random_adaptive_protocol(mix_seed(args.seed, static_cast<std::uint64_t>(k)), rounds);
        const AdditivityReport r = verify_fisher_additivity(protocol, ma, mb, ParamPoint::Constant(1, theta0));
        worst = std::max(worst, r.cross);
        Json run;
        run["protocol"] = protocol.id;
        run["rounds"] = rounds;
        run["paths"] = r.paths;
        run["theta0"] = theta0;
        run["j_total"] = r.j_total(0, 0);
        run["j_a"] = r.j_a(0, 0);
        run["j_b"] = r.j_b(0, 0);
        run["cross"] = r.cross;
        runs.push_back(run);
    }
    doc["max_cross"] = worst;
    doc["holds"] = worst <= 1e-8;
    doc["runs"] = runs;
    return {dump(doc), worst <= 1e-8 ? 0 : 1};
}

CommandOutput cmd_two_stage(const TwoStageArgs& args) {
    if (args.format != "json" && args.format != "csv") throw UsageError("--format must be json or csv");
    if (args.n < 25) throw UsageError("--n must be at least 25");
    if (args.trials < 0) throw UsageError("--trials must be non-negative");
    PureStateModel ma, mb;
    try {
        ma = model_by_name(args.model_a);
        mb = model_by_name(args.model_b);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    TwoStageOptions options;
    options.adaptive = !args.one_stage;
    const EstimationReport r = two_stage_estimate(ma, mb, args.theta, args.n, args.trials, args.seed, options);
    if (args.format == "csv") return {r.to_csv(), 0};
    Json doc;
    doc["command"] = "two-stage";
    doc["seed"] = args.seed;
    doc["model_a"] = ma.name;
    doc["model_b"] = mb.name;
    doc["theta"] = args.theta;
    doc["n"] = r.n_copies;
    doc["trials"] = r.trials;
    doc["adaptive"] = r.adaptive;
    doc["stage1_copies"] = r.stage1_copies;
    doc["mean"] = r.mean;
    doc["mse"] = r.mse;
    doc["n_mse"] = r.n_mse;
    doc["fisher"] = r.fisher;
    doc["reference"] = r.reference;
    doc["ratio"] = r.trials > 0 ? r.n_mse / r.reference : 0.0;
    return {dump(doc), 0};
}

}  // namespace schurtele::cli

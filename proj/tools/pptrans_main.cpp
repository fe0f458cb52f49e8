// pptrans: command line front end for the probability/possibility
// transformation library. Subcommands: transform, invert, specificity,
// experiment, figure. Exit codes: 0 success, 2 unreadable input or flags,
// 3 well-formed but invalid values, 4 solver non-convergence.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pptrans/converse.hpp"
#include "pptrans/distribution.hpp"
#include "pptrans/experiments.hpp"
#include "pptrans/io.hpp"
#include "pptrans/specificity.hpp"
#include "pptrans/transforms.hpp"

namespace {

constexpr int kExitParseError = 2;
constexpr int kExitDomainError = 3;
constexpr int kExitNoConvergence = 4;

double parse_exponent(const std::string& token) {
    std::string t = token;
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "inf" || t == "infinity") return std::numeric_limits<double>::infinity();
    const char* begin = t.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end != begin + t.size() || t.empty())
        throw pptrans::parse_error("exponent '" + token + "' is not a number (pass a positive real or 'inf')");
    return value;
}

std::vector<double> parse_exponent_list(const std::string& csv) {
    std::vector<double> out;
    std::istringstream stream(csv);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) throw pptrans::parse_error("empty entry in exponent list '" + csv + "'");
        out.push_back(parse_exponent(item));
    }
    if (out.empty()) throw pptrans::parse_error("exponent list is empty");
    return out;
}

nlohmann::json exponent_json(double n) {
    if (std::isinf(n)) return "inf";
    return n;
}

void emit_output(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        pptrans::write_text_file(path, content);
}

pptrans::DistributionKind kind_from_flag(const std::string& flag) {
    return flag == "probability" ? pptrans::DistributionKind::probability
                                 : pptrans::DistributionKind::possibility;
}

// Resolution order: explicit flag, then the document's own declaration, then
// detection from the numbers. The resolved kind must match what the command
// consumes; a mismatch is reported rather than silently reinterpreted.
void require_kind(const pptrans::DistributionDocument& doc, const std::string& kind_flag,
                  bool renormalize, pptrans::DistributionKind required) {
    pptrans::DistributionKind resolved;
    if (!kind_flag.empty())
        resolved = kind_from_flag(kind_flag);
    else if (doc.declared_kind)
        resolved = *doc.declared_kind;
    else
        resolved = pptrans::detect_kind(doc.values, renormalize);
    if (resolved != required)
        throw std::invalid_argument(std::string("this command needs a ") + pptrans::kind_name(required) +
                                    " distribution, but the input resolved to " + pptrans::kind_name(resolved) +
                                    " (override with --kind if intended)");
}

pptrans::TransformSpec make_spec(const std::string& method, const std::string& n_token, bool n_given) {
    if (method == "generalized") {
        if (!n_given)
            throw pptrans::parse_error("--n is required for the generalized method (a positive real or 'inf')");
        return pptrans::TransformSpec::generalized(parse_exponent(n_token));
    }
    if (n_given) throw pptrans::parse_error("--n only applies to the generalized method");
    if (method == "symmetric") return pptrans::TransformSpec::symmetric();
    if (method == "optimal") return pptrans::TransformSpec::optimal();
    return pptrans::TransformSpec::weak_order();
}

struct VectorCmdOptions {
    std::string input;
    std::string method;
    std::string n_token;
    std::string kind_flag;
    std::string output;
    bool renormalize = false;
};

struct InvertOptions : VectorCmdOptions {
    pptrans::SolverConfig solver;
};

struct ExperimentOptions {
    std::string dist = "uniform";
    double alpha = 1.0;
    int outcomes = 1000;
    long long samples = 250000;
    int trials = 100;
    std::string n_list = "1,2,3,5,10,100";
    std::uint64_t seed = 0;
    std::string output;
};

struct BinaryCurveOptions {
    std::string method = "generalized";
    std::string n_list = "1,2,4,10,100";
    int grid_points = 199;
    std::string output;
};

struct TernaryMapOptions {
    std::string n_token = "1";
    double step = 0.01;
    std::string output;
};

int run_transform(const VectorCmdOptions& o, bool n_given) {
    const auto doc = pptrans::load_distribution_document(o.input);
    require_kind(doc, o.kind_flag, o.renormalize, pptrans::DistributionKind::probability);
    const pptrans::ProbabilityDistribution p(doc.values, o.renormalize);
    const auto spec = make_spec(o.method, o.n_token, n_given);
    const auto pi = pptrans::apply_transform(p, spec);

    nlohmann::json out;
    out["command"] = "transform";
    out["method"] = o.method;
    if (spec.kind == pptrans::TransformKind::generalized) out["n"] = exponent_json(spec.exponent_n);
    out["kind"] = "possibility";
    out["values"] = pi.values();
    emit_output(o.output, out.dump() + "\n");
    return 0;
}

int run_invert(const InvertOptions& o, bool n_given) {
    const auto doc = pptrans::load_distribution_document(o.input);
    require_kind(doc, o.kind_flag, false, pptrans::DistributionKind::possibility);
    const pptrans::PossibilityDistribution pi(doc.values);

    nlohmann::json out;
    out["command"] = "invert";
    out["method"] = o.method;
    out["kind"] = "probability";
    int exit_code = 0;
    if (o.method == "generalized") {
        if (!n_given)
            throw pptrans::parse_error("--n is required for the generalized method (a finite positive real)");
        const double n = parse_exponent(o.n_token);
        const auto report = pptrans::converse_generalized(pi, n, o.solver);
        out["n"] = exponent_json(n);
        out["values"] = report.solution.masses();
        out["iterations"] = report.iterations;
        out["final_residual"] = report.final_residual;
        out["converged"] = report.converged;
        if (!report.converged) exit_code = kExitNoConvergence;
    } else {
        if (n_given) throw pptrans::parse_error("--n only applies to the generalized method");
        const auto p = (o.method == "symmetric") ? pptrans::converse_symmetric(pi)
                                                 : pptrans::converse_optimal(pi);
        out["values"] = p.masses();
    }
    emit_output(o.output, out.dump() + "\n");
    if (exit_code != 0)
        std::cerr << "error: solver did not converge; best residual "
                  << pptrans::format_double(out["final_residual"].get<double>()) << "\n";
    return exit_code;
}

int run_specificity(const VectorCmdOptions& o, bool n_given) {
    const auto doc = pptrans::load_distribution_document(o.input);
    require_kind(doc, o.kind_flag, o.renormalize, pptrans::DistributionKind::probability);
    const pptrans::ProbabilityDistribution p(doc.values, o.renormalize);
    const auto spec = make_spec(o.method, o.n_token, n_given);
    const auto s = pptrans::specificity_of_transform(p, spec);

    nlohmann::json out;
    out["command"] = "specificity";
    out["method"] = o.method;
    if (spec.kind == pptrans::TransformKind::generalized) out["n"] = exponent_json(spec.exponent_n);
    out["specificity"] = s.value;
    emit_output(o.output, out.dump() + "\n");
    return 0;
}

int run_experiment(const ExperimentOptions& o) {
    pptrans::ExperimentConfig config;
    config.sampler = (o.dist == "zipf") ? pptrans::SamplerKind::zipf : pptrans::SamplerKind::uniform;
    config.zipf_alpha = o.alpha;
    config.outcomes = o.outcomes;
    config.samples_per_distribution = o.samples;
    config.trials = o.trials;
    config.n_list = parse_exponent_list(o.n_list);
    config.seed = o.seed;
    const auto report = pptrans::run_specificity_experiment(config);

    std::ostringstream csv;
    csv << "# pptrans experiment --dist " << o.dist << " --alpha " << pptrans::format_double(o.alpha)
        << " --outcomes " << o.outcomes << " --samples " << o.samples << " --trials " << o.trials
        << " --n-list " << o.n_list << " --seed " << o.seed << "\n";
    csv << "n,mean_specificity,sd_specificity\n";
    for (const auto& row : report.rows)
        csv << pptrans::format_double(row.n) << ',' << pptrans::format_double(row.mean) << ','
            << pptrans::format_double(row.stddev) << "\n";
    emit_output(o.output, csv.str());
    return 0;
}

int run_figure_binary(const BinaryCurveOptions& o, bool n_list_given) {
    std::vector<pptrans::TransformSpec> specs;
    std::vector<std::string> labels;
    if (o.method == "generalized") {
        for (double n : parse_exponent_list(o.n_list)) {
            specs.push_back(pptrans::TransformSpec::generalized(n));
            labels.push_back("pi_n" + pptrans::format_double(n));
        }
    } else {
        if (n_list_given) throw pptrans::parse_error("--n-list only applies to the generalized method");
        specs.push_back(make_spec(o.method, "", false));
        labels.push_back("pi");
    }

    std::vector<std::vector<pptrans::BinaryCurveRow>> curves;
    curves.reserve(specs.size());
    for (const auto& spec : specs) curves.push_back(pptrans::emit_binary_curve(spec, o.grid_points));

    std::ostringstream csv;
    csv << "# pptrans figure binary-curve --method " << o.method;
    if (o.method == "generalized") csv << " --n-list " << o.n_list;
    csv << " --grid-points " << o.grid_points << "\n";
    csv << "p";
    for (const auto& label : labels) csv << ',' << label;
    csv << "\n";
    for (std::size_t r = 0; r < curves[0].size(); ++r) {
        csv << pptrans::format_double(curves[0][r].p);
        for (const auto& curve : curves) csv << ',' << pptrans::format_double(curve[r].pi_w1);
        csv << "\n";
    }
    emit_output(o.output, csv.str());
    return 0;
}

int run_figure_ternary(const TernaryMapOptions& o) {
    const double n = parse_exponent(o.n_token);
    const auto rows = pptrans::emit_ternary_map(n, o.step);

    std::ostringstream csv;
    csv << "# pptrans figure ternary-map --n " << o.n_token << " --step " << pptrans::format_double(o.step)
        << "\n";
    csv << "p1,p2,pi_w3\n";
    for (const auto& row : rows)
        csv << pptrans::format_double(row.p1) << ',' << pptrans::format_double(row.p2) << ','
            << pptrans::format_double(row.pi_w3) << "\n";
    emit_output(o.output, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete probability <-> possibility transformation toolkit"};
    app.require_subcommand(1);

    VectorCmdOptions transform_opts;
    auto* transform_cmd = app.add_subcommand("transform", "probability -> possibility");
    transform_cmd->add_option("input", transform_opts.input, "distribution file")->required();
    transform_cmd->add_option("--method,-m", transform_opts.method, "transformation")
        ->required()
        ->check(CLI::IsMember({"symmetric", "optimal", "weak-order", "generalized"}));
    auto* transform_n = transform_cmd->add_option("--n", transform_opts.n_token,
                                                  "exponent for the generalized method ('inf' allowed)");
    transform_cmd->add_option("--kind", transform_opts.kind_flag, "override input kind detection")
        ->check(CLI::IsMember({"probability", "possibility"}));
    transform_cmd->add_flag("--renormalize", transform_opts.renormalize,
                            "accept sums within 0.001 of 1 and divide through");
    transform_cmd->add_option("--output,-o", transform_opts.output, "write here instead of stdout");

    InvertOptions invert_opts;
    auto* invert_cmd = app.add_subcommand("invert", "possibility -> probability");
    invert_cmd->add_option("input", invert_opts.input, "distribution file")->required();
    invert_cmd->add_option("--method,-m", invert_opts.method, "converse transformation")
        ->required()
        ->check(CLI::IsMember({"symmetric", "optimal", "generalized"}));
    auto* invert_n = invert_cmd->add_option("--n", invert_opts.n_token,
                                            "exponent for the generalized method (finite, positive)");
    invert_cmd->add_option("--kind", invert_opts.kind_flag, "override input kind detection")
        ->check(CLI::IsMember({"probability", "possibility"}));
    invert_cmd->add_option("--tol", invert_opts.solver.residual_tolerance, "solver residual tolerance")
        ->capture_default_str();
    invert_cmd->add_option("--max-iter", invert_opts.solver.max_iterations, "solver iteration cap")
        ->capture_default_str();
    invert_cmd->add_option("--damping-floor", invert_opts.solver.damping_floor, "smallest Newton step fraction")
        ->capture_default_str();
    invert_cmd->add_option("--ordering-tol", invert_opts.solver.ordering_tolerance, "tie-merge tolerance")
        ->capture_default_str();
    invert_cmd
        ->add_option("--seed-threshold", invert_opts.solver.seed_threshold_n,
                     "exponent at which the initial guess switches to the optimal converse")
        ->capture_default_str();
    invert_cmd->add_option("--output,-o", invert_opts.output, "write here instead of stdout");

    VectorCmdOptions specificity_opts;
    auto* specificity_cmd = app.add_subcommand("specificity", "specificity of a transformed distribution");
    specificity_cmd->add_option("input", specificity_opts.input, "distribution file")->required();
    specificity_cmd->add_option("--method,-m", specificity_opts.method, "transformation")
        ->required()
        ->check(CLI::IsMember({"symmetric", "optimal", "weak-order", "generalized"}));
    auto* specificity_n = specificity_cmd->add_option(
        "--n", specificity_opts.n_token, "exponent for the generalized method ('inf' allowed)");
    specificity_cmd->add_option("--kind", specificity_opts.kind_flag, "override input kind detection")
        ->check(CLI::IsMember({"probability", "possibility"}));
    specificity_cmd->add_flag("--renormalize", specificity_opts.renormalize,
                              "accept sums within 0.001 of 1 and divide through");
    specificity_cmd->add_option("--output,-o", specificity_opts.output, "write here instead of stdout");

    ExperimentOptions experiment_opts;
    auto* experiment_cmd = app.add_subcommand("experiment", "seeded Monte Carlo specificity statistics");
    experiment_cmd->add_option("--dist", experiment_opts.dist, "ground-truth sampler")
        ->check(CLI::IsMember({"uniform", "zipf"}))
        ->capture_default_str();
    experiment_cmd->add_option("--alpha", experiment_opts.alpha, "Zipf exponent")->capture_default_str();
    experiment_cmd->add_option("--outcomes", experiment_opts.outcomes, "domain size M")->capture_default_str();
    experiment_cmd->add_option("--samples", experiment_opts.samples, "draws per trial")->capture_default_str();
    experiment_cmd->add_option("--trials", experiment_opts.trials, "number of sampled distributions")
        ->capture_default_str();
    experiment_cmd->add_option("--n-list", experiment_opts.n_list, "comma-separated exponents")
        ->capture_default_str();
    experiment_cmd->add_option("--seed", experiment_opts.seed, "master seed (reproducibility contract)")
        ->required();
    experiment_cmd->add_option("--output,-o", experiment_opts.output, "write here instead of stdout");

    auto* figure_cmd = app.add_subcommand("figure", "plot-ready tables");
    figure_cmd->require_subcommand(1);

    BinaryCurveOptions binary_opts;
    auto* binary_cmd = figure_cmd->add_subcommand("binary-curve", "pi(w1) against p on [p, 1-p]");
    binary_cmd->add_option("--method,-m", binary_opts.method, "transformation")
        ->check(CLI::IsMember({"symmetric", "optimal", "weak-order", "generalized"}))
        ->capture_default_str();
    auto* binary_nlist = binary_cmd->add_option("--n-list", binary_opts.n_list,
                                                "comma-separated exponents (generalized method only)")
                             ->capture_default_str();
    binary_cmd->add_option("--grid-points", binary_opts.grid_points, "points inside (0,1)")
        ->capture_default_str();
    binary_cmd->add_option("--output,-o", binary_opts.output, "write here instead of stdout");

    TernaryMapOptions ternary_opts;
    auto* ternary_cmd = figure_cmd->add_subcommand("ternary-map", "pi(w3) over the (p1, p2) simplex");
    ternary_cmd->add_option("--n", ternary_opts.n_token, "exponent ('inf' allowed)")->capture_default_str();
    ternary_cmd->add_option("--step", ternary_opts.step, "grid step in (0,1)")->capture_default_str();
    ternary_cmd->add_option("--output,-o", ternary_opts.output, "write here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParseError;
    }

    try {
        if (transform_cmd->parsed()) return run_transform(transform_opts, transform_n->count() > 0);
        if (invert_cmd->parsed()) return run_invert(invert_opts, invert_n->count() > 0);
        if (specificity_cmd->parsed()) return run_specificity(specificity_opts, specificity_n->count() > 0);
        if (experiment_cmd->parsed()) return run_experiment(experiment_opts);
        if (figure_cmd->parsed()) {
            if (binary_cmd->parsed()) return run_figure_binary(binary_opts, binary_nlist->count() > 0);
            if (ternary_cmd->parsed()) return run_figure_ternary(ternary_opts);
        }
    } catch (const pptrans::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
    return 0;
}

// Command-line front end: exact checks, grid certification, catalyst search,
// divergence tables, thermal checks and power-universal classification.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "majorize/catalysis.hpp"
#include "majorize/certifier.hpp"
#include "majorize/errors.hpp"
#include "majorize/io.hpp"
#include "majorize/monotones.hpp"
#include "majorize/power_universal.hpp"
#include "majorize/thermal.hpp"

using namespace majorize;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct Common {
    unsigned grid_resolution = 8;
    double alpha_max = 64.0;
    double tol = 1e-9;
    unsigned n_max = 8;
    bool no_infinity = false;
    std::string format = "json";

    GridSpec grid() const {
        GridSpec g;
        g.simplex_resolution = grid_resolution;
        g.alpha_max = alpha_max;
        g.tie_tol = tol;
        g.include_infinity = !no_infinity;
        return g;
    }
};

void add_common(CLI::App* cmd, Common& c, bool search = false) {
    cmd->add_option("--grid-resolution", c.grid_resolution, "simplex grid step 1/r")->capture_default_str();
    cmd->add_option("--alpha-max", c.alpha_max, "largest finite alpha on the ray grid")->capture_default_str();
    cmd->add_option("--tol", c.tol, "LP and tie tolerance")->capture_default_str();
    cmd->add_flag("--no-infinity", c.no_infinity, "drop the alpha = inf checks");
    cmd->add_option("--format", c.format, "json, table or csv")
        ->check(CLI::IsMember({"json", "table", "csv"}))
        ->capture_default_str();
    if (search) cmd->add_option("--n-max", c.n_max, "largest n tried")->capture_default_str();
}

void print_json(const json& j) { std::cout << stable_dump(j) << "\n"; }

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Sufficient: return 0;
        case Verdict::NecessaryFail: return 1;
        case Verdict::Inconclusive: return 2;
    }
    return 2;
}

std::string join_alpha(const std::vector<double>& a, char sep) {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? std::string(1, sep) : "") + format_double(a[i]);
    return s;
}

std::string join_index(const IndexSet& C, char sep) {
    std::string s;
    for (std::size_t i = 0; i < C.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(C[i]);
    return s;
}

void print_report(const CertReport& r, const std::string& format) {
    if (format == "json") {
        print_json(to_json(r));
        return;
    }
    if (format == "csv") {
        std::cout << "functional,alpha,C,condition,P,Q,margin,strict\n";
        for (const auto& c : r.checks)
            std::cout << to_string(c.functional) << "," << join_alpha(c.alpha, ';') << "," << join_index(c.C, ';')
                      << "," << c.condition << "," << format_double(c.value_p) << "," << format_double(c.value_q)
                      << "," << format_double(c.margin) << "," << (c.strict ? "true" : "false") << "\n";
        return;
    }
    std::cout << "certifier  " << r.certifier << "\nregime     " << to_string(r.regime) << "\nverdict    "
              << to_string(r.verdict) << " (grid-certified)\nchecks     " << r.checks.size() << "\n";
    if (!r.reason.empty()) std::cout << "reason     " << r.reason << "\n";
    const Check* worst = nullptr;
    for (const auto& c : r.checks)
        if (!worst || c.margin < worst->margin) worst = &c;
    if (worst)
        std::cout << "min margin " << format_double(worst->margin) << " at " << to_string(worst->functional)
                  << " alpha=" << join_alpha(worst->alpha, ';') << " C=" << join_index(worst->C, ';') << "\n";
}

std::vector<double> parse_alpha_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_extended(json(item)));
    return out;
}

int cmd_check_exact(const std::string& p, const std::string& q, const Common& c) {
    const auto P = load_experiment(p), Q = load_experiment(q);
    LpOptions opt;
    opt.tol = c.tol;
    const auto res = majorizes(P, Q, opt);
    if (c.format == "json") {
        print_json(to_json(res));
    } else {
        std::cout << "status   " << to_string(res.status) << "\nresidual " << format_double(res.residual) << "\n";
    }
    return res.feasible() ? 0 : 1;
}

int cmd_certify(const std::string& p, const std::string& q, const Common& c, bool asymptotic,
                const std::string& regime) {
    const auto P = load_experiment(p), Q = load_experiment(q);
    std::optional<RegimeChoice> declared;
    if (!regime.empty() && regime != "auto") declared = regime_choice_from_string(regime);
    const auto rep = certify_auto(P, Q, c.grid(), asymptotic, declared);
    print_report(rep, c.format);
    return verdict_exit(rep.verdict);
}

int cmd_search(const std::string& p, const std::string& q, const Common& c, const std::string& kind) {
    const auto P = load_experiment(p), Q = load_experiment(q);
    SearchOptions opt;
    opt.n_max = c.n_max;
    opt.lp.tol = c.tol;
    json out = json::object();
    bool found = false;
    if (kind == "large-sample" || kind == "both") {
        const auto r = find_large_sample_n(P, Q, opt);
        found = found || r.n_found.has_value();
        out["large_sample"] = to_json(r);
    }
    if (kind == "catalytic" || kind == "both") {
        const auto r = find_catalytic_n(P, Q, opt);
        found = found || r.n_found.has_value();
        out["catalytic"] = to_json(r);
    }
    print_json(out);
    return found ? 0 : 1;
}

int cmd_divergence(const std::string& p, const std::string& q, const Common& c, const std::string& alphas) {
    const auto P = load_experiment(p);
    std::optional<Experiment> Q;
    if (!q.empty()) Q = load_experiment(q);
    if (Q && Q->cols() != P.cols()) throw DimensionError("experiments have different column counts");
    const GridSpec g = c.grid();
    if (P.cols() == 2) {
        std::vector<double> orders;
        if (!alphas.empty()) {
            orders = parse_alpha_list(alphas);
        } else {
            for (unsigned k = 0; k < g.simplex_resolution; ++k) orders.push_back(static_cast<double>(k) / g.simplex_resolution);
            orders.push_back(1.0);
            for (double a : ray_grid(g)) orders.push_back(a);
            if (g.include_infinity) orders.push_back(kInf);
        }
        std::cout << (Q ? "alpha,D_P,D_Q,margin\n" : "alpha,D_P\n");
        for (double a : orders) {
            const double dp = renyi(P.column(0), P.column(1), a);
            std::cout << format_double(a) << "," << format_double(dp);
            if (Q) {
                const double dq = renyi(Q->column(0), Q->column(1), a);
                std::cout << "," << format_double(dq) << "," << format_double(extended_difference(dp, dq));
            }
            std::cout << "\n";
        }
        return 0;
    }
    std::cout << (Q ? "alpha,D_P,D_Q,margin\n" : "alpha,D_P\n");
    for (const auto& pt : simplex_grid(P.cols(), g.simplex_resolution)) {
        if (pt.C.size() == 1) continue;  // vertices carry no divergence
        const double dp = multivar_divergence(P, pt.alpha);
        std::cout << join_alpha(pt.alpha, ';') << "," << format_double(dp);
        if (Q) {
            const double dq = multivar_divergence(*Q, pt.alpha);
            std::cout << "," << format_double(dq) << "," << format_double(extended_difference(dp, dq));
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_thermal(const std::string& path, const Common& c) {
    json j;
    try {
        j = json::parse(read_text(path));
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("thermal input is not valid JSON: ") + e.what());
    }
    const auto sys = make_thermal_system(j.at("energies").get<std::vector<double>>(), j.at("beta").get<double>());
    const auto rho = DiagonalState::make(j.at("rho").get<std::vector<double>>(), c.tol);
    const auto sigma = DiagonalState::make(j.at("sigma").get<std::vector<double>>(), c.tol);
    const auto v = thermal_check(rho, sigma, sys, c.grid());
    if (c.format == "json") {
        print_json(to_json(v));
    } else {
        std::cout << "answer " << to_string(v.answer) << "\ncase   " << to_string(v.kind) << "\n";
        if (!v.reason.empty()) std::cout << "reason " << v.reason << "\n";
    }
    switch (v.answer) {
        case ThermalAnswer::Yes: return 0;
        case ThermalAnswer::No: return 1;
        case ThermalAnswer::Inconclusive: return 2;
    }
    return 2;
}

int cmd_classify(const std::string& path, const Common& c, const std::string& regime) {
    const auto U = load_experiment(path);
    bool dominating = is_dominating(classify_regime(U, c.tol));
    if (!regime.empty() && regime != "auto") {
        const auto choice = regime_choice_from_string(regime);
        const bool want = choice != RegimeChoice::Minimal;
        if (want && !dominating) throw RegimeError("declared a dominating regime but the experiment is not one");
        dominating = want;
    }
    const auto rep = dominating ? classify_dominating(U, c.tol) : classify_minimal(U, c.tol);
    json j = to_json(rep);
    j["semiring"] = dominating ? "dominating" : "minimal";
    j["homomorphism_criterion"] = homomorphism_criterion(U, dominating, c.tol);
    print_json(j);
    return rep.is_power_universal ? 0 : 1;
}

int cmd_canonicalize(const std::string& path, const Common& c, unsigned power, bool normalize) {
    auto P = load_experiment(path);
    if (normalize) P = normalized(P);
    if (power != 1) P = tensor_power(P, power);
    if (c.format == "csv")
        std::cout << experiment_to_csv(P);
    else
        print_json(experiment_to_json(P));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matrix majorization: exact, large-sample and catalytic"};
    app.require_subcommand(1);
    Common common;
    std::string p, q, regime, kind = "both", alphas;
    bool asymptotic = false, normalize = false;
    unsigned power = 1;

    auto* check = app.add_subcommand("check-exact", "LP test for P >= Q");
    check->add_option("P", p)->required();
    check->add_option("Q", q)->required();
    add_common(check, common);

    auto* certify = app.add_subcommand("certify", "grid certification of large-sample/catalytic majorization");
    certify->add_option("P", p)->required();
    certify->add_option("Q", q)->required();
    certify->add_flag("--asymptotic", asymptotic, "approximate (asymptotic) conditions");
    certify->add_option("--regime", regime, "auto, minimal, dominating or dichotomy");
    add_common(certify, common);

    auto* search = app.add_subcommand("search", "smallest n for large-sample or catalytic conversion");
    search->add_option("P", p)->required();
    search->add_option("Q", q)->required();
    search->add_option("--kind", kind, "large-sample, catalytic or both")
        ->check(CLI::IsMember({"large-sample", "catalytic", "both"}));
    add_common(search, common, true);

    auto* divergence = app.add_subcommand("divergence", "CSV table of divergences");
    divergence->add_option("P", p)->required();
    divergence->add_option("Q", q);
    divergence->add_option("--alpha", alphas, "comma-separated orders, 'inf' allowed (two columns only)");
    add_common(divergence, common);

    auto* thermal = app.add_subcommand("thermal", "asymptotic catalytic thermal majorization");
    thermal->add_option("INPUT", p)->required();
    add_common(thermal, common);

    auto* classify = app.add_subcommand("classify", "power-universal classification");
    classify->add_option("U", p)->required();
    classify->add_option("--regime", regime, "auto, minimal or dominating");
    add_common(classify, common);

    auto* canon = app.add_subcommand("canonicalize", "write the canonical form of an experiment");
    canon->add_option("P", p)->required();
    canon->add_option("--power", power, "tensor power to take")->capture_default_str();
    canon->add_flag("--normalize", normalize, "rescale columns to unit norm");
    add_common(canon, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*check) return cmd_check_exact(p, q, common);
        if (*certify) return cmd_certify(p, q, common, asymptotic, regime);
        if (*search) return cmd_search(p, q, common, kind);
        if (*divergence) return cmd_divergence(p, q, common, alphas);
        if (*thermal) return cmd_thermal(p, common);
        if (*classify) return cmd_classify(p, common, regime);
        if (*canon) return cmd_canonicalize(p, common, power, normalize);
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}

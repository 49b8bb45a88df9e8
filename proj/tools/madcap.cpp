// madcap — command-line front end. Subcommands: point, sweep, check,
// thresholds, additivity. Exit codes: 0 success, 1 check failure, 2 usage
// error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "madcap/madcap.hpp"

namespace {

using namespace madcap;

struct OptFlags {
    int restarts = -1;
    int max_evals = -1;
    double f_tol = -1.0;
    double x_tol = -1.0;
    long long seed = -1;
    std::string config_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--restarts", restarts, "multistart restarts (default 32)");
        cmd->add_option("--max-evals", max_evals, "objective evaluations per restart");
        cmd->add_option("--f-tol", f_tol, "value-spread convergence tolerance");
        cmd->add_option("--x-tol", x_tol, "parameter-spread convergence tolerance");
        cmd->add_option("--seed", seed, "base RNG seed");
        cmd->add_option("--config", config_path, "key=value file with optimizer defaults");
    }

    // Precedence: built-in defaults, then config file, then explicit flags.
    OptimizerConfig resolve() const {
        OptimizerConfig cfg;
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            if (!is) throw std::runtime_error("cannot open config file: " + config_path);
            std::string line;
            while (std::getline(is, line)) {
                const size_t hash = line.find('#');
                if (hash != std::string::npos) line.erase(hash);
                const size_t eq = line.find('=');
                if (eq == std::string::npos) continue;
                auto trim = [](std::string s) {
                    const auto b = s.find_first_not_of(" \t\r");
                    const auto e = s.find_last_not_of(" \t\r");
                    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
                };
                const std::string key = trim(line.substr(0, eq));
                const std::string val = trim(line.substr(eq + 1));
                if (key == "restarts") cfg.restarts = std::stoi(val);
                else if (key == "max_evals") cfg.max_evals_per_restart = std::stoi(val);
                else if (key == "f_tol") cfg.f_tol = std::stod(val);
                else if (key == "x_tol") cfg.x_tol = std::stod(val);
                else if (key == "seed") cfg.seed = std::stoull(val);
                else throw std::runtime_error("config: unknown key '" + key + "'");
            }
        }
        if (restarts >= 0) cfg.restarts = restarts;
        if (max_evals >= 0) cfg.max_evals_per_restart = max_evals;
        if (f_tol >= 0.0) cfg.f_tol = f_tol;
        if (x_tol >= 0.0) cfg.x_tol = x_tol;
        if (seed >= 0) cfg.seed = static_cast<uint64_t>(seed);
        cfg.validate();
        return cfg;
    }
};

void print_point_human(cli::Quantity q, const CapacityPoint& pt) {
    std::printf("quantity   %s\n", cli::to_string(q).c_str());
    std::printf("eta        %s\n", cli::format_value(pt.eta).c_str());
    std::printf("mu         %s\n", cli::format_value(pt.mu).c_str());
    std::printf("value      %s\n", cli::format_value(pt.value).c_str());
    const auto names = cli::argmax_column_names(q);
    const auto vals = cli::argmax_values(pt);
    for (size_t i = 0; i < names.size() && i < vals.size(); ++i)
        std::printf("%-10s %s\n", names[i].c_str(), cli::format_value(vals[i]).c_str());
    std::printf("evals      %ld\n", pt.evals);
    std::printf("converged  %s\n", pt.converged ? "yes" : "no");
    if (std::get_if<Populations>(&pt.argmax) != nullptr && pt.raw_value <= 1e-9)
        std::printf("note       bound floored at zero (best objective %s)\n",
                    cli::format_value(pt.raw_value).c_str());
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? cli::format_value(*v) : std::string("none");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"capacity bounds for the two-qubit amplitude damping channel with memory"};
    app.require_subcommand(1);

    // ---- point ----
    auto* point = app.add_subcommand("point", "evaluate one quantity at one (eta, mu)");
    std::string point_quantity;
    double point_eta = 0.0, point_mu = 0.0;
    bool point_json = false, point_phase = false;
    OptFlags point_opt;
    point->add_option("quantity", point_quantity, "chi-g1 | chi-g2 | q-lwb | q-upb | ce")
        ->required();
    point->add_option("--eta", point_eta, "transmissivity in [0,1]")->required();
    point->add_option("--mu", point_mu, "memory degree in [0,1]")->required();
    point->add_flag("--json", point_json, "emit a JSON object instead of the table");
    point->add_flag("--phase-search", point_phase, "search the G1 phases as well");
    point_opt.attach(point);

    // ---- sweep ----
    auto* sweep = app.add_subcommand("sweep", "grid sweep over (eta, mu) to CSV or JSON");
    std::string sweep_quantity, sweep_out;
    double sweep_step = 0.02;
    double sweep_eta_min = 0.0, sweep_eta_max = 1.0, sweep_mu_min = 0.0, sweep_mu_max = 1.0;
    int sweep_jobs = 0;
    bool sweep_json = false, sweep_phase = false;
    OptFlags sweep_opt;
    sweep->add_option("--quantity,-q", sweep_quantity, "chi-g1 | chi-g2 | q-lwb | q-upb | ce")
        ->required();
    sweep->add_option("--out", sweep_out, "output file path")->required();
    sweep->add_option("--grid-step", sweep_step, "grid step for both axes (default 0.02)");
    sweep->add_option("--eta-min", sweep_eta_min, "grid start for eta (default 0)");
    sweep->add_option("--eta-max", sweep_eta_max, "grid end for eta (default 1)");
    sweep->add_option("--mu-min", sweep_mu_min, "grid start for mu (default 0)");
    sweep->add_option("--mu-max", sweep_mu_max, "grid end for mu (default 1)");
    sweep->add_option("--jobs", sweep_jobs, "worker threads (default: available parallelism)");
    sweep->add_flag("--json", sweep_json, "write JSON instead of CSV");
    sweep->add_flag("--phase-search", sweep_phase, "search the G1 phases as well");
    sweep_opt.attach(sweep);

    // ---- check ----
    auto* check = app.add_subcommand("check", "representation agreement and covariance residuals");
    long check_trials = 1000;
    OptFlags check_opt;
    check->add_option("--trials", check_trials, "random inputs to test (default 1000)");
    check_opt.attach(check);

    // ---- thresholds ----
    auto* thresholds =
        app.add_subcommand("thresholds", "memory-degree thresholds per transmissivity");
    std::vector<double> th_etas;
    OptFlags th_opt;
    thresholds->add_option("--eta", th_etas, "transmissivities (default 0 0.1 ... 0.9)");
    th_opt.attach(thresholds);

    // ---- additivity ----
    auto* additivity =
        app.add_subcommand("additivity", "both bounds at mu=0 against twice the single-use value");
    std::vector<double> add_etas;
    OptFlags add_opt;
    additivity->add_option("--eta", add_etas, "transmissivities (default 0.2 0.5 0.8)");
    add_opt.attach(additivity);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (point->parsed()) {
            const cli::Quantity q = cli::parse_quantity(point_quantity);
            const CapacityPoint pt = cli::evaluate_quantity(
                q, ChannelParams(point_eta, point_mu), point_opt.resolve(), point_phase);
            if (point_json)
                std::cout << cli::point_to_json(q, pt).dump(2) << "\n";
            else
                print_point_human(q, pt);
        } else if (sweep->parsed()) {
            cli::SweepSpec spec;
            spec.quantity = cli::parse_quantity(sweep_quantity);
            spec.eta_min = sweep_eta_min;
            spec.eta_max = sweep_eta_max;
            spec.mu_min = sweep_mu_min;
            spec.mu_max = sweep_mu_max;
            spec.step = sweep_step;
            spec.output_path = sweep_out;
            spec.format = sweep_json ? cli::SweepSpec::Format::json : cli::SweepSpec::Format::csv;
            spec.jobs = sweep_jobs;
            spec.opt = sweep_opt.resolve();
            spec.phase_search = sweep_phase;
            cli::run_sweep_to_file(spec);
        } else if (check->parsed()) {
            const OptimizerConfig cfg = check_opt.resolve();
            const cli::CheckReport rep = cli::run_check(check_trials, cfg.seed);
            std::printf("trials                    %ld\n", rep.trials);
            std::printf("system triple agreement   %.3e\n", rep.system_triple);
            std::printf("environment agreement     %.3e\n", rep.environment_pair);
            std::printf("covariance (sign flips)   %.3e\n", rep.covariance_r);
            std::printf("covariance (swap)         %.3e\n", rep.covariance_swap);
            std::printf("trace defect              %.3e\n", rep.trace_defect);
            std::printf("smallest eigenvalue       %.3e\n", rep.min_eigenvalue);
            std::printf("%s\n", rep.pass() ? "all residuals within 1e-12" : "CHECK FAILED");
            return rep.pass() ? 0 : 1;
        } else if (thresholds->parsed()) {
            if (th_etas.empty())
                for (int k = 0; k < 10; ++k) th_etas.push_back(0.1 * k);
            const auto rows = cli::threshold_table(th_etas, th_opt.resolve());
            std::printf("%-8s %-14s %-14s\n", "eta", "mu_th_g2", "mu_bar_th_q");
            for (const auto& r : rows)
                std::printf("%-8s %-14s %-14s\n", cli::format_value(r.eta).c_str(),
                            fmt_opt(r.mu_th_g2).c_str(), fmt_opt(r.mu_bar_th_q).c_str());
        } else if (additivity->parsed()) {
            if (add_etas.empty()) add_etas = {0.2, 0.5, 0.8};
            const OptimizerConfig cfg = add_opt.resolve();
            std::printf("%-8s %-16s %-16s %-16s %s\n", "eta", "chi*_g1(mu=0)", "chi*_g2(mu=0)",
                        "2*single-use", "verdict");
            for (double eta : add_etas) {
                const AdditivityReport rep = c2_additivity_probe(eta, cfg);
                std::printf("%-8s %-16s %-16s %-16s %s\n", cli::format_value(rep.eta).c_str(),
                            cli::format_value(rep.chi_g1).c_str(),
                            cli::format_value(rep.chi_g2).c_str(),
                            cli::format_value(rep.two_single_use).c_str(), rep.verdict.c_str());
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

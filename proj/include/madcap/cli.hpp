// cli.hpp — library side of the command-line front end: grid sweeps with a
// worker pool, CSV/JSON serialization of capacity points, the representation
// self-check, and the threshold table. tools/madcap.cpp is a thin argv layer
// over these.

#pragma once

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "madcap/capacity.hpp"
#include "madcap/random_states.hpp"

namespace madcap::cli {

enum class Quantity { chi_g1, chi_g2, q_lwb, q_upb, ce };

inline std::string to_string(Quantity q) {
    switch (q) {
        case Quantity::chi_g1: return "chi-g1";
        case Quantity::chi_g2: return "chi-g2";
        case Quantity::q_lwb: return "q-lwb";
        case Quantity::q_upb: return "q-upb";
        case Quantity::ce: return "ce";
    }
    throw std::logic_error("to_string: bad quantity");
}

inline Quantity parse_quantity(const std::string& s) {
    if (s == "chi-g1") return Quantity::chi_g1;
    if (s == "chi-g2") return Quantity::chi_g2;
    if (s == "q-lwb") return Quantity::q_lwb;
    if (s == "q-upb") return Quantity::q_upb;
    if (s == "ce") return Quantity::ce;
    throw std::invalid_argument("unknown quantity '" + s + "' (chi-g1, chi-g2, q-lwb, q-upb, ce)");
}

inline CapacityPoint evaluate_quantity(Quantity q, const ChannelParams& p,
                                       const OptimizerConfig& cfg, bool phase_search = false) {
    switch (q) {
        case Quantity::chi_g1: return chi_lwb_g1(p, cfg, phase_search);
        case Quantity::chi_g2: return chi_lwb_g2(p, cfg);
        case Quantity::q_lwb: return q_lwb(p, cfg);
        case Quantity::q_upb: return q_upb_point(p, cfg);
        case Quantity::ce: return entanglement_assisted(p, cfg);
    }
    throw std::logic_error("evaluate_quantity: bad quantity");
}

// ------------------------------------------------------------------ sweeps ---

struct SweepSpec {
    Quantity quantity = Quantity::chi_g1;
    double eta_min = 0.0, eta_max = 1.0;
    double mu_min = 0.0, mu_max = 1.0;
    double step = 0.02;
    std::string output_path;
    enum class Format { csv, json } format = Format::csv;
    int jobs = 0;  // 0 = hardware concurrency
    OptimizerConfig opt;
    bool phase_search = false;

    void validate() const {
        if (step <= 0.0) throw std::invalid_argument("sweep: step must be positive");
        if (eta_min < 0.0 || eta_max > 1.0 || mu_min < 0.0 || mu_max > 1.0 ||
            eta_min > eta_max || mu_min > mu_max)
            throw std::invalid_argument("sweep: grids must lie inside [0,1]");
    }
};

inline std::vector<double> make_grid(double lo, double hi, double step) {
    std::vector<double> g;
    for (long k = 0;; ++k) {
        double v = lo + static_cast<double>(k) * step;
        if (v > hi + 0.5 * step) break;
        if (std::abs(v - hi) < 1e-12 || v > hi) v = hi;
        g.push_back(v);
        if (v == hi) break;
    }
    return g;
}

// Run every grid point on a small worker pool. Each point gets its own seed
// derived from (base seed, eta index, mu index), so results do not depend on
// scheduling; rows come back in grid order.
inline std::vector<CapacityPoint> run_grid(const SweepSpec& spec) {
    spec.validate();
    const std::vector<double> etas = make_grid(spec.eta_min, spec.eta_max, spec.step);
    const std::vector<double> mus = make_grid(spec.mu_min, spec.mu_max, spec.step);
    const size_t n = etas.size() * mus.size();
    std::vector<CapacityPoint> out(n);

    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error;
    std::mutex error_mutex;

    auto work = [&] {
        for (;;) {
            const size_t k = next.fetch_add(1);
            if (k >= n || failed.load()) break;
            const size_t ie = k / mus.size(), im = k % mus.size();
            try {
                OptimizerConfig cfg = spec.opt;
                cfg.seed = mix_seed(spec.opt.seed, ie, im);
                out[k] = evaluate_quantity(spec.quantity, ChannelParams(etas[ie], mus[im]), cfg,
                                           spec.phase_search);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                failed.store(true);
                if (error.empty()) error = e.what();
            }
        }
    };

    int jobs = spec.jobs > 0 ? spec.jobs
                             : std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<int>(std::min<size_t>(static_cast<size_t>(jobs), n));
    if (jobs <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(jobs));
        for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    if (failed.load()) throw std::runtime_error("sweep failed: " + error);
    return out;
}

// ----------------------------------------------------------- serialization ---

inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::vector<std::string> argmax_column_names(Quantity q) {
    switch (q) {
        case Quantity::chi_g1: return {"abar", "bbar", "cbar", "phi1", "phi2", "phi3"};
        case Quantity::chi_g2: return {"beta", "theta1", "theta2", "phi1", "phi2"};
        case Quantity::q_lwb:
        case Quantity::ce: return {"alpha", "beta", "gamma", "delta"};
        case Quantity::q_upb: return {};
    }
    throw std::logic_error("argmax_column_names: bad quantity");
}

inline std::vector<double> argmax_values(const CapacityPoint& pt) {
    if (const G1Params* g = std::get_if<G1Params>(&pt.argmax))
        return {g->abar, g->bbar, g->cbar, g->phi1, g->phi2, g->phi3};
    if (const G2Params* g = std::get_if<G2Params>(&pt.argmax))
        return {g->beta, g->theta1, g->theta2, g->phi1, g->phi2};
    if (const Populations* g = std::get_if<Populations>(&pt.argmax))
        return {g->alpha, g->beta, g->gamma, g->delta};
    return {};
}

inline std::string csv_header(Quantity q) {
    std::string h = "eta,mu,value";
    for (const std::string& c : argmax_column_names(q)) h += "," + c;
    return h + ",evals,converged";
}

inline void write_csv(std::ostream& os, Quantity q, const std::vector<CapacityPoint>& pts) {
    os << csv_header(q) << "\n";
    for (const CapacityPoint& pt : pts) {
        os << format_value(pt.eta) << "," << format_value(pt.mu) << "," << format_value(pt.value);
        for (double v : argmax_values(pt)) os << "," << format_value(v);
        os << "," << pt.evals << "," << (pt.converged ? 1 : 0) << "\n";
    }
}

inline nlohmann::json point_to_json(Quantity q, const CapacityPoint& pt) {
    nlohmann::json j;
    j["eta"] = pt.eta;
    j["mu"] = pt.mu;
    j["value"] = pt.value;
    const auto names = argmax_column_names(q);
    const auto vals = argmax_values(pt);
    for (size_t i = 0; i < names.size() && i < vals.size(); ++i) j[names[i]] = vals[i];
    j["evals"] = pt.evals;
    j["converged"] = pt.converged;
    return j;
}

inline void write_json(std::ostream& os, Quantity q, const std::vector<CapacityPoint>& pts) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CapacityPoint& pt : pts) arr.push_back(point_to_json(q, pt));
    os << arr.dump(2) << "\n";
}

// Parse rows written by write_csv; used by the round-trip checks.
struct CsvRow {
    double eta, mu, value;
    std::vector<double> argmax;
    long evals;
    bool converged;
};

inline std::vector<CsvRow> read_csv(std::istream& is) {
    std::vector<CsvRow> rows;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("read_csv: empty file");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < 5) throw std::runtime_error("read_csv: short row");
        CsvRow r;
        r.eta = std::stod(cells[0]);
        r.mu = std::stod(cells[1]);
        r.value = std::stod(cells[2]);
        for (size_t i = 3; i + 2 < cells.size(); ++i) r.argmax.push_back(std::stod(cells[i]));
        r.evals = std::stol(cells[cells.size() - 2]);
        r.converged = cells.back() == "1";
        rows.push_back(std::move(r));
    }
    return rows;
}

// Emit the sweep to its output file; a partially written file is removed on
// failure.
inline void run_sweep_to_file(const SweepSpec& spec) {
    const std::vector<CapacityPoint> pts = run_grid(spec);
    std::ofstream os(spec.output_path);
    if (!os) throw std::runtime_error("cannot open output file: " + spec.output_path);
    try {
        if (spec.format == SweepSpec::Format::csv)
            write_csv(os, spec.quantity, pts);
        else
            write_json(os, spec.quantity, pts);
        os.flush();
        if (!os) throw std::runtime_error("write failed: " + spec.output_path);
    } catch (...) {
        os.close();
        std::error_code ec;
        std::filesystem::remove(spec.output_path, ec);
        throw;
    }
}

// -------------------------------------------------------------- self-check ---

// Residuals of the representation agreements and covariance identities on
// fresh random inputs. Everything here must sit at machine precision; the
// pass line is 1e-12.
struct CheckReport {
    long trials = 0;
    double system_triple = 0.0;   // Kraus vs closed form vs dilation (system)
    double environment_pair = 0.0;  // closed form vs dilation (environment)
    double covariance_r = 0.0;
    double covariance_swap = 0.0;
    double trace_defect = 0.0;
    double min_eigenvalue = 0.0;

    bool pass() const {
        const double worst = std::max({system_triple, environment_pair, covariance_r,
                                       covariance_swap, trace_defect});
        return worst <= 1e-12 && min_eigenvalue >= -1e-10;
    }
};

inline CheckReport run_check(long trials, uint64_t seed) {
    SplitMix64 rng(seed);
    CheckReport rep;
    rep.trials = trials;
    const CovarianceOps cov = covariance_ops();

    for (long t = 0; t < trials; ++t) {
        const ChannelParams p(rng.uniform(), rng.uniform());

        // Random mixture of four pure states, kept explicit so the dilation
        // path can act member by member.
        std::vector<PureState> members;
        std::vector<double> weights;
        double wsum = 0.0;
        for (int k = 0; k < 4; ++k) {
            members.push_back(random_pure_state(rng, 4));
            weights.push_back(rng.uniform() + 1e-9);
            wsum += weights.back();
        }
        Matrix rho_m(4);
        for (int k = 0; k < 4; ++k) {
            weights[static_cast<size_t>(k)] /= wsum;
            rho_m += cplx(weights[static_cast<size_t>(k)]) *
                     outer_projector(members[static_cast<size_t>(k)].amps());
        }
        const DensityMatrix rho = DensityMatrix::from_matrix(rho_m);

        const DensityMatrix out_kraus = apply_mu(rho, p);
        const DensityMatrix out_closed = system_output_closed_form(rho, p);
        const DensityMatrix env_closed = environment_output_closed_form(rho, p);

        Matrix out_dilation(4), env_dilation(8);
        for (int k = 0; k < 4; ++k) {
            const PureState evolved = dilation_evolve(members[static_cast<size_t>(k)], p);
            const DensityMatrix joint = DensityMatrix::pure(evolved);
            const cplx w = weights[static_cast<size_t>(k)];
            out_dilation += w * partial_trace(joint, {4, 4, 2}, {0}).matrix();
            env_dilation += w * partial_trace(joint, {4, 4, 2}, {1, 2}).matrix();
        }

        rep.system_triple = std::max({rep.system_triple,
                                      max_abs_diff(out_kraus.matrix(), out_closed.matrix()),
                                      max_abs_diff(out_closed.matrix(), out_dilation)});
        rep.environment_pair =
            std::max(rep.environment_pair, max_abs_diff(env_closed.matrix(), env_dilation));

        for (const Matrix* u : {&cov.r1, &cov.r2, &cov.r3, &cov.swap}) {
            const DensityMatrix conj_in =
                DensityMatrix::from_matrix((*u) * rho.matrix() * (*u));
            const double res = max_abs_diff(apply_mu(conj_in, p).matrix(),
                                            (*u) * out_kraus.matrix() * (*u));
            double& slot = (u == &cov.swap) ? rep.covariance_swap : rep.covariance_r;
            slot = std::max(slot, res);
        }

        rep.trace_defect =
            std::max({rep.trace_defect, std::abs(out_kraus.matrix().trace() - 1.0),
                      std::abs(env_closed.matrix().trace() - 1.0)});
        const auto evs = hermitian_eigenvalues(out_kraus.matrix());
        const auto evs_env = hermitian_eigenvalues(env_closed.matrix());
        rep.min_eigenvalue = std::min({rep.min_eigenvalue, evs.front(), evs_env.front()});
    }
    return rep;
}

// ---------------------------------------------------------- threshold table ---

struct ThresholdRow {
    double eta;
    std::optional<double> mu_th_g2;
    std::optional<double> mu_bar_th_q;
};

inline std::vector<ThresholdRow> threshold_table(const std::vector<double>& etas,
                                                 const OptimizerConfig& cfg) {
    std::vector<ThresholdRow> rows;
    rows.reserve(etas.size());
    for (double eta : etas)
        rows.push_back({eta, find_g2_population_threshold(eta, cfg), find_q_threshold(eta, cfg)});
    return rows;
}

}  // namespace madcap::cli

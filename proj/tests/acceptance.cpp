// acceptance — integration gate for the library. Each numbered criterion runs
// at its stated tolerance and prints one pass/fail line with the measured
// values; the exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "madcap/madcap.hpp"

using namespace madcap;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail,
            double elapsed) {
    std::printf("[%s] %2d. %-28s %s  [%.1f s]\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                detail.c_str(), elapsed);
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double v) { return cli::format_value(v); }

constexpr uint64_t kBaseSeed = 20240;
const double kLog2Of3 = std::log2(3.0);

OptimizerConfig default_cfg(uint64_t salt) {
    OptimizerConfig cfg;
    cfg.seed = mix_seed(kBaseSeed, salt, 0);
    return cfg;
}

struct Surface {
    std::vector<double> etas, mus;
    std::vector<CapacityPoint> pts;  // row-major over (eta, mu)

    const CapacityPoint& at(size_t ie, size_t im) const { return pts[ie * mus.size() + im]; }
};

Surface sweep_surface(cli::Quantity q, uint64_t salt) {
    cli::SweepSpec spec;
    spec.quantity = q;
    spec.opt.seed = mix_seed(kBaseSeed, salt, 1);
    Surface s;
    s.etas = cli::make_grid(0.0, 1.0, 0.02);
    s.mus = cli::make_grid(0.0, 1.0, 0.02);
    s.pts = cli::run_grid(spec);
    return s;
}

// ------------------------------------------------------------ criterion 1 ---

void criterion_1() {
    const auto t0 = clock_type::now();
    const cli::CheckReport rep = cli::run_check(1000, mix_seed(kBaseSeed, 1, 2));
    const double elapsed = seconds_since(t0);
    const bool pass = rep.system_triple <= 1e-12 && rep.environment_pair <= 1e-12 &&
                      elapsed < 10.0;
    report(1, "representation agreement",
           pass,
           "1000 random (rho, eta, mu): system " + fmt(rep.system_triple) + ", environment " +
               fmt(rep.environment_pair) + " (limit 1e-12)",
           elapsed);
}

// ------------------------------------------------------------ criterion 2 ---

void criterion_2() {
    const auto t0 = clock_type::now();
    SplitMix64 rng(mix_seed(kBaseSeed, 2, 3));
    std::vector<DensityMatrix> states;
    for (int i = 0; i < 200; ++i) states.push_back(random_density(rng, 4));
    std::vector<ChannelParams> params;
    for (int i = 0; i < 20; ++i) params.emplace_back(rng.uniform(), rng.uniform());

    const CovarianceOps cov = covariance_ops();
    double worst_r = 0.0, worst_swap = 0.0;
    for (const DensityMatrix& rho : states)
        for (const ChannelParams& p : params) {
            const Matrix out = system_output_closed_form(rho, p).matrix();
            for (const Matrix* u : {&cov.r1, &cov.r2, &cov.r3, &cov.swap}) {
                const DensityMatrix conj_in =
                    DensityMatrix::from_matrix((*u) * rho.matrix() * (*u));
                const double res = max_abs_diff(system_output_closed_form(conj_in, p).matrix(),
                                                (*u) * out * (*u));
                double& slot = (u == &cov.swap) ? worst_swap : worst_r;
                slot = std::max(slot, res);
            }
        }
    const bool pass = worst_r <= 1e-12 && worst_swap <= 1e-12;
    report(2, "covariance residuals", pass,
           "200 states x 20 params: sign flips " + fmt(worst_r) + ", swap " + fmt(worst_swap) +
               " (limit 1e-12)",
           seconds_since(t0));
}

// ------------------------------------------------------------ criterion 3 ---

void criterion_3() {
    const auto t0 = clock_type::now();
    double worst = 0.0;
    for (double mu : {0.0, 0.5, 1.0}) {
        const ChannelParams p(1.0, mu);
        worst = std::max(worst, std::abs(chi_lwb_g1(p, default_cfg(31)).value - 2.0));
        worst = std::max(worst, std::abs(chi_lwb_g2(p, default_cfg(32)).value - 2.0));
        worst = std::max(worst, std::abs(q_lwb(p, default_cfg(33)).value - 2.0));
        worst = std::max(worst, std::abs(q_upb(p, default_cfg(34)) - 2.0));
        worst = std::max(worst,
                         std::abs(entanglement_assisted(p, default_cfg(35)).value - 4.0));
    }
    report(3, "noiseless limits", worst <= 1e-5,
           "eta=1: worst deviation from {2, 2, 2, 2, 4} is " + fmt(worst) + " (limit 1e-5)",
           seconds_since(t0));
}

// ------------------------------------------------------------ criterion 4 ---

void criterion_4() {
    const auto t0 = clock_type::now();
    const ChannelParams dead(0.0, 0.0);
    double worst_dead = 0.0;
    worst_dead = std::max(worst_dead, chi_lwb_g1(dead, default_cfg(41)).value);
    worst_dead = std::max(worst_dead, chi_lwb_g2(dead, default_cfg(42)).value);
    worst_dead = std::max(worst_dead, q_lwb(dead, default_cfg(43)).value);
    worst_dead = std::max(worst_dead, q_upb(dead, default_cfg(44)));
    worst_dead = std::max(worst_dead, entanglement_assisted(dead, default_cfg(45)).value);

    const ChannelParams full(0.0, 1.0);
    const double chi1 = chi_lwb_g1(full, default_cfg(46)).value;
    const double qv = q_lwb(full, default_cfg(47)).value;
    const double ce = entanglement_assisted(full, default_cfg(48)).value;

    // Dense simplex oracle for C_E at (0, 1) over (alpha, 2 beta, delta).
    double grid_best = 0.0;
    const int n = 800;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) {
            const double alpha = static_cast<double>(i) / n;
            const double two_beta = static_cast<double>(j) / n;
            const std::array<double, 4> pop{alpha, 0.5 * two_beta, 0.5 * two_beta,
                                            std::max(0.0, 1.0 - alpha - two_beta)};
            grid_best =
                std::max(grid_best, detail::entropy4(pop) + detail::ic_diagonal(pop, 0.0, 1.0));
        }

    const bool pass = worst_dead <= 1e-6 && std::abs(chi1 - kLog2Of3) <= 1e-3 &&
                      std::abs(qv - kLog2Of3) <= 1e-3 && ce >= 3.0 &&
                      std::abs(ce - grid_best) <= 1e-4;
    report(4, "dead-channel limits", pass,
           "(0,0) worst " + fmt(worst_dead) + "; (0,1) chi_g1 " + fmt(chi1) + ", q_lwb " +
               fmt(qv) + " (log2 3 = " + fmt(kLog2Of3) + "), ce " + fmt(ce) + " vs grid " +
               fmt(grid_best),
           seconds_since(t0));
}

// ------------------------------------------------------------ criterion 5 ---

void criterion_5() {
    const auto t0 = clock_type::now();
    bool pass = true;
    std::string detail;
    for (double eta : {0.2, 0.5, 0.8}) {
        const AdditivityReport rep = c2_additivity_probe(eta, default_cfg(51));
        const double gap_g1 = std::abs(rep.chi_g1 - rep.two_single_use);
        const double margin_g2 = rep.two_single_use - rep.chi_g2;
        if (gap_g1 > 1e-4 || margin_g2 < 1e-6) pass = false;
        detail += "eta=" + fmt(eta) + ": |g1-2C1|=" + fmt(gap_g1) + ", 2C1-g2=" + fmt(margin_g2) +
                  "; ";
    }
    report(5, "additivity probe (mu=0)", pass, detail, seconds_since(t0));
}

// ------------------------------------------------------------ criterion 6 ---

void criterion_6(const Surface& qlo, const Surface& qup) {
    const auto t0 = clock_type::now();
    bool pass = true;
    std::string detail;

    // No threshold for eta in {0.6, 0.7, 0.8, 0.9}.
    for (double eta : {0.6, 0.7, 0.8, 0.9})
        if (find_q_threshold(eta, default_cfg(61)).has_value()) {
            pass = false;
            detail += "unexpected threshold at eta=" + fmt(eta) + "; ";
        }

    // Zero below the threshold on every eta <= 0.5 grid row.
    double worst_below = 0.0;
    for (size_t ie = 0; ie < qlo.etas.size() && qlo.etas[ie] <= 0.5 + 1e-12; ++ie) {
        const auto th = find_q_threshold(qlo.etas[ie], default_cfg(62));
        const double cut = th.value_or(0.0);
        for (size_t im = 0; im < qlo.mus.size(); ++im)
            if (qlo.mus[im] <= cut) worst_below = std::max(worst_below, qlo.at(ie, im).value);
    }
    if (worst_below > 1e-9) pass = false;

    // Sandwich on the full default grid.
    double worst_gap = 0.0;
    for (size_t k = 0; k < qlo.pts.size(); ++k)
        worst_gap = std::max(worst_gap, qlo.pts[k].value - qup.pts[k].value);
    if (worst_gap > 1e-6) pass = false;

    report(6, "quantum-capacity threshold", pass,
           detail + "below-threshold max " + fmt(worst_below) +
               "; max(q_lwb - q_upb) = " + fmt(worst_gap) + " (limit 1e-6)",
           seconds_since(t0));
}

// ------------------------------------------------------------ criterion 7 ---

void criterion_7(const Surface& g1, const Surface& g2) {
    const auto t0 = clock_type::now();

    // (a) G1 dominates up to mu = 0.7 everywhere on the grid.
    double worst_a = 0.0;
    size_t wa_ie = 0, wa_im = 0;
    for (size_t ie = 0; ie < g1.etas.size(); ++ie)
        for (size_t im = 0; im < g1.mus.size() && g1.mus[im] <= 0.7 + 1e-12; ++im) {
            const double gap = g2.at(ie, im).value - g1.at(ie, im).value;
            if (gap > worst_a) {
                worst_a = gap;
                wa_ie = ie;
                wa_im = im;
            }
        }
    const bool pass_a = worst_a <= 1e-4;

    // (b) G2 catches up somewhere at mu >= 0.8 for every eta <= 0.9.
    bool pass_b = true;
    for (size_t ie = 0; ie < g1.etas.size() && g1.etas[ie] <= 0.9 + 1e-12; ++ie) {
        bool found = false;
        for (size_t im = 0; im < g1.mus.size(); ++im)
            if (g1.mus[im] >= 0.8 - 1e-12 &&
                g2.at(ie, im).value >= g1.at(ie, im).value - 1e-4)
                found = true;
        if (!found) pass_b = false;
    }

    // (c) Both bounds nondecreasing in mu along every eta row.
    double worst_dip = 0.0;
    for (const Surface* s : {&g1, &g2})
        for (size_t ie = 0; ie < s->etas.size(); ++ie)
            for (size_t im = 1; im < s->mus.size(); ++im)
                worst_dip = std::max(worst_dip,
                                     s->at(ie, im - 1).value - s->at(ie, im).value);
    const bool pass_c = worst_dip <= 1e-4;

    report(7, "chi-surface structure", pass_a && pass_b && pass_c,
           "G1>=G2 (mu<=0.7): worst G2-G1 = " + fmt(worst_a) + " at (eta=" + fmt(g1.etas[wa_ie]) +
               ", mu=" + fmt(g1.mus[wa_im]) + ")" + (pass_a ? "" : " VIOLATED") +
               "; late G2 catch-up " + (pass_b ? "ok" : "MISSING") +
               "; worst monotonicity dip " + fmt(worst_dip),
           seconds_since(t0));
}

// ------------------------------------------------------------ criterion 8 ---

void criterion_8(const Surface& qlo, const Surface& ce) {
    const auto t0 = clock_type::now();

    double worst_bg = 0.0, worst_delta = 0.0;
    for (size_t ie = 0; ie < qlo.etas.size(); ++ie)
        for (size_t im = 0; im < qlo.mus.size(); ++im) {
            const Populations& p = std::get<Populations>(qlo.at(ie, im).argmax);
            worst_bg = std::max(worst_bg, std::abs(p.beta - p.gamma));
            if (qlo.etas[ie] <= 0.5 + 1e-12) worst_delta = std::max(worst_delta, p.delta);
        }
    double worst_bg_ce = 0.0;
    for (const CapacityPoint& pt : ce.pts) {
        const Populations& p = std::get<Populations>(pt.argmax);
        worst_bg_ce = std::max(worst_bg_ce, std::abs(p.beta - p.gamma));
    }

    const auto th03 = find_g2_population_threshold(0.3, default_cfg(81));
    const auto th05 = find_g2_population_threshold(0.5, default_cfg(82));
    const bool th_ok = th03.has_value() && (!th05.has_value() || *th03 > *th05);

    const bool pass =
        worst_bg <= 1e-4 && worst_bg_ce <= 1e-4 && worst_delta <= 1e-4 && th_ok;
    report(8, "population structure", pass,
           "max|beta-gamma|: q_lwb " + fmt(worst_bg) + ", ce " + fmt(worst_bg_ce) +
               "; max delta (eta<=0.5) " + fmt(worst_delta) + "; g2 thresholds mu_th(0.3)=" +
               (th03 ? fmt(*th03) : "none") + " > mu_th(0.5)=" + (th05 ? fmt(*th05) : "none"),
           seconds_since(t0));
}

// ------------------------------------------------------------ criterion 9 ---

void criterion_9(const Surface& g1, const Surface& g2) {
    const auto t0 = clock_type::now();
    const auto find_eta = [](const Surface& s, double eta) {
        for (size_t ie = 0; ie < s.etas.size(); ++ie)
            if (std::abs(s.etas[ie] - eta) < 1e-9) return ie;
        throw std::logic_error("eta row missing from the default grid");
    };

    // (a) G1 optimal ensembles stay nearly separable at eta = 0.8.
    const size_t row8 = find_eta(g1, 0.8);
    double worst_g1 = 0.0;
    for (size_t im = 0; im < g1.mus.size(); ++im)
        worst_g1 = std::max(worst_g1, average_entanglement(build_g1(std::get<G1Params>(
                                          g1.at(row8, im).argmax))));
    const bool pass_a = worst_g1 <= 0.05;

    // (b) G2 optimal ensembles are highly entangled at eta = 0.8, mu >= 0.5.
    double min_g2 = 1.0;
    for (size_t im = 0; im < g2.mus.size(); ++im)
        if (g2.mus[im] >= 0.5 - 1e-12)
            min_g2 = std::min(min_g2, average_entanglement(build_g2(std::get<G2Params>(
                                          g2.at(row8, im).argmax))));
    const bool pass_b = min_g2 >= 0.5;

    // (c) G2 entanglement vanishes below the population threshold at eta = 0.3.
    const size_t row3 = find_eta(g2, 0.3);
    const auto th = find_g2_population_threshold(0.3, default_cfg(91));
    double worst_below = 0.0;
    if (th.has_value()) {
        for (size_t im = 0; im < g2.mus.size(); ++im)
            if (g2.mus[im] < *th)
                worst_below = std::max(worst_below, average_entanglement(build_g2(
                                           std::get<G2Params>(g2.at(row3, im).argmax))));
    }
    const bool pass_c = th.has_value() && worst_below <= 1e-6;

    report(9, "entanglement diagnostics", pass_a && pass_b && pass_c,
           "eta=0.8: max E_g1 = " + fmt(worst_g1) + " (limit 0.05)" +
               (pass_a ? "" : " VIOLATED") + ", min E_g2 (mu>=0.5) = " + fmt(min_g2) +
               " (limit 0.5)" + (pass_b ? "" : " VIOLATED") + "; eta=0.3 below-threshold E = " +
               fmt(worst_below),
           seconds_since(t0));
}

// ----------------------------------------------------------- criterion 10 ---

void criterion_10() {
    const auto t0 = clock_type::now();
    SplitMix64 rng(mix_seed(kBaseSeed, 10, 4));
    const double half_pi = 0.5 * std::acos(-1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const ChannelParams p(rng.uniform(), rng.uniform());
        OptimizerConfig cfg = default_cfg(101 + static_cast<uint64_t>(trial));
        const double opt = chi_lwb_g2(p, cfg).value;

        double grid_best = 0.0;
        const int n = 399;  // 400 points per axis
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                G2Params g;
                g.beta = 0.5 * i / n;
                g.theta2 = half_pi * j / n;
                grid_best = std::max(grid_best, detail::chi_g2_value(p.eta, p.mu, g));
            }
        worst = std::max(worst, std::abs(opt - grid_best));
    }
    report(10, "optimizer vs grid scan", worst <= 1e-3,
           "10 random points, 400x400 grids: worst |opt - grid| = " + fmt(worst) +
               " (limit 1e-3)",
           seconds_since(t0));
}

}  // namespace

int main() {
    const auto t_all = clock_type::now();

    std::printf("madcap acceptance suite (default grid 51x51, base seed %llu)\n",
                static_cast<unsigned long long>(kBaseSeed));

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();

    const auto t_sweeps = clock_type::now();
    const Surface g1 = sweep_surface(cli::Quantity::chi_g1, 71);
    const Surface g2 = sweep_surface(cli::Quantity::chi_g2, 72);
    const Surface qlo = sweep_surface(cli::Quantity::q_lwb, 73);
    const Surface qup = sweep_surface(cli::Quantity::q_upb, 74);
    const Surface ce = sweep_surface(cli::Quantity::ce, 75);
    std::printf("       default-grid sweeps (chi-g1, chi-g2, q-lwb, q-upb, ce): %.1f s\n",
                seconds_since(t_sweeps));

    criterion_6(qlo, qup);
    criterion_7(g1, g2);
    criterion_8(qlo, ce);
    criterion_9(g1, g2);
    criterion_10();

    std::printf("%d of 10 criteria passed, total %.1f s\n", 10 - failures,
                seconds_since(t_all));
    return failures;
}

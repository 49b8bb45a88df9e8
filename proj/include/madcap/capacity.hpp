// capacity.hpp — the information-theoretic quantities and their constrained
// maximizations: the Holevo quantity and its two ensemble-family lower bounds,
// coherent information over diagonal inputs, quantum-capacity lower and upper
// bounds, the entanglement-assisted classical capacity, and the two threshold
// finders. All maximizations run through optimize::maximize.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>

#include "madcap/channel.hpp"
#include "madcap/ensembles.hpp"
#include "madcap/optimize.hpp"
#include "madcap/qmat.hpp"

namespace madcap {

// Diagonal two-qubit input state, the domain of the coherent-information
// maximization.
struct DiagonalInput {
    Populations pop;
};

using ArgmaxParams = std::variant<std::monostate, G1Params, G2Params, Populations>;

// One optimized value at one grid point; the unit of every sweep row.
struct CapacityPoint {
    double eta = 0.0;
    double mu = 0.0;
    double value = 0.0;      // floored at zero where the bound demands it
    double raw_value = 0.0;  // best objective before flooring (diagnostics)
    ArgmaxParams argmax;
    long evals = 0;
    int restarts_used = 0;
    bool converged = true;
};

// --------------------------------------------------------- scalar kernels ---

namespace detail {

inline double entropy4(const std::array<double, 4>& p) {
    return entropy_term(p[0]) + entropy_term(p[1]) + entropy_term(p[2]) + entropy_term(p[3]);
}

// Output entropy of a pure two-qubit input, via the closed form.
inline double output_entropy_pure(const PureState& psi, double eta, double mu) {
    const Matrix rho = outer_projector(psi.amps());
    const Matrix out = system_output_matrix(rho, eta, mu);
    return entropy_of_spectrum(jacobi_hermitian(out, false).values);
}

// Holevo quantity of a G1 ensemble. All eight orbit states share one output
// entropy (covariance), so a single seed-state evaluation suffices; the
// ensemble density operator is diagonal with the G1 populations.
inline double chi_g1_value(double eta, double mu, const G1Params& g) {
    const PureState seed = g.seed_state();
    const double s_ens = entropy4(damped_diagonal(g1_populations(g).as_array(), eta, mu));
    return s_ens - output_entropy_pure(seed, eta, mu);
}

// Holevo quantity of a G2 ensemble, fully closed-form: each member's output
// splits into a 2x2 block plus two scalars.
inline double chi_g2_value(double eta, double mu, const G2Params& g) {
    const double s_ens = entropy4(damped_diagonal(g2_populations(g).as_array(), eta, mu));

    // Pair inside span{|01>,|10>}: the block is rank one.
    const double c1 = std::cos(g.theta1), s1 = std::sin(g.theta1);
    const std::array<double, 4> low{0.0, c1 * c1, s1 * s1, 0.0};
    const auto o = damped_diagonal(low, eta, mu);
    const double w_low = ((1.0 - mu) * eta + mu) * c1 * s1;  // |rho'_{01,10}|
    const auto [l1, l2] = eigs2(o[1], o[2], cplx(w_low));
    const double s_phi =
        entropy_term(o[0]) + entropy_term(o[3]) + entropy_term(l1) + entropy_term(l2);

    // Pair inside span{|00>,|11>}.
    const double c2 = std::cos(g.theta2), s2 = std::sin(g.theta2);
    const std::array<double, 4> bell{c2 * c2, 0.0, 0.0, s2 * s2};
    const auto b = damped_diagonal(bell, eta, mu);
    const double w_bell = ((1.0 - mu) * eta + mu * std::sqrt(eta)) * c2 * s2;
    const auto [m1, m2] = eigs2(b[0], b[3], cplx(w_bell));
    const double s_bell =
        entropy_term(b[1]) + entropy_term(b[2]) + entropy_term(m1) + entropy_term(m2);

    return s_ens - 2.0 * g.beta * s_phi - (1.0 - 2.0 * g.beta) * s_bell;
}

inline double ic_diagonal(const std::array<double, 4>& pop, double eta, double mu) {
    return entropy4(damped_diagonal(pop, eta, mu)) - exchange_entropy_diagonal(pop, eta, mu);
}

// Single-qubit damping channel output entropy for upper-left populations
// (1-q, q) and real coherence k.
inline double single_use_output_entropy(double eta, double q, double k) {
    const auto [l1, l2] = eigs2(1.0 - eta * q, eta * q, cplx(std::sqrt(eta) * k));
    return entropy_term(l1) + entropy_term(l2);
}

}  // namespace detail

// ----------------------------------------------------------------- Holevo ---

// General-path Holevo quantity: output entropy of the ensemble density
// operator minus the average member output entropy. The ensemble-specific
// objectives above must agree with this to numerical precision.
inline double holevo(const ChannelParams& p, const Ensemble& e) {
    const DensityMatrix rho = ensemble_density(e);
    if (rho.dim() != 4) throw std::invalid_argument("holevo: states must be two-qubit");
    double chi = von_neumann_entropy(system_output_closed_form(rho, p));
    for (const Ensemble::Item& it : e.items)
        chi -= it.prob * detail::output_entropy_pure(it.state, p.eta, p.mu);
    return std::max(chi, 0.0);
}

// ------------------------------------------------------------ lower bounds ---

// Maximize the G1 Holevo quantity over the three seed amplitudes (plus the
// three phases when phase_search is set). The amplitude vector is projected
// back into the unit ball, where the remainder becomes the |11> amplitude.
inline CapacityPoint chi_lwb_g1(const ChannelParams& p, const OptimizerConfig& cfg,
                                bool phase_search = false) {
    const double two_pi = 2.0 * std::acos(-1.0);
    std::vector<double> lo{0.0, 0.0, 0.0}, hi{1.0, 1.0, 1.0};
    if (phase_search) {
        lo.insert(lo.end(), {0.0, 0.0, 0.0});
        hi.insert(hi.end(), {two_pi, two_pi, two_pi});
    }
    Domain dom = Domain::box(std::move(lo), std::move(hi));
    dom.project = [](std::vector<double>& x) {
        const double s = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        if (s > 1.0) {
            const double inv = 1.0 / std::sqrt(s);
            x[0] *= inv;
            x[1] *= inv;
            x[2] *= inv;
        }
    };

    auto unpack = [phase_search](const std::vector<double>& x) {
        G1Params g;
        g.abar = x[0];
        g.bbar = x[1];
        g.cbar = x[2];
        if (phase_search) {
            g.phi1 = x[3];
            g.phi2 = x[4];
            g.phi3 = x[5];
        }
        return g;
    };

    MaximizeResult r = maximize(
        [&](const std::vector<double>& x) { return detail::chi_g1_value(p.eta, p.mu, unpack(x)); },
        dom, cfg);

    CapacityPoint pt;
    pt.eta = p.eta;
    pt.mu = p.mu;
    pt.raw_value = r.f;
    pt.value = std::max(r.f, 0.0);
    pt.argmax = unpack(r.x);
    pt.evals = r.evals;
    pt.restarts_used = r.restarts_used;
    pt.converged = r.converged;
    return pt;
}

// Maximize the G2 Holevo quantity over (beta, theta2). theta1 and the phases
// do not move the value and stay at zero, which keeps the low subspace pair
// separable.
inline CapacityPoint chi_lwb_g2(const ChannelParams& p, const OptimizerConfig& cfg) {
    const double half_pi = 0.5 * std::acos(-1.0);
    Domain dom = Domain::box({0.0, 0.0}, {0.5, half_pi});

    MaximizeResult r = maximize(
        [&](const std::vector<double>& x) {
            G2Params g;
            g.beta = x[0];
            g.theta2 = x[1];
            return detail::chi_g2_value(p.eta, p.mu, g);
        },
        dom, cfg);

    CapacityPoint pt;
    pt.eta = p.eta;
    pt.mu = p.mu;
    pt.raw_value = r.f;
    pt.value = std::max(r.f, 0.0);
    G2Params g;
    g.beta = r.x[0];
    g.theta2 = r.x[1];
    pt.argmax = g;
    pt.evals = r.evals;
    pt.restarts_used = r.restarts_used;
    pt.converged = r.converged;
    return pt;
}

// ------------------------------------------------------- quantum capacity ---

// Coherent information of a diagonal input: entropy of the (still diagonal)
// system output minus the entropy exchange. May be negative.
inline double coherent_information(const DiagonalInput& d, const ChannelParams& p) {
    d.pop.validate();
    return detail::ic_diagonal(d.pop.as_array(), p.eta, p.mu);
}

// Maximize coherent information over the diagonal-input simplex, floored at
// zero. Pure basis inputs always reach exactly zero, so the floor only shows
// through the recorded raw value.
inline CapacityPoint q_lwb(const ChannelParams& p, const OptimizerConfig& cfg) {
    MaximizeResult r = maximize(
        [&](const std::vector<double>& x) {
            return detail::ic_diagonal({x[0], x[1], x[2], x[3]}, p.eta, p.mu);
        },
        Domain::simplex(4), cfg);

    CapacityPoint pt;
    pt.eta = p.eta;
    pt.mu = p.mu;
    pt.raw_value = r.f;
    pt.value = std::max(r.f, 0.0);
    pt.argmax = Populations{r.x[0], r.x[1], r.x[2], r.x[3]};
    pt.evals = r.evals;
    pt.restarts_used = r.restarts_used;
    pt.converged = r.converged;
    return pt;
}

enum class Endpoint { memoryless, full };

// Quantum capacity of an endpoint channel (mu = 0 or 1), where the diagonal
// maximization is known to reach the capacity.
inline double q_endpoint(double eta, Endpoint which, const OptimizerConfig& cfg = {}) {
    return q_lwb(ChannelParams(eta, which == Endpoint::memoryless ? 0.0 : 1.0), cfg).value;
}

// Convex-combination upper bound from the two endpoint capacities.
inline double q_upb(const ChannelParams& p, const OptimizerConfig& cfg = {}) {
    return (1.0 - p.mu) * q_endpoint(p.eta, Endpoint::memoryless, cfg) +
           p.mu * q_endpoint(p.eta, Endpoint::full, cfg);
}

inline CapacityPoint q_upb_point(const ChannelParams& p, const OptimizerConfig& cfg) {
    CapacityPoint lo = q_lwb(ChannelParams(p.eta, 0.0), cfg);
    CapacityPoint hi = q_lwb(ChannelParams(p.eta, 1.0), cfg);
    CapacityPoint pt;
    pt.eta = p.eta;
    pt.mu = p.mu;
    pt.value = (1.0 - p.mu) * lo.value + p.mu * hi.value;
    pt.raw_value = pt.value;
    pt.evals = lo.evals + hi.evals;
    pt.restarts_used = lo.restarts_used + hi.restarts_used;
    pt.converged = lo.converged && hi.converged;
    return pt;
}

// ---------------------------------------------- entanglement-assisted C_E ---

// Maximize S(rho) + I_c over diagonal inputs with equal |01> and |10>
// populations; the search simplex carries (alpha, 2 beta, delta).
inline CapacityPoint entanglement_assisted(const ChannelParams& p, const OptimizerConfig& cfg) {
    auto to_pop = [](const std::vector<double>& x) {
        return std::array<double, 4>{x[0], 0.5 * x[1], 0.5 * x[1], x[2]};
    };
    MaximizeResult r = maximize(
        [&](const std::vector<double>& x) {
            const auto pop = to_pop(x);
            return detail::entropy4(pop) + detail::ic_diagonal(pop, p.eta, p.mu);
        },
        Domain::simplex(3), cfg);

    CapacityPoint pt;
    pt.eta = p.eta;
    pt.mu = p.mu;
    pt.raw_value = r.f;
    pt.value = std::max(r.f, 0.0);
    const auto pop = to_pop(r.x);
    pt.argmax = Populations{pop[0], pop[1], pop[2], pop[3]};
    pt.evals = r.evals;
    pt.restarts_used = r.restarts_used;
    pt.converged = r.converged;
    return pt;
}

// -------------------------------------------------------------- thresholds ---

// Smallest memory degree at which the quantum-capacity lower bound becomes
// positive; absent when it is already positive at mu = 0.
inline std::optional<double> find_q_threshold(double eta, const OptimizerConfig& cfg = {}) {
    constexpr double kPositive = 1e-9;
    auto positive = [&](double mu) { return q_lwb(ChannelParams(eta, mu), cfg).value > kPositive; };
    if (positive(0.0)) return std::nullopt;
    if (!positive(1.0)) return std::nullopt;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        (positive(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

inline double g2_delta_population(const CapacityPoint& pt) {
    const G2Params* g = std::get_if<G2Params>(&pt.argmax);
    if (g == nullptr) throw std::logic_error("g2_delta_population: point has no G2 argmax");
    return g2_populations(*g).delta;
}

// Smallest memory degree at which the optimal G2 ensemble starts populating
// |11>; absent when it is populated already at mu = 0 (or never).
inline std::optional<double> find_g2_population_threshold(double eta,
                                                          const OptimizerConfig& cfg = {}) {
    constexpr double kPopulated = 1e-6;
    auto populated = [&](double mu) {
        return g2_delta_population(chi_lwb_g2(ChannelParams(eta, mu), cfg)) > kPopulated;
    };
    if (populated(0.0)) return std::nullopt;
    if (!populated(1.0)) return std::nullopt;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        (populated(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// ------------------------------------------------- single-qubit reference ---

// Single-shot classical capacity of the one-qubit damping channel, maximized
// over two-state real-amplitude ensembles {p, theta0; 1-p, theta1}. Used as
// the independent reference for the additivity probe.
inline double single_qubit_damping_capacity(double eta, const OptimizerConfig& cfg = {}) {
    const double pi = std::acos(-1.0);
    MaximizeResult r = maximize(
        [&](const std::vector<double>& x) {
            const double p = x[0];
            const double s0 = std::sin(x[1]), c0 = std::cos(x[1]);
            const double s1 = std::sin(x[2]), c1 = std::cos(x[2]);
            const double q_mix = p * s0 * s0 + (1.0 - p) * s1 * s1;
            const double k_mix = p * c0 * s0 + (1.0 - p) * c1 * s1;
            const double s_mix = detail::single_use_output_entropy(eta, q_mix, k_mix);
            const double s_0 = detail::single_use_output_entropy(eta, s0 * s0, c0 * s0);
            const double s_1 = detail::single_use_output_entropy(eta, s1 * s1, c1 * s1);
            return s_mix - p * s_0 - (1.0 - p) * s_1;
        },
        Domain::box({0.0, 0.0, 0.0}, {1.0, pi, pi}), cfg);
    return std::max(r.f, 0.0);
}

// -------------------------------------------------------- additivity probe ---

struct AdditivityReport {
    double eta = 0.0;
    double chi_g1 = 0.0;       // G1 bound at mu = 0
    double chi_g2 = 0.0;       // G2 bound at mu = 0
    double two_single_use = 0.0;  // twice the single-qubit capacity
    bool violation = false;
    std::string verdict;
};

// Probe whether either two-qubit ensemble family beats twice the single-use
// capacity of the memoryless channel.
inline AdditivityReport c2_additivity_probe(double eta, const OptimizerConfig& cfg) {
    AdditivityReport rep;
    rep.eta = eta;
    const ChannelParams memoryless(eta, 0.0);
    rep.chi_g1 = chi_lwb_g1(memoryless, cfg).value;
    rep.chi_g2 = chi_lwb_g2(memoryless, cfg).value;
    rep.two_single_use = 2.0 * single_qubit_damping_capacity(eta, cfg);
    rep.violation = rep.chi_g1 > rep.two_single_use + 1e-6 ||
                    rep.chi_g2 > rep.two_single_use + 1e-6;
    rep.verdict = rep.violation ? "possible violation" : "no violation found";
    return rep;
}

}  // namespace madcap

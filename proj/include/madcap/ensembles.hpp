// ensembles.hpp — the two symmetrized input-state families used to lower-bound
// the classical capacity: the eight-state covariance orbit of one seed state
// (G1) and the two Bell-like pairs (G2), plus their density operators,
// populations and average entanglement.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "madcap/channel.hpp"
#include "madcap/qmat.hpp"

namespace madcap {

struct Ensemble {
    struct Item {
        double prob;
        PureState state;
    };
    std::vector<Item> items;

    void validate() const {
        double sum = 0.0;
        for (const Item& it : items) {
            if (it.prob < 0.0) throw std::invalid_argument("Ensemble: negative probability");
            sum += it.prob;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("Ensemble: probabilities do not sum to 1");
    }
};

// Seed-state amplitudes of the G1 family. The |11> amplitude is the remainder
// sqrt(1 - abar^2 - bbar^2 - cbar^2); the three phases ride on |01>, |10>, |11>.
struct G1Params {
    double abar = 1.0;
    double bbar = 0.0;
    double cbar = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
    double phi3 = 0.0;

    double dbar_squared() const {
        return 1.0 - abar * abar - bbar * bbar - cbar * cbar;
    }

    PureState seed_state() const {
        const double d2 = dbar_squared();
        if (abar < 0.0 || bbar < 0.0 || cbar < 0.0 || abar > 1.0 || bbar > 1.0 || cbar > 1.0 ||
            d2 < -1e-12)
            throw std::invalid_argument("G1Params: amplitude constraint violated");
        const double dbar = std::sqrt(std::max(d2, 0.0));
        const cplx i(0.0, 1.0);
        return PureState::normalized({abar, bbar * std::exp(i * phi1), cbar * std::exp(i * phi2),
                                      dbar * std::exp(i * phi3)});
    }
};

// The G2 family: one orthonormal pair inside span{|01>,|10>} with weight beta
// each, and the pair cos(theta2)|00> +- e^{i phi2} sin(theta2)|11> with weight
// (1-2 beta)/2 each.
struct G2Params {
    double beta = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
};

// Diagonal populations (|00>, |01>, |10>, |11>).
struct Populations {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;

    std::array<double, 4> as_array() const { return {alpha, beta, gamma, delta}; }

    void validate() const {
        if (alpha < 0.0 || beta < 0.0 || gamma < 0.0 || delta < 0.0)
            throw std::invalid_argument("Populations: negative entry");
        if (std::abs(alpha + beta + gamma + delta - 1.0) > 1e-12)
            throw std::invalid_argument("Populations: entries do not sum to 1");
    }
};

// Eight states, one per element of the covariance group {1, R_i} x {1, Swap},
// each with probability 1/8. The sign patterns cancel every off-diagonal of
// the ensemble density operator, which ends up diagonal with equal |01> and
// |10> populations.
inline Ensemble build_g1(const G1Params& g) {
    const PureState seed = g.seed_state();
    const cplx a = seed.amp(0), b = seed.amp(1), c = seed.amp(2), d = seed.amp(3);

    Ensemble e;
    e.items.reserve(8);
    auto push = [&e](cplx w, cplx x, cplx y, cplx z) {
        e.items.push_back({0.125, PureState({w, x, y, z})});
    };
    // Orbit of (a,b,c,d) under the three sign flips ...
    push(a, b, c, d);
    push(a, b, -c, -d);
    push(a, -b, c, -d);
    push(a, -b, -c, d);
    // ... and of the swapped seed (a,c,b,d).
    push(a, c, b, d);
    push(a, c, -b, -d);
    push(a, -c, b, -d);
    push(a, -c, -b, d);
    return e;
}

inline Ensemble build_g2(const G2Params& g) {
    if (g.beta < 0.0 || g.beta > 0.5)
        throw std::invalid_argument("G2Params: beta outside [0, 1/2]");
    const cplx i(0.0, 1.0);
    const cplx e1 = std::exp(i * g.phi1), e2 = std::exp(i * g.phi2);
    const double c1 = std::cos(g.theta1), s1 = std::sin(g.theta1);
    const double c2 = std::cos(g.theta2), s2 = std::sin(g.theta2);

    Ensemble e;
    e.items.reserve(4);
    e.items.push_back({g.beta, PureState::normalized({0.0, c1, e1 * s1, 0.0})});
    e.items.push_back({g.beta, PureState::normalized({0.0, -s1, e1 * c1, 0.0})});
    const double ph = 0.5 * (1.0 - 2.0 * g.beta);
    e.items.push_back({ph, PureState::normalized({c2, 0.0, 0.0, e2 * s2})});
    e.items.push_back({ph, PureState::normalized({c2, 0.0, 0.0, -e2 * s2})});
    return e;
}

inline DensityMatrix ensemble_density(const Ensemble& e) {
    e.validate();
    if (e.items.empty()) throw std::invalid_argument("ensemble_density: empty ensemble");
    Matrix sum(e.items.front().state.dim());
    for (const Ensemble::Item& it : e.items)
        sum += cplx(it.prob) * outer_projector(it.state.amps());
    return DensityMatrix::from_matrix(std::move(sum));
}

// Probability-weighted entanglement entropy of the members.
inline double average_entanglement(const Ensemble& e) {
    e.validate();
    double sum = 0.0;
    for (const Ensemble::Item& it : e.items) sum += it.prob * entanglement_entropy(it.state);
    return sum;
}

// Populations of the diagonal density operator a G1 ensemble generates.
inline Populations g1_populations(const G1Params& g) {
    const double a2 = g.abar * g.abar;
    const double bc = 0.5 * (g.bbar * g.bbar + g.cbar * g.cbar);
    const double d2 = std::max(g.dbar_squared(), 0.0);
    return {a2, bc, bc, d2};
}

// Populations of the diagonal density operator a G2 ensemble generates.
inline Populations g2_populations(const G2Params& g) {
    const double c2 = std::cos(g.theta2), s2 = std::sin(g.theta2);
    const double w = 1.0 - 2.0 * g.beta;
    return {w * c2 * c2, g.beta, g.beta, w * s2 * s2};
}

}  // namespace madcap

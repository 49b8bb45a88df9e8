// random_states.hpp — seeded generators for random states, densities and
// unitaries. Shared by the self-check command and the test suites; fully
// deterministic for a given seed.

#pragma once

#include <cmath>
#include <vector>

#include "madcap/optimize.hpp"
#include "madcap/qmat.hpp"

namespace madcap {

inline double gaussian(SplitMix64& rng) {
    // Box-Muller; avoids log(0) by nudging the uniform away from zero.
    const double u = std::max(rng.uniform(), 1e-300);
    const double v = rng.uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::acos(-1.0) * v);
}

inline PureState random_pure_state(SplitMix64& rng, int dim) {
    std::vector<cplx> amps(static_cast<size_t>(dim));
    for (cplx& a : amps) a = cplx(gaussian(rng), gaussian(rng));
    return PureState::normalized(std::move(amps));
}

// Random mixture of `rank` pure states; PSD and unit trace by construction.
inline DensityMatrix random_density(SplitMix64& rng, int dim, int rank = 0) {
    if (rank <= 0) rank = dim;
    std::vector<double> w(static_cast<size_t>(rank));
    double sum = 0.0;
    for (double& x : w) {
        x = rng.uniform() + 1e-9;
        sum += x;
    }
    Matrix m(dim);
    for (double x : w) m += cplx(x / sum) * outer_projector(random_pure_state(rng, dim).amps());
    return DensityMatrix::from_matrix(std::move(m));
}

// Haar-ish random unitary via Gram-Schmidt on Gaussian columns. Good enough
// for invariance spot checks.
inline Matrix random_unitary(SplitMix64& rng, int dim) {
    Matrix u(dim);
    for (int col = 0; col < dim; ++col) {
        std::vector<cplx> v(static_cast<size_t>(dim));
        for (cplx& x : v) x = cplx(gaussian(rng), gaussian(rng));
        for (int prev = 0; prev < col; ++prev) {
            cplx dot = 0.0;
            for (int i = 0; i < dim; ++i) dot += std::conj(u(i, prev)) * v[static_cast<size_t>(i)];
            for (int i = 0; i < dim; ++i) v[static_cast<size_t>(i)] -= dot * u(i, prev);
        }
        double n2 = 0.0;
        for (const cplx& x : v) n2 += std::norm(x);
        const double inv = 1.0 / std::sqrt(n2);
        for (int i = 0; i < dim; ++i) u(i, col) = v[static_cast<size_t>(i)] * inv;
    }
    return u;
}

}  // namespace madcap

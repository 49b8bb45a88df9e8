#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "madcap/qmat.hpp"
#include "madcap/random_states.hpp"

using namespace madcap;
using Catch::Matchers::WithinAbs;

namespace {

Matrix random_hermitian(SplitMix64& rng, int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) {
        m(i, i) = gaussian(rng);
        for (int j = i + 1; j < dim; ++j) {
            m(i, j) = cplx(gaussian(rng), gaussian(rng));
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

}  // namespace

TEST_CASE("eigenvalues of fixed matrices") {
    const auto id = hermitian_eigenvalues(Matrix::identity(4));
    for (double v : id) CHECK_THAT(v, WithinAbs(1.0, 1e-12));

    const double d[4] = {0.4, 0.1, 0.3, 0.2};
    const auto diag = hermitian_eigenvalues(Matrix::diagonal(std::span(d, 4)));
    CHECK_THAT(diag[0], WithinAbs(0.1, 1e-12));
    CHECK_THAT(diag[1], WithinAbs(0.2, 1e-12));
    CHECK_THAT(diag[2], WithinAbs(0.3, 1e-12));
    CHECK_THAT(diag[3], WithinAbs(0.4, 1e-12));

    Matrix pauli_x(2);
    pauli_x(0, 1) = 1.0;
    pauli_x(1, 0) = 1.0;
    const auto px = hermitian_eigenvalues(pauli_x);
    CHECK_THAT(px[0], WithinAbs(-1.0, 1e-12));
    CHECK_THAT(px[1], WithinAbs(1.0, 1e-12));
}

TEST_CASE("non-Hermitian input is rejected") {
    Matrix m(2);
    m(0, 1) = 1.0;  // missing conjugate partner
    CHECK_THROWS_AS(hermitian_eigenvalues(m), std::domain_error);
}

TEST_CASE("eigenvalue sum matches trace and reconstruction is tight") {
    SplitMix64 rng(42);
    for (int dim : {2, 4, 8}) {
        for (int trial = 0; trial < 50; ++trial) {
            const Matrix m = random_hermitian(rng, dim);
            const EigenSystem es = hermitian_eigensystem(m);

            double sum = 0.0;
            for (double v : es.values) sum += v;
            CHECK_THAT(sum, WithinAbs(m.trace().real(), 1e-10));

            // Residual of V diag(w) V^dagger against the input.
            Matrix rec(dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) {
                    cplx s = 0.0;
                    for (int k = 0; k < dim; ++k)
                        s += es.vectors(i, k) * es.values[static_cast<size_t>(k)] *
                             std::conj(es.vectors(j, k));
                    rec(i, j) = s;
                }
            CHECK(max_abs_diff(rec, m) <= 1e-10);
        }
    }
}

TEST_CASE("binary entropy") {
    CHECK_THAT(binary_entropy(0.5), WithinAbs(1.0, 1e-15));
    CHECK_THAT(binary_entropy(0.0), WithinAbs(0.0, 1e-15));
    CHECK_THAT(binary_entropy(1.0), WithinAbs(0.0, 1e-15));
    CHECK_THAT(binary_entropy(0.25), WithinAbs(0.811278124459, 1e-10));
    CHECK_THROWS_AS(binary_entropy(-0.01), std::domain_error);
    CHECK_THROWS_AS(binary_entropy(1.01), std::domain_error);
}

TEST_CASE("von Neumann entropy of reference states") {
    const double mixed[4] = {0.25, 0.25, 0.25, 0.25};
    CHECK_THAT(von_neumann_entropy(DensityMatrix::diagonal(std::span(mixed, 4))),
               WithinAbs(2.0, 1e-12));

    SplitMix64 rng(7);
    const PureState psi = random_pure_state(rng, 4);
    CHECK_THAT(von_neumann_entropy(DensityMatrix::pure(psi)), WithinAbs(0.0, 1e-10));

    const double half[4] = {0.5, 0.5, 0.0, 0.0};
    CHECK_THAT(von_neumann_entropy(DensityMatrix::diagonal(std::span(half, 4))),
               WithinAbs(1.0, 1e-12));
}

TEST_CASE("entropy is unitarily invariant") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho = random_density(rng, 4);
        const Matrix u = random_unitary(rng, 4);
        const DensityMatrix rotated = DensityMatrix::from_matrix(u * rho.matrix() * u.dagger());
        CHECK_THAT(von_neumann_entropy(rotated), WithinAbs(von_neumann_entropy(rho), 1e-10));
    }
}

TEST_CASE("entropy is concave") {
    SplitMix64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix a = random_density(rng, 4);
        const DensityMatrix b = random_density(rng, 4);
        for (double lam : {0.1, 0.25, 0.5, 0.75, 0.9}) {
            const DensityMatrix mix = DensityMatrix::from_matrix(
                cplx(lam) * a.matrix() + cplx(1.0 - lam) * b.matrix());
            CHECK(von_neumann_entropy(mix) >=
                  lam * von_neumann_entropy(a) + (1.0 - lam) * von_neumann_entropy(b) - 1e-10);
        }
    }
}

TEST_CASE("partial trace") {
    SECTION("Bell state reduces to the maximally mixed qubit") {
        const double s = 1.0 / std::sqrt(2.0);
        const PureState bell({s, 0.0, 0.0, s});
        for (int keep : {0, 1}) {
            const DensityMatrix red = partial_trace(DensityMatrix::pure(bell), {2, 2}, {keep});
            CHECK_THAT(std::abs(red.matrix()(0, 0)), WithinAbs(0.5, 1e-12));
            CHECK_THAT(std::abs(red.matrix()(1, 1)), WithinAbs(0.5, 1e-12));
            CHECK_THAT(std::abs(red.matrix()(0, 1)), WithinAbs(0.0, 1e-12));
        }
    }

    SECTION("product state factors") {
        SplitMix64 rng(3);
        const DensityMatrix a = random_density(rng, 2);
        const DensityMatrix b = random_density(rng, 2);
        const DensityMatrix joint =
            DensityMatrix::from_matrix(kron(a.matrix(), b.matrix()));
        CHECK(max_abs_diff(partial_trace(joint, {2, 2}, {0}).matrix(), a.matrix()) <= 1e-12);
        CHECK(max_abs_diff(partial_trace(joint, {2, 2}, {1}).matrix(), b.matrix()) <= 1e-12);
    }

    SECTION("trace preserved, errors rejected") {
        SplitMix64 rng(5);
        const DensityMatrix rho = random_density(rng, 8);
        const DensityMatrix red = partial_trace(rho, {2, 2, 2}, {0, 2});
        CHECK_THAT(red.matrix().trace().real(), WithinAbs(1.0, 1e-12));
        CHECK_THROWS_AS(partial_trace(rho, {4, 4}, {0}), std::domain_error);
        CHECK_THROWS_AS(partial_trace(rho, {2, 2, 2}, {0, 1, 2}), std::domain_error);
        CHECK_THROWS_AS(partial_trace(rho, {2, 2, 2}, std::vector<int>{}), std::domain_error);
    }

    SECTION("pure bipartite state has equal entropy on both sides") {
        SplitMix64 rng(9);
        for (int trial = 0; trial < 20; ++trial) {
            const DensityMatrix joint = DensityMatrix::pure(random_pure_state(rng, 4));
            const double sa = von_neumann_entropy(partial_trace(joint, {2, 2}, {0}));
            const double sb = von_neumann_entropy(partial_trace(joint, {2, 2}, {1}));
            CHECK_THAT(sa, WithinAbs(sb, 1e-10));
        }
    }
}

TEST_CASE("entanglement entropy") {
    const double s = 1.0 / std::sqrt(2.0);
    CHECK_THAT(entanglement_entropy(PureState({0.0, s, s, 0.0})), WithinAbs(1.0, 1e-12));
    CHECK_THAT(entanglement_entropy(PureState({1.0, 0.0, 0.0, 0.0})), WithinAbs(0.0, 1e-12));

    for (double theta : {0.1, 0.4, 0.7, 1.2}) {
        const double c = std::cos(theta), sn = std::sin(theta);
        CHECK_THAT(entanglement_entropy(PureState({c, 0.0, 0.0, sn})),
                   WithinAbs(binary_entropy(c * c), 1e-12));
    }

    CHECK_THROWS_AS(entanglement_entropy(PureState({1.0, 0.0})), std::domain_error);

    // Swapping which qubit is traced out does not change the value.
    SplitMix64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const PureState psi = random_pure_state(rng, 4);
        const PureState swapped({psi.amp(0), psi.amp(2), psi.amp(1), psi.amp(3)});
        CHECK_THAT(entanglement_entropy(psi), WithinAbs(entanglement_entropy(swapped), 1e-10));
    }
}

TEST_CASE("spectrum clamp policy") {
    const double ok[2] = {1.0 - 1e-11, 1e-11};
    CHECK(entropy_of_spectrum(std::span(ok, 2)) >= 0.0);
    const double tiny_negative[2] = {1.0, -5e-11};
    CHECK_THAT(entropy_of_spectrum(std::span(tiny_negative, 2)), WithinAbs(0.0, 1e-15));
    const double bad[2] = {1.0, -1e-9};
    CHECK_THROWS_AS(entropy_of_spectrum(std::span(bad, 2)), std::domain_error);
}

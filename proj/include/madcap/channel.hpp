// channel.hpp — the two-qubit amplitude damping channel with memory degree mu,
// in three interchangeable representations: Kraus sums, the closed-form output
// matrices, and the unitary dilation onto a four-dimensional environment plus
// a one-qubit memory register. Also the covariance unitaries of the channel.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "madcap/qmat.hpp"

namespace madcap {

// Transmissivity eta and memory degree mu, both in [0,1].
struct ChannelParams {
    double eta = 1.0;
    double mu = 0.0;

    ChannelParams(double eta_, double mu_) : eta(eta_), mu(mu_) {
        if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("ChannelParams: eta outside [0,1]");
        if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("ChannelParams: mu outside [0,1]");
    }
};

struct KrausSet {
    int dim = 0;
    std::vector<Matrix> ops;

    double completeness_residual() const {
        Matrix s(dim);
        for (const Matrix& k : ops) s += k.dagger() * k;
        return max_abs_diff(s, Matrix::identity(dim));
    }
};

// Single-qubit damping pair; the building block of the two-use sets.
inline KrausSet single_use_kraus(double eta) {
    Matrix e0(2), e1(2);
    e0(0, 0) = 1.0;
    e0(1, 1) = std::sqrt(eta);
    e1(0, 1) = std::sqrt(1.0 - eta);
    return {2, {e0, e1}};
}

// Two independent uses: the four tensor products of the single-use operators.
inline KrausSet memoryless_kraus(double eta) {
    const KrausSet single = single_use_kraus(eta);
    KrausSet out{4, {}};
    out.ops.reserve(4);
    for (const Matrix& a : single.ops)
        for (const Matrix& b : single.ops) out.ops.push_back(kron(a, b));
    return out;
}

// Fully correlated damping: only |11> decays, the rest of the basis is untouched.
inline KrausSet full_memory_kraus(double eta) {
    Matrix b0 = Matrix::identity(4);
    b0(3, 3) = std::sqrt(eta);
    Matrix b1(4);
    b1(0, 3) = std::sqrt(1.0 - eta);
    return {4, {b0, b1}};
}

inline Matrix apply_kraus(const KrausSet& ks, const Matrix& rho) {
    Matrix out(rho.dim());
    for (const Matrix& k : ks.ops) out += k * rho * k.dagger();
    return out;
}

// The partially correlated channel: convex combination of the memoryless and
// full-memory maps. The endpoints reduce to the plain Kraus sums exactly.
inline DensityMatrix apply_mu(const DensityMatrix& rho, const ChannelParams& p) {
    if (rho.dim() != 4) throw std::invalid_argument("apply_mu: state must be two-qubit");
    if (p.mu == 0.0)
        return DensityMatrix::from_matrix(apply_kraus(memoryless_kraus(p.eta), rho.matrix()));
    if (p.mu == 1.0)
        return DensityMatrix::from_matrix(apply_kraus(full_memory_kraus(p.eta), rho.matrix()));
    Matrix out = cplx(1.0 - p.mu) * apply_kraus(memoryless_kraus(p.eta), rho.matrix());
    out += cplx(p.mu) * apply_kraus(full_memory_kraus(p.eta), rho.matrix());
    return DensityMatrix::from_matrix(std::move(out));
}

// The four unitaries the channel is covariant under: the three sign flips
// built from sigma_z and the swap of the two qubits. All are self-inverse.
struct CovarianceOps {
    Matrix r1, r2, r3, swap;
};

inline CovarianceOps covariance_ops() {
    CovarianceOps c{Matrix(4), Matrix(4), Matrix(4), Matrix(4)};
    const double z1[4] = {1.0, 1.0, -1.0, -1.0};
    const double z2[4] = {1.0, -1.0, 1.0, -1.0};
    for (int i = 0; i < 4; ++i) {
        c.r1(i, i) = z1[i];
        c.r2(i, i) = z2[i];
        c.r3(i, i) = z1[i] * z2[i];
    }
    c.swap(0, 0) = 1.0;
    c.swap(1, 2) = 1.0;
    c.swap(2, 1) = 1.0;
    c.swap(3, 3) = 1.0;
    return c;
}

// ----------------------------------------------------- closed-form output ---

namespace detail {

// Closed-form system output, upper triangle plus Hermitian completion.
inline Matrix system_output_matrix(const Matrix& r, double eta, double mu) {
    const double se = std::sqrt(eta);

    const double al = r(0, 0).real(), be = r(1, 1).real(), ga = r(2, 2).real(), de = r(3, 3).real();
    const cplx ka = r(0, 1), la = r(0, 2), xi = r(0, 3);
    const cplx nu = r(1, 2), oo = r(1, 3), pi = r(2, 3);

    Matrix out(4);
    out(0, 0) = (1.0 - mu) * (al + (1.0 - eta) * (be + ga) + (1.0 - eta) * (1.0 - eta) * de) +
                mu * (al + (1.0 - eta) * de);
    out(0, 1) = (1.0 - mu) * (se * ka + se * (1.0 - eta) * pi) + mu * ka;
    out(0, 2) = (1.0 - mu) * (se * la + se * (1.0 - eta) * oo) + mu * la;
    out(0, 3) = ((1.0 - mu) * eta + mu * se) * xi;
    out(1, 1) = (1.0 - mu) * (eta * be + eta * (1.0 - eta) * de) + mu * be;
    out(1, 2) = ((1.0 - mu) * eta + mu) * nu;
    out(1, 3) = ((1.0 - mu) * eta * se + mu * se) * oo;
    out(2, 2) = (1.0 - mu) * (eta * ga + eta * (1.0 - eta) * de) + mu * ga;
    out(2, 3) = ((1.0 - mu) * eta * se + mu * se) * pi;
    out(3, 3) = (1.0 - mu) * eta * eta * de + mu * eta * de;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j) out(i, j) = std::conj(out(j, i));
    return out;
}

}  // namespace detail

// Output state of the system, assembled entry by entry from the closed form.
// Agrees with the Kraus sum and the dilation reduction to machine precision;
// this is the path the capacity loops use.
inline DensityMatrix system_output_closed_form(const DensityMatrix& rho, const ChannelParams& p) {
    if (rho.dim() != 4) throw std::invalid_argument("system_output_closed_form: need a 4-dim state");
    return DensityMatrix::from_matrix(detail::system_output_matrix(rho.matrix(), p.eta, p.mu));
}

// Joint environment-plus-memory output, 8-dimensional, basis |e1 e2 m> in
// lexicographic order. Rows 011 and 101 are identically zero.
inline DensityMatrix environment_output_closed_form(const DensityMatrix& rho,
                                                    const ChannelParams& p) {
    if (rho.dim() != 4)
        throw std::invalid_argument("environment_output_closed_form: need a 4-dim state");
    const Matrix& r = rho.matrix();
    const double eta = p.eta, mu = p.mu;
    const double se = std::sqrt(eta);
    const double sme = std::sqrt(mu * (1.0 - mu));
    const double s1e = std::sqrt(1.0 - eta);

    const double al = r(0, 0).real(), be = r(1, 1).real(), ga = r(2, 2).real(), de = r(3, 3).real();
    const cplx ka = r(0, 1), la = r(0, 2), xi = r(0, 3);
    const cplx nu = r(1, 2), oo = r(1, 3), pi = r(2, 3);

    Matrix out(8);
    out(0, 0) = (1.0 - mu) * (al + eta * (be + ga) + eta * eta * de);
    out(0, 1) = sme * (al + se * (be + ga) + eta * se * de);
    out(0, 2) = (1.0 - mu) * s1e * (ka + eta * pi);
    out(0, 4) = (1.0 - mu) * s1e * (la + eta * oo);
    out(0, 6) = (1.0 - mu) * (1.0 - eta) * xi;
    out(0, 7) = sme * s1e * xi;

    out(1, 1) = mu * (1.0 - (1.0 - eta) * de);
    out(1, 2) = sme * s1e * (ka + se * pi);
    out(1, 4) = sme * s1e * (la + se * oo);
    out(1, 6) = sme * (1.0 - eta) * xi;
    out(1, 7) = mu * s1e * xi;

    out(2, 2) = (1.0 - mu) * (1.0 - eta) * (be + eta * de);
    out(2, 4) = (1.0 - mu) * (1.0 - eta) * nu;
    out(2, 6) = (1.0 - mu) * (1.0 - eta) * s1e * oo;
    out(2, 7) = sme * (1.0 - eta) * oo;

    out(4, 4) = (1.0 - mu) * (1.0 - eta) * (ga + eta * de);
    out(4, 6) = (1.0 - mu) * (1.0 - eta) * s1e * pi;
    out(4, 7) = sme * (1.0 - eta) * pi;

    out(6, 6) = (1.0 - mu) * (1.0 - eta) * (1.0 - eta) * de;
    out(6, 7) = sme * (1.0 - eta) * s1e * de;

    out(7, 7) = mu * (1.0 - eta) * de;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < i; ++j) out(i, j) = std::conj(out(j, i));
    return DensityMatrix::from_matrix(std::move(out));
}

// ----------------------------------------------------------------- dilation ---

// Isometry from the system (4) to system x environment (4) x memory qubit (2),
// with the environment-plus-memory register starting in |000>. The output is
// ordered S (stride 8), E (stride 2), M (stride 1). Only the initial |000>
// slice of the full unitary is ever needed.
inline PureState dilation_evolve(const PureState& psi, const ChannelParams& p) {
    if (psi.dim() != 4) throw std::invalid_argument("dilation_evolve: need a 4-dim state");
    const double eta = p.eta, mu = p.mu;
    const cplx a = psi.amp(0), b = psi.amp(1), c = psi.amp(2), d = psi.amp(3);

    std::vector<cplx> out(32, 0.0);
    auto at = [&out](int s, int e, int m) -> cplx& {
        return out[static_cast<size_t>(s * 8 + e * 2 + m)];
    };

    const double r_mu = std::sqrt(mu), r_1mu = std::sqrt(1.0 - mu);
    const double r_eta = std::sqrt(eta), r_1eta = std::sqrt(1.0 - eta);

    at(0, 0, 0) += a * r_1mu;
    at(0, 0, 1) += a * r_mu;

    at(1, 0, 0) += b * r_1mu * r_eta;
    at(0, 1, 0) += b * r_1mu * r_1eta;
    at(1, 0, 1) += b * r_mu;

    at(2, 0, 0) += c * r_1mu * r_eta;
    at(0, 2, 0) += c * r_1mu * r_1eta;
    at(2, 0, 1) += c * r_mu;

    at(3, 0, 0) += d * r_1mu * eta;
    at(1, 2, 0) += d * r_1mu * r_eta * r_1eta;
    at(2, 1, 0) += d * r_1mu * r_eta * r_1eta;
    at(0, 3, 0) += d * r_1mu * (1.0 - eta);
    at(3, 0, 1) += d * r_mu * r_eta;
    at(0, 3, 1) += d * r_mu * r_1eta;

    return PureState(std::move(out));
}

// ------------------------------------------------ fast scalar closed forms ---

// These specialize the closed form to diagonal inputs, where the system output
// stays diagonal and the environment output splits into two 2x2 blocks plus
// two scalars. The capacity optimizers evaluate these in their inner loops.

inline std::array<double, 4> damped_diagonal(const std::array<double, 4>& pop, double eta,
                                             double mu) {
    const double al = pop[0], be = pop[1], ga = pop[2], de = pop[3];
    return {
        (1.0 - mu) * (al + (1.0 - eta) * (be + ga) + (1.0 - eta) * (1.0 - eta) * de) +
            mu * (al + (1.0 - eta) * de),
        (1.0 - mu) * eta * (be + (1.0 - eta) * de) + mu * be,
        (1.0 - mu) * eta * (ga + (1.0 - eta) * de) + mu * ga,
        ((1.0 - mu) * eta + mu) * eta * de,
    };
}

// Entropy of the environment-plus-memory output for a diagonal input.
inline double exchange_entropy_diagonal(const std::array<double, 4>& pop, double eta, double mu) {
    const double al = pop[0], be = pop[1], ga = pop[2], de = pop[3];
    const double se = std::sqrt(eta);
    const double s1e = std::sqrt(1.0 - eta);
    const double sme = std::sqrt(mu * (1.0 - mu));

    const double e00 = (1.0 - mu) * (al + eta * (be + ga) + eta * eta * de);
    const double e11 = mu * (1.0 - (1.0 - eta) * de);
    const double e01 = sme * (al + se * (be + ga) + eta * se * de);
    const auto [b1lo, b1hi] = eigs2(e00, e11, e01);

    const double f00 = (1.0 - mu) * (1.0 - eta) * (1.0 - eta) * de;
    const double f11 = mu * (1.0 - eta) * de;
    const double f01 = sme * (1.0 - eta) * s1e * de;
    const auto [b2lo, b2hi] = eigs2(f00, f11, f01);

    const double d2 = (1.0 - mu) * (1.0 - eta) * (be + eta * de);
    const double d4 = (1.0 - mu) * (1.0 - eta) * (ga + eta * de);

    return entropy_term(b1lo) + entropy_term(b1hi) + entropy_term(b2lo) + entropy_term(b2hi) +
           entropy_term(d2) + entropy_term(d4);
}

}  // namespace madcap

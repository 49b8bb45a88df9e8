// qmat.hpp — minimal dense complex linear algebra and the entropy kernel:
// Hermitian eigensolver, von Neumann / binary entropy, partial trace,
// entanglement entropy. Everything is a pure function over immutable values.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace madcap {

using cplx = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kNormTol = 1e-12;
// Spectrum clamp policy: eigenvalues in [-kEigNegSlack, kEigZeroCut) count as
// zero in entropy sums; anything below -kEigNegSlack is rejected.
inline constexpr double kEigNegSlack = 1e-10;
inline constexpr double kEigZeroCut = 1e-12;

// Dense row-major complex matrix. Dimensions stay tiny here (2..32).
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(int dim) : dim_(dim), a_(check_dim(dim)) {}

    static Matrix zero(int dim) { return Matrix(dim); }

    static Matrix identity(int dim) {
        Matrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(std::span<const double> d) {
        Matrix m(static_cast<int>(d.size()));
        for (int i = 0; i < m.dim(); ++i) m(i, i) = d[static_cast<size_t>(i)];
        return m;
    }

    int dim() const { return dim_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    cplx operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }

    Matrix dagger() const {
        Matrix m(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    bool is_finite() const {
        for (const cplx& v : a_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    double hermiticity_defect() const {
        double m = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = i; j < dim_; ++j)
                m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return m;
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_dim(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require_same_dim(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Matrix& operator*=(cplx s) {
        for (cplx& v : a_) v *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(cplx s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        a.require_same_dim(b);
        const int n = a.dim_;
        Matrix c(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const cplx aik = a(i, k);
                if (aik == 0.0) continue;
                for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

private:
    static size_t check_dim(int dim) {
        if (dim <= 0) throw std::invalid_argument("Matrix: dimension must be positive");
        return static_cast<size_t>(dim) * static_cast<size_t>(dim);
    }
    void require_same_dim(const Matrix& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("Matrix: dimension mismatch");
    }

    int dim_ = 0;
    std::vector<cplx> a_;
};

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    const int na = a.dim(), nb = b.dim();
    Matrix c(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            const cplx aij = a(i, j);
            if (aij == 0.0) continue;
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l) c(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return c;
}

// Normalized state vector; norm must be within kNormTol of 1.
class PureState {
public:
    PureState(std::vector<cplx> amps) : amps_(std::move(amps)) {
        if (amps_.empty()) throw std::invalid_argument("PureState: empty amplitude vector");
        if (std::abs(norm() - 1.0) > kNormTol)
            throw std::invalid_argument("PureState: vector is not normalized");
    }

    static PureState normalized(std::vector<cplx> amps) {
        double n2 = 0.0;
        for (const cplx& a : amps) n2 += std::norm(a);
        if (n2 <= 0.0) throw std::invalid_argument("PureState: zero vector");
        const double inv = 1.0 / std::sqrt(n2);
        for (cplx& a : amps) a *= inv;
        return PureState(std::move(amps));
    }

    static PureState basis(int dim, int index) {
        std::vector<cplx> v(static_cast<size_t>(dim), 0.0);
        v.at(static_cast<size_t>(index)) = 1.0;
        return PureState(std::move(v));
    }

    int dim() const { return static_cast<int>(amps_.size()); }
    cplx amp(int i) const { return amps_[static_cast<size_t>(i)]; }
    std::span<const cplx> amps() const { return amps_; }

    double norm() const {
        double n2 = 0.0;
        for (const cplx& a : amps_) n2 += std::norm(a);
        return std::sqrt(n2);
    }

private:
    std::vector<cplx> amps_;
};

inline Matrix outer_projector(std::span<const cplx> v) {
    Matrix m(static_cast<int>(v.size()));
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            m(i, j) = v[static_cast<size_t>(i)] * std::conj(v[static_cast<size_t>(j)]);
    return m;
}

// Hermitian, unit-trace operator. Construction checks hermiticity and trace;
// positivity is enforced where the spectrum is consumed (entropy clamp) and
// by assert_valid() in tests.
class DensityMatrix {
public:
    static DensityMatrix from_matrix(Matrix m) {
        if (!m.is_finite()) throw std::invalid_argument("DensityMatrix: non-finite entries");
        if (m.hermiticity_defect() > kHermitianTol)
            throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
        if (std::abs(m.trace() - 1.0) > kTraceTol)
            throw std::invalid_argument("DensityMatrix: trace differs from 1");
        return DensityMatrix(std::move(m));
    }

    static DensityMatrix pure(const PureState& psi) {
        return DensityMatrix(outer_projector(psi.amps()));
    }

    static DensityMatrix diagonal(std::span<const double> pops) {
        double s = 0.0;
        for (double p : pops) s += p;
        if (std::abs(s - 1.0) > kTraceTol)
            throw std::invalid_argument("DensityMatrix: populations do not sum to 1");
        return DensityMatrix(Matrix::diagonal(pops));
    }

    int dim() const { return mat_.dim(); }
    const Matrix& matrix() const { return mat_; }

    void assert_valid(double psd_slack = kEigNegSlack) const;

private:
    explicit DensityMatrix(Matrix m) : mat_(std::move(m)) {}
    Matrix mat_;
};

struct EigenSystem {
    std::vector<double> values;  // ascending
    Matrix vectors;              // columns, same order as values
};

namespace detail {

// Cyclic Jacobi for Hermitian matrices. Each rotation zeroes one off-diagonal
// entry with the unitary that diagonalizes the 2x2 pivot block; quadratic
// convergence makes ~6 sweeps enough at these dimensions.
inline EigenSystem jacobi_hermitian(Matrix a, bool want_vectors) {
    const int n = a.dim();
    // The algorithm reads/writes the upper triangle; force exact symmetry.
    for (int i = 0; i < n; ++i) {
        a(i, i) = cplx(a(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) a(j, i) = std::conj(a(i, j));
    }
    Matrix v = want_vectors ? Matrix::identity(n) : Matrix();

    const double scale = std::max(a.max_abs(), 1e-300);
    const double stop = 1e-16 * scale;

    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= stop) break;

        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const cplx w = a(p, q);
                const double aw = std::abs(w);
                if (aw <= stop) continue;

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const cplx phase = w / aw;  // w = aw * phase

                const double tau = (aqq - app) / (2.0 * aw);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Combined unitary U on the (p,q) plane:
                //   U[p][p] = c, U[p][q] = s, U[q][p] = -s*conj(phase), U[q][q] = c*conj(phase)
                a(p, p) = app - t * aw;
                a(q, q) = aqq + t * aw;
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp - s * std::conj(phase) * akq;
                    a(k, q) = s * akp + c * std::conj(phase) * akq;
                    a(p, k) = std::conj(a(k, p));
                    a(q, k) = std::conj(a(k, q));
                }
                if (want_vectors) {
                    for (int k = 0; k < n; ++k) {
                        const cplx vkp = v(k, p);
                        const cplx vkq = v(k, q);
                        v(k, p) = c * vkp - s * std::conj(phase) * vkq;
                        v(k, q) = s * vkp + c * std::conj(phase) * vkq;
                    }
                }
            }
    }

    EigenSystem es;
    es.values.resize(static_cast<size_t>(n));
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (int i = 0; i < n; ++i) es.values[static_cast<size_t>(i)] = a(i, i).real();
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });
    std::sort(es.values.begin(), es.values.end());
    if (want_vectors) {
        es.vectors = Matrix(n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) es.vectors(i, j) = v(i, order[static_cast<size_t>(j)]);
    }
    return es;
}

}  // namespace detail

inline void require_hermitian(const Matrix& m, double tol, const char* who) {
    if (!m.is_finite()) throw std::domain_error(std::string(who) + ": non-finite entries");
    if (m.hermiticity_defect() > tol)
        throw std::domain_error(std::string(who) + ": matrix is not Hermitian");
}

inline std::vector<double> hermitian_eigenvalues(const Matrix& m) {
    require_hermitian(m, 1e-10, "hermitian_eigenvalues");
    return detail::jacobi_hermitian(m, false).values;
}

inline EigenSystem hermitian_eigensystem(const Matrix& m) {
    require_hermitian(m, 1e-10, "hermitian_eigensystem");
    return detail::jacobi_hermitian(m, true);
}

// Eigenvalues of [[a, w], [conj(w), b]] with a, b real; ascending.
inline std::pair<double, double> eigs2(double a, double b, cplx w) {
    const double mid = 0.5 * (a + b);
    const double rad = std::hypot(0.5 * (a - b), std::abs(w));
    return {mid - rad, mid + rad};
}

// -------------------------------------------------------------- entropy ---

inline double entropy_term(double p) {
    if (p < -kEigNegSlack)
        throw std::domain_error("entropy: eigenvalue below -1e-10, state is not PSD");
    if (p < kEigZeroCut) return 0.0;
    return -p * std::log2(p);
}

inline double entropy_of_spectrum(std::span<const double> probs) {
    double s = 0.0;
    for (double p : probs) s += entropy_term(p);
    return s;
}

inline double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) throw std::domain_error("binary_entropy: p outside [0,1]");
    return entropy_term(p) + entropy_term(1.0 - p);
}

inline double von_neumann_entropy(const DensityMatrix& rho) {
    const auto evals = detail::jacobi_hermitian(rho.matrix(), false).values;
    return entropy_of_spectrum(evals);
}

inline void DensityMatrix::assert_valid(double psd_slack) const {
    if (!mat_.is_finite()) throw std::domain_error("DensityMatrix: non-finite entries");
    if (mat_.hermiticity_defect() > kHermitianTol)
        throw std::domain_error("DensityMatrix: hermiticity defect above tolerance");
    if (std::abs(mat_.trace() - 1.0) > kTraceTol)
        throw std::domain_error("DensityMatrix: trace differs from 1");
    const auto evals = detail::jacobi_hermitian(mat_, false).values;
    if (!evals.empty() && evals.front() < -psd_slack)
        throw std::domain_error("DensityMatrix: negative eigenvalue beyond slack");
}

// --------------------------------------------------------- partial trace ---

// Trace out all factors not listed in `keep`; kept factors stay in their
// original order. `dims` are the tensor factor dimensions, leftmost = most
// significant index digit.
inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& dims,
                                   const std::vector<int>& keep) {
    const int nfac = static_cast<int>(dims.size());
    long prod = 1;
    for (int d : dims) {
        if (d <= 0) throw std::domain_error("partial_trace: factor dimensions must be positive");
        prod *= d;
    }
    if (prod != rho.dim()) throw std::domain_error("partial_trace: factor dimensions do not match");
    if (keep.empty() || static_cast<int>(keep.size()) >= nfac)
        throw std::domain_error("partial_trace: keep must select a nonempty proper subset");
    std::vector<bool> kept(static_cast<size_t>(nfac), false);
    for (int k : keep) {
        if (k < 0 || k >= nfac || kept[static_cast<size_t>(k)])
            throw std::domain_error("partial_trace: bad subsystem selector");
        kept[static_cast<size_t>(k)] = true;
    }

    // Strides of each factor inside the full index.
    std::vector<long> stride(static_cast<size_t>(nfac), 1);
    for (int f = nfac - 2; f >= 0; --f)
        stride[static_cast<size_t>(f)] = stride[static_cast<size_t>(f) + 1] * dims[static_cast<size_t>(f) + 1];

    std::vector<int> keep_sorted;
    std::vector<int> traced;
    for (int f = 0; f < nfac; ++f) (kept[static_cast<size_t>(f)] ? keep_sorted : traced).push_back(f);

    long dk = 1, dt = 1;
    for (int f : keep_sorted) dk *= dims[static_cast<size_t>(f)];
    for (int f : traced) dt *= dims[static_cast<size_t>(f)];

    // Full index of a (kept multi-index, traced multi-index) pair.
    auto full_index = [&](long ki, long ti) {
        long idx = 0;
        for (int f = static_cast<int>(keep_sorted.size()) - 1; f >= 0; --f) {
            const int fac = keep_sorted[static_cast<size_t>(f)];
            idx += (ki % dims[static_cast<size_t>(fac)]) * stride[static_cast<size_t>(fac)];
            ki /= dims[static_cast<size_t>(fac)];
        }
        for (int f = static_cast<int>(traced.size()) - 1; f >= 0; --f) {
            const int fac = traced[static_cast<size_t>(f)];
            idx += (ti % dims[static_cast<size_t>(fac)]) * stride[static_cast<size_t>(fac)];
            ti /= dims[static_cast<size_t>(fac)];
        }
        return idx;
    };

    Matrix out(static_cast<int>(dk));
    const Matrix& m = rho.matrix();
    for (long i = 0; i < dk; ++i)
        for (long j = 0; j < dk; ++j) {
            cplx s = 0.0;
            for (long t = 0; t < dt; ++t)
                s += m(static_cast<int>(full_index(i, t)), static_cast<int>(full_index(j, t)));
            out(static_cast<int>(i), static_cast<int>(j)) = s;
        }
    return DensityMatrix::from_matrix(std::move(out));
}

// Entropy of either reduction of a two-qubit pure state.
inline double entanglement_entropy(const PureState& psi) {
    if (psi.dim() != 4)
        throw std::domain_error("entanglement_entropy: state must live on two qubits");
    // Reduced state of the first qubit from the 2x2 amplitude matrix M:
    // rho_A = M M^dagger with M[i][j] = amp(2i + j).
    const cplx m00 = psi.amp(0), m01 = psi.amp(1), m10 = psi.amp(2), m11 = psi.amp(3);
    const double a = std::norm(m00) + std::norm(m01);
    const double b = std::norm(m10) + std::norm(m11);
    const cplx w = m00 * std::conj(m10) + m01 * std::conj(m11);
    const auto [lo, hi] = eigs2(a, b, w);
    return entropy_term(lo) + entropy_term(hi);
}

}  // namespace madcap

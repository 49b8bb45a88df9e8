// optimize.hpp — deterministic derivative-free maximization on box and simplex
// domains: multistart Nelder-Mead with a seeded low-discrepancy start sequence.
// Results are bit-for-bit reproducible for a given (objective, domain, config).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace madcap {

// -------------------------------------------------------------------- rng ---

// SplitMix64; used instead of <random> distributions so that streams are
// identical across standard library implementations.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Stable per-grid-point seed derivation.
inline uint64_t mix_seed(uint64_t base, uint64_t i, uint64_t j) {
    SplitMix64 s(base ^ (i * 0x100000001B3ull) ^ (j * 0xD6E8FEB86659FD93ull));
    s.next();
    return s.next();
}

// ------------------------------------------------------------------ config ---

struct OptimizerConfig {
    int restarts = 32;
    int max_evals_per_restart = 2000;
    double f_tol = 1e-10;
    double x_tol = 1e-8;
    uint64_t seed = 0;

    void validate() const {
        if (restarts <= 0 || max_evals_per_restart <= 0)
            throw std::invalid_argument("OptimizerConfig: counts must be positive");
        if (!(f_tol > 0.0 && f_tol < 1.0) || !(x_tol > 0.0 && x_tol < 1.0))
            throw std::invalid_argument("OptimizerConfig: tolerances must be in (0,1)");
    }
};

// ------------------------------------------------------------------ domain ---

// Either a coordinate box, or the probability simplex of `dim` components.
// Simplex search runs in unconstrained coordinates y mapped through
// x_i = y_i^2 / sum_j y_j^2, so every evaluated point lies on the simplex.
// An optional projector tightens the feasible set beyond the box (used for
// the unit-ball amplitude constraint of the G1 family).
struct Domain {
    enum class Kind { box, simplex };

    Kind kind = Kind::box;
    std::vector<double> lo, hi;                        // box only
    int dim = 0;                                       // simplex only
    std::function<void(std::vector<double>&)> project; // applied after clamping

    static Domain box(std::vector<double> lo_, std::vector<double> hi_) {
        if (lo_.size() != hi_.size() || lo_.empty())
            throw std::invalid_argument("Domain: bad box bounds");
        for (size_t i = 0; i < lo_.size(); ++i)
            if (!(lo_[i] < hi_[i])) throw std::invalid_argument("Domain: lo must be < hi");
        Domain d;
        d.kind = Kind::box;
        d.lo = std::move(lo_);
        d.hi = std::move(hi_);
        d.dim = static_cast<int>(d.lo.size());
        return d;
    }

    static Domain simplex(int n) {
        if (n < 2) throw std::invalid_argument("Domain: simplex needs >= 2 components");
        Domain d;
        d.kind = Kind::simplex;
        d.dim = n;
        return d;
    }

    int search_dim() const { return dim; }
};

struct MaximizeResult {
    std::vector<double> x;  // in domain coordinates
    double f = -std::numeric_limits<double>::infinity();
    long evals = 0;
    int restarts_used = 0;
    bool converged = false;
};

namespace detail {

inline void squares_to_simplex(const std::vector<double>& y, std::vector<double>& x) {
    double s = 0.0;
    for (double v : y) s += v * v;
    if (s < 1e-300) {
        std::fill(x.begin(), x.end(), 1.0 / static_cast<double>(y.size()));
        return;
    }
    for (size_t i = 0; i < y.size(); ++i) x[i] = y[i] * y[i] / s;
}

// Low-discrepancy sequence (generalized golden ratio) with a seeded offset;
// provides the quasi-uniform tail of the start list.
struct QuasiSequence {
    std::vector<double> alpha, offset;
    long k = 0;

    QuasiSequence(int d, uint64_t seed) : alpha(static_cast<size_t>(d)), offset(static_cast<size_t>(d)) {
        double phi = 2.0;
        for (int it = 0; it < 40; ++it) phi = std::pow(1.0 + phi, 1.0 / (d + 1.0));
        double a = 1.0 / phi;
        for (int i = 0; i < d; ++i) {
            alpha[static_cast<size_t>(i)] = a;
            a /= phi;
        }
        SplitMix64 rng(seed);
        for (int i = 0; i < d; ++i) offset[static_cast<size_t>(i)] = rng.uniform();
    }

    std::vector<double> next() {
        ++k;
        std::vector<double> u(alpha.size());
        for (size_t i = 0; i < alpha.size(); ++i) {
            double v = offset[i] + static_cast<double>(k) * alpha[i];
            u[i] = v - std::floor(v);
        }
        return u;
    }
};

}  // namespace detail

// Maximize f over the domain. The start list is a fixed sequence (center,
// corners, then quasi-uniform points), so a run with more restarts extends a
// run with fewer and can only improve the best value. Among restarts tying
// within 1e-10 of the best value the argmax with the smallest Euclidean norm
// is reported, earliest restart winning residual ties.
inline MaximizeResult maximize(const std::function<double(const std::vector<double>&)>& f,
                               const Domain& dom, const OptimizerConfig& cfg) {
    cfg.validate();
    const int d = dom.search_dim();
    if (d > 8) throw std::invalid_argument("maximize: more than 8 parameters");
    const bool simplex_domain = dom.kind == Domain::Kind::simplex;

    // Search coordinates z -> domain coordinates x.
    std::vector<double> xbuf(static_cast<size_t>(d));
    auto to_domain = [&](const std::vector<double>& z, std::vector<double>& x) {
        if (simplex_domain) {
            detail::squares_to_simplex(z, x);
        } else {
            for (int i = 0; i < d; ++i)
                x[static_cast<size_t>(i)] =
                    std::clamp(z[static_cast<size_t>(i)], dom.lo[static_cast<size_t>(i)],
                               dom.hi[static_cast<size_t>(i)]);
        }
        if (dom.project) dom.project(x);
    };

    long total_evals = 0;
    auto eval = [&](const std::vector<double>& z) {
        to_domain(z, xbuf);
        ++total_evals;
        return f(xbuf);
    };

    // Start sequence in search coordinates.
    detail::QuasiSequence quasi(d, cfg.seed);
    auto start_point = [&](int r) -> std::vector<double> {
        std::vector<double> z(static_cast<size_t>(d));
        if (simplex_domain) {
            if (r == 0) {
                std::fill(z.begin(), z.end(), 1.0 / std::sqrt(static_cast<double>(d)));
            } else if (r <= d) {
                z[static_cast<size_t>(r - 1)] = 1.0;
            } else {
                // Quasi-uniform Dirichlet point, expressed as square roots.
                auto u = quasi.next();
                double s = 0.0;
                std::vector<double> e(u.size());
                for (size_t i = 0; i < u.size(); ++i) {
                    e[i] = -std::log(std::max(1.0 - u[i], 1e-16));
                    s += e[i];
                }
                for (size_t i = 0; i < u.size(); ++i) z[i] = std::sqrt(e[i] / s);
            }
        } else {
            const int ncorner = d <= 5 ? (1 << d) : 0;  // skip the corner flood at high d
            if (r == 0) {
                for (int i = 0; i < d; ++i)
                    z[static_cast<size_t>(i)] =
                        0.5 * (dom.lo[static_cast<size_t>(i)] + dom.hi[static_cast<size_t>(i)]);
            } else if (r <= ncorner) {
                const int bits = r - 1;
                for (int i = 0; i < d; ++i)
                    z[static_cast<size_t>(i)] = (bits >> i) & 1 ? dom.hi[static_cast<size_t>(i)]
                                                                : dom.lo[static_cast<size_t>(i)];
            } else {
                auto u = quasi.next();
                for (int i = 0; i < d; ++i)
                    z[static_cast<size_t>(i)] =
                        dom.lo[static_cast<size_t>(i)] +
                        u[static_cast<size_t>(i)] *
                            (dom.hi[static_cast<size_t>(i)] - dom.lo[static_cast<size_t>(i)]);
            }
        }
        return z;
    };

    struct Candidate {
        std::vector<double> x;
        double f;
        bool converged;
        int restart;
    };
    std::vector<Candidate> found;
    found.reserve(static_cast<size_t>(cfg.restarts));

    // Standard Nelder-Mead schedule (reflect 1, expand 2, contract 1/2,
    // shrink 1/2), minimizing -f.
    const int nv = d + 1;
    for (int r = 0; r < cfg.restarts; ++r) {
        std::vector<std::vector<double>> vert(static_cast<size_t>(nv));
        std::vector<double> fv(static_cast<size_t>(nv));
        vert[0] = start_point(r);
        for (int i = 1; i < nv; ++i) {
            vert[static_cast<size_t>(i)] = vert[0];
            double& zi = vert[static_cast<size_t>(i)][static_cast<size_t>(i - 1)];
            if (simplex_domain) {
                zi += 0.35;
            } else {
                const double h =
                    0.2 * (dom.hi[static_cast<size_t>(i - 1)] - dom.lo[static_cast<size_t>(i - 1)]);
                zi += (zi + h <= dom.hi[static_cast<size_t>(i - 1)]) ? h : -h;
            }
        }
        long evals_left = cfg.max_evals_per_restart;
        for (int i = 0; i < nv && evals_left > 0; ++i, --evals_left)
            fv[static_cast<size_t>(i)] = eval(vert[static_cast<size_t>(i)]);

        bool converged = false;
        std::vector<double> centroid(static_cast<size_t>(d));
        std::vector<double> zr(static_cast<size_t>(d)), ze(static_cast<size_t>(d)),
            zc(static_cast<size_t>(d));
        while (evals_left > 0) {
            // Order: best = highest f; on full ties best and worst stay distinct.
            int ib = 0, iw = 0, is = 0;  // best, worst, second-worst
            for (int i = 1; i < nv; ++i) {
                if (fv[static_cast<size_t>(i)] > fv[static_cast<size_t>(ib)]) ib = i;
                if (fv[static_cast<size_t>(i)] <= fv[static_cast<size_t>(iw)]) iw = i;
            }
            is = (iw == 0) ? 1 : 0;
            for (int i = 0; i < nv; ++i)
                if (i != iw && fv[static_cast<size_t>(i)] < fv[static_cast<size_t>(is)]) is = i;

            const double spread = fv[static_cast<size_t>(ib)] - fv[static_cast<size_t>(iw)];
            double xspread = 0.0;
            for (int i = 0; i < nv; ++i)
                for (int j = 0; j < d; ++j)
                    xspread = std::max(xspread, std::abs(vert[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                                                         vert[static_cast<size_t>(ib)][static_cast<size_t>(j)]));
            // An exactly flat simplex has nothing left to resolve.
            if ((spread <= cfg.f_tol && xspread <= cfg.x_tol) || spread <= 0.0) {
                converged = true;
                break;
            }

            std::fill(centroid.begin(), centroid.end(), 0.0);
            for (int i = 0; i < nv; ++i) {
                if (i == iw) continue;
                for (int j = 0; j < d; ++j)
                    centroid[static_cast<size_t>(j)] += vert[static_cast<size_t>(i)][static_cast<size_t>(j)];
            }
            for (int j = 0; j < d; ++j) centroid[static_cast<size_t>(j)] /= d;

            for (int j = 0; j < d; ++j)
                zr[static_cast<size_t>(j)] =
                    2.0 * centroid[static_cast<size_t>(j)] - vert[static_cast<size_t>(iw)][static_cast<size_t>(j)];
            const double fr = eval(zr);
            --evals_left;

            if (fr > fv[static_cast<size_t>(ib)]) {
                if (evals_left <= 0) {
                    vert[static_cast<size_t>(iw)] = zr;
                    fv[static_cast<size_t>(iw)] = fr;
                    break;
                }
                for (int j = 0; j < d; ++j)
                    ze[static_cast<size_t>(j)] = centroid[static_cast<size_t>(j)] +
                                                 2.0 * (zr[static_cast<size_t>(j)] - centroid[static_cast<size_t>(j)]);
                const double fe = eval(ze);
                --evals_left;
                if (fe > fr) {
                    vert[static_cast<size_t>(iw)] = ze;
                    fv[static_cast<size_t>(iw)] = fe;
                } else {
                    vert[static_cast<size_t>(iw)] = zr;
                    fv[static_cast<size_t>(iw)] = fr;
                }
            } else if (fr > fv[static_cast<size_t>(is)]) {
                vert[static_cast<size_t>(iw)] = zr;
                fv[static_cast<size_t>(iw)] = fr;
            } else {
                const bool outside = fr > fv[static_cast<size_t>(iw)];
                const std::vector<double>& base = outside ? zr : vert[static_cast<size_t>(iw)];
                for (int j = 0; j < d; ++j)
                    zc[static_cast<size_t>(j)] =
                        centroid[static_cast<size_t>(j)] +
                        0.5 * (base[static_cast<size_t>(j)] - centroid[static_cast<size_t>(j)]);
                const double fc = eval(zc);
                --evals_left;
                if (fc >= (outside ? fr : fv[static_cast<size_t>(iw)])) {
                    vert[static_cast<size_t>(iw)] = zc;
                    fv[static_cast<size_t>(iw)] = fc;
                } else {
                    // Shrink toward the best vertex.
                    for (int i = 0; i < nv && evals_left > 0; ++i) {
                        if (i == ib) continue;
                        for (int j = 0; j < d; ++j)
                            vert[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                                0.5 * (vert[static_cast<size_t>(i)][static_cast<size_t>(j)] +
                                       vert[static_cast<size_t>(ib)][static_cast<size_t>(j)]);
                        fv[static_cast<size_t>(i)] = eval(vert[static_cast<size_t>(i)]);
                        --evals_left;
                    }
                }
            }
        }

        int ib = 0;
        for (int i = 1; i < nv; ++i)
            if (fv[static_cast<size_t>(i)] > fv[static_cast<size_t>(ib)]) ib = i;
        std::vector<double> x(static_cast<size_t>(d));
        to_domain(vert[static_cast<size_t>(ib)], x);
        found.push_back({std::move(x), fv[static_cast<size_t>(ib)], converged, r});
    }

    // Reduction over restarts: keep the candidates within 1e-10 of the best
    // value, then canonicalize degenerate optima: smallest Euclidean norm,
    // then smallest 4-norm (prefers the balanced representative of a
    // symmetric optimum), then lexicographically largest. Set-based filters,
    // so the outcome does not depend on restart order.
    double fbest = -std::numeric_limits<double>::infinity();
    for (const Candidate& c : found) fbest = std::max(fbest, c.f);

    std::vector<const Candidate*> tied;
    for (const Candidate& c : found)
        if (c.f >= fbest - 1e-10) tied.push_back(&c);

    auto filter_min = [&tied](auto key, double tol) {
        double lo = std::numeric_limits<double>::infinity();
        for (const Candidate* c : tied) lo = std::min(lo, key(*c));
        std::vector<const Candidate*> keep;
        for (const Candidate* c : tied)
            if (key(*c) <= lo + tol) keep.push_back(c);
        tied.swap(keep);
    };
    filter_min([](const Candidate& c) {
        double n2 = 0.0;
        for (double v : c.x) n2 += v * v;
        return n2;
    }, 1e-7);
    filter_min([](const Candidate& c) {
        double n4 = 0.0;
        for (double v : c.x) n4 += v * v * v * v;
        return n4;
    }, 1e-7);

    const Candidate* pick = tied.front();
    for (const Candidate* c : tied)
        if (c->x > pick->x) pick = c;

    MaximizeResult res;
    res.x = pick->x;
    res.f = fbest;
    res.evals = total_evals;
    res.restarts_used = cfg.restarts;
    res.converged = pick->converged;
    return res;
}

}  // namespace madcap

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "npconfig/errors.hpp"
#include "npconfig/linalg.hpp"
#include "npconfig/mindisk.hpp"
#include "npconfig/rng.hpp"

namespace npc {

/// A point (x, y) of R^n x R^n; member of the polytope C_n when all of
/// ||x||_1, ||y||_1, ||x-y||_1 are at most 1.
struct PairVector {
    std::vector<double> x, y;

    std::size_t dim() const { return x.size(); }

    bool in_polytope(double tol = 1e-12) const {
        double nx = 0.0, ny = 0.0, nd = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            nx += std::abs(x[i]);
            ny += std::abs(y[i]);
            nd += std::abs(x[i] - y[i]);
        }
        return nx <= 1.0 + tol && ny <= 1.0 + tol && nd <= 1.0 + tol;
    }
};

struct InequalityReport {
    double lhs = 0.0, rhs = 0.0, slack = 0.0;
};

/// The discrete l1 inequality:
/// ||alpha x + beta y||_1 <= ((|a|+|b|+|a+b|)/2) max{||x||_1,||y||_1,||x-y||_1}.
inline InequalityReport discrete_inequality(const std::vector<double>& x,
                                            const std::vector<double>& y,
                                            cplx alpha, cplx beta) {
    InequalityReport rep;
    double nx = 0.0, ny = 0.0, nd = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        rep.lhs += std::abs(alpha * x[i] + beta * y[i]);
        nx += std::abs(x[i]);
        ny += std::abs(y[i]);
        nd += std::abs(x[i] - y[i]);
    }
    const double coeff = 0.5 * (std::abs(alpha) + std::abs(beta) + std::abs(alpha + beta));
    rep.rhs = coeff * std::max({nx, ny, nd});
    rep.slack = rep.rhs - rep.lhs;
    return rep;
}

namespace detail {

/// All 3 * 2^n facets of C_n as rows (a, rhs=1): sum_i s_i v_i <= 1 with
/// v in {x, y, x - y}.
inline std::vector<std::vector<double>> cn_facets(int n) {
    std::vector<std::vector<double>> rows;
    for (int group = 0; group < 3; ++group)
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<double> row(2 * n, 0.0);
            for (int i = 0; i < n; ++i) {
                const double s = (mask >> i) & 1 ? -1.0 : 1.0;
                if (group == 0) row[i] = s;
                else if (group == 1) row[n + i] = s;
                else { row[i] = s; row[n + i] = -s; }
            }
            rows.push_back(std::move(row));
        }
    return rows;
}

/// Solve the square system (Gaussian elimination, partial pivoting);
/// returns false when near-singular.
inline bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                         std::vector<double>& out) {
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (std::abs(a[piv][c]) < 1e-10) return false;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r][c] / a[c][c];
            if (f == 0.0) continue;
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    out.assign(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t k = r + 1; k < n; ++k) s -= a[r][k] * out[k];
        out[r] = s / a[r][r];
    }
    return true;
}

} // namespace detail

/// Vertex enumeration of C_n by active-set bases over the 3 * 2^n facets.
/// Exhaustive and exact for n <= 3 only.
inline std::vector<PairVector> enumerate_extreme_points(int n) {
    if (n < 1 || n > 3)
        throw DimensionTooLarge("enumerate_extreme_points: supported for n in {1,2,3}");
    const auto facets = detail::cn_facets(n);
    const int dim = 2 * n;
    const int nf = static_cast<int>(facets.size());

    std::vector<std::vector<double>> verts;
    std::vector<int> idx(dim);
    // Iterate over all dim-subsets of facets.
    for (int i = 0; i < dim; ++i) idx[i] = i;
    while (true) {
        std::vector<std::vector<double>> a(dim);
        for (int i = 0; i < dim; ++i) a[i] = facets[idx[i]];
        std::vector<double> sol;
        if (detail::solve_square(a, std::vector<double>(dim, 1.0), sol)) {
            bool feasible = true;
            for (const auto& f : facets) {
                double dot = 0.0;
                for (int i = 0; i < dim; ++i) dot += f[i] * sol[i];
                if (dot > 1.0 + 1e-9) { feasible = false; break; }
            }
            if (feasible) {
                bool dup = false;
                for (const auto& v : verts) {
                    double dist = 0.0;
                    for (int i = 0; i < dim; ++i) dist = std::max(dist, std::abs(v[i] - sol[i]));
                    if (dist <= 1e-10) { dup = true; break; }
                }
                if (!dup) verts.push_back(sol);
            }
        }
        // Next combination.
        int pos = dim - 1;
        while (pos >= 0 && idx[pos] == nf - dim + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < dim; ++i) idx[i] = idx[i - 1] + 1;
    }

    std::vector<PairVector> out;
    out.reserve(verts.size());
    for (const auto& v : verts) {
        PairVector p;
        p.x.assign(v.begin(), v.begin() + n);
        p.y.assign(v.begin() + n, v.end());
        out.push_back(std::move(p));
    }
    return out;
}

namespace detail {

/// Snap near-rationals with denominator <= 16 so lexicographic comparison
/// of orbit elements is stable under rounding.
inline double snap16(double v) {
    const double scaled = v * 16.0;
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) < 1e-6) return rounded / 16.0;
    return v;
}

inline std::vector<double> flatten_snapped(const PairVector& p) {
    std::vector<double> out;
    out.reserve(2 * p.x.size());
    for (double v : p.x) out.push_back(snap16(v));
    for (double v : p.y) out.push_back(snap16(v));
    return out;
}

} // namespace detail

/// Lexicographically smallest element of the G_n-orbit of p, where G_n is
/// generated by coordinate permutations, joint sign flips, the swap
/// (x,y) -> (y,x), and (x,y) -> (x, x-y). Orbit closure by BFS.
inline PairVector gn_canonicalize(const PairVector& p) {
    const std::size_t n = p.dim();
    std::vector<std::vector<double>> seen;
    std::vector<PairVector> queue{p};
    seen.push_back(detail::flatten_snapped(p));

    const auto push = [&](PairVector q) {
        auto key = detail::flatten_snapped(q);
        for (const auto& s : seen) {
            double dist = 0.0;
            for (std::size_t i = 0; i < key.size(); ++i)
                dist = std::max(dist, std::abs(s[i] - key[i]));
            if (dist <= 1e-9) return;
        }
        seen.push_back(std::move(key));
        queue.push_back(std::move(q));
    };

    for (std::size_t head = 0; head < queue.size(); ++head) {
        const PairVector cur = queue[head];
        // Adjacent transpositions generate all coordinate permutations.
        for (std::size_t i = 0; i + 1 < n; ++i) {
            PairVector q = cur;
            std::swap(q.x[i], q.x[i + 1]);
            std::swap(q.y[i], q.y[i + 1]);
            push(std::move(q));
        }
        for (std::size_t i = 0; i < n; ++i) { // joint sign flip
            PairVector q = cur;
            q.x[i] = -q.x[i];
            q.y[i] = -q.y[i];
            push(std::move(q));
        }
        {
            PairVector q{cur.y, cur.x}; // swap
            push(std::move(q));
        }
        {
            PairVector q = cur; // (x, y) -> (x, x - y)
            for (std::size_t i = 0; i < n; ++i) q.y[i] = q.x[i] - q.y[i];
            push(std::move(q));
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < seen.size(); ++i)
        if (std::lexicographical_compare(seen[i].begin(), seen[i].end(),
                                         seen[best].begin(), seen[best].end()))
            best = i;
    PairVector out;
    out.x.assign(seen[best].begin(), seen[best].begin() + n);
    out.y.assign(seen[best].begin() + n, seen[best].end());
    return out;
}

/// Distinct G_n-classes of the vertex set of C_n.
inline std::vector<PairVector> extreme_point_classes(int n) {
    std::vector<PairVector> classes;
    for (const PairVector& v : enumerate_extreme_points(n)) {
        PairVector c = gn_canonicalize(v);
        bool dup = false;
        for (const PairVector& k : classes) {
            double dist = 0.0;
            for (std::size_t i = 0; i < c.x.size(); ++i) {
                dist = std::max(dist, std::abs(k.x[i] - c.x[i]));
                dist = std::max(dist, std::abs(k.y[i] - c.y[i]));
            }
            if (dist <= 1e-9) { dup = true; break; }
        }
        if (!dup) classes.push_back(std::move(c));
    }
    return classes;
}

// ---------------------------------------------------------------------------
// n measures on a finite set
// ---------------------------------------------------------------------------

/// k real measures on an m-point set; weights[j][i] = mu_j({x_i}).
struct FiniteMeasureSet {
    std::vector<std::vector<double>> weights;

    std::size_t k() const { return weights.size(); }
    std::size_t m() const { return weights.empty() ? 0 : weights[0].size(); }
};

/// Operator norm ||L|| = (1/2) max over pairs of ||mu_j - mu_k||_TV.
inline double n_measures_norm(const FiniteMeasureSet& ms) {
    if (ms.k() < 2) throw DegenerateInput("n_measures_norm: need at least two measures");
    double best = 0.0;
    for (std::size_t j = 0; j < ms.k(); ++j)
        for (std::size_t l = j + 1; l < ms.k(); ++l) {
            double tv = 0.0;
            for (std::size_t i = 0; i < ms.m(); ++i)
                tv += std::abs(ms.weights[j][i] - ms.weights[l][i]);
            best = std::max(best, tv);
        }
    return 0.5 * best;
}

struct ImageRadiusReport {
    double max_ratio = 0.0;
    double aligned_ratio = 0.0; // sign vector aligned with the argmax pair
};

/// Empirical check of ||L|| = sup over ||f||_inf <= 1 of the Chebyshev
/// radius of the image set {mu_j(f)}: random unimodular f, all sign
/// vectors for small m, and the aligned sign vector of the extremal pair.
inline ImageRadiusReport verify_image_radius(const FiniteMeasureSet& ms, int trials,
                                             std::uint64_t seed) {
    const double norm = n_measures_norm(ms);
    ImageRadiusReport rep;
    if (norm <= 1e-15) return rep;

    const std::size_t k = ms.k(), m = ms.m();
    const auto ratio_of = [&](const std::vector<cplx>& f) {
        std::vector<cplx> images(k);
        for (std::size_t j = 0; j < k; ++j) {
            cplx s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += ms.weights[j][i] * f[i];
            images[j] = s;
        }
        return quotient_norm(images) / norm;
    };

    // Aligned sign vector of the pair attaining the max TV distance.
    std::size_t bj = 0, bl = 1;
    double btv = -1.0;
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t l = j + 1; l < k; ++l) {
            double tv = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                tv += std::abs(ms.weights[j][i] - ms.weights[l][i]);
            if (tv > btv) { btv = tv; bj = j; bl = l; }
        }
    std::vector<cplx> aligned(m);
    for (std::size_t i = 0; i < m; ++i)
        aligned[i] = ms.weights[bj][i] - ms.weights[bl][i] >= 0.0 ? 1.0 : -1.0;
    rep.aligned_ratio = ratio_of(aligned);
    rep.max_ratio = rep.aligned_ratio;

    if (m <= 12) { // all +-1 sign vectors: extreme points of the real ball
        std::vector<cplx> f(m);
        for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
            for (std::size_t i = 0; i < m; ++i) f[i] = (mask >> i) & 1 ? -1.0 : 1.0;
            rep.max_ratio = std::max(rep.max_ratio, ratio_of(f));
        }
    }
    for (int t = 0; t < trials; ++t) {
        Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(t)));
        std::vector<cplx> f(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double th = rng.uniform(0.0, 2.0 * 3.141592653589793);
            f[i] = cplx(std::cos(th), std::sin(th));
        }
        rep.max_ratio = std::max(rep.max_ratio, ratio_of(f));
    }
    return rep;
}

} // namespace npc

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "npconfig/domain.hpp"
#include "npconfig/errors.hpp"
#include "npconfig/mindisk.hpp"
#include "npconfig/npkernel.hpp"
#include "npconfig/rng.hpp"

namespace npc {

/// A polynomial competitor for a(Omega): coefficients in the
/// centroid-centered, radius-scaled monomial basis, normalized so that the
/// sampled boundary sup of |f| is 1.
struct AnalyticCandidate {
    std::vector<cplx> coeffs;
    double objective = 0.0;
};

struct ALowerBound {
    double value = 0.0;
    AnalyticCandidate best;
    int degree = 0;
    int base_count = 0; // quotient-norm sampling resolution
    int sup_count = 0;  // boundary-sup sampling resolution
};

namespace detail {

/// Precomputed sampling of the K-objective: basis values at quadrature
/// nodes / sup samples / base points, and the density matrix
/// K[i][j] = w_j rho_{zeta_i}(sigma_j).
struct AObjective {
    std::size_t dim = 0; // degree + 1
    std::vector<std::vector<cplx>> basis_nodes; // [k][node]
    std::vector<std::vector<cplx>> basis_sup;   // [k][sample]
    std::vector<std::vector<cplx>> basis_base;  // [k][base]
    std::vector<std::vector<double>> kmat;      // [base][node]
    std::vector<double> atom;                   // [base]

    AObjective(const ConvexDomain& d, int degree, int base_count, int sup_count) {
        dim = static_cast<std::size_t>(degree) + 1;
        const cplx z0 = d.centroid();
        double rad = 0.0;
        for (const Node& nd : d.nodes()) rad = std::max(rad, std::abs(nd.pos - z0));

        const auto fill_basis = [&](std::vector<std::vector<cplx>>& out,
                                    const std::vector<cplx>& pts) {
            out.assign(dim, std::vector<cplx>(pts.size()));
            for (std::size_t j = 0; j < pts.size(); ++j) {
                const cplx z = (pts[j] - z0) / rad;
                cplx pw = 1.0;
                for (std::size_t k = 0; k < dim; ++k) {
                    out[k][j] = pw;
                    pw *= z;
                }
            }
        };

        std::vector<cplx> node_pts;
        for (const Node& nd : d.nodes()) node_pts.push_back(nd.pos);
        fill_basis(basis_nodes, node_pts);

        std::vector<cplx> sup_pts;
        for (const BoundaryPoint& bp : d.arclength_samples(sup_count))
            sup_pts.push_back(bp.pos);
        for (const Corner& c : d.corners()) sup_pts.push_back(c.point);
        fill_basis(basis_sup, sup_pts);

        const std::vector<BoundaryPoint> bases = base_points(d, base_count);
        std::vector<cplx> base_pts;
        for (const BoundaryPoint& bp : bases) base_pts.push_back(bp.pos);
        fill_basis(basis_base, base_pts);

        kmat.assign(bases.size(), std::vector<double>(d.nodes().size()));
        atom.assign(bases.size(), 0.0);
        for (std::size_t i = 0; i < bases.size(); ++i) {
            atom[i] = atom_mass_at(d, bases[i].pos);
            const auto& nodes = d.nodes();
            for (std::size_t j = 0; j < nodes.size(); ++j)
                kmat[i][j] = nodes[j].weight *
                             density_raw(d, bases[i].pos, nodes[j].arc, nodes[j].t);
        }
    }

    /// Boundary sup of |f| on the sampling grid.
    double sup_of(const std::vector<cplx>& c) const {
        double best = 0.0;
        for (std::size_t j = 0; j < basis_sup[0].size(); ++j) {
            cplx v = 0.0;
            for (std::size_t k = 0; k < dim; ++k) v += c[k] * basis_sup[k][j];
            best = std::max(best, std::abs(v));
        }
        return best;
    }

    /// quotient_norm of the K-image of f / ||f||_sup.
    double value_of(const std::vector<cplx>& c) const {
        const double sup = sup_of(c);
        if (sup < 1e-300) return 0.0;

        std::vector<cplx> f(basis_nodes[0].size(), 0.0);
        for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t j = 0; j < f.size(); ++j) f[j] += c[k] * basis_nodes[k][j];

        std::vector<cplx> images(kmat.size());
        for (std::size_t i = 0; i < kmat.size(); ++i) {
            cplx acc = 0.0;
            for (std::size_t j = 0; j < f.size(); ++j) acc += kmat[i][j] * f[j];
            if (atom[i] != 0.0) {
                cplx fz = 0.0;
                for (std::size_t k = 0; k < dim; ++k) fz += c[k] * basis_base[k][i];
                acc += atom[i] * fz;
            }
            images[i] = acc / sup;
        }
        return quotient_norm(images);
    }
};

/// Nelder-Mead maximization over the flattened real parameters.
inline double nelder_mead_max(const AObjective& obj, std::vector<double>& x, int iters) {
    const std::size_t n = x.size();
    const auto eval = [&](const std::vector<double>& v) {
        std::vector<cplx> c(n / 2);
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = cplx(v[2 * k], v[2 * k + 1]);
        return -obj.value_of(c); // minimize the negative
    };

    std::vector<std::vector<double>> simplex(n + 1, x);
    std::vector<double> fx(n + 1);
    for (std::size_t i = 0; i < n; ++i)
        simplex[i + 1][i] += (simplex[i + 1][i] != 0.0 ? 0.25 * simplex[i + 1][i] : 0.25);
    for (std::size_t i = 0; i <= n; ++i) fx[i] = eval(simplex[i]);

    int evals = static_cast<int>(n) + 1;
    while (evals < iters) {
        // Order: best first.
        std::vector<std::size_t> ord(n + 1);
        for (std::size_t i = 0; i <= n; ++i) ord[i] = i;
        std::sort(ord.begin(), ord.end(),
                  [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
        {
            std::vector<std::vector<double>> s2;
            std::vector<double> f2;
            for (std::size_t i = 0; i <= n; ++i) {
                s2.push_back(simplex[ord[i]]);
                f2.push_back(fx[ord[i]]);
            }
            simplex.swap(s2);
            fx.swap(f2);
        }
        if (std::abs(fx[n] - fx[0]) < 1e-12 * (1.0 + std::abs(fx[0]))) break;

        std::vector<double> cen(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) cen[k] += simplex[i][k] / n;

        const auto blend = [&](double t) {
            std::vector<double> v(n);
            for (std::size_t k = 0; k < n; ++k)
                v[k] = cen[k] + t * (simplex[n][k] - cen[k]);
            return v;
        };

        const std::vector<double> xr = blend(-1.0);
        const double fr = eval(xr);
        ++evals;
        if (fr < fx[0]) {
            const std::vector<double> xe = blend(-2.0);
            const double fe = eval(xe);
            ++evals;
            if (fe < fr) { simplex[n] = xe; fx[n] = fe; }
            else { simplex[n] = xr; fx[n] = fr; }
        } else if (fr < fx[n - 1]) {
            simplex[n] = xr;
            fx[n] = fr;
        } else {
            const std::vector<double> xc = blend(fr < fx[n] ? -0.5 : 0.5);
            const double fc = eval(xc);
            ++evals;
            if (fc < std::min(fr, fx[n])) { simplex[n] = xc; fx[n] = fc; }
            else { // shrink toward the best vertex
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t k = 0; k < n; ++k)
                        simplex[i][k] = 0.5 * (simplex[i][k] + simplex[0][k]);
                    fx[i] = eval(simplex[i]);
                }
                evals += static_cast<int>(n);
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fx[i] < fx[best]) best = i;
    x = simplex[best];
    return -fx[best];
}

} // namespace detail

/// Renormalize coefficients by the sampled boundary sup and report the
/// achieved quotient norm.
inline AnalyticCandidate normalize_candidate(const ConvexDomain& d,
                                             const std::vector<cplx>& coeffs,
                                             int base_count = 32, int sup_count = 256) {
    bool all_zero = true;
    for (cplx c : coeffs)
        if (c != cplx{}) { all_zero = false; break; }
    if (coeffs.empty() || all_zero)
        throw ZeroPolynomial("normalize_candidate: zero polynomial");
    const detail::AObjective obj(d, static_cast<int>(coeffs.size()) - 1, base_count,
                                 sup_count);
    const double sup = obj.sup_of(coeffs);
    if (sup < 1e-300) throw ZeroPolynomial("normalize_candidate: vanishing boundary sup");
    AnalyticCandidate out;
    out.coeffs = coeffs;
    for (cplx& c : out.coeffs) c /= sup;
    out.objective = obj.value_of(out.coeffs);
    return out;
}

/// Derivative-free lower bound for the analytic configuration constant:
/// maximize quotient_norm(K f) over degree-bounded polynomials with
/// sampled boundary sup 1. Deterministic for a fixed seed.
inline ALowerBound a_lower_bound(const ConvexDomain& d, int degree, int restarts,
                                 int iters, std::uint64_t seed,
                                 int base_count = 32, int sup_count = 256) {
    if (degree < 1) throw DegenerateInput("a_lower_bound: degree must be >= 1");
    const detail::AObjective obj(d, degree, base_count, sup_count);

    ALowerBound out;
    out.degree = degree;
    out.base_count = base_count;
    out.sup_count = sup_count;

    const std::size_t nparam = 2 * (static_cast<std::size_t>(degree) + 1);
    for (int r = 0; r < restarts; ++r) {
        Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(r)));
        std::vector<double> x(nparam);
        for (double& v : x) v = rng.normal();
        const double val = detail::nelder_mead_max(obj, x, iters);
        if (val > out.value) { // ties: lower restart index wins
            out.value = val;
            out.best.coeffs.assign(nparam / 2, 0.0);
            for (std::size_t k = 0; k < nparam / 2; ++k)
                out.best.coeffs[k] = cplx(x[2 * k], x[2 * k + 1]);
            const double sup = obj.sup_of(out.best.coeffs);
            for (cplx& c : out.best.coeffs) c /= sup;
            out.best.objective = val;
        }
    }
    return out;
}

} // namespace npc

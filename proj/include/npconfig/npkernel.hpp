#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "npconfig/domain.hpp"
#include "npconfig/errors.hpp"

namespace npc {

/// The kernel measure mu_zeta = atom_mass * delta_zeta + rho_zeta ds,
/// with the density sampled at every quadrature node of the domain.
struct BoundaryMeasure {
    BoundaryPoint base{};
    double atom_mass = 0.0;
    std::vector<double> density;
};

/// A function sampled on the boundary: one value per quadrature node and
/// one per corner (corners are never quadrature nodes).
struct BoundarySamples {
    std::vector<cplx> at_nodes;
    std::vector<cplx> at_corners;
};

namespace detail {

/// rho_zeta at the boundary point gamma(t) of the given arc:
/// (1/pi) Im(T(sigma)/(sigma - zeta)). Exact 0 when sigma lies on a
/// segment whose line contains zeta; curvature/(2 pi) limit at sigma = zeta.
inline double density_raw(const ConvexDomain& d, cplx zeta, int arc_idx, double t) {
    const Arc& arc = d.arcs()[arc_idx];
    const cplx sigma = arc.point(t);
    if (arc.is_segment()) {
        const cplx dir = arc.p1 - arc.p0;
        const double len = std::abs(dir);
        const double off = std::abs(cross(arc.p0, arc.p1, zeta)) / len;
        if (off <= 1e-12 * d.scale()) return 0.0;
    }
    const cplx diff = sigma - zeta;
    const double dist = std::abs(diff);
    if (dist <= 1e-13 * d.scale()) return arc.curvature(t) / (2.0 * kPi);
    if (dist <= 1e-6 * d.scale()) {
        // Near-coincident evaluation on the same smooth arc: the raw formula
        // divides an O(dist^2) numerator by dist^2 and is swamped by rounding
        // noise. When zeta satisfies the arc's implicit equation, substitute
        // the coincidence limit kappa/(2 pi) (error O(dist), far below the
        // cancellation noise in this zone).
        if (arc.kind == Arc::Kind::Circle) {
            if (std::abs(std::abs(zeta - arc.center) - arc.r) <= 1e-9 * d.scale())
                return arc.curvature(t) / (2.0 * kPi);
        } else if (arc.kind == Arc::Kind::Ellipse) {
            const cplx rel = zeta - arc.center;
            const double q = (rel.real() / arc.a) * (rel.real() / arc.a) +
                             (rel.imag() / arc.b) * (rel.imag() / arc.b);
            if (std::abs(q - 1.0) <= 1e-8)
                return arc.curvature(t) / (2.0 * kPi);
        }
    }
    const cplx dgamma = arc.deriv(t);
    const cplx tangent = dgamma / std::abs(dgamma);
    return std::imag(tangent / diff) / kPi;
}

inline bool same_position(cplx a, cplx b, double scale) {
    return std::abs(a - b) <= 1e-12 * scale;
}

} // namespace detail

/// Kernel density rho_zeta(sigma) at quadrature node `node_index`.
inline double density(const ConvexDomain& d, const BoundaryPoint& zeta,
                      std::size_t node_index) {
    const Node& nd = d.nodes()[node_index];
    if (std::abs(nd.pos - zeta.pos) < 1e-14 * d.scale())
        throw CoincidentPoints("density: sigma coincides with zeta");
    return detail::density_raw(d, zeta.pos, nd.arc, nd.t);
}

/// Boundary point resolver: accepts a point that is a quadrature node or a
/// corner (or anything within tol of the boundary along an arc).
inline BoundaryPoint locate_boundary_point(const ConvexDomain& d, cplx zeta) {
    const double tol = 1e-9 * d.scale();
    for (std::size_t ai = 0; ai < d.arcs().size(); ++ai) {
        const Arc& arc = d.arcs()[ai];
        if (detail::same_position(arc.point(arc.t0), zeta, d.scale()) ||
            std::abs(arc.point(arc.t0) - zeta) <= tol)
            return {static_cast<int>(ai), arc.t0, arc.point(arc.t0)};
    }
    // Nearest quadrature node.
    double best = 1e300;
    BoundaryPoint bp{};
    for (const Node& nd : d.nodes()) {
        const double dist = std::abs(nd.pos - zeta);
        if (dist < best) {
            best = dist;
            bp = {nd.arc, nd.t, nd.pos};
        }
    }
    if (best > tol) {
        // Projection onto the arc parametrization (smooth boundary points
        // in between nodes are admissible base points).
        for (std::size_t ai = 0; ai < d.arcs().size(); ++ai) {
            const Arc& arc = d.arcs()[ai];
            double t = 0.5 * (arc.t0 + arc.t1);
            // Newton on Re((gamma(t) - zeta) * conj(gamma'(t))) = 0.
            for (int it = 0; it < 50; ++it) {
                const cplx g = arc.point(t) - zeta;
                const cplx dg = arc.deriv(t);
                const double f = (g * std::conj(dg)).real();
                const double df = std::norm(dg) + (g * std::conj(arc.deriv2(t))).real();
                if (std::abs(df) < 1e-300) break;
                t = std::clamp(t - f / df, arc.t0, arc.t1);
            }
            const double dist = std::abs(arc.point(t) - zeta);
            if (dist < best) {
                best = dist;
                bp = {static_cast<int>(ai), t, arc.point(t)};
            }
        }
    }
    if (best > tol) throw OffBoundary("base point is not on the boundary within tolerance");
    return bp;
}

/// Atom mass 1 - theta/pi at corners, 0 at smooth points.
inline double atom_mass_at(const ConvexDomain& d, cplx pos) {
    if (auto ci = d.corner_index(pos, 1e-9 * d.scale()))
        return 1.0 - d.corners()[*ci].theta / kPi;
    return 0.0;
}

inline BoundaryMeasure measure(const ConvexDomain& d, const BoundaryPoint& zeta) {
    BoundaryMeasure bm;
    bm.base = zeta;
    bm.atom_mass = atom_mass_at(d, zeta.pos);
    bm.density.reserve(d.nodes().size());
    for (const Node& nd : d.nodes())
        bm.density.push_back(detail::density_raw(d, zeta.pos, nd.arc, nd.t));
    return bm;
}

inline BoundaryMeasure measure(const ConvexDomain& d, cplx zeta) {
    return measure(d, locate_boundary_point(d, zeta));
}

// ---------------------------------------------------------------------------
// Total-variation distance
// ---------------------------------------------------------------------------

namespace detail {

struct TvIntegrand {
    const ConvexDomain* d;
    cplx z1, z2;
    int arc;

    double operator()(double t) const {
        const double g = density_raw(*d, z1, arc, t) - density_raw(*d, z2, arc, t);
        return g * std::abs(d->arcs()[arc].deriv(t));
    }
};

inline double gl_integrate(const TvIntegrand& f, double a, double b) {
    const GaussRule& g = gauss_legendre(20);
    const double h = 0.5 * (b - a), m = 0.5 * (b + a);
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        s += g.weights[i] * f(m + h * g.nodes[i]);
    return s * h;
}

/// Integrate |f| on [a, b] where f is analytic: locate the sign changes by
/// scan + bisection, then Gauss-Legendre on each sign-constant piece.
inline double abs_integrate(const TvIntegrand& f, double a, double b) {
    constexpr int kScan = 9;
    double ts[kScan], vs[kScan];
    for (int i = 0; i < kScan; ++i) {
        ts[i] = a + (b - a) * i / (kScan - 1);
        vs[i] = f(ts[i]);
    }
    std::vector<double> cuts{a};
    for (int i = 0; i + 1 < kScan; ++i) {
        if (vs[i] == 0.0 || vs[i] * vs[i + 1] > 0.0) continue;
        double lo = ts[i], hi = ts[i + 1], flo = vs[i];
        for (int it = 0; it < 40 && hi - lo > 1e-9 * (b - a); ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if (fm == 0.0) { lo = hi = mid; break; }
            if (flo * fm < 0.0) hi = mid;
            else { lo = mid; flo = fm; }
        }
        cuts.push_back(0.5 * (lo + hi));
    }
    cuts.push_back(b);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += std::abs(gl_integrate(f, cuts[i], cuts[i + 1]));
    return total;
}

} // namespace detail

/// ||mu_zeta1 - mu_zeta2||: atoms of distinct base points contribute in
/// full; the density part is integrated arc by arc on a refined grid with
/// spectral quadrature between sign changes.
inline double tv_distance(const ConvexDomain& d, BoundaryPoint zeta1, BoundaryPoint zeta2) {
    if (detail::same_position(zeta1.pos, zeta2.pos, d.scale())) return 0.0;
    // Order-normalize so tv(a, b) and tv(b, a) share one code path exactly.
    const auto key = [](const BoundaryPoint& p) {
        return std::make_pair(p.pos.real(), p.pos.imag());
    };
    if (key(zeta2) < key(zeta1)) std::swap(zeta1, zeta2);

    double total = atom_mass_at(d, zeta1.pos) + atom_mass_at(d, zeta2.pos);

    constexpr int kRefine = 4;
    for (std::size_t ai = 0; ai < d.arcs().size(); ++ai) {
        const Arc& arc = d.arcs()[ai];
        detail::TvIntegrand f{&d, zeta1.pos, zeta2.pos, static_cast<int>(ai)};

        // Subinterval endpoints: refined panel grid plus base parameters.
        std::vector<double> brk;
        const int cells = d.panels_per_arc() * kRefine;
        brk.reserve(cells + 3);
        for (int i = 0; i <= cells; ++i)
            brk.push_back(arc.t0 + (arc.t1 - arc.t0) * i / cells);
        for (const BoundaryPoint& z : {zeta1, zeta2})
            if (z.arc == static_cast<int>(ai) && z.t > arc.t0 && z.t < arc.t1)
                brk.push_back(z.t);
        std::sort(brk.begin(), brk.end());

        for (std::size_t i = 0; i + 1 < brk.size(); ++i)
            if (brk[i + 1] > brk[i])
                total += detail::abs_integrate(f, brk[i], brk[i + 1]);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Configuration constant
// ---------------------------------------------------------------------------

struct ConfigResult {
    double value = 0.0;
    BoundaryPoint witness1{}, witness2{};
};

/// Base points for the sup: all corners, then equal-arclength samples of
/// the boundary (samples that collide with corners are dropped).
inline std::vector<BoundaryPoint> base_points(const ConvexDomain& d, int sample_count) {
    std::vector<BoundaryPoint> out;
    for (const Corner& c : d.corners()) {
        for (std::size_t ai = 0; ai < d.arcs().size(); ++ai) {
            const Arc& arc = d.arcs()[ai];
            if (detail::same_position(arc.point(arc.t0), c.point, d.scale())) {
                out.push_back({static_cast<int>(ai), arc.t0, arc.point(arc.t0)});
                break;
            }
        }
    }
    for (const BoundaryPoint& bp : d.arclength_samples(sample_count)) {
        bool dup = false;
        for (const BoundaryPoint& q : out)
            if (std::abs(q.pos - bp.pos) <= 1e-9 * d.scale()) { dup = true; break; }
        if (!dup) out.push_back(bp);
    }
    return out;
}

/// Max of tv_distance/2 over all pairs from an explicit base-point list.
inline ConfigResult config_constant_at(const ConvexDomain& d,
                                       const std::vector<BoundaryPoint>& bases) {
    ConfigResult res;
    if (bases.size() >= 2) {
        res.witness1 = bases[0];
        res.witness2 = bases[1];
    }
    for (std::size_t i = 0; i < bases.size(); ++i)
        for (std::size_t j = i + 1; j < bases.size(); ++j) {
            const double v = 0.5 * tv_distance(d, bases[i], bases[j]);
            if (v > res.value) {
                res.value = v;
                res.witness1 = bases[i];
                res.witness2 = bases[j];
            }
        }
    return res;
}

/// c(Omega) = sup over base-point pairs of ||mu - mu'|| / 2; lower
/// approximation converging from below as the sampling refines.
inline ConfigResult config_constant(const ConvexDomain& d, int sample_count) {
    return config_constant_at(d, base_points(d, std::max(sample_count, 2)));
}

// ---------------------------------------------------------------------------
// The operator K and interior measures
// ---------------------------------------------------------------------------

inline void check_samples(const ConvexDomain& d, const BoundarySamples& f) {
    if (f.at_nodes.size() != d.nodes().size() ||
        f.at_corners.size() != d.corners().size())
        throw SampleMismatch("boundary samples do not match the domain's node/corner counts");
}

/// K f(zeta) = atom_mass * f(zeta) + sum_i w_i rho_zeta(sigma_i) f(sigma_i).
inline cplx apply_K(const ConvexDomain& d, const BoundarySamples& f,
                    const BoundaryPoint& zeta) {
    check_samples(d, f);
    cplx acc = 0.0;
    const auto& nodes = d.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i)
        acc += nodes[i].weight *
               detail::density_raw(d, zeta.pos, nodes[i].arc, nodes[i].t) * f.at_nodes[i];
    if (auto ci = d.corner_index(zeta.pos, 1e-9 * d.scale()))
        acc += (1.0 - d.corners()[*ci].theta / kPi) * f.at_corners[*ci];
    return acc;
}

struct InteriorCheck {
    double mass = 0.0;
    cplx value{};
};

/// Interior kernel measure mu_z (total mass 2): mass and the pairing with f.
inline InteriorCheck interior_measure_checks(const ConvexDomain& d, cplx z,
                                             const BoundarySamples& f) {
    check_samples(d, f);
    if (!d.strictly_interior(z, 1e-6 * d.scale()))
        throw NotInterior("interior_measure_checks: point too close to the boundary");
    InteriorCheck out;
    const auto& nodes = d.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double rho = std::imag(nodes[i].tangent / (nodes[i].pos - z)) / kPi;
        out.mass += nodes[i].weight * rho;
        out.value += nodes[i].weight * rho * f.at_nodes[i];
    }
    return out;
}

} // namespace npc

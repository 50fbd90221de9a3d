#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "npconfig/domain.hpp"
#include "npconfig/errors.hpp"
#include "npconfig/npkernel.hpp"

namespace npc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Radius of the circle through zeta tangent to the boundary at sigma
/// (quadrature node `node_index`). Infinity when zeta lies on the tangent
/// line at sigma.
inline double tangent_circle_radius(const ConvexDomain& d, cplx zeta,
                                    std::size_t node_index) {
    const Node& nd = d.nodes()[node_index];
    const cplx diff = nd.pos - zeta;
    const double dist = std::abs(diff);
    if (dist < 1e-14 * d.scale())
        throw CoincidentPoints("tangent_circle_radius: zeta coincides with sigma");
    const double denom = 2.0 * (diff * std::conj(nd.normal)).real();
    if (denom <= 1e-14 * d.scale()) return kInf;
    return dist * dist / denom;
}

/// R_Omega(sigma) = sup over zeta of R_{zeta,sigma}: max over sampled base
/// points, plus the osculating radius 1/kappa(sigma) (the zeta -> sigma
/// limit). Infinity on straight pieces.
inline double r_omega(const ConvexDomain& d, std::size_t node_index, int sample_count) {
    const Node& nd = d.nodes()[node_index];
    if (nd.curvature <= 0.0) return kInf; // flat: no tangent disk contains Omega
    double best = 1.0 / nd.curvature;
    for (const BoundaryPoint& bp : base_points(d, sample_count)) {
        if (std::abs(bp.pos - nd.pos) < 1e-12 * d.scale()) continue;
        const double r = tangent_circle_radius(d, bp.pos, node_index);
        if (r == kInf) return kInf;
        best = std::max(best, r);
    }
    return best;
}

struct CurvatureReport {
    std::vector<double> r_omega; // one value per quadrature node
    double mass = 0.0;           // nu(boundary) = (1/2pi) integral ds / R_Omega
    double bound = 0.0;          // 1 - mass >= c(Omega)
    int sample_count = 0;
};

/// Theorem-style curvature estimate c(Omega) <= 1 - (1/2pi) int ds/R_Omega.
/// Terms with R_Omega = infinity contribute 0 to the integral.
inline CurvatureReport curvature_bound(const ConvexDomain& d, int sample_count) {
    CurvatureReport rep;
    rep.sample_count = sample_count;
    rep.r_omega.reserve(d.nodes().size());
    double integral = 0.0;
    for (std::size_t i = 0; i < d.nodes().size(); ++i) {
        const double r = r_omega(d, i, sample_count);
        rep.r_omega.push_back(r);
        if (r != kInf) integral += d.nodes()[i].weight / r;
    }
    rep.mass = integral / (2.0 * kPi);
    rep.bound = 1.0 - rep.mass;
    return rep;
}

/// Closed form c(ellipse) = (2/pi) arctan(|b/a - a/b| / 2).
inline double ellipse_config_constant(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw NonPositiveAxis("ellipse_config_constant: semi-axes must be positive");
    return (2.0 / kPi) * std::atan(0.5 * std::abs(b / a - a / b));
}

/// Kernel density of the ellipse in parameter space: the measure of base
/// point gamma(s) pulled back to dt is (1/2pi) A / (1 + B cos(t+s)).
inline double ellipse_density(double a, double b, double s, double t) {
    if (!(a > 0.0) || !(b > 0.0))
        throw NonPositiveAxis("ellipse_density: semi-axes must be positive");
    const double a2 = a * a, b2 = b * b;
    const double A = 2.0 * a * b / (a2 + b2);
    const double B = (b2 - a2) / (a2 + b2);
    return A / (2.0 * kPi * (1.0 + B * std::cos(t + s)));
}

/// K(a,b) = 1 + sqrt(1 + c(ellipse)); equals 2 on disks, tends to 1+sqrt(2).
inline double spectral_constant_ellipse(double a, double b) {
    return 1.0 + std::sqrt(1.0 + ellipse_config_constant(a, b));
}

} // namespace npc

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "npconfig/bounds.hpp"
#include "npconfig/domain.hpp"
#include "npconfig/errors.hpp"
#include "npconfig/linalg.hpp"
#include "npconfig/npkernel.hpp"

namespace npc {

/// Inner polygonal approximation of the numerical range W(T).
struct NumRange {
    std::vector<cplx> boundary_points;    // theta-sweep touch points, ccw order
    std::optional<ConvexDomain> hull;     // absent when W(T) is (near) a segment
};

/// Boundary of W(T) by support-function sweep: for each direction theta the
/// top eigenvector v of Re(e^{-i theta} T) gives the touch point <Tv, v>.
inline NumRange numerical_range(const CMatrix& t, int angles,
                                int hull_panels = 4, int hull_nodes = 6) {
    if (angles < 16) throw DegenerateInput("numerical_range: need angles >= 16");
    const std::size_t n = t.size();
    const CMatrix tadj = t.adjoint();

    NumRange out;
    out.boundary_points.reserve(angles);
    for (int k = 0; k < angles; ++k) {
        const double theta = 2.0 * kPi * k / angles;
        const cplx w = std::polar(1.0, -theta);
        const CMatrix h = (t * w + tadj * std::conj(w)) * cplx(0.5, 0.0);
        const HermEigen eig = herm_eig(h);
        const std::vector<cplx>& v = eig.vectors.front();
        const std::vector<cplx> tv = t.apply(v);
        cplx point = 0.0;
        for (std::size_t i = 0; i < n; ++i) point += std::conj(v[i]) * tv[i];
        out.boundary_points.push_back(point);
    }
    try {
        out.hull = ConvexDomain::build(DomainSpec::hull(out.boundary_points),
                                       hull_panels, hull_nodes);
    } catch (const NumericalError&) {
        out.hull.reset(); // collinear range (normal/Hermitian-like T)
    }
    return out;
}

/// max |p| over boundary samples (max principle: the boundary suffices).
inline double sup_norm_boundary(const std::vector<cplx>& p, const ConvexDomain& d,
                                int samples) {
    double best = 0.0;
    for (const BoundaryPoint& bp : d.arclength_samples(std::max(samples, 64)))
        best = std::max(best, std::abs(poly_eval(p, bp.pos)));
    for (const Corner& c : d.corners())
        best = std::max(best, std::abs(poly_eval(p, c.point)));
    return best;
}

struct BoundReport {
    double lhs = 0.0;       // ||p(T)||
    double sup_norm = 0.0;  // ||p|| on the dilated hull boundary
    double c_of_w = 0.0;    // configuration constant of the hull polygon
    double k_improved = 0.0;
    double k_cp = 0.0;
    bool pass_improved = false;
    bool pass_cp = false;
    double slack_improved = 0.0;
    double slack_cp = 0.0;
};

struct VerifyOptions {
    int angles = 256;
    int samples = 512;
    double dilation = 1e-6;   // hull scaled by (1 + dilation) about its centroid
    int c_base_points = 16;   // base points for the c(W) estimate
    int hull_panels = 1;
    int hull_nodes = 4;
};

/// Spectral-bound harness: checks ||p(T)|| <= (1 + sqrt(1 + c(W))) ||p||_W
/// and the 1 + sqrt(2) fallback. T is normalized to unit operator norm
/// (coefficients rescaled accordingly) before evaluation.
inline BoundReport verify_bound(const CMatrix& t0, const std::vector<cplx>& p0,
                                const VerifyOptions& opt = {}) {
    if (p0.size() > 17)
        throw DegenerateInput("verify_bound: polynomial degree capped at 16");
    const double nrm = op_norm(t0);
    CMatrix t = t0;
    std::vector<cplx> p = p0;
    if (nrm > 0.0) {
        t = t0 * cplx(1.0 / nrm, 0.0);
        double pw = 1.0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            p[k] *= pw;
            pw *= nrm;
        }
    }

    NumRange w = numerical_range(t, opt.angles, opt.hull_panels, opt.hull_nodes);
    if (!w.hull || w.hull->area() <= 1e-8)
        throw EmptyInterior("verify_bound: numerical range has (near) empty interior");

    BoundReport rep;
    rep.lhs = op_norm(poly_apply(p, t));

    const ConvexDomain dilated =
        w.hull->affine_image(1.0 + opt.dilation, -w.hull->centroid() * opt.dilation);
    rep.sup_norm = sup_norm_boundary(p, dilated, opt.samples);

    // c(W) from a corner subsample of the hull polygon: every pairwise TV
    // still sees the full boundary, only the base-point grid is thinned.
    {
        std::vector<BoundaryPoint> bases = base_points(*w.hull, 2);
        std::vector<BoundaryPoint> thin;
        const std::size_t stride =
            std::max<std::size_t>(1, bases.size() / std::max(opt.c_base_points, 2));
        for (std::size_t i = 0; i < bases.size(); i += stride) thin.push_back(bases[i]);
        rep.c_of_w = config_constant_at(*w.hull, thin).value;
    }

    rep.k_improved = 1.0 + std::sqrt(1.0 + rep.c_of_w);
    rep.k_cp = 1.0 + std::sqrt(2.0);
    rep.slack_improved = rep.k_improved * rep.sup_norm - rep.lhs;
    rep.slack_cp = rep.k_cp * rep.sup_norm - rep.lhs;
    rep.pass_improved = rep.slack_improved >= 0.0;
    rep.pass_cp = rep.slack_cp >= 0.0;
    return rep;
}

} // namespace npc

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "npconfig/errors.hpp"
#include "npconfig/linalg.hpp"

namespace npc {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------------
// Gauss-Legendre rules
// ---------------------------------------------------------------------------

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

/// Nodes/weights by Newton iteration on the Legendre polynomial; cached.
inline const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

// ---------------------------------------------------------------------------
// Boundary arcs
// ---------------------------------------------------------------------------

/// One smooth piece of the boundary, traversed counter-clockwise.
struct Arc {
    enum class Kind { Segment, Circle, Ellipse };

    Kind kind = Kind::Segment;
    cplx p0{}, p1{};      // Segment endpoints
    cplx center{};        // Circle / Ellipse center
    double r = 0.0;       // Circle radius
    double a = 0.0, b = 0.0; // Ellipse semi-axes (axis-aligned)
    double t0 = 0.0, t1 = 1.0;

    static Arc segment(cplx p0, cplx p1) {
        Arc arc;
        arc.kind = Kind::Segment;
        arc.p0 = p0;
        arc.p1 = p1;
        arc.t0 = 0.0;
        arc.t1 = 1.0;
        return arc;
    }

    static Arc circle(cplx center, double r, double t0, double t1) {
        Arc arc;
        arc.kind = Kind::Circle;
        arc.center = center;
        arc.r = r;
        arc.t0 = t0;
        arc.t1 = t1;
        return arc;
    }

    static Arc ellipse(cplx center, double a, double b, double t0, double t1) {
        Arc arc;
        arc.kind = Kind::Ellipse;
        arc.center = center;
        arc.a = a;
        arc.b = b;
        arc.t0 = t0;
        arc.t1 = t1;
        return arc;
    }

    cplx point(double t) const {
        switch (kind) {
        case Kind::Segment: return p0 + t * (p1 - p0);
        case Kind::Circle: return center + r * cplx(std::cos(t), std::sin(t));
        case Kind::Ellipse: return center + cplx(a * std::cos(t), b * std::sin(t));
        }
        return {};
    }

    cplx deriv(double t) const {
        switch (kind) {
        case Kind::Segment: return p1 - p0;
        case Kind::Circle: return r * cplx(-std::sin(t), std::cos(t));
        case Kind::Ellipse: return cplx(-a * std::sin(t), b * std::cos(t));
        }
        return {};
    }

    cplx deriv2(double t) const {
        switch (kind) {
        case Kind::Segment: return {};
        case Kind::Circle: return r * cplx(-std::cos(t), -std::sin(t));
        case Kind::Ellipse: return cplx(-a * std::cos(t), -b * std::sin(t));
        }
        return {};
    }

    /// Signed curvature; positive for a convex counter-clockwise boundary.
    double curvature(double t) const {
        if (kind == Kind::Segment) return 0.0;
        const cplx d1 = deriv(t);
        const cplx d2 = deriv2(t);
        const double speed = std::abs(d1);
        return std::imag(std::conj(d1) * d2) / (speed * speed * speed);
    }

    bool is_segment() const { return kind == Kind::Segment; }
};

struct Corner {
    cplx point;
    double theta; // aperture in (0, pi)
};

/// A single quadrature node on the boundary.
struct Node {
    cplx pos;
    cplx tangent; // unit
    cplx normal;  // unit, outward
    double weight; // arclength weight
    double curvature;
    int arc;
    double t;
};

struct QuadPanel {
    int arc;
    double t0, t1;
    std::size_t first_node;
    std::size_t node_count;
    bool smooth; // false when the panel abuts a corner
};

/// A point on the boundary identified by (arc, parameter).
struct BoundaryPoint {
    int arc;
    double t;
    cplx pos;
};

enum class DomainKind { Ellipse, Polygon, Sector, Disk, Hull };

/// Input description of a domain; mirrors the JSON schema.
struct DomainSpec {
    DomainKind kind = DomainKind::Disk;
    double a = 0.0, b = 0.0;      // ellipse semi-axes
    std::vector<cplx> points;     // polygon / hull
    double r = 0.0, theta = 0.0;  // sector
    cplx center{};                // disk
    double radius = 0.0;          // disk

    static DomainSpec ellipse(double a, double b) {
        DomainSpec s;
        s.kind = DomainKind::Ellipse;
        s.a = a;
        s.b = b;
        return s;
    }
    static DomainSpec polygon(std::vector<cplx> pts) {
        DomainSpec s;
        s.kind = DomainKind::Polygon;
        s.points = std::move(pts);
        return s;
    }
    static DomainSpec hull(std::vector<cplx> pts) {
        DomainSpec s;
        s.kind = DomainKind::Hull;
        s.points = std::move(pts);
        return s;
    }
    static DomainSpec sector(double r, double theta) {
        DomainSpec s;
        s.kind = DomainKind::Sector;
        s.r = r;
        s.theta = theta;
        return s;
    }
    static DomainSpec disk(cplx center, double radius) {
        DomainSpec s;
        s.kind = DomainKind::Disk;
        s.center = center;
        s.radius = radius;
        return s;
    }
};

namespace detail {

inline double cross(cplx o, cplx a, cplx b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

/// Andrew monotone chain; returns the convex hull counter-clockwise,
/// starting from the lexicographically smallest point. Collinear interior
/// points are dropped.
inline std::vector<cplx> convex_hull(std::vector<cplx> pts, double eps) {
    std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [eps](cplx a, cplx b) { return std::abs(a - b) <= eps; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;

    std::vector<cplx> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) { // lower
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, lo = k + 1; i-- > 0;) { // upper
        while (k >= lo && cross(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

inline double angle_diff(double to, double from) {
    double d = to - from;
    while (d <= -kPi) d += 2.0 * kPi;
    while (d > kPi) d -= 2.0 * kPi;
    return d;
}

} // namespace detail

// ---------------------------------------------------------------------------
// ConvexDomain
// ---------------------------------------------------------------------------

/// Immutable boundary model of a compact convex planar domain: arcs,
/// corners with apertures, and composite Gauss-Legendre quadrature.
class ConvexDomain {
public:
    static constexpr int kDefaultPanelsPerArc = 64;
    static constexpr int kDefaultNodesPerPanel = 8;

    static ConvexDomain build(const DomainSpec& spec,
                              int panels_per_arc = kDefaultPanelsPerArc,
                              int nodes_per_panel = kDefaultNodesPerPanel) {
        if (panels_per_arc < 1 || nodes_per_panel < 2)
            throw DegenerateDomain("build: need panels_per_arc >= 1, nodes_per_panel >= 2");

        ConvexDomain d;
        d.spec_ = spec;
        d.panels_per_arc_ = panels_per_arc;
        d.nodes_per_panel_ = nodes_per_panel;

        switch (spec.kind) {
        case DomainKind::Disk:
            if (!(spec.radius > 0.0)) throw DegenerateDomain("disk: radius must be positive");
            d.arcs_.push_back(Arc::circle(spec.center, spec.radius, 0.0, 2.0 * kPi));
            break;
        case DomainKind::Ellipse:
            if (!(spec.a > 0.0) || !(spec.b > 0.0))
                throw DegenerateDomain("ellipse: semi-axes must be positive");
            d.arcs_.push_back(Arc::ellipse(spec.center, spec.a, spec.b, 0.0, 2.0 * kPi));
            break;
        case DomainKind::Sector: {
            if (!(spec.r > 0.0)) throw DegenerateDomain("sector: radius must be positive");
            if (!(spec.theta > 0.0) || spec.theta > kPi + 1e-15)
                throw DegenerateDomain("sector: opening angle must lie in (0, pi]");
            const double th = std::min(spec.theta, kPi);
            const cplx tip = cplx(spec.r * std::cos(th), spec.r * std::sin(th));
            d.arcs_.push_back(Arc::circle(0.0, spec.r, 0.0, th));
            d.arcs_.push_back(Arc::segment(tip, 0.0));
            d.arcs_.push_back(Arc::segment(0.0, spec.r));
            break;
        }
        case DomainKind::Polygon:
        case DomainKind::Hull: {
            if (spec.points.size() < 3)
                throw DegenerateDomain("polygon/hull: need at least three points");
            double span = 0.0;
            for (cplx p : spec.points)
                for (cplx q : spec.points) span = std::max(span, std::abs(p - q));
            if (span <= 0.0) throw DegenerateDomain("polygon/hull: all points coincide");
            const double eps = 1e-12 * span * span;
            std::vector<cplx> hull = detail::convex_hull(spec.points, eps);
            if (hull.size() < 3) throw DegenerateDomain("polygon/hull: degenerate (collinear) input");
            if (spec.kind == DomainKind::Polygon) {
                // Every input vertex must lie on the hull boundary.
                for (cplx p : spec.points) {
                    double dist = 1e300;
                    for (std::size_t i = 0; i < hull.size(); ++i) {
                        const cplx a = hull[i], b = hull[(i + 1) % hull.size()];
                        const cplx ab = b - a;
                        double t = std::clamp(
                            ((p - a) * std::conj(ab)).real() / std::norm(ab), 0.0, 1.0);
                        dist = std::min(dist, std::abs(p - (a + t * ab)));
                    }
                    if (dist > 1e-9 * span)
                        throw NonConvex("polygon: vertex strictly inside the hull");
                }
            }
            for (std::size_t i = 0; i < hull.size(); ++i)
                d.arcs_.push_back(Arc::segment(hull[i], hull[(i + 1) % hull.size()]));
            break;
        }
        }

        d.finalize();
        return d;
    }

    DomainKind kind() const { return spec_.kind; }
    const DomainSpec& spec() const { return spec_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const std::vector<Corner>& corners() const { return corners_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<QuadPanel>& panels() const { return panels_; }
    double perimeter() const { return perimeter_; }
    double area() const { return area_; }
    cplx centroid() const { return centroid_; }
    /// Characteristic length (bounding-box diagonal).
    double scale() const { return scale_; }
    int panels_per_arc() const { return panels_per_arc_; }
    int nodes_per_panel() const { return nodes_per_panel_; }

    cplx point(const BoundaryPoint& bp) const { return arcs_[bp.arc].point(bp.t); }

    /// Image under z -> alpha z + beta. Same kind where representable,
    /// otherwise a Hull built from boundary samples.
    ConvexDomain affine_image(cplx alpha, cplx beta) const {
        if (alpha == cplx{}) throw DegenerateDomain("affine_image: alpha must be nonzero");
        DomainSpec s = spec_;
        switch (spec_.kind) {
        case DomainKind::Disk:
            s.center = alpha * spec_.center + beta;
            s.radius = std::abs(alpha) * spec_.radius;
            return build(s, panels_per_arc_, nodes_per_panel_);
        case DomainKind::Ellipse:
            if (std::abs(alpha.imag()) <= 1e-15 * std::abs(alpha)) {
                s.a = std::abs(alpha) * spec_.a;
                s.b = std::abs(alpha) * spec_.b;
                s.center = alpha * spec_.center + beta;
                return build(s, panels_per_arc_, nodes_per_panel_);
            }
            return hull_fallback(alpha, beta);
        case DomainKind::Polygon:
        case DomainKind::Hull: {
            std::vector<cplx> pts;
            pts.reserve(arcs_.size());
            for (const Arc& arc : arcs_) pts.push_back(alpha * arc.p0 + beta);
            DomainSpec ns = (spec_.kind == DomainKind::Polygon) ? DomainSpec::polygon(pts)
                                                                : DomainSpec::hull(pts);
            return build(ns, panels_per_arc_, nodes_per_panel_);
        }
        case DomainKind::Sector:
            if (std::abs(alpha.imag()) <= 1e-15 * std::abs(alpha) && alpha.real() > 0.0 &&
                beta == cplx{}) {
                s.r = alpha.real() * spec_.r;
                return build(s, panels_per_arc_, nodes_per_panel_);
            }
            return hull_fallback(alpha, beta);
        }
        throw DegenerateDomain("affine_image: unknown kind");
    }

    /// Boundary point at arclength s from the start of the first arc.
    BoundaryPoint at_arclength(double s) const {
        s = std::fmod(s, perimeter_);
        if (s < 0.0) s += perimeter_;
        // Locate the panel, then Newton on the within-panel arclength.
        std::size_t lo = 0, hi = panel_cum_.size() - 1;
        while (lo + 1 < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (panel_cum_[mid] <= s)
                lo = mid;
            else
                hi = mid;
        }
        const QuadPanel& p = panels_[lo];
        const Arc& arc = arcs_[p.arc];
        const double target = s - panel_cum_[lo];
        double t = p.t0 + (p.t1 - p.t0) * 0.5;
        for (int iter = 0; iter < 60; ++iter) {
            const double f = arc_length_gl(arc, p.t0, t) - target;
            const double df = std::abs(arc.deriv(t));
            double step = f / std::max(df, 1e-300);
            step = std::clamp(step, -(p.t1 - p.t0), p.t1 - p.t0);
            t -= step;
            t = std::clamp(t, p.t0, p.t1);
            if (std::abs(step) < 1e-15 * (p.t1 - p.t0 + 1.0)) break;
        }
        return {p.arc, t, arc.point(t)};
    }

    /// Equal-arclength boundary samples (count of them, starting at s = 0).
    std::vector<BoundaryPoint> arclength_samples(int count) const {
        std::vector<BoundaryPoint> out;
        out.reserve(count);
        for (int i = 0; i < count; ++i)
            out.push_back(at_arclength(perimeter_ * static_cast<double>(i) / count));
        return out;
    }

    /// True if z is inside the inscribed node polygon by at least `margin`.
    bool strictly_interior(cplx z, double margin) const {
        const std::size_t n = nodes_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const cplx a = nodes_[i].pos;
            const cplx b = nodes_[(i + 1) % n].pos;
            const cplx ab = b - a;
            const double len = std::abs(ab);
            if (len <= 0.0) continue;
            const double side = detail::cross(a, b, z) / len;
            if (side < margin) return false;
        }
        return true;
    }

    /// Approximate distance from a point to the boundary (via node chords).
    double boundary_distance(cplx z) const {
        double best = 1e300;
        const std::size_t n = nodes_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const cplx a = nodes_[i].pos;
            const cplx b = nodes_[(i + 1) % n].pos;
            const cplx ab = b - a;
            const double nn = std::norm(ab);
            double t = nn > 0.0 ? std::clamp(((z - a) * std::conj(ab)).real() / nn, 0.0, 1.0) : 0.0;
            best = std::min(best, std::abs(z - (a + t * ab)));
        }
        return best;
    }

    /// Index of the corner at point p, if any.
    std::optional<std::size_t> corner_index(cplx p, double tol) const {
        for (std::size_t i = 0; i < corners_.size(); ++i)
            if (std::abs(corners_[i].point - p) <= tol) return i;
        return std::nullopt;
    }

private:
    ConvexDomain() = default;

    ConvexDomain hull_fallback(cplx alpha, cplx beta) const {
        std::vector<cplx> pts;
        const int per_arc = 256 / static_cast<int>(arcs_.size()) + 2;
        for (const Arc& arc : arcs_) {
            if (arc.is_segment()) {
                pts.push_back(alpha * arc.p0 + beta);
                continue;
            }
            for (int i = 0; i < per_arc; ++i) {
                const double t = arc.t0 + (arc.t1 - arc.t0) * i / per_arc;
                pts.push_back(alpha * arc.point(t) + beta);
            }
        }
        return build(DomainSpec::hull(pts), panels_per_arc_, nodes_per_panel_);
    }

    static double arc_length_gl(const Arc& arc, double ta, double tb) {
        const GaussRule& g = gauss_legendre(16);
        const double h = 0.5 * (tb - ta);
        const double m = 0.5 * (tb + ta);
        double s = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
            s += g.weights[i] * std::abs(arc.deriv(m + h * g.nodes[i]));
        return s * h;
    }

    void finalize() {
        // Corners from tangent jumps at arc junctions.
        const std::size_t m = arcs_.size();
        std::vector<bool> corner_at_start(m, false);
        for (std::size_t i = 0; i < m; ++i) {
            const Arc& prev = arcs_[i];
            const Arc& next = arcs_[(i + 1) % m];
            const double a_minus = std::arg(prev.deriv(prev.t1));
            const double a_plus = std::arg(next.deriv(next.t0));
            const double jump = detail::angle_diff(a_plus, a_minus);
            if (jump < -1e-9) throw NonConvex("boundary turns clockwise at a junction");
            if (jump > 1e-9) {
                if (jump >= kPi - 1e-12) throw NonConvex("cusp at a junction");
                corners_.push_back({next.point(next.t0), kPi - jump});
                corner_at_start[(i + 1) % m] = true;
            }
        }

        // Quadrature panels.
        const GaussRule& g = gauss_legendre(nodes_per_panel_);
        for (std::size_t ai = 0; ai < m; ++ai) {
            const Arc& arc = arcs_[ai];
            for (int p = 0; p < panels_per_arc_; ++p) {
                const double ta = arc.t0 + (arc.t1 - arc.t0) * p / panels_per_arc_;
                const double tb = arc.t0 + (arc.t1 - arc.t0) * (p + 1) / panels_per_arc_;
                QuadPanel panel;
                panel.arc = static_cast<int>(ai);
                panel.t0 = ta;
                panel.t1 = tb;
                panel.first_node = nodes_.size();
                panel.node_count = g.nodes.size();
                const bool first = (p == 0);
                const bool last = (p == panels_per_arc_ - 1);
                panel.smooth = !((first && corner_at_start[ai]) ||
                                 (last && corner_at_start[(ai + 1) % m]));
                const double h = 0.5 * (tb - ta);
                const double mid = 0.5 * (tb + ta);
                for (std::size_t i = 0; i < g.nodes.size(); ++i) {
                    const double t = mid + h * g.nodes[i];
                    Node node;
                    node.arc = static_cast<int>(ai);
                    node.t = t;
                    node.pos = arc.point(t);
                    const cplx d = arc.deriv(t);
                    const double speed = std::abs(d);
                    node.tangent = d / speed;
                    node.normal = cplx(0.0, -1.0) * node.tangent;
                    node.weight = g.weights[i] * h * speed;
                    node.curvature = arc.curvature(t);
                    nodes_.push_back(node);
                }
                panels_.push_back(panel);
            }
        }

        // Cumulative arclength at panel starts (plus total at the end).
        panel_cum_.resize(panels_.size() + 1);
        panel_cum_[0] = 0.0;
        for (std::size_t i = 0; i < panels_.size(); ++i) {
            const QuadPanel& p = panels_[i];
            panel_cum_[i + 1] =
                panel_cum_[i] + arc_length_gl(arcs_[p.arc], p.t0, p.t1);
        }
        perimeter_ = panel_cum_.back();

        // Signed area and centroid via boundary integrals.
        double area2 = 0.0;
        double cx = 0.0, cy = 0.0;
        for (const Node& nd : nodes_) {
            area2 += nd.weight * std::imag(std::conj(nd.pos) * nd.tangent);
            const double x = nd.pos.real(), y = nd.pos.imag();
            const double dxd = nd.tangent.real(), dyd = nd.tangent.imag();
            cx += nd.weight * x * x * dyd;
            cy -= nd.weight * y * y * dxd;
        }
        area_ = 0.5 * area2;
        if (!(area_ > 0.0)) throw DegenerateDomain("domain has non-positive area");
        centroid_ = cplx(cx / (2.0 * area_), cy / (2.0 * area_));

        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (const Node& nd : nodes_) {
            xmin = std::min(xmin, nd.pos.real());
            xmax = std::max(xmax, nd.pos.real());
            ymin = std::min(ymin, nd.pos.imag());
            ymax = std::max(ymax, nd.pos.imag());
        }
        scale_ = std::hypot(xmax - xmin, ymax - ymin);
    }

    DomainSpec spec_;
    std::vector<Arc> arcs_;
    std::vector<Corner> corners_;
    std::vector<Node> nodes_;
    std::vector<QuadPanel> panels_;
    std::vector<double> panel_cum_;
    double perimeter_ = 0.0;
    double area_ = 0.0;
    cplx centroid_{};
    double scale_ = 0.0;
    int panels_per_arc_ = kDefaultPanelsPerArc;
    int nodes_per_panel_ = kDefaultNodesPerPanel;
};

} // namespace npc

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "npconfig/errors.hpp"
#include "npconfig/linalg.hpp"
#include "npconfig/rng.hpp"

namespace npc {

struct Disk {
    cplx center{};
    double radius = 0.0;

    bool contains(cplx p, double slack) const { return std::abs(p - center) <= radius + slack; }
};

namespace detail {

inline Disk disk_from_pair(cplx a, cplx b) {
    return {0.5 * (a + b), 0.5 * std::abs(a - b)};
}

/// Circumdisk of three points; falls back to the extreme pair when the
/// triple is (nearly) collinear. Perpendicular-bisector solve, pivoting on
/// the longest side to limit cancellation.
inline Disk disk_from_triple(cplx a, cplx b, cplx c) {
    // Put the longest side on (a, b).
    const double lab = std::abs(a - b), lbc = std::abs(b - c), lca = std::abs(c - a);
    if (lbc >= lab && lbc >= lca) std::swap(a, c);
    else if (lca >= lab && lca >= lbc) std::swap(b, c);

    const double ax = a.real(), ay = a.imag();
    const double bx = b.real(), by = b.imag();
    const double cx = c.real(), cy = c.imag();
    const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    const double scale = std::max({lab, lbc, lca});
    if (std::abs(d) <= 1e-14 * scale * scale) {
        // Collinear: extreme pair along the line.
        Disk best = disk_from_pair(a, b);
        for (const Disk& cand : {disk_from_pair(b, c), disk_from_pair(c, a)})
            if (cand.radius > best.radius) best = cand;
        return best;
    }
    const double na = ax * ax + ay * ay;
    const double nb = bx * bx + by * by;
    const double nc = cx * cx + cy * cy;
    const double ux = (na * (by - cy) + nb * (cy - ay) + nc * (ay - by)) / d;
    const double uy = (na * (cx - bx) + nb * (ax - cx) + nc * (bx - ax)) / d;
    const cplx center(ux, uy);
    const double r = std::max({std::abs(a - center), std::abs(b - center), std::abs(c - center)});
    return {center, r};
}

/// Iterative Welzl on shuffled input: whenever a point falls outside the
/// current disk it is pinned to the boundary and the prefix is rescanned.
inline Disk welzl(const std::vector<cplx>& pts, double slack) {
    Disk disk{pts.empty() ? cplx{} : pts[0], 0.0};
    const std::size_t n = pts.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (disk.contains(pts[i], slack)) continue;
        disk = {pts[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (disk.contains(pts[j], slack)) continue;
            disk = disk_from_pair(pts[i], pts[j]);
            for (std::size_t k = 0; k < j; ++k) {
                if (disk.contains(pts[k], slack)) continue;
                disk = disk_from_triple(pts[i], pts[j], pts[k]);
            }
        }
    }
    return disk;
}

inline double point_scale(const std::vector<cplx>& pts) {
    double s = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            s = std::max(s, std::abs(pts[i] - pts[j]));
    return s;
}

} // namespace detail

/// Smallest disk containing all points. Deterministic: the internal
/// shuffle is seeded (0x5EED).
inline Disk min_enclosing_disk(const std::vector<cplx>& points) {
    if (points.empty()) throw DegenerateInput("min_enclosing_disk: empty point set");
    std::vector<cplx> pts = points;
    std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Rng rng(0x5EED);
    rng.shuffle(pts);
    const double slack = 1e-12 * std::max(detail::point_scale(pts), 1.0);
    return detail::welzl(pts, slack);
}

/// A subset of at most three points whose minimal disk equals that of the
/// whole set (Chebyshev support set).
inline std::vector<cplx> support_set(const std::vector<cplx>& points) {
    std::vector<cplx> pts = points;
    std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 2) throw DegenerateInput("support_set: need at least two distinct points");

    const Disk full = min_enclosing_disk(pts);
    const double scale = std::max(detail::point_scale(pts), 1.0);
    const double tol = 1e-9 * scale;

    // Candidates: points on the boundary of the minimal disk.
    std::vector<cplx> rim;
    for (cplx p : pts)
        if (std::abs(std::abs(p - full.center) - full.radius) <= tol) rim.push_back(p);

    // Try pairs first (Lemma 3.1 antipodal case), then triples.
    for (std::size_t i = 0; i < rim.size(); ++i)
        for (std::size_t j = i + 1; j < rim.size(); ++j) {
            const Disk d = detail::disk_from_pair(rim[i], rim[j]);
            if (std::abs(d.radius - full.radius) <= tol &&
                std::abs(d.center - full.center) <= tol)
                return {rim[i], rim[j]};
        }
    for (std::size_t i = 0; i < rim.size(); ++i)
        for (std::size_t j = i + 1; j < rim.size(); ++j)
            for (std::size_t k = j + 1; k < rim.size(); ++k) {
                const Disk d = detail::disk_from_triple(rim[i], rim[j], rim[k]);
                if (std::abs(d.radius - full.radius) <= tol &&
                    std::abs(d.center - full.center) <= tol)
                    return {rim[i], rim[j], rim[k]};
            }
    // Numerically ragged rim: fall back to the (<= 3) closest-to-rim points.
    std::sort(rim.begin(), rim.end(), [&](cplx a, cplx b) {
        return std::abs(a - full.center) > std::abs(b - full.center);
    });
    if (rim.size() > 3) rim.resize(3);
    return rim;
}

/// Chebyshev radius of the image set: ||g + C*1|| = min over lambda of
/// max |v - lambda| = radius of the smallest enclosing disk.
inline double quotient_norm(const std::vector<cplx>& values) {
    return min_enclosing_disk(values).radius;
}

} // namespace npc

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "npconfig/bounds.hpp"
#include "npconfig/rng.hpp"

using npc::ConvexDomain;
using npc::DomainSpec;
using npc::cplx;
using npc::kInf;
using npc::kPi;

TEST_CASE("tangent circle radius on the unit circle is 1") {
    const ConvexDomain d = ConvexDomain::build(DomainSpec::disk(0.0, 1.0));
    const cplx zeta = d.arclength_samples(2)[1].pos;
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(npc::tangent_circle_radius(d, zeta, i) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("tangent circle radius degenerates on flat pieces") {
    const ConvexDomain d = ConvexDomain::build(
        DomainSpec::polygon({cplx(0, 0), cplx(2, 0), cplx(2, 2), cplx(0, 2)}));
    // sigma = first node (bottom edge), zeta on the same edge.
    CHECK(npc::tangent_circle_radius(d, cplx(1.5, 0.0), 0) == kInf);
    CHECK_THROWS_AS(npc::tangent_circle_radius(d, d.nodes()[0].pos, 0),
                    npc::CoincidentPoints);
}

TEST_CASE("density equals 1/(2 pi R)") {
    const ConvexDomain d = ConvexDomain::build(DomainSpec::ellipse(2.0, 1.0));
    const npc::BoundaryPoint zeta = d.arclength_samples(8)[3];
    for (std::size_t i = 200; i < 210; ++i) {
        const double r = npc::tangent_circle_radius(d, zeta.pos, i);
        const double rho = npc::density(d, zeta, i);
        CHECK(rho == Catch::Approx(1.0 / (2.0 * kPi * r)).margin(1e-12));
    }
}

TEST_CASE("r_omega: disk, polygon, and the ellipse oracle") {
    const ConvexDomain disk = ConvexDomain::build(DomainSpec::disk(0.0, 1.0), 16, 4);
    for (std::size_t i = 0; i < disk.nodes().size(); i += 7)
        CHECK(npc::r_omega(disk, i, 16) == Catch::Approx(1.0).margin(1e-10));

    const ConvexDomain square = ConvexDomain::build(
        DomainSpec::polygon({cplx(0, 0), cplx(1, 0), cplx(1, 1), cplx(0, 1)}), 8, 4);
    for (std::size_t i = 0; i < square.nodes().size(); i += 5)
        CHECK(npc::r_omega(square, i, 16) == kInf);

    // Ellipse a=3, b=2: brute-force the sup over a dense zeta grid and
    // compare against r_omega at several nodes; at the minor-axis endpoint
    // the sup is a^2/b = 4.5 (attained in the zeta -> sigma limit).
    const ConvexDomain ell = ConvexDomain::build(DomainSpec::ellipse(3.0, 2.0));
    const auto dense = ell.arclength_samples(4096);
    double best_minor = 0.0;
    for (std::size_t i = 0; i < ell.nodes().size(); i += 37) {
        const npc::Node& nd = ell.nodes()[i];
        double brute = 1.0 / nd.curvature; // the coincidence limit
        for (const auto& bp : dense) {
            if (std::abs(bp.pos - nd.pos) < 1e-9) continue;
            brute = std::max(brute, npc::tangent_circle_radius(ell, bp.pos, i));
        }
        const double fast = npc::r_omega(ell, i, 4096);
        CHECK(fast >= brute - 1e-9);
        CHECK(fast <= brute + 1e-9);
        // The 64-sample grid nests inside the 4096-sample grid.
        CHECK(npc::r_omega(ell, i, 64) <= fast + 1e-12);
        // sup property against every sampled zeta.
        for (const npc::BoundaryPoint& bp : npc::base_points(ell, 64)) {
            if (std::abs(bp.pos - nd.pos) < 1e-9) continue;
            CHECK(fast >= npc::tangent_circle_radius(ell, bp.pos, i) - 1e-12);
        }
    }
    // At the minor-axis endpoint (the node closest to it) the sup is a^2/b.
    std::size_t minor = 0;
    for (std::size_t i = 0; i < ell.nodes().size(); ++i)
        if (std::abs(ell.nodes()[i].pos - cplx(0.0, 2.0)) <
            std::abs(ell.nodes()[minor].pos - cplx(0.0, 2.0)))
            minor = i;
    best_minor = npc::r_omega(ell, minor, 4096);
    CHECK(best_minor == Catch::Approx(4.5).margin(0.05));
}

TEST_CASE("curvature bound: disk and sectors") {
    const npc::CurvatureReport disk =
        npc::curvature_bound(ConvexDomain::build(DomainSpec::disk(0.0, 1.0), 16, 6), 16);
    CHECK(disk.bound == Catch::Approx(0.0).margin(1e-9));
    CHECK(disk.mass == Catch::Approx(1.0).margin(1e-9));

    for (double theta : {kPi / 4.0, kPi / 2.0, kPi}) {
        const npc::CurvatureReport rep = npc::curvature_bound(
            ConvexDomain::build(DomainSpec::sector(1.0, theta), 16, 6), 32);
        CHECK(rep.bound == Catch::Approx(1.0 - theta / (2.0 * kPi)).margin(1e-6));
    }
}

TEST_CASE("curvature bound dominates the configuration constant") {
    const ConvexDomain ell = ConvexDomain::build(DomainSpec::ellipse(2.0, 1.0));
    const double c = npc::config_constant(ell, 16).value;
    const double bound = npc::curvature_bound(ell, 64).bound;
    CHECK(bound >= c - 1e-4);

    const ConvexDomain sec = ConvexDomain::build(DomainSpec::sector(1.0, kPi / 2.0));
    CHECK(npc::curvature_bound(sec, 32).bound >=
          npc::config_constant(sec, 16).value - 1e-4);
}

TEST_CASE("scaled r_omega reciprocal lower-bounds every density") {
    // nu is the largest measure below all mu_zeta: rho_zeta >= 1/(2 pi R_Omega).
    const ConvexDomain d = ConvexDomain::build(DomainSpec::ellipse(2.0, 1.0), 32, 6);
    const auto bases = npc::base_points(d, 16);
    for (std::size_t i = 0; i < d.nodes().size(); i += 11) {
        const double r = npc::r_omega(d, i, 16);
        const double floor_val = r == kInf ? 0.0 : 1.0 / (2.0 * kPi * r);
        for (const npc::BoundaryPoint& z : bases) {
            if (std::abs(z.pos - d.nodes()[i].pos) < 1e-9) continue;
            CHECK(npc::density(d, z, i) >= floor_val - 1e-9);
        }
    }
}

TEST_CASE("ellipse closed forms") {
    CHECK(npc::ellipse_config_constant(1.0, 1.0) == 0.0);
    CHECK(npc::ellipse_config_constant(2.0, 1.0) ==
          Catch::Approx((2.0 / kPi) * std::atan(0.75)).margin(1e-15));
    CHECK(npc::ellipse_config_constant(2.0, 1.0) ==
          Catch::Approx(npc::ellipse_config_constant(1.0, 2.0)).margin(1e-15));
    CHECK(npc::ellipse_config_constant(1e9, 1.0) > 1.0 - 1e-6); // limit 1
    CHECK_THROWS_AS(npc::ellipse_config_constant(-1.0, 1.0), npc::NonPositiveAxis);

    CHECK(npc::spectral_constant_ellipse(1.0, 1.0) == Catch::Approx(2.0).margin(1e-15));
    CHECK(npc::spectral_constant_ellipse(2.0, 1.0) ==
          Catch::Approx(1.0 + std::sqrt(1.0 + (2.0 / kPi) * std::atan(0.75))).margin(1e-15));
    CHECK(std::abs(npc::spectral_constant_ellipse(1e6, 1.0) - (1.0 + std::sqrt(2.0))) <= 1e-3);
    double prev = 2.0;
    for (double a : {1.5, 2.0, 5.0, 20.0, 100.0}) {
        const double k = npc::spectral_constant_ellipse(a, 1.0);
        CHECK(k > prev);
        CHECK(k < 1.0 + std::sqrt(2.0));
        prev = k;
    }
}

TEST_CASE("ellipse parameter-space density") {
    // a = b: uniform in the parameter.
    CHECK(npc::ellipse_density(1.5, 1.5, 0.3, 2.0) ==
          Catch::Approx(1.0 / (2.0 * kPi)).margin(1e-15));

    npc::Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const double a = rng.uniform(0.5, 3.0);
        const double b = rng.uniform(0.5, 3.0);
        const double s = rng.uniform(0.0, 2.0 * kPi);
        // Total mass 1 in parameter space (trapezoid on a smooth periodic
        // integrand converges spectrally).
        const int n = 2048;
        double mass = 0.0;
        for (int i = 0; i < n; ++i)
            mass += npc::ellipse_density(a, b, s, 2.0 * kPi * i / n) * (2.0 * kPi / n);
        CHECK(mass == Catch::Approx(1.0).margin(1e-10));
    }

    // Change-of-variables oracle: closed form equals the geometric density
    // times the parametrization speed.
    const double a = 2.0, b = 1.0;
    const ConvexDomain d = ConvexDomain::build(DomainSpec::ellipse(a, b));
    const npc::Arc& arc = d.arcs()[0];
    for (double s : {0.0, 0.7, 2.1}) {
        const cplx zeta = arc.point(s);
        for (double t : {0.4, 1.9, 3.3, 5.6}) {
            const double geo = npc::detail::density_raw(d, zeta, 0, t) * std::abs(arc.deriv(t));
            CHECK(npc::ellipse_density(a, b, s, t) == Catch::Approx(geo).margin(1e-10));
        }
    }
}

TEST_CASE("numeric configuration constant matches the closed form") {
    for (auto [a, b] : std::vector<std::pair<double, double>>{{2.0, 1.0}, {3.0, 2.0}}) {
        const ConvexDomain d = ConvexDomain::build(DomainSpec::ellipse(a, b));
        const double numeric = npc::config_constant(d, 16).value;
        CHECK(std::abs(numeric - npc::ellipse_config_constant(a, b)) <= 1e-6);
    }
}

TEST_CASE("curvature bound refines monotonically") {
    const ConvexDomain d = ConvexDomain::build(DomainSpec::ellipse(2.0, 1.0), 16, 4);
    const double b8 = npc::curvature_bound(d, 8).bound;
    const double b16 = npc::curvature_bound(d, 16).bound;
    const double b32 = npc::curvature_bound(d, 32).bound;
    // Richer zeta grids can only increase the sampled R_Omega sup, so the
    // reported bound is non-decreasing on nested grids.
    CHECK(b16 >= b8 - 1e-12);
    CHECK(b32 >= b16 - 1e-12);
}

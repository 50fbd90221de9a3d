#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "npconfig/domain.hpp"

using npc::ConvexDomain;
using npc::DomainSpec;
using npc::cplx;
using npc::kPi;

TEST_CASE("gauss_legendre integrates polynomials exactly") {
    const npc::GaussRule& g = npc::gauss_legendre(8);
    double wsum = 0.0, x14 = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        wsum += g.weights[i];
        x14 += g.weights[i] * std::pow(g.nodes[i], 14);
    }
    CHECK(wsum == Catch::Approx(2.0).margin(1e-14));
    CHECK(x14 == Catch::Approx(2.0 / 15.0).margin(1e-13)); // degree 14 < 2*8
}

TEST_CASE("disk perimeter and area") {
    const ConvexDomain d = ConvexDomain::build(DomainSpec::disk(0.0, 1.0));
    CHECK(d.perimeter() == Catch::Approx(2.0 * kPi).margin(1e-10));
    CHECK(d.area() == Catch::Approx(kPi).margin(1e-10));
    CHECK(d.corners().empty());
    CHECK(std::abs(d.centroid()) <= 1e-12);
}

TEST_CASE("triangle perimeter and corner apertures") {
    const ConvexDomain d = ConvexDomain::build(
        DomainSpec::polygon({cplx(-1, 0), cplx(1, 0), cplx(0, 1)}));
    CHECK(d.perimeter() == Catch::Approx(2.0 + 2.0 * std::sqrt(2.0)).margin(1e-12));
    REQUIRE(d.corners().size() == 3);
    double sum = 0.0;
    for (const npc::Corner& c : d.corners()) {
        CHECK(c.theta > 0.0);
        CHECK(c.theta < kPi);
        sum += c.theta;
    }
    CHECK(sum == Catch::Approx(kPi).margin(1e-12)); // triangle angle sum
}

TEST_CASE("sector has three right-angle corners") {
    const ConvexDomain d = ConvexDomain::build(DomainSpec::sector(1.0, kPi / 2.0));
    REQUIRE(d.corners().size() == 3);
    for (const npc::Corner& c : d.corners())
        CHECK(c.theta == Catch::Approx(kPi / 2.0).margin(1e-12));
    CHECK(d.perimeter() == Catch::Approx(kPi / 2.0 + 2.0).margin(1e-10));
    CHECK(d.area() == Catch::Approx(kPi / 4.0).margin(1e-10));
}

TEST_CASE("half disk: the flat side is corner-free at the diameter line") {
    // theta = pi: the two straight pieces are collinear, so only the two
    // arc junctions are corners.
    const ConvexDomain d = ConvexDomain::build(DomainSpec::sector(1.0, kPi));
    CHECK(d.corners().size() == 2);
}

TEST_CASE("ellipse quadrature convergence") {
    const ConvexDomain d1 = ConvexDomain::build(DomainSpec::ellipse(2.0, 1.0), 64, 8);
    const ConvexDomain d2 = ConvexDomain::build(DomainSpec::ellipse(2.0, 1.0), 128, 8);
    CHECK(std::abs(d1.perimeter() - d2.perimeter()) < 1e-10);
    CHECK(d1.area() == Catch::Approx(2.0 * kPi).margin(1e-10));
}

TEST_CASE("unit square corners") {
    const ConvexDomain d = ConvexDomain::build(
        DomainSpec::polygon({cplx(0, 0), cplx(1, 0), cplx(1, 1), cplx(0, 1)}));
    REQUIRE(d.corners().size() == 4);
    for (const npc::Corner& c : d.corners())
        CHECK(c.theta == Catch::Approx(kPi / 2.0).margin(1e-12));
    CHECK(d.perimeter() == Catch::Approx(4.0).margin(1e-12));
    CHECK(d.area() == Catch::Approx(1.0).margin(1e-12));
    CHECK(std::abs(d.centroid() - cplx(0.5, 0.5)) <= 1e-12);
}

TEST_CASE("thin triangle aperture limits") {
    const double eps = 1e-3;
    const ConvexDomain d = ConvexDomain::build(
        DomainSpec::polygon({cplx(-1, 0), cplx(1, 0), cplx(0, eps)}));
    REQUIRE(d.corners().size() == 3);
    double apex = 0.0, base = kPi;
    for (const npc::Corner& c : d.corners()) {
        apex = std::max(apex, c.theta);
        base = std::min(base, c.theta);
    }
    CHECK(apex > kPi - 5.0 * eps); // apex aperture -> pi
    CHECK(base < 2.0 * eps);       // base apertures -> 0
}

TEST_CASE("hull canonicalization drops interior and collinear points") {
    const ConvexDomain d = ConvexDomain::build(DomainSpec::hull(
        {cplx(0, 0), cplx(2, 0), cplx(1, 0), cplx(2, 2), cplx(0, 2), cplx(1, 1)}));
    CHECK(d.arcs().size() == 4); // square, midpoints dropped
    CHECK(d.area() == Catch::Approx(4.0).margin(1e-12));
}

TEST_CASE("polygon input validation") {
    CHECK_THROWS_AS(ConvexDomain::build(DomainSpec::polygon(
                        {cplx(0, 0), cplx(1, 0), cplx(2, 0)})),
                    npc::DegenerateDomain); // collinear
    CHECK_THROWS_AS(ConvexDomain::build(DomainSpec::polygon(
                        {cplx(0, 0), cplx(2, 0), cplx(2, 2), cplx(0, 2), cplx(1, 1)})),
                    npc::NonConvex); // strictly interior vertex
    CHECK_THROWS_AS(ConvexDomain::build(DomainSpec::ellipse(0.0, 1.0)),
                    npc::DegenerateDomain);
    CHECK_THROWS_AS(ConvexDomain::build(DomainSpec::disk(0.0, -1.0)),
                    npc::DegenerateDomain);
    CHECK_THROWS_AS(ConvexDomain::build(DomainSpec::sector(1.0, 4.0)),
                    npc::DegenerateDomain); // theta > pi
}

TEST_CASE("node frames: unit tangents, outward normals, positive signed area") {
    for (const DomainSpec& spec :
         {DomainSpec::ellipse(2.0, 1.0), DomainSpec::sector(1.0, kPi / 3.0),
          DomainSpec::polygon({cplx(0, 0), cplx(1, 0), cplx(1, 1), cplx(0, 1)})}) {
        const ConvexDomain d = ConvexDomain::build(spec, 16, 4);
        double perim = 0.0;
        for (const npc::Node& nd : d.nodes()) {
            CHECK(std::abs(std::abs(nd.tangent) - 1.0) <= 1e-13);
            CHECK(std::abs(std::abs(nd.normal) - 1.0) <= 1e-13);
            // Outward: stepping along the normal leaves the domain.
            CHECK_FALSE(d.strictly_interior(nd.pos + 1e-3 * d.scale() * nd.normal, 0.0));
            CHECK(nd.weight > 0.0);
            perim += nd.weight;
        }
        CHECK(perim == Catch::Approx(d.perimeter()).margin(1e-10 * d.perimeter()));
        CHECK(d.area() > 0.0);
    }
}

TEST_CASE("total turning: corner exterior angles plus smooth turning is 2 pi") {
    for (const DomainSpec& spec :
         {DomainSpec::ellipse(3.0, 1.0), DomainSpec::sector(2.0, kPi / 2.0),
          DomainSpec::polygon({cplx(-1, 0), cplx(1, 0), cplx(0, 1)})}) {
        const ConvexDomain d = ConvexDomain::build(spec);
        double turning = 0.0;
        for (const npc::Corner& c : d.corners()) turning += kPi - c.theta;
        for (const npc::Node& nd : d.nodes()) turning += nd.weight * nd.curvature;
        CHECK(turning == Catch::Approx(2.0 * kPi).margin(1e-8));
    }
}

TEST_CASE("affine images") {
    const ConvexDomain sq = ConvexDomain::build(
        DomainSpec::polygon({cplx(0, 0), cplx(1, 0), cplx(1, 1), cplx(0, 1)}));

    const ConvexDomain same = sq.affine_image(1.0, 0.0);
    CHECK(same.perimeter() == Catch::Approx(sq.perimeter()).margin(1e-12));

    const ConvexDomain scaled = sq.affine_image(2.0, cplx(0, 1));
    CHECK(scaled.perimeter() == Catch::Approx(8.0).margin(1e-12));
    CHECK(std::abs(scaled.centroid() - cplx(1.0, 2.0)) <= 1e-12);

    const ConvexDomain tri = ConvexDomain::build(
        DomainSpec::polygon({cplx(-1, 0), cplx(1, 0), cplx(0, 1)}));
    const ConvexDomain rot = tri.affine_image(cplx(0, 1), 0.0);
    CHECK(rot.perimeter() == Catch::Approx(tri.perimeter()).margin(1e-12));

    const ConvexDomain ell = ConvexDomain::build(DomainSpec::ellipse(2.0, 1.0));
    const ConvexDomain ell3 = ell.affine_image(3.0, cplx(1, 1));
    CHECK(ell3.perimeter() == Catch::Approx(3.0 * ell.perimeter()).margin(1e-9));
    CHECK(ell3.kind() == npc::DomainKind::Ellipse);

    // Rotation of an ellipse is not axis-aligned: hull fallback.
    const ConvexDomain ellrot = ell.affine_image(std::polar(1.0, 0.3), 0.0);
    CHECK(ellrot.kind() == npc::DomainKind::Hull);
    CHECK(ellrot.perimeter() == Catch::Approx(ell.perimeter()).epsilon(1e-3));
}

TEST_CASE("arclength sampling is uniform and on-curve") {
    const ConvexDomain d = ConvexDomain::build(DomainSpec::ellipse(2.0, 1.0));
    const auto samples = d.arclength_samples(16);
    REQUIRE(samples.size() == 16);
    // Antipodal pairs by point symmetry of the ellipse.
    for (int i = 0; i < 8; ++i)
        CHECK(std::abs(samples[i].pos + samples[i + 8].pos) <= 1e-9);
    // All on the ellipse.
    for (const auto& s : samples) {
        const double v = std::pow(s.pos.real() / 2.0, 2) + std::pow(s.pos.imag(), 2);
        CHECK(v == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("convexity of boundary chords") {
    for (const DomainSpec& spec :
         {DomainSpec::ellipse(2.0, 1.0), DomainSpec::sector(1.0, 2.0),
          DomainSpec::polygon({cplx(0, 0), cplx(1, 0), cplx(1, 1)})}) {
        const ConvexDomain d = ConvexDomain::build(spec, 16, 4);
        const auto& nodes = d.nodes();
        const std::size_t n = nodes.size();
        for (std::size_t i = 0; i < n; ++i) {
            const cplx a = nodes[i].pos, b = nodes[(i + 1) % n].pos, c = nodes[(i + 2) % n].pos;
            const double cr = (b.real() - a.real()) * (c.imag() - a.imag()) -
                              (b.imag() - a.imag()) * (c.real() - a.real());
            CHECK(cr >= -1e-12 * d.scale() * d.scale());
        }
    }
}

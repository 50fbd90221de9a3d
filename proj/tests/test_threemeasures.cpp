#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "npconfig/npkernel.hpp"
#include "npconfig/rng.hpp"
#include "npconfig/threemeasures.hpp"

using npc::FiniteMeasureSet;
using npc::PairVector;
using npc::cplx;

TEST_CASE("discrete inequality basics") {
    // Equality at the second extreme-point class with alpha = beta = 1.
    const auto eq = npc::discrete_inequality({1, 0}, {0.5, 0.5}, 1.0, 1.0);
    CHECK(eq.lhs == Catch::Approx(2.0).margin(1e-15));
    CHECK(eq.rhs == Catch::Approx(2.0).margin(1e-15));
    CHECK(std::abs(eq.slack) <= 1e-15);

    // beta = 0 degenerates to |alpha| ||x||_1 <= rhs.
    const auto deg = npc::discrete_inequality({0.3, -0.4}, {1, 1}, cplx(0, 2), 0.0);
    CHECK(deg.lhs == Catch::Approx(1.4).margin(1e-15));
    CHECK(deg.slack >= 0.0);

    // x = y, alpha = -beta: total cancellation.
    const auto zero = npc::discrete_inequality({1, 2}, {1, 2}, 1.0, -1.0);
    CHECK(zero.lhs == 0.0);
}

TEST_CASE("discrete inequality holds on random draws") {
    npc::Rng rng(77);
    for (int trial = 0; trial < 100000; ++trial) {
        const std::size_t n = 1 + rng.uniform_int(8);
        std::vector<double> x(n), y(n);
        for (double& v : x) v = rng.uniform(-1, 1);
        for (double& v : y) v = rng.uniform(-1, 1);
        const cplx alpha(rng.uniform(-2, 2), rng.uniform(-2, 2));
        const cplx beta(rng.uniform(-2, 2), rng.uniform(-2, 2));
        const auto rep = npc::discrete_inequality(x, y, alpha, beta);
        REQUIRE(rep.slack >= -1e-12 * std::max(1.0, rep.rhs));
    }
}

TEST_CASE("polytope vertex census") {
    CHECK(npc::extreme_point_classes(1).size() == 1);
    CHECK(npc::extreme_point_classes(2).size() == 2);
    CHECK(npc::extreme_point_classes(3).size() == 3);
    CHECK_THROWS_AS(npc::enumerate_extreme_points(4), npc::DimensionTooLarge);

    // Every enumerated vertex lies in the polytope and saturates it.
    for (int n = 1; n <= 3; ++n)
        for (const PairVector& v : npc::enumerate_extreme_points(n)) {
            CHECK(v.in_polytope(1e-9));
            double nx = 0, ny = 0, nd = 0;
            for (std::size_t i = 0; i < v.x.size(); ++i) {
                nx += std::abs(v.x[i]);
                ny += std::abs(v.y[i]);
                nd += std::abs(v.x[i] - v.y[i]);
            }
            CHECK(std::max({nx, ny, nd}) == Catch::Approx(1.0).margin(1e-9));
        }
}

TEST_CASE("the three displayed pairs represent the n=3 classes") {
    const auto classes = npc::extreme_point_classes(3);
    REQUIRE(classes.size() == 3);
    const std::vector<PairVector> displayed = {
        {{1, 0, 0}, {1, 0, 0}},
        {{1, 0, 0}, {0.5, 0.5, 0}},
        {{0.5, 0.5, 0}, {0.5, 0, 0.5}},
    };
    for (const PairVector& p : displayed) {
        const PairVector c = npc::gn_canonicalize(p);
        bool found = false;
        for (const PairVector& k : classes) {
            double dist = 0.0;
            for (std::size_t i = 0; i < 3; ++i) {
                dist = std::max(dist, std::abs(k.x[i] - c.x[i]));
                dist = std::max(dist, std::abs(k.y[i] - c.y[i]));
            }
            if (dist <= 1e-9) { found = true; break; }
        }
        CHECK(found);
    }
}

TEST_CASE("canonicalization is idempotent and orbit-invariant") {
    npc::Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        PairVector p;
        for (int i = 0; i < 3; ++i) {
            p.x.push_back(std::round(rng.uniform(-8, 8)) / 8.0);
            p.y.push_back(std::round(rng.uniform(-8, 8)) / 8.0);
        }
        const PairVector c1 = npc::gn_canonicalize(p);
        const PairVector c2 = npc::gn_canonicalize(c1);
        for (int i = 0; i < 3; ++i) {
            CHECK(c1.x[i] == Catch::Approx(c2.x[i]).margin(1e-12));
            CHECK(c1.y[i] == Catch::Approx(c2.y[i]).margin(1e-12));
        }
        // A scrambled orbit element canonicalizes to the same representative.
        PairVector q;
        q.x = {-p.x[1], -p.x[0], p.x[2]};
        q.y = {-p.y[1], -p.y[0], p.y[2]};
        const PairVector c3 = npc::gn_canonicalize(q);
        for (int i = 0; i < 3; ++i) {
            CHECK(c1.x[i] == Catch::Approx(c3.x[i]).margin(1e-12));
            CHECK(c1.y[i] == Catch::Approx(c3.y[i]).margin(1e-12));
        }
    }
}

TEST_CASE("n_measures_norm") {
    FiniteMeasureSet equal;
    equal.weights = {{0.5, 0.5}, {0.5, 0.5}};
    CHECK(npc::n_measures_norm(equal) == 0.0);

    FiniteMeasureSet atoms;
    atoms.weights = {{1.0, 0.0}, {0.0, 1.0}};
    CHECK(npc::n_measures_norm(atoms) == Catch::Approx(1.0).margin(1e-15));

    FiniteMeasureSet one;
    one.weights = {{1.0}};
    CHECK_THROWS_AS(npc::n_measures_norm(one), npc::DegenerateInput);
}

TEST_CASE("n_measures_norm agrees with the kernel pairwise maximum") {
    // Rows sampled from a triangle's kernel measures, discretized on the
    // quadrature grid with the corner atoms appended as extra atoms.
    const npc::ConvexDomain tri = npc::ConvexDomain::build(
        npc::DomainSpec::polygon({cplx(-1, 0), cplx(1, 0), cplx(0, 1)}), 24, 6);
    const std::vector<npc::BoundaryPoint> bases = {
        npc::locate_boundary_point(tri, cplx(-1, 0)),
        npc::locate_boundary_point(tri, cplx(1, 0)),
        tri.at_arclength(0.5), // a smooth edge point
    };
    FiniteMeasureSet ms;
    for (const auto& bp : bases) {
        const npc::BoundaryMeasure bm = npc::measure(tri, bp);
        std::vector<double> row;
        for (std::size_t i = 0; i < bm.density.size(); ++i)
            row.push_back(tri.nodes()[i].weight * bm.density[i]);
        // One atom slot per base point.
        for (const auto& other : bases)
            row.push_back(std::abs(other.pos - bp.pos) < 1e-12 ? bm.atom_mass : 0.0);
        ms.weights.push_back(std::move(row));
    }
    const double discrete = npc::n_measures_norm(ms);
    double pairwise = 0.0;
    for (std::size_t i = 0; i < bases.size(); ++i)
        for (std::size_t j = i + 1; j < bases.size(); ++j)
            pairwise = std::max(pairwise, 0.5 * npc::tv_distance(tri, bases[i], bases[j]));
    // The node-sum discretization of the TV integral is only quadrature-
    // close to the refined integral.
    CHECK(discrete == Catch::Approx(pairwise).margin(1e-3));
}

TEST_CASE("image radius never exceeds the operator norm") {
    npc::Rng rng(123);
    double min_aligned = 1e300;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 2 + rng.uniform_int(5);  // <= 6
        const std::size_t m = 2 + rng.uniform_int(39); // <= 40
        FiniteMeasureSet ms;
        ms.weights.assign(k, std::vector<double>(m));
        for (auto& row : ms.weights)
            for (double& w : row) w = rng.uniform(-1, 1);
        const npc::ImageRadiusReport rep = npc::verify_image_radius(ms, 50, trial);
        REQUIRE(rep.max_ratio <= 1.0 + 1e-9);
        min_aligned = std::min(min_aligned, rep.aligned_ratio);
    }
    // The aligned sign vector reproduces the argmax pair distance as a
    // diameter, so its radius is at least half of it; when that pair also
    // realizes the image diameter the ratio reaches 1.
    CHECK(min_aligned >= 0.5 - 1e-9);
}

TEST_CASE("aligned construction attains ratio 1") {
    // Two measures: the argmax pair trivially realizes the diameter.
    npc::Rng rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        FiniteMeasureSet ms;
        ms.weights.assign(2, std::vector<double>(10));
        for (auto& row : ms.weights)
            for (double& w : row) w = rng.uniform(-1, 1);
        const npc::ImageRadiusReport rep = npc::verify_image_radius(ms, 0, trial);
        CHECK(rep.aligned_ratio >= 1.0 - 1e-9);
        CHECK(rep.max_ratio <= 1.0 + 1e-9);
    }
}

TEST_CASE("Jung bound on image sets") {
    npc::Rng rng(2718);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<cplx> images(6);
        for (cplx& z : images) z = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        double diam = 0.0;
        for (std::size_t i = 0; i < images.size(); ++i)
            for (std::size_t j = i + 1; j < images.size(); ++j)
                diam = std::max(diam, std::abs(images[i] - images[j]));
        CHECK(npc::quotient_norm(images) <= diam / std::sqrt(3.0) + 1e-12);
    }
}

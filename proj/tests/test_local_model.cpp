#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isocryst/dieudonne.hpp"
#include "isocryst/local_model.hpp"

using namespace isocryst;

TEST_CASE("unramified: e+1 points, orbit count floor(e/2)+1") {
    for (int e = 1; e <= 4; ++e)
        for (std::uint64_t q : {3ull, 5ull, 9ull}) {
            std::uint64_t p = (q == 9) ? 3 : q;
            ReducedLattice lat{FieldParams{p, e, 1}, false, q};
            auto pts = enumerate_points(lat);
            INFO("e=", e, " q=", q);
            CHECK((int)pts.size() == e + 1);
            auto orbits = classify_orbits(pts, false, e);
            CHECK((int)orbits.size() == e / 2 + 1);
            // every point passes an independent recheck of the Lie profile
            for (const auto& pt : pts) {
                auto [e1, e2] = pt.lie_type;
                CHECK(e1 + e2 == e);
                CHECK(e1 <= e2);
            }
        }
}

TEST_CASE("unramified e=2 q=3: the three explicit points") {
    ReducedLattice lat{FieldParams{3, 2, 1}, false, 3};
    auto pts = enumerate_points(lat);
    REQUIRE(pts.size() == 3);
    // lie types (0,2), (0,2), (1,1): sorted by type
    CHECK(pts[0].lie_type == std::pair(0, 2));
    CHECK(pts[1].lie_type == std::pair(0, 2));
    CHECK(pts[2].lie_type == std::pair(1, 1));
    auto orbits = classify_orbits(pts, false, 2);
    REQUIRE(orbits.size() == 2);
    CHECK(orbits[0].members.size() == 2); // {F_0, F_2}
    CHECK(orbits[1].members.size() == 1); // {F_1}
}

TEST_CASE("ramified: exactly one point with minimal Lie type") {
    for (int e = 1; e <= 4; ++e)
        for (std::uint64_t q : {3ull, 5ull, 9ull}) {
            std::uint64_t p = (q == 9) ? 3 : q;
            ReducedLattice lat{FieldParams{p, e, 1}, true, q};
            auto pts = enumerate_points(lat);
            INFO("e=", e, " q=", q);
            REQUIRE(pts.size() == 1);
            CHECK(pts[0].lie_type == std::pair(e / 2, e - e / 2));
            CHECK(classify_orbits(pts, true, e).size() == 1);
        }
}

TEST_CASE("ramified point matches Prop 11.5's explicit spans") {
    // e = 2 (c = 1): F_tau = pi * Lambda_tau on both factors
    {
        ReducedLattice lat{FieldParams{3, 2, 1}, true, 3};
        auto pts = enumerate_points(lat);
        REQUIRE(pts.size() == 1);
        ChainRing R = ChainRing::make(3, 1, 2);
        // generators pi*x1, pi*x2 on tau; pi*x'1, pi*x'2 on tau'
        const auto& b = pts[0].basis;
        REQUIRE(b.size() == 4);
        // each generator is pi times a basis vector
        CHECK(R.val(b[0].x) >= 1);
        CHECK(R.val(b[0].y) >= 1);
        CHECK(R.val(b[1].x) >= 1);
        CHECK(R.val(b[1].y) >= 1);
    }
    // e = 3 (c = 1): F_tau = span{pi^c x2, pi^{c+1} x1}
    {
        ReducedLattice lat{FieldParams{3, 3, 1}, true, 3};
        auto pts = enumerate_points(lat);
        REQUIRE(pts.size() == 1);
        CHECK(pts[0].lie_type == std::pair(1, 2));
    }
}

TEST_CASE("cross-check: ramified Lie type equals the Dieudonne measurement") {
    for (std::uint64_t p : {3ull, 5ull})
        for (int e = 1; e <= 3; ++e) {
            ReducedLattice lat{FieldParams{p, e, 1}, true, p};
            auto pts = enumerate_points(lat);
            REQUIRE(pts.size() == 1);
            auto M = build_superspecial_division(FieldParams{p, e, 1});
            auto rep = verify(M);
            std::vector<int> want = {pts[0].lie_type.first, pts[0].lie_type.second};
            for (const auto& prof : rep.lie) CHECK(prof == want);
            // and the two-slope construction where one is in range
            if (e % 2 == 1) {
                FieldParams pr{p, e, 3};
                long long a = 2LL * (e / 2) * 3 + 1;
                if (a < pr.d()) {
                    auto M2 = build_two_slope_division(pr, a);
                    auto rep2 = verify(M2);
                    for (const auto& prof : rep2.lie) CHECK(prof == want);
                }
            }
        }
}

TEST_CASE("search guard") {
    ReducedLattice lat{FieldParams{3, 9, 1}, false, 9};
    CHECK_THROWS_AS(enumerate_points(lat), Error);
}

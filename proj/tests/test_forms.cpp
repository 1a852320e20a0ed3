#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isocryst/forms.hpp"
#include "oracles.hpp"

#include <random>
#include <set>

using namespace isocryst;

TEST_CASE("classification basics") {
    auto R = EisensteinRing::make_default(3, 1, 1, 8);
    // hyperbolic plane: disc [1], hasse (-1,-1)_p
    QuadClass h = classify_quadratic(*R, {R->one(), R->from_int(-1)});
    CHECK(h.disc.is_identity());
    CHECK(h.hasse == hilbert_symbol(*R, R->from_int(-1), R->from_int(-1)));
    // unary unit form
    QuadClass u1 = classify_quadratic(*R, {R->one()});
    CHECK(u1.disc.is_identity());
    CHECK(u1.hasse == 1);
    // diag(1,1,1) and diag(1,1,4) agree
    QuadClass a = classify_quadratic(*R, {R->one(), R->one(), R->one()});
    QuadClass b = classify_quadratic(*R, {R->one(), R->one(), R->from_int(4)});
    CHECK(a == b);
}

TEST_CASE("classification invariances") {
    std::mt19937_64 rng(17);
    for (auto [p, e, f] : {std::tuple<std::uint64_t, int, int>{3, 1, 1}, {5, 2, 1}, {7, 1, 2}}) {
        auto R = EisensteinRing::make_default(p, e, f, 8);
        auto reps = square_class_reps(*R);
        for (int it = 0; it < 30; ++it) {
            int n = 1 + (int)(rng() % 4);
            std::vector<EisensteinRing::Elem> diag;
            for (int i = 0; i < n; ++i) diag.push_back(reps[rng() % 4]);
            QuadClass c = classify_quadratic(*R, diag);
            // permutation invariance
            std::vector<EisensteinRing::Elem> perm = diag;
            std::shuffle(perm.begin(), perm.end(), rng);
            CHECK(classify_quadratic(*R, perm) == c);
            // scaling an entry by a nonzero square
            std::vector<EisensteinRing::Elem> scaled = diag;
            EisensteinRing::Elem s = R->from_int((std::int64_t)(1 + rng() % (p - 1)));
            std::size_t at = rng() % n;
            scaled[at] = R->mul(scaled[at], R->mul(s, s));
            CHECK(classify_quadratic(*R, scaled) == c);
        }
    }
}

TEST_CASE("enumerate_quad_classes counts") {
    for (auto [p, e, f] : {std::tuple<std::uint64_t, int, int>{3, 1, 1}, {5, 1, 2}, {7, 2, 1}}) {
        auto R = EisensteinRing::make_default(p, e, f, 8);
        CHECK(enumerate_quad_classes(*R, 1).size() == 4);
        CHECK(enumerate_quad_classes(*R, 2).size() == 7);
        for (int n = 3; n <= 5; ++n) CHECK(enumerate_quad_classes(*R, n).size() == 8);
        // no duplicates, and every member realized by its emitted diagonal
        for (int n = 1; n <= 4; ++n) {
            auto cls = enumerate_quad_classes(*R, n);
            std::set<std::pair<SquareClass, int>> seen;
            for (const auto& rep : cls) {
                CHECK(!seen.count({rep.cls.disc, rep.cls.hasse}));
                seen.insert({rep.cls.disc, rep.cls.hasse});
                CHECK(classify_quadratic(*R, rep.diag) == rep.cls);
            }
        }
        // n = 2 exclusion: ([1], -(−1,−1)) does not occur
        auto cls2 = enumerate_quad_classes(*R, 2);
        int eps = hilbert_symbol(*R, R->from_int(-1), R->from_int(-1));
        for (const auto& rep : cls2)
            if (rep.cls.disc.is_identity()) CHECK(rep.cls.hasse == eps);
    }
}

TEST_CASE("skew-hermitian class counts") {
    for (auto [p, e, f] : {std::tuple<std::uint64_t, int, int>{3, 1, 1}, {5, 2, 1}, {3, 1, 2}}) {
        FieldParams pr{p, e, f};
        auto C = QuatContext::make(pr, AlgKind::Division, 8);
        auto c1 = enumerate_skewherm_classes(C, 1);
        CHECK(c1.size() == 3);
        for (const auto& rep : c1) CHECK(!rep.cls.disc.is_identity());
        CHECK(enumerate_skewherm_classes(C, 2).size() == 4);
        CHECK(enumerate_skewherm_classes(C, 5).size() == 4);
        // cross-route for the reduced norm: the regular representation of
        // a + b Pi over L on the basis (1, Pi) has determinant Nrd
        const auto& R = *C.RL;
        for (const auto& rep : c1) {
            const QuatElem& g = rep.diag[0];
            EMat reg(2, 2, R);
            // 1*g = a + b Pi, Pi*g = -pi bar(b) + bar(a) Pi
            reg.at(0, 0) = g.a;
            reg.at(1, 0) = g.b;
            reg.at(0, 1) = R.neg(R.mul(C.pi_elem(), C.bar(g.b)));
            reg.at(1, 1) = C.bar(g.a);
            EisensteinRing::Elem det = mat_det(R, reg);
            CHECK(R.equal(det, reduced_norm(C, g)));
        }
    }
}

TEST_CASE("isometry decision matches the search oracle") {
    for (std::uint64_t p : {3ull, 5ull}) {
        auto R = EisensteinRing::make_default(p, 1, 1, 8);
        oracle::IsometryOracle O(p);
        std::uint64_t u = 0;
        for (std::uint64_t c = 2; c < p; ++c)
            if (legendre_symbol_int(c, p) == -1) { u = c; break; }
        std::vector<long long> vals = {1, (long long)u, (long long)p, (long long)(u * p)};
        auto elem_of = [&](long long v) { return R->from_int(v); };
        std::mt19937_64 rng(23);
        int checked = 0;
        for (int n = 1; n <= 3; ++n) {
            for (int it = 0; it < (n == 1 ? 16 : 40); ++it) {
                std::vector<long long> d1, d2;
                std::vector<EisensteinRing::Elem> e1, e2;
                for (int i = 0; i < n; ++i) {
                    d1.push_back(vals[rng() % 4]);
                    d2.push_back(vals[rng() % 4]);
                    e1.push_back(elem_of(d1.back()));
                    e2.push_back(elem_of(d2.back()));
                }
                bool by_class = classify_quadratic(*R, e1) == classify_quadratic(*R, e2);
                bool by_search = O.isometric(d1, d2);
                INFO("p=", p, " n=", n);
                CHECK(by_class == by_search);
                ++checked;
            }
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("standard self-dual lattices") {
    // division, f=1, a_0 = a_1 = 1
    {
        FieldParams pr{3, 2, 1};
        auto L = standard_selfdual_lattice(pr, AlgKind::Division, {1, 1});
        const auto& R = *L.R;
        CHECK(L.ranks[0] == 2);
        // Pi pattern: Pi(x^0_1) = x^1_1, Pi(x^1_2) = x^0_2
        CHECK(R.equal(L.Pi[0].at(0, 0), R.one()));
        CHECK(R.equal(L.Pi[1].at(1, 1), R.one()));
        // unimodular Gram, and Pi^2 = -pi
        auto pi = R.pi_pow(1);
        for (int j = 0; j < 2; ++j) {
            CHECK(ord_det(R, L.Gram[j]) == 0);
            EMat sq = mat_mul(R, L.Pi[(j + 1) % 2], L.Pi[j]);
            CHECK(mat_equal(R, sq, mat_scalar(R, 2, R.neg(pi))));
        }
        // skew-Hermitian compatibility psi(Pi x, y) = -psi(x, Pi y)
        for (int j = 0; j < 2; ++j) {
            EMat lhs = mat_mul(R, mat_transpose(L.Pi[j]), L.Gram[(j + 1) % 2]);
            EMat rhs = mat_neg(R, mat_mul(R, L.Gram[j], L.Pi[j]));
            CHECK(mat_equal(R, lhs, rhs));
        }
    }
    // division, f=1, a = (2,0) is a valid shape
    {
        FieldParams pr{3, 1, 1};
        auto L = standard_selfdual_lattice(pr, AlgKind::Division, {2, 0});
        CHECK(L.ranks[0] == 2);
        CHECK(ord_det(*L.R, L.Gram[0]) == 0);
    }
    // infeasible shape
    {
        FieldParams pr{3, 1, 2};
        CHECK_THROWS_AS(standard_selfdual_lattice(pr, AlgKind::Division, {1, 0, 0, 0}),
                        Error);
        CHECK_THROWS_AS(standard_selfdual_lattice(pr, AlgKind::Matrix, {1, 2}), Error);
    }
    // matrix, f=1, n_0 = 2 (post-Morita rank 1, unimodular)
    {
        FieldParams pr{3, 1, 1};
        auto L = standard_selfdual_lattice(pr, AlgKind::Matrix, {2});
        CHECK(L.ranks[0] == 1);
        CHECK(ord_det(*L.R, L.Gram[0]) == 0);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isocryst/dieudonne.hpp"

#include <random>

using namespace isocryst;

namespace {

void check_all(const DieudonneModule& M, bool expect_all = true) {
    VerificationReport rep = verify(M);
    if (expect_all) {
        for (const auto& c : rep.checks) {
            INFO(M.label, " p=", M.params.p, " e=", M.params.e, " f=", M.params.f, " check=",
                 c.name, " observed=", c.observed, " expected=", c.expected);
            CHECK(c.pass);
        }
    }
}

} // namespace

TEST_CASE("superspecial matrix construction") {
    // (3,1,1): F^2 = p on a rank-2 block, slopes (1/2)^2
    {
        auto M = build_superspecial_matrix(FieldParams{3, 1, 1});
        const auto& R = *M.R;
        EMat F2 = mat_mul(R, M.F[0], mat_frob(R, M.F[0], 1));
        CHECK(mat_equal(R, F2, mat_scalar(R, 2, R.from_int(3))));
        SlopeSeq nu = compute_slopes(M);
        CHECK(nu.str() == "1/2^2");
        check_all(M);
    }
    // (3,2,1): c_i = e = 2
    {
        auto M = build_superspecial_matrix(FieldParams{3, 2, 1});
        auto rep = verify(M);
        CHECK(rep.c_vals == std::vector<int>{2});
        CHECK(rep.all_pass());
    }
    // (5,1,2): F^4 = p^2 on M^0
    {
        auto M = build_superspecial_matrix(FieldParams{5, 1, 2});
        const auto& R = *M.R;
        EMat Phi = mat_mul(R, M.F[1], M.F[0]);
        EMat Phi2 = mat_mul(R, Phi, Phi);
        CHECK(mat_equal(R, Phi2, mat_scalar(R, 2, R.from_int(25))));
        check_all(M);
    }
    // m = 2 direct sum
    {
        auto M = build_superspecial_matrix(FieldParams{3, 1, 2}, 2);
        CHECK(M.rank() == 4);
        check_all(M);
    }
}

TEST_CASE("matrix modules with prescribed Lie type") {
    // f=2, e=1, lie ((0,1),(0,1)) -> ordinary {0^2, 1^2}
    {
        auto M = build_matrix_lie_type(FieldParams{3, 1, 2}, {{0, 1}, {0, 1}});
        CHECK(compute_slopes(M).str() == "0^2,1^2");
        check_all(M);
    }
    // f=1, e=2, lie ((1,1)) -> (1/2)^2
    {
        auto M = build_matrix_lie_type(FieldParams{3, 2, 1}, {{1, 1}});
        CHECK(compute_slopes(M).str() == "1/2^4");
        check_all(M);
    }
    // f=2, e=2, lie ((0,2),(1,1)) -> {1/4, 3/4}
    {
        auto M = build_matrix_lie_type(FieldParams{3, 2, 2}, {{0, 2}, {1, 1}});
        CHECK(compute_slopes(M).str() == "1/4^4,3/4^4");
        check_all(M);
    }
    // f=2, e=1, lie ((0,1),(1,0)) -> (1/2)^4
    {
        auto M = build_matrix_lie_type(FieldParams{3, 1, 2}, {{0, 1}, {1, 0}});
        CHECK(compute_slopes(M).str() == "1/2^4");
        check_all(M);
    }
    // Lie round trip for all lie types with e <= 3, f <= 3
    for (int e = 1; e <= 3; ++e)
        for (int f = 1; f <= 3; ++f) {
            std::vector<std::vector<std::pair<int, int>>> all{{}};
            for (int i = 0; i < f; ++i) {
                std::vector<std::vector<std::pair<int, int>>> next;
                for (auto& partial : all)
                    for (int e1 = 0; e1 <= e; ++e1) {
                        auto cp = partial;
                        cp.push_back({e1, e - e1});
                        next.push_back(cp);
                    }
                all = std::move(next);
            }
            for (const auto& lie : all) {
                auto M = build_matrix_lie_type(FieldParams{3, e, f}, lie);
                auto rep = verify(M);
                const Check* lc = rep.find("lie_type");
                REQUIRE(lc != nullptr);
                INFO("e=", e, " f=", f, " observed=", lc->observed, " expected=", lc->expected);
                CHECK(lc->pass);
            }
        }
}

TEST_CASE("superspecial division construction, all parity branches") {
    // spot checks of the stated matrix entries
    {
        // e odd, f odd: F = antidiag(-pi^{c+1}, pi^c) = antidiag(-pi, 1) at e=1
        auto M = build_superspecial_division(FieldParams{3, 1, 1});
        const auto& R = *M.R;
        auto pi = R.from_int(-3);
        CHECK(R.equal(M.F[0].at(0, 1), R.neg(pi)));
        CHECK(R.equal(M.F[0].at(1, 0), R.one()));
        check_all(M);
    }
    {
        // e even, f odd: Pi alternates diag(1,-pi) / diag(-pi,1)
        auto M = build_superspecial_division(FieldParams{3, 2, 1});
        const auto& R = *M.R;
        auto pi = R.pi_pow(1);
        CHECK(R.equal(M.Pi[0].at(0, 0), R.one()));
        CHECK(R.equal(M.Pi[0].at(1, 1), R.neg(pi)));
        CHECK(R.equal(M.Pi[1].at(0, 0), R.neg(pi)));
        CHECK(R.equal(M.Pi[1].at(1, 1), R.one()));
        check_all(M);
    }
    {
        // f even: odd-index Pi contains p*pi^{-2c}
        auto M = build_superspecial_division(FieldParams{3, 1, 2});
        const auto& R = *M.R;
        CHECK(R.equal(M.Pi[1].at(0, 1), R.neg(R.from_int(3)))); // -p pi^{0} at c=0
        check_all(M);
    }
    for (std::uint64_t p : {3ull, 5ull})
        for (int e = 1; e <= 3; ++e)
            for (int f = 1; f <= 3; ++f) {
                auto M = build_superspecial_division(FieldParams{p, e, f});
                INFO("p=", p, " e=", e, " f=", f);
                check_all(M);
            }
}

TEST_CASE("superspecial division over a general Eisenstein polynomial") {
    // non-default uniformizer: P = T^3 + 3T + 3 (e = 3, h != -1)
    auto W = UnramifiedRing::make(3, 2, 12);
    auto R = EisensteinRing::make(W, 3, {3, 3, 0, 1});
    CHECK(!R->equal(R->h(), R->neg(R->one())));
    // build manually through the same branch logic by calling the builder on a
    // params object and replacing the ring is not supported; instead check the
    // twisted-unit machinery directly: solve sigma^f(x) = C x with C = (a h)^f
    // as the builder does for e odd, f odd
    // (the default-polynomial path is covered by the sweep above)
    auto RL = EisensteinRing::make(UnramifiedRing::make(3, 2, 12), 3, {3, 3, 0, 1});
    CHECK(RL->ord(RL->h()) == 0);
}

TEST_CASE("example 13.5") {
    for (std::uint64_t p : {3ull, 5ull}) {
        auto M = build_example_13_5(p);
        VerificationReport rep = verify(M);
        // superspecial passes, pi_lie_zero passes, det_condition fails as expected
        const Check* ss = rep.find("superspecial");
        const Check* pl = rep.find("pi_lie_zero");
        const Check* dc = rep.find("det_condition");
        REQUIRE(ss);
        REQUIRE(pl);
        REQUIRE(dc);
        CHECK(ss->pass);
        CHECK(pl->pass);
        CHECK(dc->pass); // pass = matches the expected FAIL
        CHECK(rep.c_vals == std::vector<int>{2, 0});
        CHECK(rep.a_vals == std::vector<int>{2, 0});
        CHECK(compute_slopes(M).str() == "1/2^4");
        CHECK(rep.all_pass());
    }
}

TEST_CASE("two-slope division construction") {
    // (e=1, f=3, a=1): slopes {1/6^6, 5/6^6}; all structural checks pass;
    // the pairing behaviour is reported by verify()
    {
        auto M = build_two_slope_division(FieldParams{3, 1, 3}, 1);
        SlopeSeq nu = compute_slopes(M);
        CHECK(nu.str() == "1/6^6,5/6^6");
        auto rep = verify(M);
        for (const char* name : {"fv_equals_p", "pi_square", "pi_f_commute", "det_condition",
                                 "lie_type", "slope_seq"}) {
            const Check* c = rep.find(name);
            REQUIRE(c);
            INFO(name, ": ", c->observed, " vs ", c->expected);
            CHECK(c->pass);
        }
    }
    // (e=1, f=5, a=3): slopes {3/10, 7/10}
    {
        auto M = build_two_slope_division(FieldParams{3, 1, 5}, 3);
        CHECK(compute_slopes(M).str() == "3/10^10,7/10^10");
    }
    // (e=3, f=3, a=7): slopes {7/18, 11/18}
    {
        auto M = build_two_slope_division(FieldParams{3, 3, 3}, 7);
        CHECK(compute_slopes(M).str() == "7/18^18,11/18^18");
    }
    // out of range
    CHECK_THROWS_AS(build_two_slope_division(FieldParams{3, 2, 3}, 1), Error);
    CHECK_THROWS_AS(build_two_slope_division(FieldParams{3, 1, 3}, 2), Error);
    CHECK_THROWS_AS(build_two_slope_division(FieldParams{3, 1, 1}, 1), Error);
}

TEST_CASE("double construction") {
    std::mt19937_64 rng(31);
    // etale block (slope 0) doubles to ordinary
    {
        auto H = make_isoclinic_block(FieldParams{3, 1, 2}, AlgKind::Matrix, 0);
        auto M = double_construction(H);
        CHECK(compute_slopes(M).str() == "0^2,1^2");
        check_all(M);
    }
    // division block of slope 1/6 doubles to {1/6, 5/6}
    {
        auto H = make_isoclinic_block(FieldParams{3, 1, 3}, AlgKind::Division, 1);
        CHECK(compute_slopes(H).str() == "1/6^6");
        auto M = double_construction(H);
        CHECK(compute_slopes(M).str() == "1/6^6,5/6^6");
        check_all(M);
    }
    // randomized admissible blocks
    for (int it = 0; it < 10; ++it) {
        FieldParams pr{3, 1 + (int)(rng() % 2), 1 + (int)(rng() % 3)};
        AlgKind k = rng() % 2 ? AlgKind::Matrix : AlgKind::Division;
        long long d = pr.d();
        long long a;
        if (k == AlgKind::Matrix) a = (long long)(rng() % (d + 1));
        else {
            a = 1 + 2 * (long long)(rng() % d);
            if (a > 2 * d) a = 2 * d - 1;
        }
        auto H = make_isoclinic_block(pr, k, a);
        SlopeSeq bnu = compute_slopes(H);
        REQUIRE(bnu.entries.size() == 1);
        Frac beta = bnu.entries[0].first;
        auto M = double_construction(H);
        SlopeSeq nu = compute_slopes(M);
        SlopeSeq want;
        want.push(beta, bnu.entries[0].second);
        want.push(Frac(beta.den - beta.num, beta.den), bnu.entries[0].second);
        INFO("p=3 e=", pr.e, " f=", pr.f, " kind=", kind_name(k), " a=", a);
        CHECK(nu == want);
        check_all(M);
    }
    // non-isoclinic input is rejected: a two-slope module has no double
    {
        auto M2 = build_two_slope_division(FieldParams{3, 1, 3}, 1);
        DieudonneModule stripped = M2;
        stripped.has_pairing = false;
        stripped.Gram.clear();
        CHECK_THROWS_AS(double_construction(stripped), Error);
    }
}

TEST_CASE("verify flags a broken pairing") {
    auto M = build_superspecial_division(FieldParams{3, 1, 1});
    // scale one Gram by pi: unimodularity must fail
    const auto& R = *M.R;
    auto pi = R.from_int(-3);
    M.Gram[0] = mat_scalar_mul(R, pi, M.Gram[0]);
    auto rep = verify(M);
    const Check* c = rep.find("unimodular");
    REQUIRE(c);
    CHECK(!c->pass);
}

TEST_CASE("slope computation consistency with enumeration (freeness dichotomy)") {
    // division-kind constructed modules: det_condition PASS <=> all a_j equal m
    for (std::uint64_t p : {3ull})
        for (int e = 1; e <= 2; ++e)
            for (int f = 1; f <= 2; ++f) {
                auto M = build_superspecial_division(FieldParams{p, e, f});
                auto rep = verify(M);
                bool det_ok = true;
                for (int c : rep.c_vals) det_ok &= (c == e);
                bool free_ok = true;
                for (int a : rep.a_vals) free_ok &= (a == 1);
                CHECK(det_ok == free_ok);
            }
    // example 13.5: det fails and a_j nonconstant
    auto M = build_example_13_5(3);
    auto rep = verify(M);
    CHECK(rep.a_vals != std::vector<int>(2, 1));
}

TEST_CASE("sigma-varying entries are rejected by the slope computation") {
    auto M = build_superspecial_division(FieldParams{3, 1, 2});
    const auto& R = *M.R;
    // poison one Frobenius entry with a non-invariant unit (a residue-field
    // generator of the degree-2f unramified base)
    UnramifiedRing::Elem gen = R.base->zero();
    gen[1] = 1;
    EisensteinRing::Elem bad = R.from_base(gen);
    REQUIRE(!R.frob_invariant(bad));
    M.F[0].at(0, 1) = R.add(M.F[0].at(0, 1), bad);
    CHECK_THROWS_AS(compute_slopes(M), Error);
}

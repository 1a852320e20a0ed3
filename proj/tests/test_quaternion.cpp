#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isocryst/quaternion.hpp"

#include <random>

using namespace isocryst;

namespace {

QuatElem random_quat(const QuatContext& C, std::mt19937_64& rng) {
    if (C.kind == AlgKind::Division) {
        EisensteinRing::Elem a = C.RL->zero(), b = C.RL->zero();
        for (auto& c : a) c = rng() % C.RL->pN;
        for (auto& c : b) c = rng() % C.RL->pN;
        return QuatElem::division(a, b);
    }
    EMat m(2, 2, *C.RF);
    for (auto& x : m.a)
        for (auto& c : x) c = rng() % C.RF->pN;
    return QuatElem::matrix(m);
}

} // namespace

TEST_CASE("division algebra relations") {
    FieldParams pr{3, 2, 1};
    auto C = QuatContext::make(pr, AlgKind::Division, 6);
    QuatElem Pi = quat_pi_gen(C);
    // Pi^2 = -pi
    QuatElem sq = quat_mul(C, Pi, Pi);
    CHECK(C.RL->equal(sq.a, C.RL->neg(C.pi_elem())));
    CHECK(C.RL->is_zero(sq.b));
    // Pi a = bar(a) Pi
    std::mt19937_64 rng(3);
    for (int it = 0; it < 10; ++it) {
        QuatElem a = random_quat(C, rng);
        a.b = C.RL->zero();
        QuatElem lhs = quat_mul(C, Pi, a);
        CHECK(C.RL->is_zero(lhs.a));
        CHECK(C.RL->equal(lhs.b, C.bar(a.a)));
    }
    // 1 * x = x
    QuatElem x = random_quat(C, rng);
    CHECK(quat_equal(C, quat_mul(C, quat_one(C), x), x));
}

TEST_CASE("norm, trace, involution") {
    std::mt19937_64 rng(5);
    for (AlgKind kind : {AlgKind::Division, AlgKind::Matrix}) {
        FieldParams pr{3, 1, 2};
        auto C = QuatContext::make(pr, kind, 6);
        const auto& R = kind == AlgKind::Division ? *C.RL : *C.RF;
        for (int it = 0; it < 12; ++it) {
            QuatElem x = random_quat(C, rng), y = random_quat(C, rng);
            // x** = x
            CHECK(quat_equal(C, quat_conj(C, quat_conj(C, x)), x));
            // (xy)* = y* x*
            CHECK(quat_equal(C, quat_conj(C, quat_mul(C, x, y)),
                             quat_mul(C, quat_conj(C, y), quat_conj(C, x))));
            // Nrd(x) = x x* (in the scalar part) and Nrd multiplicative
            QuatElem xxs = quat_mul(C, x, quat_conj(C, x));
            if (kind == AlgKind::Division) {
                CHECK(R.equal(xxs.a, reduced_norm(C, x)));
                CHECK(R.is_zero(xxs.b));
            }
            CHECK(R.equal(reduced_norm(C, quat_mul(C, x, y)),
                          R.mul(reduced_norm(C, x), reduced_norm(C, y))));
            CHECK(R.equal(reduced_norm(C, quat_conj(C, x)), reduced_norm(C, x)));
            // Trd(x) = x + x*
            QuatElem tr = quat_add(C, x, quat_conj(C, x));
            if (kind == AlgKind::Division) {
                CHECK(R.equal(tr.a, reduced_trace(C, x)));
                CHECK(R.is_zero(tr.b));
                // values are Galois-invariant
                CHECK(R.equal(reduced_norm(C, x), C.bar(reduced_norm(C, x))));
            }
        }
    }
    // Nrd(Pi) = pi, Trd(Pi) = 0
    auto C = QuatContext::make(FieldParams{5, 1, 1}, AlgKind::Division, 6);
    QuatElem Pi = quat_pi_gen(C);
    CHECK(C.RL->equal(reduced_norm(C, Pi), C.pi_elem()));
    CHECK(C.RL->is_zero(reduced_trace(C, Pi)));
}

TEST_CASE("twist invariant") {
    // d = 1: swaps kinds; d = 2: fixes kinds; general parity rule up to d = 6
    for (int e = 1; e <= 3; ++e)
        for (int f = 1; f <= 2; ++f) {
            FieldParams pr{3, e, f};
            int d = pr.d();
            if (d > 6) continue;
            for (AlgKind k : {AlgKind::Matrix, AlgKind::Division}) {
                QuaternionAlgebra B{pr, k};
                QuaternionAlgebra Bp = twist_invariant(B);
                if (d % 2 == 1) CHECK(Bp.kind != B.kind);
                else CHECK(Bp.kind == B.kind);
                // involution iff d odd; identity iff d even -- both mean
                // twist(twist(B)) = B
                CHECK(twist_invariant(Bp).kind == B.kind);
            }
        }
    QuaternionAlgebra B1{FieldParams{3, 1, 1}, AlgKind::Division};
    CHECK(twist_invariant(B1).kind == AlgKind::Matrix);
    QuaternionAlgebra B2{FieldParams{3, 1, 1}, AlgKind::Matrix};
    CHECK(twist_invariant(B2).kind == AlgKind::Division);
    QuaternionAlgebra B3{FieldParams{3, 2, 1}, AlgKind::Division};
    CHECK(twist_invariant(B3).kind == AlgKind::Division);
}

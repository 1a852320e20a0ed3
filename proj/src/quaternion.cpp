#include "isocryst/quaternion.hpp"

namespace isocryst {

QuaternionAlgebra twist_invariant(const QuaternionAlgebra& B) {
    int d = B.params.d();
    // d/2 - inv(B) mod 1, in halves: numerator mod 2
    int halves = d - (B.kind == AlgKind::Division ? 1 : 0);
    QuaternionAlgebra out;
    out.params = B.params;
    out.kind = (halves % 2 == 0) ? AlgKind::Matrix : AlgKind::Division;
    return out;
}

QuatContext QuatContext::make(const FieldParams& pr, AlgKind kind, int N) {
    pr.validate();
    QuatContext C;
    C.params = pr;
    C.kind = kind;
    C.RF = EisensteinRing::make_default(pr.p, pr.e, pr.f, N);
    if (kind == AlgKind::Division) C.RL = EisensteinRing::make_default(pr.p, pr.e, 2 * pr.f, N);
    return C;
}

EisensteinRing::Elem QuatContext::bar(const EisensteinRing::Elem& a) const {
    return RL->frob(a, params.f);
}

EisensteinRing::Elem QuatContext::pi_elem() const {
    const auto& R = kind == AlgKind::Division ? *RL : *RF;
    return R.e > 1 ? R.pi_pow(1) : R.from_int(-R.P[0]);
}

QuatElem QuatElem::division(const EisensteinRing::Elem& a, const EisensteinRing::Elem& b) {
    QuatElem x;
    x.kind = AlgKind::Division;
    x.a = a;
    x.b = b;
    return x;
}

QuatElem QuatElem::matrix(const EMat& m) {
    QuatElem x;
    x.kind = AlgKind::Matrix;
    x.mat = m;
    return x;
}

QuatElem quat_one(const QuatContext& C) {
    if (C.kind == AlgKind::Division) return QuatElem::division(C.RL->one(), C.RL->zero());
    return QuatElem::matrix(mat_identity(*C.RF, 2));
}

QuatElem quat_pi_gen(const QuatContext& C) {
    if (C.kind != AlgKind::Division) throw Error(Err::AlgebraMismatch, "Pi lives in the division algebra");
    return QuatElem::division(C.RL->zero(), C.RL->one());
}

QuatElem quat_from_L(const QuatContext& C, const EisensteinRing::Elem& a) {
    if (C.kind != AlgKind::Division) throw Error(Err::AlgebraMismatch, "L-scalars need the division kind");
    return QuatElem::division(a, C.RL->zero());
}

QuatElem quat_add(const QuatContext& C, const QuatElem& x, const QuatElem& y) {
    if (x.kind != y.kind || x.kind != C.kind) throw Error(Err::AlgebraMismatch, "mixed algebras");
    if (C.kind == AlgKind::Division)
        return QuatElem::division(C.RL->add(x.a, y.a), C.RL->add(x.b, y.b));
    return QuatElem::matrix(mat_add(*C.RF, x.mat, y.mat));
}

QuatElem quat_mul(const QuatContext& C, const QuatElem& x, const QuatElem& y) {
    if (x.kind != y.kind || x.kind != C.kind) throw Error(Err::AlgebraMismatch, "mixed algebras");
    if (C.kind == AlgKind::Matrix) return QuatElem::matrix(mat_mul(*C.RF, x.mat, y.mat));
    const auto& R = *C.RL;
    // (a + b Pi)(c + d Pi) = (ac - pi b bar(d)) + (ad + b bar(c)) Pi
    EisensteinRing::Elem pi = C.pi_elem();
    EisensteinRing::Elem A = R.sub(R.mul(x.a, y.a), R.mul(pi, R.mul(x.b, C.bar(y.b))));
    EisensteinRing::Elem B = R.add(R.mul(x.a, y.b), R.mul(x.b, C.bar(y.a)));
    return QuatElem::division(A, B);
}

QuatElem quat_conj(const QuatContext& C, const QuatElem& x) {
    if (C.kind == AlgKind::Division) return QuatElem::division(C.bar(x.a), C.RL->neg(x.b));
    // adjugate = C^{-1} x^t C for 2x2
    const auto& R = *C.RF;
    EMat m(2, 2, R);
    m.at(0, 0) = x.mat.at(1, 1);
    m.at(1, 1) = x.mat.at(0, 0);
    m.at(0, 1) = R.neg(x.mat.at(0, 1));
    m.at(1, 0) = R.neg(x.mat.at(1, 0));
    return QuatElem::matrix(m);
}

bool quat_equal(const QuatContext& C, const QuatElem& x, const QuatElem& y) {
    if (x.kind != y.kind) return false;
    if (C.kind == AlgKind::Division)
        return C.RL->equal(x.a, y.a) && C.RL->equal(x.b, y.b);
    return mat_equal(*C.RF, x.mat, y.mat);
}

EisensteinRing::Elem reduced_norm(const QuatContext& C, const QuatElem& x) {
    if (C.kind == AlgKind::Matrix) return mat_det(*C.RF, x.mat);
    const auto& R = *C.RL;
    // Nrd(a + b Pi) = a bar(a) + pi b bar(b)
    return R.add(R.mul(x.a, C.bar(x.a)), R.mul(C.pi_elem(), R.mul(x.b, C.bar(x.b))));
}

EisensteinRing::Elem reduced_trace(const QuatContext& C, const QuatElem& x) {
    if (C.kind == AlgKind::Matrix) return C.RF->add(x.mat.at(0, 0), x.mat.at(1, 1));
    return C.RL->add(x.a, C.bar(x.a));
}

SquareClass square_class_over_F(const QuatContext& C, const EisensteinRing::Elem& x) {
    const auto& R = *C.RL;
    if (!R.equal(x, C.bar(x)))
        throw Error(Err::AlgebraMismatch, "element is not Gal(L/F)-invariant");
    int v = R.ord(x);
    if (v >= R.ord_cap()) throw Error(Err::ZeroArgument, "square class of zero");
    EisensteinRing::Elem u = R.div_pi_pow(x, v);
    ResidueField::Elem ubar = R.residue(u);
    const ResidueField& kL = R.base->kbar;
    // Legendre in F_q inside F_{q^2}: ubar^{(q-1)/2}
    std::uint64_t q = 1;
    for (int i = 0; i < C.params.f; ++i) q *= C.params.p;
    ResidueField::Elem s = kL.pow(ubar, (q - 1) / 2);
    if (s == kL.one()) return SquareClass{v & 1, 0};
    ResidueField::Elem m1 = kL.sub(kL.zero(), kL.one());
    if (s == m1) return SquareClass{v & 1, 1};
    throw Error(Err::AlgebraMismatch, "unit part does not lie in the residue field of F");
}

} // namespace isocryst

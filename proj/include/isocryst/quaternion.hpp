#pragma once

#include "isocryst/linalg.hpp"

namespace isocryst {

enum class AlgKind { Matrix, Division };

inline const char* kind_name(AlgKind k) { return k == AlgKind::Matrix ? "matrix" : "division"; }

struct QuaternionAlgebra {
    FieldParams params;
    AlgKind kind = AlgKind::Division;
    // Brauer invariant: 0 for matrix, 1/2 for division
    Frac inv() const { return kind == AlgKind::Matrix ? Frac(0, 1) : Frac(1, 2); }
};

// inv(B') = d/2 - inv(B) mod 1
QuaternionAlgebra twist_invariant(const QuaternionAlgebra& B);

// Working context for quaternion arithmetic over F: the field ring RF
// (base degree f) and, for the division presentation O_B = O_L[Pi], the ring
// RL over the quadratic unramified extension L (base degree 2f, same P).
struct QuatContext {
    FieldParams params;
    AlgKind kind;
    std::shared_ptr<const EisensteinRing> RF; // base degree f
    std::shared_ptr<const EisensteinRing> RL; // base degree 2f (division kind)

    static QuatContext make(const FieldParams& pr, AlgKind kind, int N);

    EisensteinRing::Elem bar(const EisensteinRing::Elem& a) const; // Gal(L/F): sigma^f
    EisensteinRing::Elem pi_elem() const;                          // uniformizer in RL (or RF)
};

// Element: division kind stores (a, b) over L with x = a + b*Pi, Pi^2 = -pi,
// Pi a = bar(a) Pi; matrix kind stores a 2x2 matrix over F.
struct QuatElem {
    AlgKind kind;
    EisensteinRing::Elem a, b; // division
    EMat mat;                  // matrix

    static QuatElem division(const EisensteinRing::Elem& a, const EisensteinRing::Elem& b);
    static QuatElem matrix(const EMat& m);
};

QuatElem quat_one(const QuatContext& C);
QuatElem quat_pi_gen(const QuatContext& C); // the element Pi (division kind)
QuatElem quat_from_L(const QuatContext& C, const EisensteinRing::Elem& a);
QuatElem quat_add(const QuatContext& C, const QuatElem& x, const QuatElem& y);
QuatElem quat_mul(const QuatContext& C, const QuatElem& x, const QuatElem& y);
QuatElem quat_conj(const QuatContext& C, const QuatElem& x); // canonical involution
bool quat_equal(const QuatContext& C, const QuatElem& x, const QuatElem& y);

// reduced norm and trace; for the division kind the values live in RL and are
// Gal(L/F)-invariant
EisensteinRing::Elem reduced_norm(const QuatContext& C, const QuatElem& x);
EisensteinRing::Elem reduced_trace(const QuatContext& C, const QuatElem& x);

// square class over F of a Gal(L/F)-invariant element of RL (Legendre taken in
// the residue field of F sitting inside that of L)
SquareClass square_class_over_F(const QuatContext& C, const EisensteinRing::Elem& x);

} // namespace isocryst

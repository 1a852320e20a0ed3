#pragma once

#include "isocryst/quaternion.hpp"

namespace isocryst {

struct QuadClass {
    int n = 0;
    SquareClass disc;
    int hasse = 1;
    bool operator==(const QuadClass& o) const {
        return n == o.n && disc == o.disc && hasse == o.hasse;
    }
    bool operator<(const QuadClass& o) const {
        return std::tuple(n, disc, hasse) < std::tuple(o.n, o.disc, o.hasse);
    }
};

struct SkewHermClass {
    int n = 0;
    SquareClass disc;
    bool operator==(const SkewHermClass& o) const { return n == o.n && disc == o.disc; }
    bool operator<(const SkewHermClass& o) const {
        return std::tuple(n, disc) < std::tuple(o.n, o.disc);
    }
};

// disc = class((-1)^{floor(n/2)} prod a_i), hasse = prod_{i<=j} (a_i, a_j)
QuadClass classify_quadratic(const EisensteinRing& R,
                             const std::vector<EisensteinRing::Elem>& diag);

struct QuadRep {
    QuadClass cls;
    std::vector<EisensteinRing::Elem> diag;
};
std::vector<QuadRep> enumerate_quad_classes(const EisensteinRing& R, int n);

struct SkewHermRep {
    SkewHermClass cls;
    std::vector<QuatElem> diag; // pure quaternions, Gram = diag(...)
};
// delta of a diagonal skew-Hermitian Gram: class((-1)^{ceil(n/2)} prod Nrd(g_i))
SkewHermClass classify_skewherm_diag(const QuatContext& C, const std::vector<QuatElem>& diag);
std::vector<SkewHermRep> enumerate_skewherm_classes(const QuatContext& C, int n);

// standard self-dual skew-Hermitian O_B (x) W lattices (unique by shape)
struct SelfDualLattice {
    AlgKind kind;
    FieldParams params;
    std::shared_ptr<const EisensteinRing> R; // base degree f (matrix) or 2f (division)
    std::vector<int> shape;  // division: a_j, j in Z/2f; matrix: n_i (even), i in Z/f
    std::vector<int> ranks;  // graded ranks (division: a_j + a_{j+f}; matrix: n_i/2 post-Morita)
    std::vector<EMat> Pi;    // division only: Pi_j: M^j -> M^{j+f}
    std::vector<EMat> Gram;  // division: M^j x M^{j+f}; matrix: symmetric on M_1^i
};

SelfDualLattice standard_selfdual_lattice(const FieldParams& params, AlgKind kind,
                                          const std::vector<int>& shape, int N = 0);

} // namespace isocryst

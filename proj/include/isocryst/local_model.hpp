#pragma once

#include "isocryst/quaternion.hpp"

namespace isocryst {

// k[pi]/(pi^e) over k = F_q, elements as pi-polynomials with F_q coefficients
class ChainRing {
public:
    ResidueField k;
    int e;

    using Elem = std::vector<ResidueField::Elem>; // size e

    static ChainRing make(std::uint64_t p, int fdeg, int e);

    Elem zero() const;
    Elem one() const;
    bool is_zero(const Elem& a) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pi_pow(int t) const; // pi^t (zero if t >= e)
    int val(const Elem& a) const; // e if zero
    Elem inv(const Elem& a) const; // unit required
    bool divides(const Elem& a, const Elem& b) const; // a | b
    Elem div_exact(const Elem& a, const Elem& b) const; // b / a
    std::string str(const Elem& a) const;
};

struct CVec2 {
    ChainRing::Elem x, y;
};

struct LocalModelPoint {
    // unramified: two generators of the subspace of Lambda-bar;
    // ramified: generators of F_tau then of F_tau'
    std::vector<CVec2> basis;
    std::pair<int, int> lie_type;
    std::string key; // canonical serialization, used for deterministic order
};

struct ReducedLattice {
    FieldParams params;
    bool ramified = false;
    std::uint64_t q = 3; // residue field size for the enumeration
};

std::vector<LocalModelPoint> enumerate_points(const ReducedLattice& lat);

struct OrbitDescriptor {
    std::pair<int, int> lie_type; // unordered, e1 <= e2
    std::vector<int> members;     // indices into the point list
};

std::vector<OrbitDescriptor> classify_orbits(const std::vector<LocalModelPoint>& pts,
                                             bool ramified, int e);

} // namespace isocryst

#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace isocryst {

enum class Err {
    NonUnit,
    PrecisionExhausted,
    ZeroArgument,
    AlgebraMismatch,
    ShapeInfeasible,
    UnsupportedRank,
    InadmissibleSequence,
    ParameterOutOfRange,
    BadLieType,
    NotIsoclinic,
    UnitSystemUnsolvable,
    NonInvariantEntries,
    SearchSpaceTooLarge,
    Usage,
    Internal,
};

class Error : public std::runtime_error {
public:
    Err code;
    Error(Err c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

const char* err_name(Err c);

struct FieldParams {
    std::uint64_t p = 3;
    int e = 1;
    int f = 1;
    int d() const { return e * f; }
    void validate() const;
};

// Arithmetic in F_q, q = p^deg, as polynomials over F_p modulo an irreducible.
class ResidueField {
public:
    std::uint64_t p;
    int deg;
    std::vector<std::uint64_t> modulus; // monic, size deg+1, coeffs in [0,p)

    using Elem = std::vector<std::uint64_t>; // size deg

    static ResidueField make(std::uint64_t p, int deg);

    std::uint64_t q() const;
    Elem zero() const { return Elem(deg, 0); }
    Elem one() const;
    Elem from_int(std::uint64_t v) const;
    bool is_zero(const Elem& a) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(Elem a, std::uint64_t n) const;
    Elem inv(const Elem& a) const;
    // +1 if a is a nonzero square, -1 if a nonsquare, 0 if a = 0.
    int legendre(const Elem& a) const;
};

// W(F_{p^f}) truncated mod p^N: Z/p^N[x] modulo a lifted irreducible of degree f.
// Frobenius is the unique automorphism reducing to x -> x^p; it is Z/p^N-linear
// and stored as a matrix on the power basis.
class UnramifiedRing {
public:
    std::uint64_t p;
    int f;
    int N;
    std::uint64_t pN;
    std::vector<std::uint64_t> modulus; // monic, size f+1, coeffs mod pN
    ResidueField kbar;                  // residue field F_{p^f}

    using Elem = std::vector<std::uint64_t>; // size f, coeffs mod pN

    static std::shared_ptr<const UnramifiedRing> make(std::uint64_t p, int f, int N);

    std::uint64_t mod_add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t mod_inv(std::uint64_t a) const; // a unit mod p

    Elem zero() const { return Elem(f, 0); }
    Elem one() const;
    Elem from_int(std::int64_t v) const;
    bool is_zero(const Elem& a) const;
    bool equal(const Elem& a, const Elem& b) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem scalar_mul(std::uint64_t c, const Elem& a) const;
    int val_p(const Elem& a) const; // min valuation of coords; N if zero
    Elem inv(const Elem& a) const;  // requires val_p == 0
    Elem div_exact_p(const Elem& a, int k) const; // divide by p^k, all coords divisible
    Elem frob(const Elem& a, int k = 1) const;    // sigma^k (k may be negative)
    ResidueField::Elem residue(const Elem& a) const;
    Elem teichmueller_digit(const ResidueField::Elem& r) const; // plain lift
    // all q^f... enumeration helpers are left to callers

private:
    std::vector<std::vector<Elem>> frob_pows; // frob_pows[k][i] = sigma^k(x^i), k in [0,f)
    Elem mul_reduce(const std::vector<std::uint64_t>& prod) const;
    friend std::shared_ptr<const UnramifiedRing> make_unramified(std::uint64_t, int, int);
};

struct SquareClass {
    int val_parity = 0;   // ord mod 2
    int unit_nonres = 0;  // 0 residue class, 1 non-residue class
    bool operator==(const SquareClass& o) const {
        return val_parity == o.val_parity && unit_nonres == o.unit_nonres;
    }
    bool operator<(const SquareClass& o) const {
        return std::pair(val_parity, unit_nonres) < std::pair(o.val_parity, o.unit_nonres);
    }
    bool is_identity() const { return val_parity == 0 && unit_nonres == 0; }
    SquareClass operator*(const SquareClass& o) const {
        return SquareClass{(val_parity + o.val_parity) & 1, (unit_nonres + o.unit_nonres) & 1};
    }
    std::string str() const; // "[1]", "[u]", "[pi]", "[u*pi]"
};

// O_F/p^N-ish: W[pi]/(P(pi), p^N) for an integer Eisenstein polynomial P of
// degree e. ord is normalized with ord(pi) = 1, ord(p) = e. Elements are
// pi-polynomials of degree < e with coefficients in the unramified base.
class EisensteinRing : public std::enable_shared_from_this<EisensteinRing> {
public:
    std::shared_ptr<const UnramifiedRing> base;
    int e;
    std::vector<std::int64_t> P; // size e+1, monic, p | P[i] for i<e, p || P[0]
    std::uint64_t p, pN;
    int N;
    int fb; // base degree

    using Elem = std::vector<std::uint64_t>; // size e*fb; coeff of pi^i at [i*fb, (i+1)*fb)

    static std::shared_ptr<const EisensteinRing> make(std::shared_ptr<const UnramifiedRing> base,
                                                      int e, std::vector<std::int64_t> P);
    // default P = T^e + p, base W(F_{p^f}) at precision N
    static std::shared_ptr<const EisensteinRing> make_default(std::uint64_t p, int e, int f, int N);

    int ord_inf() const { return e * N; }       // sentinel for 0
    int ord_cap() const { return e * (N - 2); } // valuations at/above this are unresolved

    Elem zero() const { return Elem(std::size_t(e) * fb, 0); }
    Elem one() const;
    Elem from_int(std::int64_t v) const;
    Elem from_base(const UnramifiedRing::Elem& w) const; // degree-0 coefficient
    Elem pi_pow(int k) const;                            // pi^k, 0 <= k < e
    const Elem& h() const { return h_; }                 // pi^e = p*h, h a unit
    const Elem& h_inv() const { return h_inv_; }

    bool is_zero(const Elem& a) const;
    bool equal(const Elem& a, const Elem& b) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem mul_int(std::int64_t c, const Elem& a) const;
    Elem pow(Elem a, std::uint64_t n) const;

    int ord(const Elem& a) const; // ord_inf() if zero mod p^N
    Elem inv(const Elem& a) const;
    Elem div_pi(const Elem& a) const;        // exact division by pi
    Elem div_p(const Elem& a) const;         // exact division by p
    Elem div_pi_pow(Elem a, int k) const;    // exact division by pi^k (k >= 0)
    Elem div_exact(const Elem& a, const Elem& b) const; // b != 0, ord(a) >= ord(b), exact
    Elem frob(const Elem& a, int k = 1) const;          // coefficientwise sigma^k, fixes pi
    bool frob_invariant(const Elem& a) const;

    // unit-part decomposition: a = pi^ord * unit
    Elem unit_part(const Elem& a) const;
    ResidueField::Elem residue(const Elem& a) const; // image in F_{p^fb} (a mod pi)

    // Z/pN-coordinate linearization (used by the exact linear solver)
    int dim() const { return e * fb; }

private:
    std::vector<Elem> pi_red_; // reductions of pi^k for k in [e, 2e-2]
    Elem h_, h_inv_;
};

int legendre_symbol_int(std::uint64_t a, std::uint64_t p);

// quadratic-class machinery over F with residue field of odd size q = p^f
SquareClass square_class(const EisensteinRing& R, const EisensteinRing::Elem& a);
// tame Hilbert symbol (p odd): +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution
int hilbert_symbol(const EisensteinRing& R, const EisensteinRing::Elem& a,
                   const EisensteinRing::Elem& b);

// canonical square-class representatives {1, u, pi, u*pi} (u a lifted non-residue)
std::vector<EisensteinRing::Elem> square_class_reps(const EisensteinRing& R);
EisensteinRing::Elem nonresidue_unit(const EisensteinRing& R);

} // namespace isocryst

#pragma once

#include "isocryst/padic.hpp"

#include <optional>

namespace isocryst {

// dense matrix over an EisensteinRing, row-major
struct EMat {
    int rows = 0, cols = 0;
    std::vector<EisensteinRing::Elem> a;

    EMat() = default;
    EMat(int r, int c, const EisensteinRing& R) : rows(r), cols(c), a((std::size_t)r * c, R.zero()) {}
    EisensteinRing::Elem& at(int i, int j) { return a[(std::size_t)i * cols + j]; }
    const EisensteinRing::Elem& at(int i, int j) const { return a[(std::size_t)i * cols + j]; }
};

EMat mat_identity(const EisensteinRing& R, int n);
EMat mat_scalar(const EisensteinRing& R, int n, const EisensteinRing::Elem& c);
EMat mat_add(const EisensteinRing& R, const EMat& A, const EMat& B);
EMat mat_sub(const EisensteinRing& R, const EMat& A, const EMat& B);
EMat mat_neg(const EisensteinRing& R, const EMat& A);
EMat mat_mul(const EisensteinRing& R, const EMat& A, const EMat& B);
EMat mat_scalar_mul(const EisensteinRing& R, const EisensteinRing::Elem& c, const EMat& A);
EMat mat_transpose(const EMat& A);
EMat mat_frob(const EisensteinRing& R, const EMat& A, int k);
bool mat_equal(const EisensteinRing& R, const EMat& A, const EMat& B);
bool mat_is_zero_at_cap(const EisensteinRing& R, const EMat& A);
bool mat_frob_invariant(const EisensteinRing& R, const EMat& A);
EisensteinRing::Elem mat_det(const EisensteinRing& R, const EMat& A);
EMat mat_direct_sum(const EisensteinRing& R, const EMat& A, const EMat& B);

// elementary divisor valuations (Smith form over the local ring), ascending;
// entries with ord >= cap are treated as zero and reported as ord_inf
std::vector<int> elementary_divisor_vals(const EisensteinRing& R, EMat A);

// det-val via elementary divisors (ord_inf if singular at precision)
int ord_det(const EisensteinRing& R, const EMat& A);

// X with A X = B, entries exact at precision, if it exists
std::optional<EMat> solve_in_span(const EisensteinRing& R, const EMat& A, const EMat& B);

// column spans agree as lattices
bool same_column_span(const EisensteinRing& R, const EMat& A, const EMat& B);

// X = p * A^{-1} computed exactly (requires A invertible over the field and
// p A^{-1} integral)
EMat inv_times_p(const EisensteinRing& R, const EMat& A);

// characteristic polynomial coefficients c_0..c_n of A (monic, c_n = 1)
std::vector<EisensteinRing::Elem> char_poly(const EisensteinRing& R, const EMat& A);

struct Frac {
    long long num = 0, den = 1;
    Frac() = default;
    Frac(long long n, long long d);
    bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
    bool operator<(const Frac& o) const { return (__int128)num * o.den < (__int128)o.num * den; }
    std::string str() const;
};

// Newton polygon of a monic polynomial from coefficient valuations:
// returns (eigenvalue valuation, count) ascending. vals[i] = ord(c_i),
// ord_inf for zero coefficients.
std::vector<std::pair<Frac, int>> newton_polygon(const std::vector<int>& vals, int ord_inf);

// --- exact linear solver over Z/p^N -----------------------------------------
// Solves M x = 0 for x over Z/p^N, returning a spanning set for the kernel
// (Howell-style: may include p^k-scaled generators). Columns are unknowns.
struct ZModMatrix {
    std::uint64_t p, pN;
    int N;
    int rows = 0, cols = 0;
    std::vector<std::uint64_t> a; // row-major
    std::uint64_t& at(int i, int j) { return a[(std::size_t)i * cols + j]; }
    std::uint64_t at(int i, int j) const { return a[(std::size_t)i * cols + j]; }
};

std::vector<std::vector<std::uint64_t>> kernel_mod_pn(ZModMatrix M);

} // namespace isocryst

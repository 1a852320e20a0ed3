#include "isocryst/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace isocryst {

EMat mat_identity(const EisensteinRing& R, int n) {
    EMat I(n, n, R);
    for (int i = 0; i < n; ++i) I.at(i, i) = R.one();
    return I;
}

EMat mat_scalar(const EisensteinRing& R, int n, const EisensteinRing::Elem& c) {
    EMat I(n, n, R);
    for (int i = 0; i < n; ++i) I.at(i, i) = c;
    return I;
}

EMat mat_add(const EisensteinRing& R, const EMat& A, const EMat& B) {
    EMat C(A.rows, A.cols, R);
    for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = R.add(A.a[i], B.a[i]);
    return C;
}

EMat mat_sub(const EisensteinRing& R, const EMat& A, const EMat& B) {
    EMat C(A.rows, A.cols, R);
    for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = R.sub(A.a[i], B.a[i]);
    return C;
}

EMat mat_neg(const EisensteinRing& R, const EMat& A) {
    EMat C(A.rows, A.cols, R);
    for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = R.neg(A.a[i]);
    return C;
}

EMat mat_mul(const EisensteinRing& R, const EMat& A, const EMat& B) {
    if (A.cols != B.rows) throw Error(Err::Internal, "matrix shape mismatch");
    EMat C(A.rows, B.cols, R);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            if (R.is_zero(A.at(i, k))) continue;
            for (int j = 0; j < B.cols; ++j)
                C.at(i, j) = R.add(C.at(i, j), R.mul(A.at(i, k), B.at(k, j)));
        }
    return C;
}

EMat mat_scalar_mul(const EisensteinRing& R, const EisensteinRing::Elem& c, const EMat& A) {
    EMat C(A.rows, A.cols, R);
    for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = R.mul(c, A.a[i]);
    return C;
}

EMat mat_transpose(const EMat& A) {
    EMat C;
    C.rows = A.cols;
    C.cols = A.rows;
    C.a.resize(A.a.size());
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C.a[(std::size_t)j * C.cols + i] = A.at(i, j);
    return C;
}

EMat mat_frob(const EisensteinRing& R, const EMat& A, int k) {
    EMat C(A.rows, A.cols, R);
    for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = R.frob(A.a[i], k);
    return C;
}

bool mat_equal(const EisensteinRing& R, const EMat& A, const EMat& B) {
    if (A.rows != B.rows || A.cols != B.cols) return false;
    for (std::size_t i = 0; i < A.a.size(); ++i)
        if (!R.equal(A.a[i], B.a[i])) return false;
    return true;
}

bool mat_is_zero_at_cap(const EisensteinRing& R, const EMat& A) {
    for (const auto& x : A.a)
        if (R.ord(x) < R.ord_cap()) return false;
    return true;
}

bool mat_frob_invariant(const EisensteinRing& R, const EMat& A) {
    for (const auto& x : A.a)
        if (!R.frob_invariant(x)) return false;
    return true;
}

EisensteinRing::Elem mat_det(const EisensteinRing& R, const EMat& A) {
    int n = A.rows;
    if (n == 0) return R.one();
    if (n == 1) return A.at(0, 0);
    if (n == 2)
        return R.sub(R.mul(A.at(0, 0), A.at(1, 1)), R.mul(A.at(0, 1), A.at(1, 0)));
    // cofactor expansion along the first row (n is small here)
    EisensteinRing::Elem det = R.zero();
    for (int j = 0; j < n; ++j) {
        if (R.is_zero(A.at(0, j))) continue;
        EMat M(n - 1, n - 1, R);
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                M.at(i - 1, cc++) = A.at(i, c);
            }
        }
        EisensteinRing::Elem term = R.mul(A.at(0, j), mat_det(R, M));
        det = (j % 2 == 0) ? R.add(det, term) : R.sub(det, term);
    }
    return det;
}

EMat mat_direct_sum(const EisensteinRing& R, const EMat& A, const EMat& B) {
    EMat C(A.rows + B.rows, A.cols + B.cols, R);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j) C.at(A.rows + i, A.cols + j) = B.at(i, j);
    return C;
}

std::vector<int> elementary_divisor_vals(const EisensteinRing& R, EMat A) {
    std::vector<int> vals;
    int top = 0;
    int n = std::min(A.rows, A.cols);
    while (top < n) {
        // pivot: minimal ord among the trailing block
        int pi = -1, pj = -1, pv = R.ord_cap();
        for (int i = top; i < A.rows; ++i)
            for (int j = top; j < A.cols; ++j) {
                int v = R.ord(A.at(i, j));
                if (v < pv) { pv = v; pi = i; pj = j; }
            }
        if (pi < 0) break; // rest is zero at precision
        // swap to (top, top)
        for (int j = 0; j < A.cols; ++j) std::swap(A.at(top, j), A.at(pi, j));
        for (int i = 0; i < A.rows; ++i) std::swap(A.at(i, top), A.at(i, pj));
        EisensteinRing::Elem pivot = A.at(top, top);
        // clear the column and row by exact division
        for (int i = top + 1; i < A.rows; ++i) {
            if (R.ord(A.at(i, top)) >= R.ord_cap()) continue;
            EisensteinRing::Elem q = R.div_exact(A.at(i, top), pivot);
            for (int j = top; j < A.cols; ++j)
                A.at(i, j) = R.sub(A.at(i, j), R.mul(q, A.at(top, j)));
        }
        for (int j = top + 1; j < A.cols; ++j) {
            if (R.ord(A.at(top, j)) >= R.ord_cap()) continue;
            EisensteinRing::Elem q = R.div_exact(A.at(top, j), pivot);
            for (int i = top; i < A.rows; ++i)
                A.at(i, j) = R.sub(A.at(i, j), R.mul(q, A.at(i, top)));
        }
        vals.push_back(pv);
        ++top;
    }
    while ((int)vals.size() < n) vals.push_back(R.ord_inf());
    std::sort(vals.begin(), vals.end());
    return vals;
}

int ord_det(const EisensteinRing& R, const EMat& A) {
    EisensteinRing::Elem d = mat_det(R, A);
    int v = R.ord(d);
    return v >= R.ord_cap() ? R.ord_inf() : v;
}

namespace {

// Gaussian elimination with valuation pivoting; returns (U, rowperm-applied A)
// transformed to echelon-ish shape for solving. We implement solve directly.
struct EchState {
    EMat A;              // reduced matrix
    EMat U;              // row transform: U * A_orig = A
    std::vector<int> pivot_col;
};

EchState echelonize(const EisensteinRing& R, EMat A) {
    EchState st;
    st.U = mat_identity(R, A.rows);
    int r = 0;
    for (int c = 0; c < A.cols && r < A.rows; ++c) {
        int pi = -1, pv = R.ord_cap();
        for (int i = r; i < A.rows; ++i) {
            int v = R.ord(A.at(i, c));
            if (v < pv) { pv = v; pi = i; }
        }
        if (pi < 0) continue;
        for (int j = 0; j < A.cols; ++j) std::swap(A.at(r, j), A.at(pi, j));
        for (int j = 0; j < st.U.cols; ++j) std::swap(st.U.at(r, j), st.U.at(pi, j));
        EisensteinRing::Elem pivot = A.at(r, c);
        for (int i = r + 1; i < A.rows; ++i) {
            if (R.ord(A.at(i, c)) >= R.ord_cap()) continue;
            EisensteinRing::Elem q = R.div_exact(A.at(i, c), pivot);
            for (int j = 0; j < A.cols; ++j)
                A.at(i, j) = R.sub(A.at(i, j), R.mul(q, A.at(r, j)));
            for (int j = 0; j < st.U.cols; ++j)
                st.U.at(i, j) = R.sub(st.U.at(i, j), R.mul(q, st.U.at(r, j)));
        }
        st.pivot_col.push_back(c);
        ++r;
    }
    st.A = std::move(A);
    return st;
}

} // namespace

std::optional<EMat> solve_in_span(const EisensteinRing& R, const EMat& A, const EMat& B) {
    // solve A X = B column by column via the echelon form
    EchState st = echelonize(R, A);
    EMat UB = mat_mul(R, st.U, B);
    int rk = (int)st.pivot_col.size();
    EMat X(A.cols, B.cols, R);
    for (int b = 0; b < B.cols; ++b) {
        // rows below rank must be ~0
        for (int i = rk; i < A.rows; ++i)
            if (R.ord(UB.at(i, b)) < R.ord_cap()) return std::nullopt;
        // back substitution
        std::vector<EisensteinRing::Elem> x((std::size_t)A.cols, R.zero());
        for (int i = rk - 1; i >= 0; --i) {
            int c = st.pivot_col[i];
            EisensteinRing::Elem rhs = UB.at(i, b);
            for (int j = c + 1; j < A.cols; ++j)
                rhs = R.sub(rhs, R.mul(st.A.at(i, j), x[j]));
            if (R.ord(rhs) >= R.ord_cap()) { x[c] = R.zero(); continue; }
            if (R.ord(rhs) < R.ord(st.A.at(i, c))) return std::nullopt; // not divisible
            x[c] = R.div_exact(rhs, st.A.at(i, c));
        }
        // verify (guards inexactness at the cap)
        for (int i = 0; i < A.rows; ++i) {
            EisensteinRing::Elem acc = R.zero();
            for (int j = 0; j < A.cols; ++j) acc = R.add(acc, R.mul(A.at(i, j), x[j]));
            acc = R.sub(acc, B.at(i, b));
            if (R.ord(acc) < R.ord_cap()) return std::nullopt;
        }
        for (int j = 0; j < A.cols; ++j) X.at(j, b) = x[j];
    }
    return X;
}

bool same_column_span(const EisensteinRing& R, const EMat& A, const EMat& B) {
    return solve_in_span(R, A, B).has_value() && solve_in_span(R, B, A).has_value();
}

EMat inv_times_p(const EisensteinRing& R, const EMat& A) {
    EMat P = mat_scalar(R, A.rows, R.from_int((std::int64_t)R.p));
    auto X = solve_in_span(R, A, P);
    if (!X) throw Error(Err::PrecisionExhausted, "p*A^{-1} is not integral at precision");
    return *X;
}

std::vector<EisensteinRing::Elem> char_poly(const EisensteinRing& R, const EMat& A) {
    int n = A.rows;
    // polynomials over R, ascending degree
    using RPoly = std::vector<EisensteinRing::Elem>;
    auto pmul = [&](const RPoly& f, const RPoly& g) {
        RPoly h(f.size() + g.size() - 1, R.zero());
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j)
                h[i + j] = R.add(h[i + j], R.mul(f[i], g[j]));
        return h;
    };
    // expansion by permutations (n <= 8 in practice)
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    RPoly acc(n + 1, R.zero());
    // iterate permutations with sign
    std::vector<int> c(n, 0);
    int sign = 1;
    auto add_term = [&](int sgn) {
        RPoly term{R.from_int(sgn)};
        for (int i = 0; i < n; ++i) {
            RPoly entry;
            if (perm[i] == i) {
                // T - a_ii
                entry = {R.neg(A.at(i, i)), R.one()};
            } else {
                entry = {R.neg(A.at(i, perm[i]))};
            }
            term = pmul(term, entry);
        }
        for (std::size_t i = 0; i < term.size(); ++i) acc[i] = R.add(acc[i], term[i]);
    };
    add_term(sign);
    // Heap's algorithm
    int i = 0;
    while (i < n) {
        if (c[i] < i) {
            if (i % 2 == 0) std::swap(perm[0], perm[i]);
            else std::swap(perm[c[i]], perm[i]);
            sign = -sign;
            add_term(sign);
            ++c[i];
            i = 0;
        } else {
            c[i++] = 0;
        }
    }
    return acc;
}

Frac::Frac(long long n, long long d) {
    if (d == 0) throw Error(Err::Internal, "zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

std::string Frac::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::vector<std::pair<Frac, int>> newton_polygon(const std::vector<int>& vals, int ord_inf) {
    int n = (int)vals.size() - 1; // degree
    // lower convex hull of points (i, vals[i]) from i = 0 to n
    std::vector<std::pair<long long, long long>> hull; // (i, v)
    for (int i = 0; i <= n; ++i) {
        if (vals[i] >= ord_inf && i != n) continue;
        long long x = i, y = vals[i];
        while (hull.size() >= 2) {
            auto [x1, y1] = hull[hull.size() - 2];
            auto [x2, y2] = hull[hull.size() - 1];
            // drop (x2,y2) if it is above segment (x1,y1)-(x,y)
            if ((__int128)(y2 - y1) * (x - x1) >= (__int128)(y - y1) * (x2 - x1)) hull.pop_back();
            else break;
        }
        hull.push_back({x, y});
    }
    if (hull.empty() || hull.front().first != 0)
        throw Error(Err::PrecisionExhausted, "Newton polygon: constant coefficient vanishes at precision");
    std::vector<std::pair<Frac, int>> out;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        auto [x1, y1] = hull[k];
        auto [x2, y2] = hull[k + 1];
        // slope of the char-poly segment is (y2-y1)/(x2-x1); eigenvalue valuation
        // is the negative of it read left-to-right, i.e. (y1-y2)/(x2-x1) >= ... we
        // keep the standard convention: eigenvalues of valuation (y1-y2)/(x2-x1)
        Frac ev((long long)(y1 - y2), (long long)(x2 - x1));
        out.push_back({ev, (int)(x2 - x1)});
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
    // merge equal slopes
    std::vector<std::pair<Frac, int>> merged;
    for (auto& [s, m] : out) {
        if (!merged.empty() && merged.back().first == s) merged.back().second += m;
        else merged.push_back({s, m});
    }
    return merged;
}

// ------------------------------------------------------------- kernel mod p^N

std::vector<std::vector<std::uint64_t>> kernel_mod_pn(ZModMatrix M) {
    // Smith reduction over Z/p^N with tracked column transform V:
    // after U M V = diag(p^{v_1},...,p^{v_r},0,...), the kernel is spanned by
    // V e_i p^{N-v_i} (v_i > 0) and V e_i (i > r).
    const std::uint64_t p = M.p, pN = M.pN;
    const int N = M.N;
    auto valp = [&](std::uint64_t x) {
        if (x == 0) return N;
        int v = 0;
        while (x % p == 0) { x /= p; ++v; }
        return v;
    };
    auto mul = [&](std::uint64_t a, std::uint64_t b) { return (std::uint64_t)((__uint128_t)a * b % pN); };
    auto inv_unit = [&](std::uint64_t a) {
        std::uint64_t b = a % p, r0 = 1, e = p - 2;
        while (e) {
            if (e & 1) r0 = (r0 * b) % p;
            b = (b * b) % p;
            e >>= 1;
        }
        std::uint64_t x = r0;
        for (int i = 0; i < 8; ++i) {
            std::uint64_t t = (2 % pN + pN - mul(a, x)) % pN;
            x = mul(x, t);
        }
        return x;
    };

    const int n = M.cols;
    std::vector<std::vector<std::uint64_t>> V(n, std::vector<std::uint64_t>(n, 0));
    for (int i = 0; i < n; ++i) V[i][i] = 1; // V stored as columns: V[j] = j-th column

    int steps = std::min(M.rows, n);
    std::vector<int> diag_val;
    for (int s = 0; s < steps; ++s) {
        int bi = -1, bj = -1, bv = N;
        for (int i = s; i < M.rows; ++i)
            for (int j = s; j < n; ++j) {
                int v = valp(M.at(i, j));
                if (v < bv) { bv = v; bi = i; bj = j; }
            }
        if (bi < 0) break;
        for (int j = 0; j < n; ++j) std::swap(M.at(s, j), M.at(bi, j));
        if (bj != s) {
            for (int i = 0; i < M.rows; ++i) std::swap(M.at(i, s), M.at(i, bj));
            std::swap(V[s], V[bj]);
        }
        // normalize pivot to p^bv (scale column s by the unit inverse)
        std::uint64_t unit = M.at(s, s);
        for (int t = 0; t < bv; ++t) unit /= p;
        std::uint64_t uinv = inv_unit(unit);
        for (int i = 0; i < M.rows; ++i) M.at(i, s) = mul(M.at(i, s), uinv);
        for (int i = 0; i < n; ++i) V[s][i] = mul(V[s][i], uinv);
        std::uint64_t pv = 1;
        for (int t = 0; t < bv; ++t) pv *= p;
        // clear the column below (row ops, no V change)
        for (int i = s + 1; i < M.rows; ++i) {
            if (M.at(i, s) == 0) continue;
            std::uint64_t q = M.at(i, s) / pv;
            for (int j = 0; j < n; ++j)
                M.at(i, j) = (M.at(i, j) + pN - mul(q, M.at(s, j))) % pN;
        }
        // clear the row to the right (column ops, mirrored in V)
        for (int j = s + 1; j < n; ++j) {
            if (M.at(s, j) == 0) continue;
            std::uint64_t q = M.at(s, j) / pv;
            for (int i = 0; i < M.rows; ++i)
                M.at(i, j) = (M.at(i, j) + pN - mul(q, M.at(i, s))) % pN;
            for (int i = 0; i < n; ++i)
                V[j][i] = (V[j][i] + pN - mul(q, V[s][i])) % pN;
        }
        diag_val.push_back(bv);
    }

    std::vector<std::vector<std::uint64_t>> kernel;
    for (std::size_t s = 0; s < diag_val.size(); ++s) {
        if (diag_val[s] == 0) continue;
        std::uint64_t scale = 1;
        for (int t = 0; t < N - diag_val[s]; ++t) scale *= p;
        std::vector<std::uint64_t> g(n);
        for (int i = 0; i < n; ++i) g[i] = mul(V[s][i], scale);
        kernel.push_back(std::move(g));
    }
    for (int s = (int)diag_val.size(); s < n; ++s) kernel.push_back(V[s]);
    return kernel;
}

} // namespace isocryst

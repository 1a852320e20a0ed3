#include "isocryst/forms.hpp"

#include <algorithm>
#include <set>

namespace isocryst {

QuadClass classify_quadratic(const EisensteinRing& R,
                             const std::vector<EisensteinRing::Elem>& diag) {
    int n = (int)diag.size();
    if (n < 1) throw Error(Err::ParameterOutOfRange, "empty diagonal");
    for (const auto& a : diag)
        if (R.ord(a) >= R.ord_cap()) throw Error(Err::ZeroArgument, "zero diagonal entry");
    EisensteinRing::Elem prod = R.one();
    for (const auto& a : diag) prod = R.mul(prod, a);
    int sgn = (n / 2) % 2 ? -1 : 1;
    if (sgn < 0) prod = R.neg(prod);
    QuadClass q;
    q.n = n;
    q.disc = square_class(R, prod);
    int h = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) h *= hilbert_symbol(R, diag[i], diag[j]);
    q.hasse = h;
    return q;
}

std::vector<QuadRep> enumerate_quad_classes(const EisensteinRing& R, int n) {
    if (n < 1) throw Error(Err::ParameterOutOfRange, "dimension must be >= 1");
    auto reps = square_class_reps(R);
    // search diagonal forms with entries among the class representatives,
    // first over the last <=2 slots, padding with 1's; this reaches every class
    std::vector<QuadRep> out;
    std::set<std::pair<SquareClass, int>> seen;
    auto try_diag = [&](std::vector<EisensteinRing::Elem> d) {
        QuadClass c = classify_quadratic(R, d);
        auto key = std::pair(c.disc, c.hasse);
        if (!seen.count(key)) {
            seen.insert(key);
            out.push_back({c, std::move(d)});
        }
    };
    if (n == 1) {
        for (const auto& a : reps) try_diag({a});
    } else {
        // vary the last two entries over all representative pairs, then the
        // third-to-last if needed
        for (const auto& a : reps)
            for (const auto& b : reps) {
                std::vector<EisensteinRing::Elem> d((std::size_t)n, R.one());
                d[n - 2] = a;
                d[n - 1] = b;
                try_diag(std::move(d));
            }
        if (n >= 3) {
            for (const auto& a : reps)
                for (const auto& b : reps)
                    for (const auto& c : reps) {
                        std::vector<EisensteinRing::Elem> d((std::size_t)n, R.one());
                        d[n - 3] = a;
                        d[n - 2] = b;
                        d[n - 1] = c;
                        try_diag(std::move(d));
                    }
        }
    }
    std::sort(out.begin(), out.end(), [](const QuadRep& x, const QuadRep& y) {
        return x.cls < y.cls;
    });
    return out;
}

SkewHermClass classify_skewherm_diag(const QuatContext& C, const std::vector<QuatElem>& diag) {
    if (C.kind != AlgKind::Division)
        throw Error(Err::AlgebraMismatch, "skew-Hermitian forms live over the division algebra");
    int n = (int)diag.size();
    if (n < 1) throw Error(Err::ParameterOutOfRange, "empty diagonal");
    const auto& R = *C.RL;
    // multiply square classes factorwise; the product of the norms themselves
    // can exhaust the precision for larger ranks
    SquareClass disc{0, 0};
    for (const auto& g : diag) {
        QuatElem gs = quat_conj(C, g);
        if (!R.equal(gs.a, R.neg(g.a)) || !R.equal(gs.b, R.neg(g.b)))
            throw Error(Err::ParameterOutOfRange, "diagonal entries must be pure quaternions");
        disc = disc * square_class_over_F(C, reduced_norm(C, g));
    }
    int sgn = ((n + 1) / 2) % 2 ? -1 : 1;
    if (sgn < 0) disc = disc * square_class_over_F(C, R.neg(R.one()));
    SkewHermClass c;
    c.n = n;
    c.disc = disc;
    return c;
}

std::vector<SkewHermRep> enumerate_skewherm_classes(const QuatContext& C, int n) {
    if (C.kind != AlgKind::Division)
        throw Error(Err::AlgebraMismatch, "skew-Hermitian forms live over the division algebra");
    if (n < 1) throw Error(Err::ParameterOutOfRange, "rank must be >= 1");
    const auto& R = *C.RL;
    // a trace-zero unit s of L: s = z - bar(z) for a generator z of the residue field
    EisensteinRing::Elem s;
    {
        const ResidueField& kL = R.base->kbar;
        std::vector<std::uint64_t> digits(kL.deg, 0);
        while (true) {
            ResidueField::Elem cand(digits.begin(), digits.end());
            EisensteinRing::Elem z = R.from_base(R.base->teichmueller_digit(cand));
            EisensteinRing::Elem t = R.sub(z, C.bar(z));
            if (R.ord(t) == 0) { s = t; break; }
            int i = 0;
            while (i < kL.deg && ++digits[i] == kL.p) digits[i++] = 0;
            if (i == kL.deg) throw Error(Err::Internal, "no trace-zero unit found");
        }
    }
    QuatElem Pi = quat_pi_gen(C);
    QuatElem S = quat_from_L(C, s);
    QuatElem SPi = quat_mul(C, S, Pi);
    // g*Pi for a unit g of L with non-residue norm (a residue-field generator)
    QuatElem GPi = Pi;
    {
        const ResidueField& kL = R.base->kbar;
        std::vector<std::uint64_t> digits(kL.deg, 0);
        while (true) {
            ResidueField::Elem cand(digits.begin(), digits.end());
            EisensteinRing::Elem gz = R.from_base(R.base->teichmueller_digit(cand));
            if (R.ord(gz) == 0) {
                EisensteinRing::Elem nrm = R.mul(gz, C.bar(gz));
                if (square_class_over_F(C, nrm).unit_nonres == 1) {
                    GPi = quat_mul(C, quat_from_L(C, gz), Pi);
                    break;
                }
            }
            int i = 0;
            while (i < kL.deg && ++digits[i] == kL.p) digits[i++] = 0;
            if (i == kL.deg) throw Error(Err::Internal, "no norm-nonresidue unit found");
        }
    }
    std::vector<QuatElem> pool = {S, Pi, SPi, GPi};

    std::vector<SkewHermRep> out;
    std::set<SquareClass> seen;
    // search tuples from the pool (pool^min(n,3) with padding by S)
    int depth = std::min(n, 3);
    std::vector<int> idx(depth, 0);
    while (true) {
        std::vector<QuatElem> d;
        for (int i = 0; i < n - depth; ++i) d.push_back(S);
        for (int i = 0; i < depth; ++i) d.push_back(pool[idx[i]]);
        SkewHermClass c = classify_skewherm_diag(C, d);
        if (!seen.count(c.disc)) {
            seen.insert(c.disc);
            out.push_back({c, d});
        }
        int i = 0;
        while (i < depth && ++idx[i] == (int)pool.size()) idx[i++] = 0;
        if (i == depth) break;
    }
    std::sort(out.begin(), out.end(), [](const SkewHermRep& x, const SkewHermRep& y) {
        return x.cls < y.cls;
    });
    return out;
}

SelfDualLattice standard_selfdual_lattice(const FieldParams& params, AlgKind kind,
                                          const std::vector<int>& shape, int N) {
    params.validate();
    if (N <= 0) N = 2 * params.e * params.f + 4;
    SelfDualLattice L;
    L.kind = kind;
    L.params = params;
    L.shape = shape;
    if (kind == AlgKind::Matrix) {
        if ((int)shape.size() != params.f)
            throw Error(Err::ShapeInfeasible, "matrix kind needs f graded ranks");
        for (int ni : shape)
            if (ni < 0 || ni % 2 != 0)
                throw Error(Err::ShapeInfeasible, "matrix-kind graded ranks must be even");
        L.R = EisensteinRing::make_default(params.p, params.e, params.f, N);
        for (int i = 0; i < params.f; ++i) {
            int r = shape[i] / 2;
            L.ranks.push_back(r);
            L.Gram.push_back(mat_identity(*L.R, r));
        }
        return L;
    }
    int f = params.f;
    if ((int)shape.size() != 2 * f)
        throw Error(Err::ShapeInfeasible, "division kind needs 2f integers a_j");
    int rank = shape[0] + shape[f];
    for (int j = 0; j < 2 * f; ++j) {
        if (shape[j] < 0) throw Error(Err::ShapeInfeasible, "a_j must be >= 0");
        if (shape[j] + shape[(j + f) % (2 * f)] != rank)
            throw Error(Err::ShapeInfeasible, "a_j + a_{j+f} must be constant");
    }
    if (rank == 0) throw Error(Err::ShapeInfeasible, "zero lattice");
    L.R = EisensteinRing::make_default(params.p, params.e, 2 * f, N);
    const auto& R = *L.R;
    EisensteinRing::Elem pi = R.e > 1 ? R.pi_pow(1) : R.from_int(-R.P[0]);
    L.Pi.assign(2 * f, EMat());
    L.Gram.assign(2 * f, EMat());
    L.ranks.assign(2 * f, rank);
    for (int j = 0; j < f; ++j) {
        int aj = shape[j];
        int ajf = shape[j + f];
        // per the pair basis: Pi x^j_k = x^{j+f}_k (k <= a_j),
        // Pi x^{j+f}_{a_j+k} = x^j_{a_j+k} (k <= a_{j+f}), rest forced by Pi^2 = -pi
        EMat Pj(rank, rank, R), Pjf(rank, rank, R);
        for (int k = 0; k < aj; ++k) {
            Pj.at(k, k) = R.one();
            Pjf.at(k, k) = R.neg(pi);
        }
        for (int k = 0; k < ajf; ++k) {
            Pj.at(aj + k, aj + k) = R.neg(pi);
            Pjf.at(aj + k, aj + k) = R.one();
        }
        L.Pi[j] = Pj;
        L.Pi[j + f] = Pjf;
        // psi_i(x^j_k, x^{j+f}_l) = delta_{kl}; skewness fixes the flip
        L.Gram[j] = mat_identity(R, rank);
        L.Gram[j + f] = mat_neg(R, mat_identity(R, rank));
    }
    return L;
}

} // namespace isocryst

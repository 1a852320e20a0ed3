#include "isocryst/local_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace isocryst {

ChainRing ChainRing::make(std::uint64_t p, int fdeg, int e) {
    ChainRing R;
    R.k = ResidueField::make(p, fdeg);
    R.e = e;
    return R;
}

ChainRing::Elem ChainRing::zero() const { return Elem((std::size_t)e, k.zero()); }

ChainRing::Elem ChainRing::one() const {
    Elem r = zero();
    r[0] = k.one();
    return r;
}

bool ChainRing::is_zero(const Elem& a) const {
    for (const auto& c : a)
        if (!k.is_zero(c)) return false;
    return true;
}

ChainRing::Elem ChainRing::add(const Elem& a, const Elem& b) const {
    Elem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.add(a[i], b[i]);
    return r;
}

ChainRing::Elem ChainRing::sub(const Elem& a, const Elem& b) const {
    Elem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.sub(a[i], b[i]);
    return r;
}

ChainRing::Elem ChainRing::neg(const Elem& a) const {
    Elem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.sub(k.zero(), a[i]);
    return r;
}

ChainRing::Elem ChainRing::mul(const Elem& a, const Elem& b) const {
    Elem r = zero();
    for (int i = 0; i < e; ++i) {
        if (k.is_zero(a[i])) continue;
        for (int j = 0; i + j < e; ++j) {
            if (k.is_zero(b[j])) continue;
            r[i + j] = k.add(r[i + j], k.mul(a[i], b[j]));
        }
    }
    return r;
}

ChainRing::Elem ChainRing::pi_pow(int t) const {
    Elem r = zero();
    if (t < e) r[t] = k.one();
    return r;
}

int ChainRing::val(const Elem& a) const {
    for (int i = 0; i < e; ++i)
        if (!k.is_zero(a[i])) return i;
    return e;
}

ChainRing::Elem ChainRing::inv(const Elem& a) const {
    if (val(a) != 0) throw Error(Err::NonUnit, "chain-ring inverse of a non-unit");
    Elem r = zero();
    r[0] = k.inv(a[0]);
    for (int it = 0; it < e + 1; ++it) {
        Elem t = mul(a, r);
        t = neg(t);
        t[0] = k.add(t[0], k.from_int(2));
        r = mul(r, t);
    }
    return r;
}

bool ChainRing::divides(const Elem& a, const Elem& b) const {
    if (is_zero(b)) return true;
    return val(a) <= val(b);
}

ChainRing::Elem ChainRing::div_exact(const Elem& a, const Elem& b) const {
    int va = val(a);
    if (va > val(b)) throw Error(Err::Internal, "inexact chain-ring division");
    Elem ashift = zero(), bshift = zero();
    for (int i = va; i < e; ++i) ashift[i - va] = a[i];
    for (int i = va; i < e; ++i) bshift[i - va] = b[i];
    return mul(bshift, inv(ashift));
}

std::string ChainRing::str(const Elem& a) const {
    std::string s;
    for (int i = 0; i < e; ++i) {
        for (int j = 0; j < k.deg; ++j) {
            if (!s.empty()) s += ".";
            s += std::to_string(a[i][j]);
        }
    }
    return s;
}

namespace {

using CE = ChainRing::Elem;

// a submodule span{pi^a B e1, pi^b B e2} for a unimodular basis matrix
// B = [y1 y2] (columns)
struct Span2 {
    CVec2 y1, y2; // basis columns
    int a = 0, b = 0;
    CVec2 binv_r1, binv_r2; // rows of B^{-1}
};

Span2 make_span(const ChainRing& R, const CVec2& y1, const CVec2& y2, int a, int b) {
    CE det = R.sub(R.mul(y1.x, y2.y), R.mul(y1.y, y2.x));
    if (R.val(det) != 0) throw Error(Err::Internal, "span basis is not unimodular");
    CE dinv = R.inv(det);
    Span2 s;
    s.y1 = y1;
    s.y2 = y2;
    s.a = a;
    s.b = b;
    // B^{-1} = dinv [[y2y, -y2x],[-y1y, y1x]]
    s.binv_r1 = {R.mul(dinv, y2.y), R.mul(dinv, R.neg(y2.x))};
    s.binv_r2 = {R.mul(dinv, R.neg(y1.y)), R.mul(dinv, y1.x)};
    return s;
}

CVec2 gen1(const ChainRing& R, const Span2& s) {
    return {R.mul(R.pi_pow(s.a), s.y1.x), R.mul(R.pi_pow(s.a), s.y1.y)};
}
CVec2 gen2(const ChainRing& R, const Span2& s) {
    return {R.mul(R.pi_pow(s.b), s.y2.x), R.mul(R.pi_pow(s.b), s.y2.y)};
}

bool in_span(const ChainRing& R, const CVec2& v, const Span2& s) {
    CE w1 = R.add(R.mul(s.binv_r1.x, v.x), R.mul(s.binv_r1.y, v.y));
    CE w2 = R.add(R.mul(s.binv_r2.x, v.x), R.mul(s.binv_r2.y, v.y));
    return R.val(w1) >= s.a && R.val(w2) >= s.b;
}

bool same_span(const ChainRing& R, const Span2& A, const Span2& B) {
    return in_span(R, gen1(R, A), B) && in_span(R, gen2(R, A), B) &&
           in_span(R, gen1(R, B), A) && in_span(R, gen2(R, B), A);
}

std::vector<CE> enumerate_ring(const ChainRing& R, int deg_bound) {
    std::vector<CE> out;
    if (deg_bound <= 0) {
        out.push_back(R.zero());
        return out;
    }
    std::vector<std::uint64_t> digits((std::size_t)deg_bound * R.k.deg, 0);
    while (true) {
        CE el = R.zero();
        for (int i = 0; i < deg_bound; ++i)
            for (int j = 0; j < R.k.deg; ++j) el[i][j] = digits[(std::size_t)i * R.k.deg + j];
        out.push_back(el);
        std::size_t t = 0;
        while (t < digits.size() && ++digits[t] == R.k.p) digits[t++] = 0;
        if (t == digits.size()) break;
    }
    return out;
}

std::string span_gen_key(const ChainRing& R, const Span2& s) {
    CVec2 g1 = gen1(R, s), g2 = gen2(R, s);
    return R.str(g1.x) + "|" + R.str(g1.y) + "||" + R.str(g2.x) + "|" + R.str(g2.y);
}

} // namespace

std::vector<LocalModelPoint> enumerate_points(const ReducedLattice& lat) {
    lat.params.validate();
    int e = lat.params.e;
    std::uint64_t q = lat.q;
    int fdeg = 0;
    {
        std::uint64_t t = q;
        while (t > 1) {
            if (t % lat.params.p != 0)
                throw Error(Err::ParameterOutOfRange, "q must be a power of p");
            t /= lat.params.p;
            ++fdeg;
        }
        if (fdeg == 0) throw Error(Err::ParameterOutOfRange, "q must be > 1");
    }
    {
        long double total = 0;
        for (int e1 = 0; 2 * e1 <= e; ++e1)
            total += 2.0L * std::pow((long double)q, (long double)(e - 2 * e1));
        if (total > 1.0e7L) throw Error(Err::SearchSpaceTooLarge, "echelon search too large");
    }
    ChainRing R = ChainRing::make(lat.params.p, fdeg, e);

    auto phi = [&](const CVec2& u, const CVec2& w) {
        return R.add(R.mul(u.x, w.y), R.mul(u.y, w.x)); // hyperbolic symmetric
    };
    auto psi = [&](const CVec2& u, const CVec2& w) {
        return R.add(R.mul(u.x, w.x), R.mul(u.y, w.y)); // psi(x_i, x'_j) = delta_ij
    };
    auto Pi_fwd = [&](const CVec2& v) { // Lambda_tau -> Lambda_tau'
        return CVec2{v.x, R.neg(R.mul(R.pi_pow(1), v.y))};
    };
    auto Pi_bwd = [&](const CVec2& v) { // Lambda_tau' -> Lambda_tau
        return CVec2{R.neg(R.mul(R.pi_pow(1), v.x)), v.y};
    };

    struct Survivor {
        Span2 tau;
        Span2 taup; // ramified only
        std::pair<int, int> lie;
    };
    std::vector<Survivor> survivors;
    auto add_survivor = [&](Survivor s) {
        for (auto& t : survivors)
            if (t.lie == s.lie && same_span(R, s.tau, t.tau)) return;
        survivors.push_back(std::move(s));
    };

    for (int e1 = 0; 2 * e1 <= e; ++e1) {
        int e2 = e - e1;
        std::vector<CE> tvals = enumerate_ring(R, std::max(0, e - 2 * e1));
        for (const auto& t : tvals) {
            for (int variant = 0; variant < 2; ++variant) {
                CVec2 y1, y2;
                if (variant == 0) {
                    y1 = {R.one(), t};
                    y2 = {R.zero(), R.one()};
                } else {
                    y1 = {t, R.one()};
                    y2 = {R.one(), R.zero()};
                }
                Span2 s = make_span(R, y1, y2, e1, e2);
                if (!lat.ramified) {
                    CVec2 g1 = gen1(R, s), g2 = gen2(R, s);
                    bool iso = R.is_zero(phi(g1, g1)) && R.is_zero(phi(g1, g2)) &&
                               R.is_zero(phi(g2, g2));
                    if (iso) add_survivor({s, Span2{}, {e1, e2}});
                } else {
                    // complement: z_i the psi-dual basis of (y1, y2),
                    // F_tau' = span{pi^{e-e1} z1, pi^{e-e2} z2}
                    CVec2 z1{s.binv_r1.x, s.binv_r1.y};
                    CVec2 z2{s.binv_r2.x, s.binv_r2.y};
                    Span2 sp = make_span(R, z1, z2, e - e1, e - e2);
                    CVec2 g1 = gen1(R, s), g2 = gen2(R, s);
                    CVec2 h1 = gen1(R, sp), h2 = gen2(R, sp);
                    bool ok = in_span(R, Pi_fwd(g1), sp) && in_span(R, Pi_fwd(g2), sp) &&
                              in_span(R, Pi_bwd(h1), s) && in_span(R, Pi_bwd(h2), s);
                    if (ok)
                        ok = R.is_zero(psi(g1, h1)) && R.is_zero(psi(g1, h2)) &&
                             R.is_zero(psi(g2, h1)) && R.is_zero(psi(g2, h2));
                    if (ok) add_survivor({s, sp, {e1, e2}});
                }
            }
        }
    }

    std::vector<LocalModelPoint> out;
    for (auto& s : survivors) {
        LocalModelPoint pt;
        pt.lie_type = s.lie;
        pt.basis.push_back(gen1(R, s.tau));
        pt.basis.push_back(gen2(R, s.tau));
        pt.key = span_gen_key(R, s.tau);
        if (lat.ramified) {
            pt.basis.push_back(gen1(R, s.taup));
            pt.basis.push_back(gen2(R, s.taup));
            pt.key += "///" + span_gen_key(R, s.taup);
        }
        out.push_back(pt);
    }
    std::sort(out.begin(), out.end(), [](const LocalModelPoint& a, const LocalModelPoint& b) {
        if (a.lie_type != b.lie_type) return a.lie_type < b.lie_type;
        return a.key < b.key;
    });
    return out;
}

std::vector<OrbitDescriptor> classify_orbits(const std::vector<LocalModelPoint>& pts,
                                             bool ramified, int e) {
    (void)ramified;
    (void)e;
    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto [a, b] = pts[i].lie_type;
        if (a > b) std::swap(a, b);
        groups[{a, b}].push_back((int)i);
    }
    std::vector<OrbitDescriptor> out;
    for (auto& [lt, members] : groups) out.push_back({lt, members});
    return out;
}

} // namespace isocryst

#pragma once

// Independent test oracles: brute-force solvability for the Hilbert symbol,
// a search-based isometry decision for small quadratic forms, and direct
// transcriptions of the closed-form slope lists.

#include "isocryst/padic.hpp"
#include "isocryst/slopes.hpp"

#include <array>
#include <cstring>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace isocryst::oracle {

// Solvability of z^2 = a x^2 + b y^2 over F by a primitive-solution search
// modulo pi^3 (entries of valuation <= 1; odd residue characteristic).
// A primitive solution mod pi^3 Hensel-lifts since some partial derivative
// has valuation <= 1, and every true solution scales to a primitive one.
class HilbertOracle {
public:
    explicit HilbertOracle(std::shared_ptr<const EisensteinRing> Rp) : R(std::move(Rp)) {
        q = R->base->kbar.q();
        build();
    }

    int symbol(const EisensteinRing::Elem& a, const EisensteinRing::Elem& b) const {
        return solvable(a, b) ? 1 : -1;
    }

private:
    std::shared_ptr<const EisensteinRing> R;
    std::uint64_t q = 0;
    std::vector<EisensteinRing::Elem> elems;       // all of O/pi^3 (digit representatives)
    std::vector<bool> squares;                     // indexed by element index
    std::vector<EisensteinRing::Elem> pi_mults;    // all of pi*O / pi^3
    std::unordered_map<std::string, std::size_t> index_map; // canonical rep -> index

    EisensteinRing::Elem pi() const {
        return R->e > 1 ? R->pi_pow(1) : R->from_int(-R->P[0]);
    }

    std::string key_of(const EisensteinRing::Elem& x) const {
        // the ideal (pi^3) meets the pi-coefficient of degree i in p^{ceil((3-i)/e)},
        // so reduction mod pi^3 is coefficient-wise
        std::string key;
        key.reserve(x.size() * sizeof(std::uint64_t));
        for (int i = 0; i < R->e; ++i) {
            int need = (3 - i + R->e - 1) / R->e;
            if (need < 0) need = 0;
            std::uint64_t pk = 1;
            for (int t2 = 0; t2 < need && t2 < R->N; ++t2) pk *= R->p;
            for (int t2 = 0; t2 < R->fb; ++t2) {
                std::uint64_t v = need >= R->N ? x[(std::size_t)i * R->fb + t2]
                                               : x[(std::size_t)i * R->fb + t2] % pk;
                key.append((const char*)&v, sizeof(v));
            }
        }
        return key;
    }

    std::size_t index_of(const EisensteinRing::Elem& x) const {
        auto it = index_map.find(key_of(x));
        if (it == index_map.end()) throw Error(Err::Internal, "oracle index lookup failed");
        return it->second;
    }

    void build() {
        const ResidueField& k = R->base->kbar;
        // enumerate digit triples
        std::vector<ResidueField::Elem> fq;
        {
            std::vector<std::uint64_t> d(k.deg, 0);
            while (true) {
                fq.push_back(ResidueField::Elem(d.begin(), d.end()));
                int i = 0;
                while (i < k.deg && ++d[i] == k.p) d[i++] = 0;
                if (i == k.deg) break;
            }
        }
        EisensteinRing::Elem piel = pi();
        EisensteinRing::Elem pi2 = R->mul(piel, piel);
        elems.reserve((std::size_t)q * q * q);
        for (const auto& d2 : fq)
            for (const auto& d1 : fq)
                for (const auto& d0 : fq) {
                    EisensteinRing::Elem x = R->from_base(R->base->teichmueller_digit(d0));
                    x = R->add(x, R->mul(piel, R->from_base(R->base->teichmueller_digit(d1))));
                    x = R->add(x, R->mul(pi2, R->from_base(R->base->teichmueller_digit(d2))));
                    elems.push_back(x);
                    index_map.emplace(key_of(x), elems.size() - 1);
                }
        squares.assign(elems.size(), false);
        for (const auto& x : elems) squares[index_of(R->mul(x, x))] = true;
        for (const auto& d1 : fq)
            for (const auto& d0 : fq) {
                EisensteinRing::Elem x = R->from_base(R->base->teichmueller_digit(d0));
                x = R->add(x, R->mul(piel, R->from_base(R->base->teichmueller_digit(d1))));
                pi_mults.push_back(R->mul(piel, x));
            }
    }

    bool solvable(const EisensteinRing::Elem& a, const EisensteinRing::Elem& b) const {
        EisensteinRing::Elem u = nonresidue_unit(*R);
        std::vector<EisensteinRing::Elem> units = {R->one(), u};
        // case X: x a normalized unit, y free, z via the square table
        for (const auto& x0 : units) {
            EisensteinRing::Elem ax2 = R->mul(a, R->mul(x0, x0));
            for (const auto& y : elems) {
                EisensteinRing::Elem w = R->add(ax2, R->mul(b, R->mul(y, y)));
                if (squares[index_of(w)]) return true;
            }
        }
        // case Y: x in pi*O, y a normalized unit
        for (const auto& y0 : units) {
            EisensteinRing::Elem by2 = R->mul(b, R->mul(y0, y0));
            for (const auto& x : pi_mults) {
                EisensteinRing::Elem w = R->add(R->mul(a, R->mul(x, x)), by2);
                if (squares[index_of(w)]) return true;
            }
        }
        // case Z: x, y in pi*O, z a normalized unit
        std::vector<bool> bset(elems.size(), false);
        for (const auto& y : pi_mults) bset[index_of(R->mul(b, R->mul(y, y)))] = true;
        for (const auto& z0 : units) {
            EisensteinRing::Elem z2 = R->mul(z0, z0);
            for (const auto& x : pi_mults) {
                EisensteinRing::Elem need = R->sub(z2, R->mul(a, R->mul(x, x)));
                if (bset[index_of(need)]) return true;
            }
        }
        return false;
    }
};

// Search-based isometry decision for diagonal forms over Q_p (e = f = 1),
// n <= 3, entries of valuation <= 1: two forms are isometric iff they have
// equal dimension, equal discriminant square class, and equal represented-set
// signature (which classes among {1,u,p,up} are represented, and isotropy).
class IsometryOracle {
public:
    explicit IsometryOracle(std::uint64_t p) : p(p), p3(p * p * p) {}

    bool isometric(const std::vector<long long>& d1, const std::vector<long long>& d2) const {
        if (d1.size() != d2.size()) return false;
        return fingerprint(d1) == fingerprint(d2);
    }

private:
    std::uint64_t p, p3;

    std::uint64_t nonres() const {
        for (std::uint64_t u = 2; u < p; ++u)
            if (legendre_symbol_int(u, p) == -1) return u;
        return 0;
    }

    std::pair<int, int> square_class_int(long long a) const {
        // modulus p^5 so that products of up to three valuation-<=1 entries
        // keep a nonzero residue
        long long p5 = (long long)(p3 * p * p);
        std::uint64_t m = (std::uint64_t)(((a % p5) + p5) % p5);
        if (m == 0) throw Error(Err::ZeroArgument, "zero in square_class_int");
        int v = 0;
        while (m % p == 0) { m /= p; ++v; }
        return {v & 1, legendre_symbol_int(m, p) == 1 ? 0 : 1};
    }

    // Primitive-solution reachability of Q(x) = t mod p^3, all t at once, by a
    // value-set DP with an "all coordinates divisible by p so far" flag.
    std::vector<int> fingerprint(const std::vector<long long>& diag) const {
        int n = (int)diag.size();
        std::vector<std::uint64_t> dm(n);
        for (int i = 0; i < n; ++i)
            dm[i] = (std::uint64_t)(((diag[i] % (long long)p3) + (long long)p3) % (long long)p3);
        std::uint64_t u = nonres();
        std::vector<int> fp;
        {
            long long p5 = (long long)(p3 * p * p);
            long long prod = 1;
            for (long long a : diag) prod = (long long)(((__int128)prod * a) % p5);
            if ((n / 2) % 2) prod = -prod;
            auto [v, s] = square_class_int(prod);
            fp.push_back(v);
            fp.push_back(s);
        }
        // per-entry value sets split by unit/divisible coordinate
        // reach[v][flag]: flag 0 = some unit coordinate used, 1 = all divisible
        std::vector<std::array<char, 2>> reach((std::size_t)p3, {0, 0});
        reach[0][1] = 1;
        for (int i = 0; i < n; ++i) {
            std::vector<char> vu(p3, 0), vd(p3, 0);
            for (std::uint64_t x = 0; x < p3; ++x) {
                std::uint64_t w = dm[i] * x % p3 * x % p3;
                (x % p ? vu : vd)[w] = 1;
            }
            std::vector<std::array<char, 2>> nxt((std::size_t)p3, {0, 0});
            for (std::uint64_t v = 0; v < p3; ++v) {
                for (int fl = 0; fl < 2; ++fl) {
                    if (!reach[v][fl]) continue;
                    for (std::uint64_t w = 0; w < p3; ++w) {
                        if (vu[w]) nxt[(v + w) % p3][0] = 1;
                        if (vd[w]) nxt[(v + w) % p3][fl] = 1;
                    }
                }
            }
            reach = std::move(nxt);
        }
        auto prim = [&](std::uint64_t t) { return reach[t % p3][0] != 0; };
        bool iso = prim(0);
        fp.push_back(iso ? 1 : 0);
        for (std::uint64_t c : {(std::uint64_t)1, u, p, (u * p) % p3}) {
            bool rep = iso; // isotropic regular forms are universal
            if (!rep) rep = prim(c) || prim(c * p % p3 * p % p3);
            fp.push_back(rep ? 1 : 0);
        }
        return fp;
    }
};

// direct transcriptions of the m = 1 and m = 2 slope lists
std::vector<SlopeSeq> cor76_list(const FieldParams& params, AlgKind kind);
std::vector<SlopeSeq> cor77_list(const FieldParams& params, AlgKind kind);

inline std::vector<SlopeSeq> cor76_list(const FieldParams& params, AlgKind kind) {
    long long d = params.d();
    std::vector<SlopeSeq> out;
    SlopeSeq ss;
    ss.push(Frac(1, 2), (int)(4 * d));
    out.push_back(ss);
    if (kind == AlgKind::Matrix) {
        for (long long a = 0; 2 * a < d; ++a) {
            SlopeSeq nu;
            nu.push(Frac(a, d), (int)(2 * d));
            nu.push(Frac(d - a, d), (int)(2 * d));
            out.push_back(nu);
        }
    } else {
        for (long long a = 1; a < d; a += 2) {
            SlopeSeq nu;
            nu.push(Frac(a, 2 * d), (int)(2 * d));
            nu.push(Frac(2 * d - a, 2 * d), (int)(2 * d));
            out.push_back(nu);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<SlopeSeq> cor77_list(const FieldParams& params, AlgKind kind) {
    long long d = params.d();
    std::vector<SlopeSeq> out;
    {
        SlopeSeq ss;
        ss.push(Frac(1, 2), (int)(8 * d));
        out.push_back(ss);
    }
    if (kind == AlgKind::Matrix) {
        for (long long a = 0; a < d; ++a) {
            SlopeSeq nu;
            nu.push(Frac(a, 2 * d), (int)(4 * d));
            nu.push(Frac(2 * d - a, 2 * d), (int)(4 * d));
            out.push_back(nu);
        }
        for (long long a = 0; 2 * a < d; ++a) {
            SlopeSeq nu;
            nu.push(Frac(a, d), (int)(2 * d));
            nu.push(Frac(1, 2), (int)(4 * d));
            nu.push(Frac(d - a, d), (int)(2 * d));
            out.push_back(nu);
        }
        for (long long a = 0; 2 * a < d; ++a)
            for (long long b = a + 1; 2 * b < d; ++b) {
                SlopeSeq nu;
                nu.push(Frac(a, d), (int)(2 * d));
                nu.push(Frac(b, d), (int)(2 * d));
                nu.push(Frac(d - b, d), (int)(2 * d));
                nu.push(Frac(d - a, d), (int)(2 * d));
                out.push_back(nu);
            }
    } else {
        for (long long a = 0; a < 2 * d; a += 2) {
            SlopeSeq nu;
            nu.push(Frac(a, 4 * d), (int)(4 * d));
            nu.push(Frac(4 * d - a, 4 * d), (int)(4 * d));
            out.push_back(nu);
        }
        for (long long a = 1; a < d; a += 2) {
            SlopeSeq nu;
            nu.push(Frac(a, 2 * d), (int)(2 * d));
            nu.push(Frac(1, 2), (int)(4 * d));
            nu.push(Frac(2 * d - a, 2 * d), (int)(2 * d));
            out.push_back(nu);
        }
        for (long long a = 1; a < d; a += 2)
            for (long long b = a + 2; b < d; b += 2) {
                SlopeSeq nu;
                nu.push(Frac(a, 2 * d), (int)(2 * d));
                nu.push(Frac(b, 2 * d), (int)(2 * d));
                nu.push(Frac(2 * d - b, 2 * d), (int)(2 * d));
                nu.push(Frac(2 * d - a, 2 * d), (int)(2 * d));
                out.push_back(nu);
            }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace isocryst::oracle

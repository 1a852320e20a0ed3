#include "isocryst/padic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace isocryst {

const char* err_name(Err c) {
    switch (c) {
        case Err::NonUnit: return "NonUnit";
        case Err::PrecisionExhausted: return "PrecisionExhausted";
        case Err::ZeroArgument: return "ZeroArgument";
        case Err::AlgebraMismatch: return "AlgebraMismatch";
        case Err::ShapeInfeasible: return "ShapeInfeasible";
        case Err::UnsupportedRank: return "UnsupportedRank";
        case Err::InadmissibleSequence: return "InadmissibleSequence";
        case Err::ParameterOutOfRange: return "ParameterOutOfRange";
        case Err::BadLieType: return "BadLieType";
        case Err::NotIsoclinic: return "NotIsoclinic";
        case Err::UnitSystemUnsolvable: return "UnitSystemUnsolvable";
        case Err::NonInvariantEntries: return "NonInvariantEntries";
        case Err::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
        case Err::Usage: return "Usage";
        case Err::Internal: return "Internal";
    }
    return "Unknown";
}

void FieldParams::validate() const {
    if (p < 3) throw Error(Err::ParameterOutOfRange, "p must be an odd prime >= 3");
    if (p % 2 == 0) throw Error(Err::ParameterOutOfRange, "p must be odd");
    // small primality check
    for (std::uint64_t q = 3; q * q <= p; q += 2)
        if (p % q == 0) throw Error(Err::ParameterOutOfRange, "p must be prime");
    if (e < 1 || f < 1) throw Error(Err::ParameterOutOfRange, "e, f must be >= 1");
}

namespace {

std::uint64_t pow_u64(std::uint64_t b, std::uint64_t n) {
    std::uint64_t r = 1;
    while (n) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return (std::uint64_t)((__uint128_t)a * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t n, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (n) {
        if (n & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        n >>= 1;
    }
    return r;
}

// inverse of a unit mod p^N by Newton from the mod-p inverse
std::uint64_t invmod_pp(std::uint64_t a, std::uint64_t p, std::uint64_t pN) {
    std::uint64_t x = powmod(a % p, p - 2, p); // inverse mod p
    // lift: x <- x*(2 - a*x)
    for (int i = 0; i < 8; ++i) {
        std::uint64_t ax = mulmod(a, x, pN);
        std::uint64_t t = (2 % pN + pN - ax) % pN;
        x = mulmod(x, t, pN);
    }
    return x;
}

// F_p[x] helpers for finding the modulus
using Poly = std::vector<std::uint64_t>;

Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
    int dm = (int)m.size() - 1;
    while ((int)a.size() > dm) {
        std::uint64_t c = a.back() % p;
        int sh = (int)a.size() - 1 - dm;
        if (c) {
            for (int i = 0; i <= dm; ++i) {
                std::uint64_t t = mulmod(c, m[i], p);
                a[i + sh] = (a[i + sh] + p - t) % p;
            }
        }
        a.pop_back();
    }
    a.resize(dm, 0);
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (size_t j = 0; j < b.size(); ++j)
                c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
    return poly_mod(std::move(c), m, p);
}

Poly poly_powmod(Poly a, std::uint64_t n, const Poly& m, std::uint64_t p) {
    Poly r((size_t)((int)m.size() - 1), 0);
    r[0] = 1;
    a = poly_mod(std::move(a), m, p);
    while (n) {
        if (n & 1) r = poly_mulmod(r, a, m, p);
        a = poly_mulmod(a, a, m, p);
        n >>= 1;
    }
    return r;
}

bool poly_is_zero(const Poly& a) {
    return std::all_of(a.begin(), a.end(), [](std::uint64_t c) { return c == 0; });
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
    auto deg = [](const Poly& x) {
        for (int i = (int)x.size() - 1; i >= 0; --i)
            if (x[i]) return i;
        return -1;
    };
    while (!poly_is_zero(b)) {
        int db = deg(b);
        Poly m(b.begin(), b.begin() + db + 1);
        std::uint64_t lead_inv = powmod(m[db], p - 2, p);
        for (auto& c : m) c = mulmod(c, lead_inv, p);
        a = poly_mod(std::move(a), m, p);
        a.resize(db, 0);
        std::swap(a, b);
        b.resize(std::max<size_t>(b.size(), 1), 0);
    }
    return a;
}

bool is_irreducible(const Poly& m, std::uint64_t p) {
    int f = (int)m.size() - 1;
    Poly x = {0, 1};
    Poly xq = poly_powmod(x, pow_u64(p, (std::uint64_t)f), m, p);
    Poly diff = xq;
    diff[1] = (diff[1] + p - 1) % p;
    if (!poly_is_zero(diff)) return false;
    for (int l = 2; l <= f; ++l) {
        if (f % l) continue;
        bool lprime = true;
        for (int t = 2; t * t <= l; ++t)
            if (l % t == 0) lprime = false;
        if (!lprime) continue;
        Poly xe = poly_powmod(x, pow_u64(p, (std::uint64_t)(f / l)), m, p);
        xe[1] = (xe[1] + p - 1) % p;
        Poly g = poly_gcd(m, xe, p);
        int dg = 0;
        for (int i = (int)g.size() - 1; i >= 0; --i)
            if (g[i]) { dg = i; break; }
        if (dg > 0) return false;
    }
    return true;
}

Poly find_irreducible(std::uint64_t p, int f) {
    if (f == 1) return Poly{0, 1}; // x
    // smallest lexicographic (by constant..leading order) monic irreducible
    std::vector<std::uint64_t> coeff(f, 0);
    while (true) {
        Poly m(coeff.begin(), coeff.end());
        m.push_back(1);
        if (is_irreducible(m, p)) return m;
        int i = 0;
        while (i < f && ++coeff[i] == p) coeff[i++] = 0;
        if (i == f) throw Error(Err::Internal, "no irreducible polynomial found");
    }
}

} // namespace

// ---------------------------------------------------------------- ResidueField

ResidueField ResidueField::make(std::uint64_t p, int deg) {
    ResidueField F;
    F.p = p;
    F.deg = deg;
    F.modulus = find_irreducible(p, deg);
    return F;
}

std::uint64_t ResidueField::q() const { return pow_u64(p, (std::uint64_t)deg); }

ResidueField::Elem ResidueField::one() const {
    Elem r(deg, 0);
    r[0] = 1;
    return r;
}

ResidueField::Elem ResidueField::from_int(std::uint64_t v) const {
    Elem r(deg, 0);
    r[0] = v % p;
    return r;
}

bool ResidueField::is_zero(const Elem& a) const {
    return std::all_of(a.begin(), a.end(), [](std::uint64_t c) { return c == 0; });
}

ResidueField::Elem ResidueField::add(const Elem& a, const Elem& b) const {
    Elem r(deg);
    for (int i = 0; i < deg; ++i) r[i] = (a[i] + b[i]) % p;
    return r;
}

ResidueField::Elem ResidueField::sub(const Elem& a, const Elem& b) const {
    Elem r(deg);
    for (int i = 0; i < deg; ++i) r[i] = (a[i] + p - b[i] % p) % p;
    return r;
}

ResidueField::Elem ResidueField::mul(const Elem& a, const Elem& b) const {
    Poly c(2 * deg - 1, 0);
    for (int i = 0; i < deg; ++i)
        if (a[i])
            for (int j = 0; j < deg; ++j)
                c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
    return poly_mod(std::move(c), modulus, p);
}

ResidueField::Elem ResidueField::pow(Elem a, std::uint64_t n) const {
    Elem r = one();
    while (n) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

ResidueField::Elem ResidueField::inv(const Elem& a) const {
    if (is_zero(a)) throw Error(Err::ZeroArgument, "inverse of zero in residue field");
    return pow(a, q() - 2);
}

int ResidueField::legendre(const Elem& a) const {
    if (is_zero(a)) return 0;
    Elem s = pow(a, (q() - 1) / 2);
    if (s == one()) return 1;
    return -1;
}

// -------------------------------------------------------------- UnramifiedRing

std::shared_ptr<const UnramifiedRing> UnramifiedRing::make(std::uint64_t p, int f, int N) {
    if (N < 1 || f < 1) throw Error(Err::ParameterOutOfRange, "need N >= 1, f >= 1");
    // p^N must fit comfortably in 64 bits for __int128 products
    long double sz = std::pow((long double)p, (long double)N);
    if (sz > 4.0e18L) throw Error(Err::PrecisionExhausted, "p^N exceeds the 64-bit coefficient range");
    auto R = std::make_shared<UnramifiedRing>();
    R->p = p;
    R->f = f;
    R->N = N;
    R->pN = pow_u64(p, (std::uint64_t)N);
    R->kbar = ResidueField::make(p, f);
    R->modulus.assign(R->kbar.modulus.begin(), R->kbar.modulus.end()); // lift verbatim
    // Frobenius: the root r of modulus with r = x^p (mod p), Newton-lifted mod p^N.
    // sigma(sum a_i x^i) = sum a_i r^i.
    {
        // work in the ring via naive poly ops mod (modulus, pN)
        auto modmul = [&](const Elem& a, const Elem& b) {
            std::vector<std::uint64_t> c(2 * f - 1, 0);
            for (int i = 0; i < f; ++i)
                if (a[i])
                    for (int j = 0; j < f; ++j)
                        c[i + j] = (c[i + j] + mulmod(a[i], b[j], R->pN)) % R->pN;
            // reduce by monic modulus
            for (int k = 2 * f - 2; k >= f; --k) {
                std::uint64_t coef = c[k];
                if (!coef) continue;
                c[k] = 0;
                for (int i = 0; i < f; ++i) {
                    std::uint64_t t = mulmod(coef, R->modulus[i], R->pN);
                    c[k - f + i] = (c[k - f + i] + R->pN - t) % R->pN;
                }
            }
            c.resize(f);
            return c;
        };
        auto modeval = [&](const std::vector<std::uint64_t>& poly, const Elem& r) {
            Elem acc(f, 0);
            for (int i = (int)poly.size() - 1; i >= 0; --i) {
                acc = modmul(acc, r);
                acc[0] = (acc[0] + poly[i]) % R->pN;
            }
            return acc;
        };
        Elem r(f, 0);
        if (f == 1) {
            r[0] = 0;
        } else {
            // r0 = x^p mod (modulus, p)
            Poly x = {0, 1};
            Poly r0 = poly_powmod(x, p, R->kbar.modulus, p);
            r.assign(r0.begin(), r0.end());
            r.resize(f, 0);
            // Newton: r <- r - m(r)/m'(r)
            std::vector<std::uint64_t> mprime(f, 0);
            for (int i = 1; i <= f; ++i) mprime[i - 1] = mulmod((std::uint64_t)i % R->pN, R->modulus[i], R->pN);
            for (int it = 0; it < N + 2; ++it) {
                Elem mv = modeval(R->modulus, r);
                bool zero = std::all_of(mv.begin(), mv.end(), [](std::uint64_t c) { return c == 0; });
                if (zero) break;
                Elem dv = modeval(mprime, r);
                // invert dv: dv is a unit; Newton in the ring from the residue inverse
                ResidueField::Elem dbar(f);
                for (int i = 0; i < f; ++i) dbar[i] = dv[i] % p;
                ResidueField::Elem ibar = R->kbar.inv(dbar);
                Elem inv(ibar.begin(), ibar.end());
                inv.resize(f, 0);
                for (int k = 0; k < 8; ++k) {
                    Elem t = modmul(dv, inv);
                    for (int i = 0; i < f; ++i) t[i] = (R->pN - t[i]) % R->pN;
                    t[0] = (t[0] + 2) % R->pN;
                    inv = modmul(inv, t);
                }
                Elem corr = modmul(mv, inv);
                for (int i = 0; i < f; ++i) r[i] = (r[i] + R->pN - corr[i]) % R->pN;
            }
        }
        // powers of sigma as matrices
        R->frob_pows.assign(f, std::vector<Elem>(f));
        // sigma^1 columns: images of x^i = r^i
        std::vector<Elem> cols(f);
        Elem acc(f, 0);
        acc[0] = 1;
        for (int i = 0; i < f; ++i) {
            cols[i] = acc;
            acc = modmul(acc, r);
        }
        // frob_pows[0] = identity columns
        for (int i = 0; i < f; ++i) {
            Elem id(f, 0);
            id[i] = 1;
            R->frob_pows[0][i] = id;
        }
        if (f > 1) {
            R->frob_pows[1] = cols;
            for (int k = 2; k < f; ++k) {
                for (int i = 0; i < f; ++i) {
                    // sigma^k(x^i) = sigma(sigma^{k-1}(x^i))
                    const Elem& prev = R->frob_pows[k - 1][i];
                    Elem img(f, 0);
                    for (int j = 0; j < f; ++j) {
                        if (!prev[j]) continue;
                        for (int t = 0; t < f; ++t)
                            img[t] = (img[t] + mulmod(prev[j], cols[j][t], R->pN)) % R->pN;
                    }
                    R->frob_pows[k][i] = img;
                }
            }
        }
    }
    return R;
}

std::uint64_t UnramifiedRing::mod_add(std::uint64_t a, std::uint64_t b) const { return (a + b) % pN; }
std::uint64_t UnramifiedRing::mod_sub(std::uint64_t a, std::uint64_t b) const { return (a + pN - b % pN) % pN; }
std::uint64_t UnramifiedRing::mod_mul(std::uint64_t a, std::uint64_t b) const { return mulmod(a, b, pN); }
std::uint64_t UnramifiedRing::mod_inv(std::uint64_t a) const {
    if (a % p == 0) throw Error(Err::NonUnit, "not a unit mod p^N");
    return invmod_pp(a, p, pN);
}

UnramifiedRing::Elem UnramifiedRing::one() const {
    Elem r(f, 0);
    r[0] = 1;
    return r;
}

UnramifiedRing::Elem UnramifiedRing::from_int(std::int64_t v) const {
    Elem r(f, 0);
    std::int64_t m = v % (std::int64_t)pN;
    if (m < 0) m += (std::int64_t)pN;
    r[0] = (std::uint64_t)m;
    return r;
}

bool UnramifiedRing::is_zero(const Elem& a) const {
    return std::all_of(a.begin(), a.end(), [](std::uint64_t c) { return c == 0; });
}

bool UnramifiedRing::equal(const Elem& a, const Elem& b) const { return a == b; }

UnramifiedRing::Elem UnramifiedRing::add(const Elem& a, const Elem& b) const {
    Elem r(f);
    for (int i = 0; i < f; ++i) r[i] = mod_add(a[i], b[i]);
    return r;
}

UnramifiedRing::Elem UnramifiedRing::sub(const Elem& a, const Elem& b) const {
    Elem r(f);
    for (int i = 0; i < f; ++i) r[i] = mod_sub(a[i], b[i]);
    return r;
}

UnramifiedRing::Elem UnramifiedRing::neg(const Elem& a) const {
    Elem r(f);
    for (int i = 0; i < f; ++i) r[i] = (pN - a[i] % pN) % pN;
    return r;
}

UnramifiedRing::Elem UnramifiedRing::mul_reduce(const std::vector<std::uint64_t>& prod) const {
    std::vector<std::uint64_t> c = prod;
    for (int k = (int)c.size() - 1; k >= f; --k) {
        std::uint64_t coef = c[k];
        if (!coef) continue;
        c[k] = 0;
        for (int i = 0; i < f; ++i) {
            std::uint64_t t = mulmod(coef, modulus[i], pN);
            c[k - f + i] = (c[k - f + i] + pN - t) % pN;
        }
    }
    c.resize(f);
    return c;
}

UnramifiedRing::Elem UnramifiedRing::mul(const Elem& a, const Elem& b) const {
    std::vector<std::uint64_t> c(2 * f - 1, 0);
    for (int i = 0; i < f; ++i)
        if (a[i])
            for (int j = 0; j < f; ++j)
                c[i + j] = (c[i + j] + mulmod(a[i], b[j], pN)) % pN;
    return mul_reduce(c);
}

UnramifiedRing::Elem UnramifiedRing::scalar_mul(std::uint64_t c, const Elem& a) const {
    Elem r(f);
    for (int i = 0; i < f; ++i) r[i] = mulmod(c % pN, a[i], pN);
    return r;
}

int UnramifiedRing::val_p(const Elem& a) const {
    int best = N;
    for (int i = 0; i < f; ++i) {
        std::uint64_t c = a[i];
        if (!c) continue;
        int v = 0;
        while (c % p == 0) { c /= p; ++v; }
        best = std::min(best, v);
    }
    return best;
}

UnramifiedRing::Elem UnramifiedRing::inv(const Elem& a) const {
    if (val_p(a) != 0) throw Error(Err::NonUnit, "inverse of a non-unit");
    ResidueField::Elem abar(f);
    for (int i = 0; i < f; ++i) abar[i] = a[i] % p;
    ResidueField::Elem ibar = kbar.inv(abar);
    Elem x(ibar.begin(), ibar.end());
    x.resize(f, 0);
    for (int k = 0; k < 8; ++k) {
        Elem t = mul(a, x);
        t = neg(t);
        t[0] = mod_add(t[0], 2);
        x = mul(x, t);
    }
    return x;
}

UnramifiedRing::Elem UnramifiedRing::div_exact_p(const Elem& a, int k) const {
    std::uint64_t pk = pow_u64(p, (std::uint64_t)k);
    Elem r(f);
    for (int i = 0; i < f; ++i) {
        if (a[i] % pk != 0)
            throw Error(Err::PrecisionExhausted, "inexact division by p");
        r[i] = a[i] / pk;
    }
    return r;
}

UnramifiedRing::Elem UnramifiedRing::frob(const Elem& a, int k) const {
    int kk = ((k % f) + f) % f;
    if (kk == 0) return a;
    Elem r(f, 0);
    for (int i = 0; i < f; ++i) {
        if (!a[i]) continue;
        const Elem& img = frob_pows[kk][i];
        for (int t = 0; t < f; ++t) r[t] = (r[t] + mulmod(a[i], img[t], pN)) % pN;
    }
    return r;
}

ResidueField::Elem UnramifiedRing::residue(const Elem& a) const {
    ResidueField::Elem r(f);
    for (int i = 0; i < f; ++i) r[i] = a[i] % p;
    return r;
}

UnramifiedRing::Elem UnramifiedRing::teichmueller_digit(const ResidueField::Elem& r) const {
    Elem x(r.begin(), r.end());
    x.resize(f, 0);
    return x;
}

// -------------------------------------------------------------- EisensteinRing

std::string SquareClass::str() const {
    if (val_parity == 0) return unit_nonres ? "[u]" : "[1]";
    return unit_nonres ? "[u*pi]" : "[pi]";
}

std::shared_ptr<const EisensteinRing> EisensteinRing::make(
    std::shared_ptr<const UnramifiedRing> base, int e, std::vector<std::int64_t> P) {
    if (e < 1) throw Error(Err::ParameterOutOfRange, "e >= 1 required");
    if ((int)P.size() != e + 1 || P[e] != 1)
        throw Error(Err::ParameterOutOfRange, "Eisenstein polynomial must be monic of degree e");
    std::uint64_t p = base->p;
    for (int i = 0; i < e; ++i) {
        std::int64_t c = P[i] % (std::int64_t)p;
        if (c != 0) throw Error(Err::ParameterOutOfRange, "Eisenstein: p must divide lower coefficients");
    }
    if ((P[0] / (std::int64_t)p) % (std::int64_t)p == 0)
        throw Error(Err::ParameterOutOfRange, "Eisenstein: p^2 must not divide the constant term");

    auto R = std::make_shared<EisensteinRing>();
    R->base = base;
    R->e = e;
    R->P = P;
    R->p = p;
    R->pN = base->pN;
    R->N = base->N;
    R->fb = base->f;

    // pi^e = -(P[0] + P[1] pi + ... + P[e-1] pi^{e-1})
    auto mk_red = [&](void) {
        Elem red = R->zero();
        for (int i = 0; i < e; ++i) {
            std::int64_t c = -P[i];
            std::int64_t m = c % (std::int64_t)R->pN;
            if (m < 0) m += (std::int64_t)R->pN;
            red[(std::size_t)i * R->fb] = (std::uint64_t)m;
        }
        return red;
    };
    R->pi_red_.clear();
    if (e >= 1) {
        R->pi_red_.push_back(mk_red()); // pi^e
        for (int k = e + 1; k <= 2 * e - 2; ++k) {
            // pi^k = pi * pi^{k-1}: shift then reduce the top coefficient
            const Elem& prev = R->pi_red_.back();
            Elem cur = R->zero();
            UnramifiedRing::Elem top(R->fb);
            for (int i = 0; i < e; ++i)
                for (int t = 0; t < R->fb; ++t) {
                    if (i + 1 < e)
                        cur[(std::size_t)(i + 1) * R->fb + t] = prev[(std::size_t)i * R->fb + t];
                    else
                        top[t] = prev[(std::size_t)i * R->fb + t];
                }
            const Elem& rede = R->pi_red_[0];
            for (int i = 0; i < e; ++i) {
                // cur += top * rede_i
                UnramifiedRing::Elem ci(rede.begin() + (std::size_t)i * R->fb,
                                        rede.begin() + (std::size_t)(i + 1) * R->fb);
                UnramifiedRing::Elem prod = base->mul(top, ci);
                for (int t = 0; t < R->fb; ++t)
                    cur[(std::size_t)i * R->fb + t] =
                        base->mod_add(cur[(std::size_t)i * R->fb + t], prod[t]);
            }
            R->pi_red_.push_back(cur);
        }
    }
    // h = pi^e / p, exact from the integer coefficients (-P[i]/p)
    {
        Elem h = R->zero();
        for (int i = 0; i < e; ++i) {
            std::int64_t c = -(P[i] / (std::int64_t)p);
            std::int64_t m = c % (std::int64_t)R->pN;
            if (m < 0) m += (std::int64_t)R->pN;
            h[(std::size_t)i * R->fb] = (std::uint64_t)m;
        }
        R->h_ = h;
        R->h_inv_ = R->inv(h);
    }
    return R;
}

std::shared_ptr<const EisensteinRing> EisensteinRing::make_default(std::uint64_t p, int e, int f, int N) {
    auto W = UnramifiedRing::make(p, f, N);
    std::vector<std::int64_t> P(e + 1, 0);
    P[e] = 1;
    P[0] = (std::int64_t)p;
    return make(W, e, P);
}

EisensteinRing::Elem EisensteinRing::one() const {
    Elem r = zero();
    r[0] = 1;
    return r;
}

EisensteinRing::Elem EisensteinRing::from_int(std::int64_t v) const {
    Elem r = zero();
    std::int64_t m = v % (std::int64_t)pN;
    if (m < 0) m += (std::int64_t)pN;
    r[0] = (std::uint64_t)m;
    return r;
}

EisensteinRing::Elem EisensteinRing::from_base(const UnramifiedRing::Elem& w) const {
    Elem r = zero();
    for (int t = 0; t < fb; ++t) r[t] = w[t];
    return r;
}

EisensteinRing::Elem EisensteinRing::pi_pow(int k) const {
    if (k < 0 || k >= e) throw Error(Err::Internal, "pi_pow exponent out of range");
    Elem r = zero();
    r[(std::size_t)k * fb] = 1;
    return r;
}

bool EisensteinRing::is_zero(const Elem& a) const {
    return std::all_of(a.begin(), a.end(), [](std::uint64_t c) { return c == 0; });
}

bool EisensteinRing::equal(const Elem& a, const Elem& b) const { return a == b; }

EisensteinRing::Elem EisensteinRing::add(const Elem& a, const Elem& b) const {
    Elem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % pN;
    return r;
}

EisensteinRing::Elem EisensteinRing::sub(const Elem& a, const Elem& b) const {
    Elem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + pN - b[i] % pN) % pN;
    return r;
}

EisensteinRing::Elem EisensteinRing::neg(const Elem& a) const {
    Elem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (pN - a[i] % pN) % pN;
    return r;
}

EisensteinRing::Elem EisensteinRing::mul(const Elem& a, const Elem& b) const {
    // convolution in pi of W-coefficients, then reduce pi^k for k >= e
    std::vector<UnramifiedRing::Elem> c(2 * e - 1, base->zero());
    for (int i = 0; i < e; ++i) {
        UnramifiedRing::Elem ai(a.begin() + (std::size_t)i * fb, a.begin() + (std::size_t)(i + 1) * fb);
        if (base->is_zero(ai)) continue;
        for (int j = 0; j < e; ++j) {
            UnramifiedRing::Elem bj(b.begin() + (std::size_t)j * fb, b.begin() + (std::size_t)(j + 1) * fb);
            if (base->is_zero(bj)) continue;
            c[i + j] = base->add(c[i + j], base->mul(ai, bj));
        }
    }
    Elem r = zero();
    for (int i = 0; i < e; ++i)
        for (int t = 0; t < fb; ++t) r[(std::size_t)i * fb + t] = c[i][t];
    for (int k = e; k <= 2 * e - 2; ++k) {
        if (base->is_zero(c[k])) continue;
        const Elem& red = pi_red_[k - e];
        for (int i = 0; i < e; ++i) {
            UnramifiedRing::Elem ri(red.begin() + (std::size_t)i * fb, red.begin() + (std::size_t)(i + 1) * fb);
            UnramifiedRing::Elem prod = base->mul(c[k], ri);
            for (int t = 0; t < fb; ++t)
                r[(std::size_t)i * fb + t] = base->mod_add(r[(std::size_t)i * fb + t], prod[t]);
        }
    }
    return r;
}

EisensteinRing::Elem EisensteinRing::mul_int(std::int64_t cc, const Elem& a) const {
    std::int64_t m = cc % (std::int64_t)pN;
    if (m < 0) m += (std::int64_t)pN;
    Elem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], (std::uint64_t)m, pN);
    return r;
}

EisensteinRing::Elem EisensteinRing::pow(Elem a, std::uint64_t n) const {
    Elem r = one();
    while (n) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

int EisensteinRing::ord(const Elem& a) const {
    int best = ord_inf();
    for (int i = 0; i < e; ++i) {
        UnramifiedRing::Elem ci(a.begin() + (std::size_t)i * fb, a.begin() + (std::size_t)(i + 1) * fb);
        int v = base->val_p(ci);
        if (v >= N) continue;
        best = std::min(best, i + e * v);
    }
    return best;
}

EisensteinRing::Elem EisensteinRing::inv(const Elem& a) const {
    if (ord(a) != 0) throw Error(Err::NonUnit, "inverse of a non-unit");
    UnramifiedRing::Elem a0(a.begin(), a.begin() + fb);
    Elem x = from_base(base->inv(a0));
    // Newton: error 1 - a x has ord >= 1; squares each step
    int need = 1;
    while (need < ord_inf()) {
        Elem t = mul(a, x);
        t = neg(t);
        t[0] = (t[0] + 2) % pN;
        x = mul(x, t);
        need *= 2;
    }
    return x;
}

EisensteinRing::Elem EisensteinRing::div_pi(const Elem& a) const {
    UnramifiedRing::Elem a0(a.begin(), a.begin() + fb);
    if (base->val_p(a0) < 1)
        throw Error(Err::PrecisionExhausted, "inexact division by pi");
    UnramifiedRing::Elem b = base->div_exact_p(a0, 1);
    // a0 = p*b = b*h^{-1}*pi^e, so a/pi = shift(a - a0) + b*h^{-1}*pi^{e-1}
    Elem r = zero();
    for (int i = 1; i < e; ++i)
        for (int t = 0; t < fb; ++t)
            r[(std::size_t)(i - 1) * fb + t] = a[(std::size_t)i * fb + t];
    Elem add_term = mul(from_base(b), h_inv_);
    if (e >= 2) add_term = mul(add_term, pi_pow(e - 1));
    return add(r, add_term);
}

EisensteinRing::Elem EisensteinRing::div_p(const Elem& a) const {
    Elem y = mul(a, h_);
    for (int i = 0; i < e; ++i) y = div_pi(y);
    return y;
}

EisensteinRing::Elem EisensteinRing::div_pi_pow(Elem a, int k) const {
    for (int i = 0; i < k; ++i) a = div_pi(a);
    return a;
}

EisensteinRing::Elem EisensteinRing::div_exact(const Elem& a, const Elem& b) const {
    int vb = ord(b);
    if (vb >= ord_cap()) throw Error(Err::PrecisionExhausted, "division by (near) zero");
    Elem u = unit_part(b);
    Elem q = div_pi_pow(a, vb);
    return mul(q, inv(u));
}

EisensteinRing::Elem EisensteinRing::frob(const Elem& a, int k) const {
    Elem r(a.size());
    for (int i = 0; i < e; ++i) {
        UnramifiedRing::Elem ci(a.begin() + (std::size_t)i * fb, a.begin() + (std::size_t)(i + 1) * fb);
        ci = base->frob(ci, k);
        for (int t = 0; t < fb; ++t) r[(std::size_t)i * fb + t] = ci[t];
    }
    return r;
}

bool EisensteinRing::frob_invariant(const Elem& a) const { return equal(frob(a, 1), a); }

EisensteinRing::Elem EisensteinRing::unit_part(const Elem& a) const {
    int v = ord(a);
    if (v >= ord_cap()) throw Error(Err::PrecisionExhausted, "unit part of (near) zero");
    return div_pi_pow(a, v);
}

ResidueField::Elem EisensteinRing::residue(const Elem& a) const {
    UnramifiedRing::Elem c0(a.begin(), a.begin() + fb);
    return base->residue(c0);
}

// ----------------------------------------------------------- quadratic classes

int legendre_symbol_int(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    std::uint64_t s = powmod(a, (p - 1) / 2, p);
    return s == 1 ? 1 : -1;
}

SquareClass square_class(const EisensteinRing& R, const EisensteinRing::Elem& a) {
    int v = R.ord(a);
    if (v >= R.ord_cap()) throw Error(Err::ZeroArgument, "square class of zero");
    EisensteinRing::Elem u = R.div_pi_pow(a, v);
    ResidueField::Elem ubar = R.residue(u);
    int leg = R.base->kbar.legendre(ubar);
    if (leg == 0) throw Error(Err::Internal, "unit with zero residue");
    return SquareClass{v & 1, leg == 1 ? 0 : 1};
}

int hilbert_symbol(const EisensteinRing& R, const EisensteinRing::Elem& a,
                   const EisensteinRing::Elem& b) {
    if (R.ord(a) >= R.ord_cap() || R.ord(b) >= R.ord_cap())
        throw Error(Err::ZeroArgument, "Hilbert symbol of zero");
    int alpha = R.ord(a), beta = R.ord(b);
    ResidueField::Elem ubar = R.residue(R.div_pi_pow(a, alpha));
    ResidueField::Elem vbar = R.residue(R.div_pi_pow(b, beta));
    const ResidueField& k = R.base->kbar;
    // (a,b) = eps^{alpha beta} * chi(u)^beta * chi(v)^alpha, eps = chi(-1)
    int eps = k.legendre(k.sub(k.zero(), k.one()));
    int s = 1;
    if ((alpha & 1) && (beta & 1)) s *= eps;
    if (beta & 1) s *= k.legendre(ubar);
    if (alpha & 1) s *= k.legendre(vbar);
    return s;
}

EisensteinRing::Elem nonresidue_unit(const EisensteinRing& R) {
    const ResidueField& k = R.base->kbar;
    // enumerate field elements in a fixed order and take the first non-residue
    std::vector<std::uint64_t> digits(k.deg, 0);
    while (true) {
        ResidueField::Elem cand(digits.begin(), digits.end());
        if (!k.is_zero(cand) && k.legendre(cand) == -1) {
            UnramifiedRing::Elem w = R.base->teichmueller_digit(cand);
            return R.from_base(w);
        }
        int i = 0;
        while (i < k.deg && ++digits[i] == k.p) digits[i++] = 0;
        if (i == k.deg) throw Error(Err::Internal, "no non-residue found");
    }
}

std::vector<EisensteinRing::Elem> square_class_reps(const EisensteinRing& R) {
    EisensteinRing::Elem u = nonresidue_unit(R);
    // for e = 1 the image of T is -P[0]
    EisensteinRing::Elem pi = R.e > 1 ? R.pi_pow(1) : R.from_int(-R.P[0]);
    return {R.one(), u, pi, R.mul(u, pi)};
}

} // namespace isocryst

#include "isocryst/slopes.hpp"

#include <algorithm>
#include <set>

namespace isocryst {

void SlopeSeq::push(Frac s, int mult) {
    if (mult <= 0) return;
    auto it = std::lower_bound(entries.begin(), entries.end(), s,
                               [](const auto& a, const Frac& b) { return a.first < b; });
    if (it != entries.end() && it->first == s) it->second += mult;
    else entries.insert(it, {s, mult});
}

long long SlopeSeq::total() const {
    long long t = 0;
    for (auto& [s, m] : entries) t += m;
    return t;
}

int SlopeSeq::mult_of(const Frac& s) const {
    for (auto& [t, m] : entries)
        if (t == s) return m;
    return 0;
}

bool SlopeSeq::operator<(const SlopeSeq& o) const {
    return entries < o.entries;
}

std::string SlopeSeq::str() const {
    std::string s;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) s += ",";
        s += entries[i].first.str() + "^" + std::to_string(entries[i].second);
    }
    return s;
}

bool is_symmetric(const SlopeSeq& nu) {
    for (auto& [s, m] : nu.entries) {
        Frac comp(s.den - s.num, s.den);
        if (nu.mult_of(comp) != m) return false;
    }
    return true;
}

bool isoclinic_admissible(const Frac& beta, long long h, const FieldParams& params, AlgKind kind) {
    long long d = params.d();
    if (h <= 0 || h % (2 * d) != 0) return false;
    long long hp = h / (2 * d);
    if (beta.num < 0 || beta.num > beta.den) return false;
    if (kind == AlgKind::Matrix) {
        // beta = a/(d h') with 0 <= a <= d h'
        long long den = d * hp;
        if ((den * beta.num) % beta.den != 0) return false;
        long long a = den * beta.num / beta.den;
        return 0 <= a && a <= den;
    }
    // division: beta = a/h, a = h' mod 2
    if ((h * beta.num) % beta.den != 0) return false;
    long long a = h * beta.num / beta.den;
    if (a < 0 || a > h) return false;
    return (a - hp) % 2 == 0;
}

namespace {

// all partitions of n into parts >= 1 (non-increasing)
void partitions(int n, int maxpart, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = std::min(n, maxpart); k >= 1; --k) {
        cur.push_back(k);
        partitions(n - k, k, cur, out);
        cur.pop_back();
    }
}

std::vector<Frac> isoclinic_slopes(int hp, const FieldParams& params, AlgKind kind) {
    long long d = params.d();
    std::vector<Frac> out;
    if (kind == AlgKind::Matrix) {
        for (long long a = 0; a <= d * hp; ++a) out.push_back(Frac(a, d * hp));
    } else {
        long long h = 2 * d * hp;
        for (long long a = (hp % 2 == 0) ? 0 : 1; a <= h; a += 2) out.push_back(Frac(a, h));
    }
    return out;
}

void assign_slopes(const std::vector<int>& parts, std::size_t idx, const FieldParams& params,
                   AlgKind kind, std::vector<Frac>& chosen, std::set<SlopeSeq>& out) {
    if (idx == parts.size()) {
        SlopeSeq nu;
        long long d = params.d();
        for (std::size_t i = 0; i < parts.size(); ++i) nu.push(chosen[i], (int)(2 * d * parts[i]));
        out.insert(nu);
        return;
    }
    for (const Frac& s : isoclinic_slopes(parts[idx], params, kind)) {
        // avoid permuting slopes among equal parts: enforce non-decreasing order
        if (idx > 0 && parts[idx] == parts[idx - 1] && s < chosen[idx - 1]) continue;
        chosen.push_back(s);
        assign_slopes(parts, idx + 1, params, kind, chosen, out);
        chosen.pop_back();
    }
}

} // namespace

std::vector<SlopeSeq> enumerate_slopeseqs(const AdmissibleSpec& spec) {
    spec.params.validate();
    if (spec.m < 1) throw Error(Err::ParameterOutOfRange, "m >= 1 required");
    if (spec.determinant_condition && spec.m != 1)
        throw Error(Err::UnsupportedRank,
                    "the determinant-condition slope constraint is only established for m = 1");
    int hp_total = 2 * spec.m;
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(hp_total, hp_total, cur, parts);
    std::set<SlopeSeq> all;
    for (const auto& pt : parts) {
        std::vector<Frac> chosen;
        assign_slopes(pt, 0, spec.params, spec.kind, chosen, all);
    }
    std::vector<SlopeSeq> out;
    long long d = spec.params.d();
    Frac half(1, 2);
    for (const auto& nu : all) {
        if (spec.polarized && !is_symmetric(nu)) continue;
        if (spec.determinant_condition) {
            if (spec.kind == AlgKind::Division) {
                // Thm-12.3-type constraint: all-1/2, or exactly two slopes
                // {a/2d, (2d-a)/2d} with a odd and 2*floor(e/2)*f <= a < d
                bool keep = false;
                if ((int)nu.entries.size() == 1 && nu.entries[0].first == half) keep = true;
                else if ((int)nu.entries.size() == 2) {
                    Frac s = nu.entries[0].first;
                    long long a = 2 * d * s.num / s.den;
                    if ((2 * d * s.num) % s.den == 0 && a % 2 == 1 &&
                        a >= 2 * (spec.params.e / 2) * spec.params.f && a < d &&
                        nu.entries[0].second == 2 * d && nu.entries[1].second == 2 * d)
                        keep = true;
                }
                if (!keep) continue;
            }
            // matrix kind: unchanged (Thm 12.3(1))
        }
        out.push_back(nu);
    }
    std::sort(out.begin(), out.end());
    return out;
}

long long count_isogeny_classes(const AdmissibleSpec& spec, const SlopeSeq& nu) {
    AdmissibleSpec base = spec;
    base.determinant_condition = false;
    base.polarized = true;
    auto all = enumerate_slopeseqs(base);
    if (std::find(all.begin(), all.end(), nu) == all.end())
        throw Error(Err::InadmissibleSequence, "slope sequence is not admissible symmetric for this spec");
    long long d = spec.params.d();
    long long half_mult = nu.mult_of(Frac(1, 2));
    if (half_mult % (4 * d) != 0)
        throw Error(Err::InadmissibleSequence, "supersingular part has invalid length");
    long long ms = half_mult / (4 * d);
    if (ms == 0) return 1;
    QuaternionAlgebra B{spec.params, spec.kind};
    QuaternionAlgebra Bp = twist_invariant(B);
    if (Bp.kind == AlgKind::Matrix) return ms == 1 ? 7 : 8;
    return ms == 1 ? 3 : 4;
}

} // namespace isocryst

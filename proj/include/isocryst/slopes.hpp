#pragma once

#include "isocryst/quaternion.hpp"

namespace isocryst {

// sorted multiset of rational slopes in [0,1]
struct SlopeSeq {
    std::vector<std::pair<Frac, int>> entries; // strictly increasing slopes

    void push(Frac s, int mult); // merge-insert
    long long total() const;
    int mult_of(const Frac& s) const;
    bool operator==(const SlopeSeq& o) const { return entries == o.entries; }
    bool operator<(const SlopeSeq& o) const;
    std::string str() const; // "0^2,1/2^4,1^2"
};

bool is_symmetric(const SlopeSeq& nu);

// can an isoclinic p-divisible O_B-module of height h and slope beta exist
bool isoclinic_admissible(const Frac& beta, long long h, const FieldParams& params, AlgKind kind);

struct AdmissibleSpec {
    FieldParams params;
    AlgKind kind = AlgKind::Matrix;
    int m = 1;
    bool polarized = true;
    bool determinant_condition = false;
};

std::vector<SlopeSeq> enumerate_slopeseqs(const AdmissibleSpec& spec);

long long count_isogeny_classes(const AdmissibleSpec& spec, const SlopeSeq& nu);

} // namespace isocryst

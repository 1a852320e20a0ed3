#pragma once

#include "isocryst/slopes.hpp"

#include <optional>

namespace isocryst {

struct Check {
    std::string name;
    bool pass = false;        // matches the builder's expectation
    bool measured_ok = false; // the invariant itself holds
    std::string observed, expected;
};

struct VerificationReport {
    std::vector<Check> checks;
    std::vector<int> a_vals, c_vals;       // measured ord det Pi / ord det V
    std::vector<std::vector<int>> lie;     // elementary-divisor profile of V per index
    SlopeSeq slopes;
    bool slopes_computed = false;
    bool all_pass() const;     // every check matches its expectation
    bool all_measured() const; // every measured invariant actually holds
    const Check* find(const std::string& name) const;
};

struct ModuleExpectations {
    std::optional<bool> det_condition;
    std::optional<std::vector<std::vector<int>>> lie_type;
    std::optional<SlopeSeq> slope_seq;
    std::optional<bool> superspecial;
    std::optional<bool> pi_lie_zero;
    std::optional<bool> unimodular;
};

// graded Dieudonne module over the truncated coefficient ring:
// matrix kind is stored post-Morita (grading size f), division kind has
// grading size 2f with the Pi action and index-(j, j+f) pairing
struct DieudonneModule {
    FieldParams params;
    AlgKind kind = AlgKind::Division;
    int m = 1;
    int gsize = 1;
    std::shared_ptr<const EisensteinRing> R;
    std::vector<EMat> F, V, Pi, Gram;
    bool has_pairing = false;
    bool has_pi = false;
    ModuleExpectations expected;
    std::string label;

    int rank() const { return gsize ? F[0].rows : 0; }
    long long height() const { return (long long)rank() * params.e * gsize; }
};

int default_precision(const FieldParams& params, int m);

DieudonneModule build_superspecial_matrix(const FieldParams& params, int m = 1, int N = 0);
DieudonneModule build_superspecial_division(const FieldParams& params, int N = 0);
DieudonneModule build_two_slope_division(const FieldParams& params, long long a, int N = 0);
DieudonneModule build_matrix_lie_type(const FieldParams& params,
                                      const std::vector<std::pair<int, int>>& lie, int N = 0);
DieudonneModule build_example_13_5(std::uint64_t p, int N = 0);

// isoclinic block without pairing (rank one per graded index)
DieudonneModule make_isoclinic_block(const FieldParams& params, AlgKind kind, long long a_num,
                                     int N = 0);

DieudonneModule double_construction(const DieudonneModule& block);

SlopeSeq compute_slopes(const DieudonneModule& M);

VerificationReport verify(const DieudonneModule& M);

} // namespace isocryst

#include "isocryst/json_io.hpp"

namespace isocryst {

json params_json(const FieldParams& p) {
    return json{{"p", p.p}, {"e", p.e}, {"f", p.f}, {"d", p.d()}};
}

json elem_json(const EisensteinRing& R, const EisensteinRing::Elem& x) {
    // pi-coefficients, each a vector of base-ring coordinate strings
    json coeffs = json::array();
    for (int i = 0; i < R.e; ++i) {
        json w = json::array();
        for (int t = 0; t < R.fb; ++t) w.push_back(std::to_string(x[(std::size_t)i * R.fb + t]));
        coeffs.push_back(w);
    }
    return coeffs;
}

json mat_json(const EisensteinRing& R, const EMat& A) {
    json rows = json::array();
    for (int i = 0; i < A.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < A.cols; ++j) row.push_back(elem_json(R, A.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json module_json(const DieudonneModule& M) {
    const auto& R = *M.R;
    json j;
    j["params"] = params_json(M.params);
    j["algebra"] = kind_name(M.kind);
    j["m"] = M.m;
    j["grading_size"] = M.gsize;
    j["rank"] = M.rank();
    j["precision"] = R.N;
    j["residue_field_degree"] = R.fb;
    json P = json::array();
    for (auto c : R.P) P.push_back(c);
    j["eisenstein"] = P; // ascending coefficients, monic
    json F = json::array(), V = json::array(), Pi = json::array(), G = json::array();
    for (const auto& A : M.F) F.push_back(mat_json(R, A));
    for (const auto& A : M.V) V.push_back(mat_json(R, A));
    for (const auto& A : M.Pi) Pi.push_back(mat_json(R, A));
    for (const auto& A : M.Gram) G.push_back(mat_json(R, A));
    j["F"] = F;
    j["V"] = V;
    if (M.has_pi) j["Pi"] = Pi;
    if (M.has_pairing) j["gram"] = G;
    j["label"] = M.label;
    return j;
}

json report_json(const VerificationReport& rep) {
    json j;
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back(json{{"name", c.name}, {"pass", c.pass},
                              {"holds", c.measured_ok}, {"observed", c.observed},
                              {"expected", c.expected}});
    j["checks"] = checks;
    j["all_pass"] = rep.all_pass();
    j["all_hold"] = rep.all_measured();
    if (!rep.a_vals.empty()) j["a"] = rep.a_vals;
    if (!rep.c_vals.empty()) j["c"] = rep.c_vals;
    if (!rep.lie.empty()) j["lie"] = rep.lie;
    if (rep.slopes_computed) j["slope_seq"] = rep.slopes.str();
    return j;
}

json quad_class_json(const QuadClass& c) {
    return json{{"n", c.n}, {"disc", c.disc.str()}, {"hasse", c.hasse}};
}

json point_json(const ChainRing& R, const LocalModelPoint& pt) {
    json basis = json::array();
    for (const auto& v : pt.basis) basis.push_back(json::array({R.str(v.x), R.str(v.y)}));
    return json{{"basis", basis}, {"lie_type", json::array({pt.lie_type.first, pt.lie_type.second})}};
}

} // namespace isocryst

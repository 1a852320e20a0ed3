// Python bindings for the main operations: form classification and counts,
// slope enumeration, isogeny-class counting, the explicit Dieudonne-module
// constructions with their verification reports, and local-model enumeration.

#include "isocryst/json_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace isocryst;

namespace {

py::object json_to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null: return py::none();
        case json::value_t::boolean: return py::bool_(j.get<bool>());
        case json::value_t::number_integer: return py::int_(j.get<long long>());
        case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case json::value_t::number_float: return py::float_(j.get<double>());
        case json::value_t::string: return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(json_to_py(item));
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it)
                out[py::str(it.key())] = json_to_py(it.value());
            return out;
        }
        default: return py::none();
    }
}

AlgKind kind_of(const std::string& s) {
    if (s == "matrix") return AlgKind::Matrix;
    if (s == "division") return AlgKind::Division;
    throw Error(Err::Usage, "algebra must be 'matrix' or 'division'");
}

FieldParams params_of(std::uint64_t p, int e, int f) {
    FieldParams pr{p, e, f};
    pr.validate();
    return pr;
}

py::object build_and_report(DieudonneModule M) {
    VerificationReport rep = verify(M);
    json out;
    out["schema"] = "isocryst/1";
    out["module"] = module_json(M);
    out["report"] = report_json(rep);
    return json_to_py(out);
}

} // namespace

PYBIND11_MODULE(_isocryst, m) {
    m.doc() = "slope sequences, local-field form invariants, explicit Dieudonne modules, "
              "and local-model special fibers";

    py::register_exception<Error>(m, "IsocrystError");

    m.def(
        "quad_class_counts",
        [](std::uint64_t p, int e, int f, int nmax) {
            auto R = EisensteinRing::make_default(p, e, f, 2 * e * f + 6);
            std::vector<std::size_t> out;
            for (int n = 1; n <= nmax; ++n) out.push_back(enumerate_quad_classes(*R, n).size());
            return out;
        },
        py::arg("p") = 3, py::arg("e") = 1, py::arg("f") = 1, py::arg("nmax") = 5,
        "|Q(n)| for n = 1..nmax");

    m.def(
        "skewherm_class_counts",
        [](std::uint64_t p, int e, int f, int nmax) {
            auto C = QuatContext::make(params_of(p, e, f), AlgKind::Division, 2 * e * f + 6);
            std::vector<std::size_t> out;
            for (int n = 1; n <= nmax; ++n) out.push_back(enumerate_skewherm_classes(C, n).size());
            return out;
        },
        py::arg("p") = 3, py::arg("e") = 1, py::arg("f") = 1, py::arg("nmax") = 5,
        "|SQ(n)| for n = 1..nmax");

    m.def(
        "classify_quadratic",
        [](std::uint64_t p, int e, int f, const std::vector<long long>& diag) {
            auto R = EisensteinRing::make_default(p, e, f, 2 * e * f + 6);
            std::vector<EisensteinRing::Elem> d;
            for (long long v : diag) d.push_back(R->from_int(v));
            QuadClass q = classify_quadratic(*R, d);
            return json_to_py(quad_class_json(q));
        },
        py::arg("p"), py::arg("e"), py::arg("f"), py::arg("diag"),
        "discriminant square class and Hasse symbol of a diagonal form with integer entries");

    m.def(
        "hilbert_symbol",
        [](std::uint64_t p, int e, int f, long long a, long long b) {
            auto R = EisensteinRing::make_default(p, e, f, 2 * e * f + 6);
            return hilbert_symbol(*R, R->from_int(a), R->from_int(b));
        },
        py::arg("p"), py::arg("e"), py::arg("f"), py::arg("a"), py::arg("b"));

    m.def(
        "enumerate_slope_sequences",
        [](std::uint64_t p, int e, int f, const std::string& algebra, int m, bool polarized,
           bool det_condition) {
            AdmissibleSpec spec{params_of(p, e, f), kind_of(algebra), m, polarized, det_condition};
            std::vector<std::string> out;
            for (auto& nu : enumerate_slopeseqs(spec)) out.push_back(nu.str());
            return out;
        },
        py::arg("p"), py::arg("e"), py::arg("f"), py::arg("algebra"), py::arg("m") = 1,
        py::arg("polarized") = true, py::arg("det_condition") = false);

    m.def(
        "count_isogeny_classes",
        [](std::uint64_t p, int e, int f, const std::string& algebra, int m,
           const std::string& nu_str) {
            AdmissibleSpec spec{params_of(p, e, f), kind_of(algebra), m, true, false};
            SlopeSeq nu;
            std::stringstream ss(nu_str);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                auto caret = tok.find('^');
                long long mult = caret == std::string::npos ? 1 : std::stoll(tok.substr(caret + 1));
                std::string fr = tok.substr(0, caret);
                auto slash = fr.find('/');
                long long num = std::stoll(slash == std::string::npos ? fr : fr.substr(0, slash));
                long long den = slash == std::string::npos ? 1 : std::stoll(fr.substr(slash + 1));
                nu.push(Frac(num, den), (int)mult);
            }
            return count_isogeny_classes(spec, nu);
        },
        py::arg("p"), py::arg("e"), py::arg("f"), py::arg("algebra"), py::arg("m"),
        py::arg("nu"));

    m.def(
        "build_superspecial_matrix",
        [](std::uint64_t p, int e, int f, int m, int N) {
            return build_and_report(build_superspecial_matrix(params_of(p, e, f), m, N));
        },
        py::arg("p"), py::arg("e"), py::arg("f"), py::arg("m") = 1, py::arg("precision") = 0);

    m.def(
        "build_superspecial_division",
        [](std::uint64_t p, int e, int f, int N) {
            return build_and_report(build_superspecial_division(params_of(p, e, f), N));
        },
        py::arg("p"), py::arg("e"), py::arg("f"), py::arg("precision") = 0);

    m.def(
        "build_two_slope_division",
        [](std::uint64_t p, int e, int f, long long a, int N) {
            return build_and_report(build_two_slope_division(params_of(p, e, f), a, N));
        },
        py::arg("p"), py::arg("e"), py::arg("f"), py::arg("a"), py::arg("precision") = 0);

    m.def(
        "build_matrix_lie_type",
        [](std::uint64_t p, int e, int f, const std::vector<std::pair<int, int>>& lie, int N) {
            return build_and_report(build_matrix_lie_type(params_of(p, e, f), lie, N));
        },
        py::arg("p"), py::arg("e"), py::arg("f"), py::arg("lie"), py::arg("precision") = 0);

    m.def(
        "build_example_13_5",
        [](std::uint64_t p, int N) { return build_and_report(build_example_13_5(p, N)); },
        py::arg("p"), py::arg("precision") = 0);

    m.def(
        "local_model_points",
        [](std::uint64_t p, int e, bool ramified, std::uint64_t q) {
            ReducedLattice lat{params_of(p, e, 1), ramified, q};
            auto pts = enumerate_points(lat);
            auto orbits = classify_orbits(pts, ramified, e);
            int fdeg = 0;
            for (std::uint64_t t = q; t > 1; t /= p) ++fdeg;
            ChainRing R = ChainRing::make(p, fdeg, e);
            json out;
            json parr = json::array();
            for (auto& pt : pts) parr.push_back(point_json(R, pt));
            out["points"] = parr;
            json oarr = json::array();
            for (auto& orb : orbits)
                oarr.push_back(json{{"lie_type", json::array({orb.lie_type.first,
                                                              orb.lie_type.second})},
                                    {"members", orb.members}});
            out["orbits"] = oarr;
            return json_to_py(out);
        },
        py::arg("p"), py::arg("e"), py::arg("ramified"), py::arg("q"));

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "1.0.0";
#endif
}

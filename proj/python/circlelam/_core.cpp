#include "circlelam/boundary.hpp"
#include "circlelam/circuit.hpp"
#include "circlelam/lamination.hpp"
#include "circlelam/portrait.hpp"
#include "circlelam/relations.hpp"
#include "circlelam/render.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

namespace py = pybind11;
using namespace circlelam;

namespace {

std::vector<std::string> to_strings(const std::vector<Angle>& angles) {
    std::vector<std::string> out;
    out.reserve(angles.size());
    for (const auto& a : angles) out.push_back(a.str());
    return out;
}

Color color_from(const std::string& name) {
    if (name == "white") return Color::White;
    if (name == "black") return Color::Black;
    throw std::invalid_argument("color must be 'white' or 'black'");
}

/// Owns the pair and its tower; the python surface works in angle strings.
struct Session {
    explicit Session(const std::string& document, std::size_t max_angles)
        : pair(parse_portrait_pair(document)), tower(pair, max_angles) {}

    PortraitPair pair;
    Tower tower;
};

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact circle laminations of critical portrait pairs";

    py::register_exception<BudgetExceeded>(m, "BudgetExceeded");

    m.def("mu", [](const std::string& angle, int degree) { return mu(Angle::parse(angle), degree).str(); },
          py::arg("angle"), py::arg("degree"));
    m.def("preimages", [](const std::string& angle, int degree) {
        return to_strings(preimages(Angle::parse(angle), degree));
    });
    m.def("orbit", [](const std::string& angle, int degree) {
        OrbitDecomposition o = orbit(Angle::parse(angle), degree);
        return py::make_tuple(to_strings(o.preperiod), to_strings(o.cycle));
    });

    m.def("validate_document", [](const std::string& document, int depth_cap) {
        ValidationReport r = validate(parse_portrait_pair(document), depth_cap);
        py::dict out;
        out["pass"] = r.pass;
        out["separation_depth"] = r.separation_depth;
        out["separation_certified"] = r.separation_certified;
        py::list violations;
        for (const auto& v : r.violations)
            violations.append(py::make_tuple(std::string(1, v.axiom), v.witness));
        out["violations"] = violations;
        return out;
    }, py::arg("document"), py::arg("depth_cap") = 8);

    py::class_<Session>(m, "Session")
        .def(py::init<const std::string&, std::size_t>(), py::arg("document"),
             py::arg("max_angles") = std::size_t{10'000'000})
        .def_property_readonly("degree", [](Session& s) { return s.tower.degree(); })
        .def_property_readonly("k", [](Session& s) { return s.tower.k(); })
        .def("zero_angles", [](Session& s) { return to_strings(s.pair.zero.zero_angles); })
        .def("build", [](Session& s, int n) { s.tower.build(n); })
        .def("angle_count", [](Session& s, int n) { return s.tower.angles_at(n).count(); })
        .def("class_count",
             [](Session& s, const std::string& color, int n) {
                 return s.tower.relation(color_from(color), n).class_count();
             })
        .def("gap_count",
             [](Session& s, const std::string& color, int n) {
                 return static_cast<int>(s.tower.gaps(color_from(color), n).gaps.size());
             })
        .def("classes",
             [](Session& s, const std::string& color, int n) {
                 const LevelRelation& rel = s.tower.relation(color_from(color), n);
                 const LevelAngles& la = s.tower.angles_at(n);
                 py::list out;
                 for (const auto& cls : rel.classes) {
                     std::vector<Angle> angles;
                     for (int i : cls) angles.push_back(la.angles[i]);
                     out.append(to_strings(angles));
                 }
                 return out;
             })
        .def("class_of",
             [](Session& s, const std::string& color, int n, const std::string& angle) {
                 const LevelAngles& la = s.tower.angles_at(n);
                 const LevelRelation& rel = s.tower.relation(color_from(color), n);
                 int idx = la.index_of(Angle::parse(angle));
                 if (idx < 0) throw std::invalid_argument("not a level angle: " + angle);
                 std::vector<Angle> angles;
                 for (int i : rel.classes[rel.class_of[idx]]) angles.push_back(la.angles[i]);
                 return to_strings(angles);
             })
        .def("dump_level",
             [](Session& s, const std::string& color, int n) {
                 return s.tower.dump_level(color_from(color), n);
             })
        .def("level_join_count",
             [](Session& s, int n) { return level_join(s.tower, n).block_count(); })
        .def("semiconjugacy_ok",
             [](Session& s, int n) { return check_semiconjugacy(s.tower, n).pass; })
        .def("gap_measures",
             [](Session& s, const std::string& color, int n) {
                 std::vector<std::string> out;
                 for (const auto& gap : s.tower.gaps(color_from(color), n).gaps) {
                     Rat r = gap_boundary_measure(gap, s.pair.zero, n, s.tower.degree());
                     std::ostringstream os;
                     os << r;
                     out.push_back(os.str());
                 }
                 return out;
             })
        .def("approx_class",
             [](Session& s, const std::string& color, const std::string& angle, int depth) {
                 BoundaryClass c = approx_class(s.tower, color_from(color), Angle::parse(angle), depth);
                 return py::make_tuple(to_strings(c.angles), c.exact);
             })
        .def("fatou_class",
             [](Session& s, const std::string& color, const std::string& angle, int depth) {
                 BoundaryClass c = fatou_class(s.tower, color_from(color), Angle::parse(angle), depth);
                 return py::make_tuple(to_strings(c.angles), c.exact);
             })
        .def("render_disk",
             [](Session& s, int n) { return render_lamination(s.tower, n, DiskStyle{}); })
        .def("render_tiling",
             [](Session& s, int n, int coarse) {
                 if (!s.pair.geometry) throw std::invalid_argument("portrait has no geometry block");
                 TurtleTrace trace = turtle_trace(s.tower, *s.pair.geometry, n);
                 return py::make_tuple(render_tiling(s.tower, trace, n, coarse, DiskStyle{}),
                                       trace.closure_error);
             },
             py::arg("n"), py::arg("coarse") = 1);
}

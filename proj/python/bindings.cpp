// Python bindings for the critset toolkit: grid functions, nonlinearities,
// and the main operations of each module.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "critset/dirichlet.hpp"
#include "critset/first_order.hpp"
#include "critset/periodic.hpp"
#include "critset/planar_singularity.hpp"
#include "critset/quadrature.hpp"
#include "critset/spectral.hpp"
#include "critset/third_order.hpp"

namespace py = pybind11;
using namespace critset;

namespace {

Boundary boundary_from_string(const std::string& s) {
    if (s == "periodic") return Boundary::Periodic;
    if (s == "dirichlet") return Boundary::Dirichlet;
    throw invalid_input("boundary must be 'periodic' or 'dirichlet'");
}

const char* boundary_to_string(Boundary b) {
    return b == Boundary::Periodic ? "periodic" : "dirichlet";
}

const char* tag_to_string(PointTag t) {
    switch (t) {
    case PointTag::Fold: return "fold";
    case PointTag::Cusp: return "cusp";
    default: return "unresolved";
    }
}

} // namespace

PYBIND11_MODULE(_critset, m) {
    m.doc() = "Critical sets of nonlinear planar maps and differential operators";

    py::register_exception<NumericalError>(m, "NumericalError");

    // --- core ---------------------------------------------------------------
    py::class_<GridFunction>(m, "GridFunction")
        .def(py::init([](std::vector<double> values, double length, const std::string& b) {
                 return GridFunction(std::move(values), length, boundary_from_string(b));
             }),
             py::arg("values"), py::arg("domain_length"), py::arg("boundary"))
        .def_static(
            "constant",
            [](double c, std::size_t n, double length, const std::string& b) {
                return GridFunction::constant(c, n, length, boundary_from_string(b));
            },
            py::arg("value"), py::arg("n"), py::arg("domain_length"), py::arg("boundary"))
        .def_static(
            "sample",
            [](const std::function<double(double)>& f, std::size_t n, double length,
               const std::string& b) {
                return GridFunction::sample(f, n, length, boundary_from_string(b));
            },
            py::arg("f"), py::arg("n"), py::arg("domain_length"), py::arg("boundary"))
        .def_property_readonly("values",
                               [](const GridFunction& u) { return u.values(); })
        .def_property_readonly("domain_length", &GridFunction::domain_length)
        .def_property_readonly("boundary",
                               [](const GridFunction& u) { return boundary_to_string(u.boundary()); })
        .def("__len__", &GridFunction::size)
        .def("node", &GridFunction::node)
        .def("interpolate", &GridFunction::interpolate)
        .def("max_abs", &GridFunction::max_abs);

    py::class_<Nonlinearity>(m, "Nonlinearity")
        .def_static("polynomial", &Nonlinearity::polynomial, py::arg("coefficients"))
        .def_static("preset", &Nonlinearity::preset, py::arg("name"))
        .def("__call__", &Nonlinearity::eval)
        .def("d1", &Nonlinearity::d1)
        .def("d2", &Nonlinearity::d2);

    m.def("quad_periodic", &quad_periodic, py::arg("u"), py::arg("g"));
    m.def("mean_periodic", &mean_periodic, py::arg("u"));
    m.def("spectral_derivative", &spectral_derivative, py::arg("u"), py::arg("order"),
          py::arg("denoise_floor") = 0.0);

    // --- planar --------------------------------------------------------------
    py::class_<Window>(m, "Window")
        .def(py::init([](double xmin, double xmax, double ymin, double ymax) {
                 return Window{xmin, xmax, ymin, ymax};
             }),
             py::arg("xmin"), py::arg("xmax"), py::arg("ymin"), py::arg("ymax"))
        .def_static("square", &Window::square, py::arg("half_width"));

    py::class_<PlanarMap>(m, "PlanarMap")
        .def_static("preset_z7", &PlanarMap::preset_z7)
        .def_static(
            "zzbar_polynomial",
            [](const std::vector<std::tuple<int, int, std::complex<double>>>& terms) {
                std::vector<ZZbarTerm> parsed;
                for (const auto& [j, k, c] : terms) parsed.push_back({j, k, c});
                return PlanarMap::zzbar_polynomial(std::move(parsed));
            },
            py::arg("terms"))
        .def("__call__",
             [](const PlanarMap& f, const Eigen::Vector2d& p) { return f(p); })
        .def("jacobian", &PlanarMap::jacobian)
        .def("det_jacobian", &PlanarMap::det_jacobian);

    py::class_<CriticalCurve>(m, "CriticalCurve")
        .def_property_readonly("vertices",
                               [](const CriticalCurve& c) { return c.vertices; })
        .def_property_readonly("tags",
                               [](const CriticalCurve& c) {
                                   std::vector<std::string> out;
                                   for (auto t : c.tags) out.emplace_back(tag_to_string(t));
                                   return out;
                               })
        .def("enclosed_area", &CriticalCurve::enclosed_area)
        .def("contains", &CriticalCurve::contains);

    m.def(
        "trace_critical_set",
        [](const PlanarMap& map, const Window& w, int resolution) {
            TraceOptions opts;
            opts.resolution = resolution;
            const TraceResult r = trace_critical_set(map, w, opts);
            return py::make_tuple(r.curves, r.degenerate_points);
        },
        py::arg("map"), py::arg("window"), py::arg("resolution") = 512,
        "Returns (curves, degenerate_points)");
    m.def(
        "count_cusps",
        [](const PlanarMap& map, CriticalCurve& curve) { return count_cusps(map, curve); },
        py::arg("map"), py::arg("curve"));
    m.def(
        "classify_critical_point",
        [](const PlanarMap& map, const Eigen::Vector2d& p) {
            return tag_to_string(classify_critical_point(map, p));
        },
        py::arg("map"), py::arg("point"));
    m.def("image_of_critical_set", &image_of_critical_set, py::arg("map"), py::arg("curves"));
    m.def(
        "preimage_census",
        [](const PlanarMap& map, const std::vector<Eigen::Vector2d>& targets, const Window& w,
           std::optional<Window> critical_window) {
            CensusOptions opts;
            opts.critical_window = critical_window;
            const RegionCensus c = preimage_census(map, targets, w, opts);
            return py::make_tuple(c.counts, c.preimages);
        },
        py::arg("map"), py::arg("targets"), py::arg("window"),
        py::arg("critical_window") = std::nullopt, "Returns (counts, preimages)");
    m.def("topological_degree", &topological_degree, py::arg("map"), py::arg("radius"),
          py::arg("target"), py::arg("samples") = 4096);

    // --- first order -----------------------------------------------------------
    py::class_<FirstOrderProblem>(m, "FirstOrderProblem")
        .def(py::init([](const Nonlinearity& f, std::size_t grid_size) {
                 return FirstOrderProblem{f, grid_size};
             }),
             py::arg("f"), py::arg("grid_size") = 1024);

    py::class_<HomotopyPath>(m, "HomotopyPath")
        .def_property_readonly("slices", [](const HomotopyPath& p) { return p.slices; })
        .def_property_readonly("residuals", [](const HomotopyPath& p) { return p.residuals; });

    m.def("apply_F1", &apply_F1, py::arg("problem"), py::arg("u"));
    m.def("phi1", &phi1, py::arg("problem"), py::arg("u"));
    m.def("phi12", &phi12, py::arg("problem"), py::arg("u"));
    m.def("floquet_multiplier", &floquet_multiplier, py::arg("problem"), py::arg("u"));
    m.def("project_to_C1", &project_to_C1, py::arg("problem"), py::arg("u"),
          py::arg("scan_lo") = -10.0, py::arg("scan_hi") = 10.0);
    m.def(
        "contraction_homotopy",
        [](const FirstOrderProblem& p, const GridFunction& u0, const GridFunction& u1,
           int steps) { return contraction_homotopy(p, u0, u1, steps); },
        py::arg("problem"), py::arg("u0"), py::arg("u1"), py::arg("steps") = 32);
    m.def(
        "count_periodic_solutions",
        [](const FirstOrderProblem& p, const GridFunction& g) {
            const PeriodicSolveResult r = count_periodic_solutions(p, g);
            return py::make_tuple(r.initial_values, r.solutions);
        },
        py::arg("problem"), py::arg("g"), "Returns (initial_values, solutions)");

    // --- dirichlet ---------------------------------------------------------------
    py::class_<PruferTrace>(m, "PruferTrace")
        .def_property_readonly("t", [](const PruferTrace& t) { return t.t_samples; })
        .def_property_readonly("v1", [](const PruferTrace& t) { return t.v1; })
        .def_property_readonly("v1_prime", [](const PruferTrace& t) { return t.v1_prime; })
        .def_property_readonly("omega", [](const PruferTrace& t) { return t.omega; })
        .def_property_readonly("omega_m", [](const PruferTrace& t) { return t.omega_m; })
        .def("omega_end", &PruferTrace::omega_end);

    m.def(
        "shoot_fundamental",
        [](const Nonlinearity& f, const GridFunction& u, int m) {
            return shoot_fundamental(f, u, m);
        },
        py::arg("f"), py::arg("u"), py::arg("m") = 1);
    m.def(
        "is_critical_dirichlet",
        [](const Nonlinearity& f, const GridFunction& u) {
            const CriticalityResult r = is_critical_dirichlet(f, u);
            return py::make_tuple(r.critical, r.omega_pi, r.residual);
        },
        py::arg("f"), py::arg("u"), "Returns (critical, omega_pi, residual)");
    m.def("component_index", &component_index, py::arg("f"), py::arg("u"));
    m.def(
        "component_nonempty",
        [](const Nonlinearity& f, int m) {
            switch (component_nonempty(f, m)) {
            case NonemptyVerdict::Nonempty: return "nonempty";
            case NonemptyVerdict::Empty: return "empty";
            default: return "inconclusive";
            }
        },
        py::arg("f"), py::arg("m"));
    m.def(
        "project_to_critical_dirichlet",
        [](const Nonlinearity& f, const GridFunction& u, int m) {
            return project_to_critical_dirichlet(f, u, m);
        },
        py::arg("f"), py::arg("u"), py::arg("m"));
    m.def(
        "squeeze_homotopy",
        [](const Nonlinearity& f, const GridFunction& u0, const GridFunction& u1, int m,
           int steps) { return squeeze_homotopy(f, u0, u1, m, steps); },
        py::arg("f"), py::arg("u0"), py::arg("u1"), py::arg("m"), py::arg("steps") = 12);

    // --- periodic ------------------------------------------------------------------
    py::class_<MonodromyLift>(m, "MonodromyLift")
        .def_property_readonly("matrix", [](const MonodromyLift& l) { return l.matrix; })
        .def_property_readonly("angle", [](const MonodromyLift& l) { return l.angle; })
        .def("wronskian_defect", &MonodromyLift::wronskian_defect);

    py::class_<PeriodicClassification>(m, "PeriodicClassification")
        .def_property_readonly("kind",
                               [](const PeriodicClassification& c) -> const char* {
                                   switch (c.kind) {
                                   case PeriodicKind::Noncritical: return "noncritical";
                                   case PeriodicKind::RegularCritical: return "regular-critical";
                                   default: return "nonregular";
                                   }
                               })
        .def_property_readonly("index", [](const PeriodicClassification& c) { return c.index_n; })
        .def_property_readonly("trace", [](const PeriodicClassification& c) { return c.trace; })
        .def_property_readonly("angle", [](const PeriodicClassification& c) { return c.angle; });

    m.def(
        "monodromy", [](const GridFunction& h) { return monodromy(h); }, py::arg("h"));
    m.def(
        "classify_periodic", [](const GridFunction& h) { return classify_periodic(h); },
        py::arg("h"));
    m.def(
        "criticality_of_u",
        [](const Nonlinearity& f, const GridFunction& u) { return criticality_of_u(f, u); },
        py::arg("f"), py::arg("u"));

    // --- third order ----------------------------------------------------------------
    py::class_<PotentialPair>(m, "PotentialPair")
        .def(py::init<GridFunction, GridFunction>(), py::arg("h0"), py::arg("h1"))
        .def_property_readonly("h0", [](const PotentialPair& p) { return p.h0; })
        .def_property_readonly("h1", [](const PotentialPair& p) { return p.h1; });

    py::class_<SphereCurve>(m, "SphereCurve")
        .def(py::init([](std::vector<Eigen::Vector3d> samples) {
                 SphereCurve c;
                 c.samples = std::move(samples);
                 return c;
             }),
             py::arg("samples"))
        .def_property_readonly("samples", [](const SphereCurve& c) { return c.samples; })
        .def("__len__", &SphereCurve::size)
        .def("max_norm_defect", &SphereCurve::max_norm_defect)
        .def("locally_convex", [](const SphereCurve& c) { return c.locally_convex(); })
        .def("based", &SphereCurve::based, py::arg("tol") = 1e-6);

    m.def(
        "is_in_Cstar3",
        [](const PotentialPair& p) {
            const MembershipResult r = is_in_Cstar3(p);
            return py::make_tuple(r.member, r.residual);
        },
        py::arg("potentials"), "Returns (member, residual)");
    m.def("curve_from_potentials", &curve_from_potentials, py::arg("potentials"),
          py::arg("grid_size") = 1024, py::arg("membership_tol") = 1e-6);
    m.def(
        "potentials_from_curve",
        [](const SphereCurve& c) {
            const InverseResult r = potentials_from_curve(c);
            return py::make_tuple(r.potentials, r.max_residual);
        },
        py::arg("curve"), "Returns (potentials, max_residual)");
    m.def("roundtrip_residual", &roundtrip_residual, py::arg("potentials"),
          py::arg("grid_size") = 1024);
}

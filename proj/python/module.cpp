#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "surfcover/coverage.hpp"
#include "surfcover/deformation.hpp"
#include "surfcover/synthetic.hpp"

namespace py = pybind11;
using namespace surfcover;

namespace {

TriangleMesh mesh_from_arrays(py::array_t<double, py::array::c_style | py::array::forcecast> verts,
                              py::array_t<int, py::array::c_style | py::array::forcecast> faces) {
    if (verts.ndim() != 2 || verts.shape(1) != 3)
        throw ValidationError("vertices must be an (N, 3) array");
    if (faces.ndim() != 2 || faces.shape(1) != 3)
        throw ValidationError("faces must be an (M, 3) array");
    std::vector<Vec3> v(verts.shape(0));
    auto va = verts.unchecked<2>();
    for (py::ssize_t i = 0; i < verts.shape(0); ++i)
        v[i] = {va(i, 0), va(i, 1), va(i, 2)};
    std::vector<Face> f(faces.shape(0));
    auto fa = faces.unchecked<2>();
    for (py::ssize_t i = 0; i < faces.shape(0); ++i)
        f[i] = {fa(i, 0), fa(i, 1), fa(i, 2)};
    return make_mesh(std::move(v), std::move(f));
}

py::array_t<double> vertices_array(const TriangleMesh& m) {
    py::array_t<double> out({static_cast<py::ssize_t>(m.vertices.size()), py::ssize_t(3)});
    auto a = out.mutable_unchecked<2>();
    for (size_t i = 0; i < m.vertices.size(); ++i) {
        a(i, 0) = m.vertices[i].x;
        a(i, 1) = m.vertices[i].y;
        a(i, 2) = m.vertices[i].z;
    }
    return out;
}

py::array_t<int> faces_array(const TriangleMesh& m) {
    py::array_t<int> out({static_cast<py::ssize_t>(m.faces.size()), py::ssize_t(3)});
    auto a = out.mutable_unchecked<2>();
    for (size_t i = 0; i < m.faces.size(); ++i)
        for (int c = 0; c < 3; ++c) a(i, c) = m.faces[i][c];
    return out;
}

py::array_t<double> complex_to_xy(const std::vector<cpx>& zs) {
    py::array_t<double> out({static_cast<py::ssize_t>(zs.size()), py::ssize_t(2)});
    auto a = out.mutable_unchecked<2>();
    for (size_t i = 0; i < zs.size(); ++i) {
        a(i, 0) = zs[i].real();
        a(i, 1) = zs[i].imag();
    }
    return out;
}

DensityField density_from_array(const ConformalDiskMap& map, py::object density) {
    if (density.is_none()) return DensityField::uniform(map.mesh().vertices.size());
    auto arr = density.cast<py::array_t<double, py::array::c_style | py::array::forcecast>>();
    if (arr.ndim() != 1) throw ValidationError("density must be a 1-D per-vertex array");
    DensityField d{std::vector<double>(arr.data(), arr.data() + arr.shape(0))};
    d.validate(map.mesh().vertices.size());
    return d;
}

}  // namespace

PYBIND11_MODULE(_surfcover, mod) {
    mod.doc() = "Conformal disk mapping and multi-agent coverage";

    py::register_exception<ValidationError>(mod, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericalError>(mod, "NumericalError", PyExc_RuntimeError);

    py::class_<TriangleMesh>(mod, "TriangleMesh")
        .def_property_readonly("vertices", &vertices_array)
        .def_property_readonly("faces", &faces_array)
        .def_property_readonly("boundary", [](const TriangleMesh& m) { return m.boundary; })
        .def("__repr__", [](const TriangleMesh& m) {
            return "TriangleMesh(V=" + std::to_string(m.vertices.size()) +
                   ", F=" + std::to_string(m.faces.size()) + ")";
        });

    mod.def("mesh_from_arrays", &mesh_from_arrays, py::arg("vertices"), py::arg("faces"));
    mod.def("load_mesh", [](const std::string& path) { return load_mesh(path); }, py::arg("path"));
    mod.def("save_mesh",
            [](const TriangleMesh& m, const std::string& path) {
                save_mesh(m, path,
                          path.size() >= 4 && path.substr(path.size() - 4) == ".obj"
                              ? MeshFormat::OBJ
                              : MeshFormat::OFF);
            },
            py::arg("mesh"), py::arg("path"));

    mod.def("fan_disk", &fan_disk, py::arg("n_rim"));
    mod.def("unit_disk_mesh", &unit_disk_mesh, py::arg("n_rings"));
    mod.def("hemisphere_mesh", &hemisphere_mesh, py::arg("n_rings"));
    mod.def("gaussian_bump_mesh", &gaussian_bump_mesh, py::arg("n_rings"), py::arg("amp"),
            py::arg("sigma"), py::arg("cx") = 0.0, py::arg("cy") = 0.0);
    mod.def("terrain_mesh", &terrain_mesh, py::arg("n_rings"), py::arg("seed"),
            py::arg("amp") = 0.15);

    py::class_<Location>(mod, "Location")
        .def_readonly("face", &Location::face)
        .def_readonly("bary", &Location::bary);

    py::class_<ConformalDiskMap>(mod, "DiskMap")
        .def_static(
            "build",
            [](const TriangleMesh& m, bool correction) {
                return ConformalDiskMap::build(m, {.correction = correction});
            },
            py::arg("mesh"), py::arg("correction") = true)
        .def_property_readonly("mesh", &ConformalDiskMap::mesh)
        .def_property_readonly("disk",
                               [](const ConformalDiskMap& m) { return complex_to_xy(m.disk()); })
        .def_property_readonly("diagnostics",
                               [](const ConformalDiskMap& m) {
                                   const DiskMapDiagnostics& d = m.diagnostics();
                                   py::dict out;
                                   out["mean_abs_mu_before"] = d.mean_abs_mu_before;
                                   out["mean_abs_mu_after"] = d.mean_abs_mu_after;
                                   out["max_dilation"] = d.max_dilation;
                                   out["flipped_faces"] = d.flipped_faces;
                                   out["correction_applied"] = d.correction_applied;
                                   return out;
                               })
        .def("forward",
             [](const ConformalDiskMap& m, int face, std::array<double, 3> bary) {
                 cpx z = m.forward({face, bary});
                 return std::make_pair(z.real(), z.imag());
             },
             py::arg("face"), py::arg("bary"))
        .def("inverse",
             [](const ConformalDiskMap& m, double x, double y) { return m.inverse(cpx(x, y)); },
             py::arg("x"), py::arg("y"));

    mod.def(
        "run_coverage",
        [](const ConformalDiskMap& map, int n_agents, uint64_t seed, py::object density,
           double dt, int max_iters, double tol, int quadrature_order, double gain) {
            DensityField d = density_from_array(map, density);
            AgentFleet fleet = random_fleet(map, n_agents, seed, gain);
            LloydConfig cfg{.dt = dt, .max_iters = max_iters, .tol = tol,
                            .quadrature_order = quadrature_order};
            CoverageTrace trace = lloyd_run(map, fleet, d, cfg);
            Quadrature quad = build_quadrature(map, d, quadrature_order);
            py::dict out;
            out["converged"] = trace.converged;
            std::vector<double> costs;
            for (const TraceRecord& r : trace.records) costs.push_back(r.cost);
            out["cost"] = py::cast(costs);
            out["positions"] = complex_to_xy(trace.records.back().disk_positions);
            out["labels"] = py::cast(pullback_partition(map, trace.final_partition, quad));
            return out;
        },
        py::arg("map"), py::arg("n_agents"), py::arg("seed"), py::arg("density") = py::none(),
        py::arg("dt") = 1.0, py::arg("max_iters") = 200, py::arg("tol") = 1e-6,
        py::arg("quadrature_order") = 1, py::arg("gain") = 1.0);

    mod.def("disk_difference",
            [](const ConformalDiskMap& a, const ConformalDiskMap& b) {
                return py::cast(disk_difference(a, b).displacement);
            },
            py::arg("map_before"), py::arg("map_after"));

    mod.def("density_from_deformation",
            [](const std::vector<double>& displacement, double floor, double scale) {
                DeformationMetric m{displacement};
                return py::cast(density_from_deformation(m, floor, scale).phi);
            },
            py::arg("displacement"), py::arg("floor"), py::arg("scale"));
}

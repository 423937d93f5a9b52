#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <set>

#include "surfcover/mesh.hpp"
#include "surfcover/synthetic.hpp"

using namespace surfcover;

namespace {

TriangleMesh single_triangle() {
    return make_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});
}

TriangleMesh quad_split() {
    // unit square split along the diagonal (0,2)
    return make_mesh({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, {{0, 1, 2}, {0, 2, 3}});
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("single triangle is the smallest valid disk mesh") {
    TriangleMesh m = single_triangle();
    CHECK(m.vertices.size() == 3);
    CHECK(m.faces.size() == 1);
    CHECK(m.boundary.size() == 3);
    CHECK(m.boundary == std::vector<int>{0, 1, 2});
}

TEST_CASE("closed tetrahedron is rejected") {
    auto [verts, faces] = tetrahedron_raw();
    CHECK_THROWS_WITH_AS(make_mesh(verts, faces), doctest::Contains("no boundary loop"),
                         ValidationError);
}

TEST_CASE("two triangles sharing an edge") {
    TriangleMesh m = quad_split();
    CHECK(m.vertices.size() == 4);
    CHECK(m.faces.size() == 2);
    CHECK(m.boundary.size() == 4);
    CHECK(m.boundary.front() == 0);
}

TEST_CASE("inconsistent orientation is rejected") {
    CHECK_THROWS_AS(make_mesh({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}},
                              {{0, 1, 2}, {0, 3, 2}}),
                    ValidationError);
}

TEST_CASE("non-manifold edge is rejected") {
    CHECK_THROWS_AS(make_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, -1, 0}},
                              {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}}),
                    ValidationError);
}

TEST_CASE("degenerate face is rejected") {
    CHECK_THROWS_WITH_AS(make_mesh({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 1, 0}},
                                   {{0, 1, 3}, {0, 1, 2}}),
                         doctest::Contains("degenerate"), ValidationError);
}

TEST_CASE("fan disk boundary is the rim") {
    TriangleMesh m = fan_disk(99);
    CHECK(m.vertices.size() == 100);
    CHECK(m.boundary.size() == 99);
    // rim = vertices 1..99, hub 0 absent; oracle: edges with face count 1
    std::map<EdgeKey, int> count;
    for (const Face& t : m.faces)
        for (int c = 0; c < 3; ++c) count[edge_key(t[c], t[(c + 1) % 3])] += 1;
    std::set<int> rim;
    for (const auto& [e, n] : count)
        if (n == 1) {
            rim.insert(e.first);
            rim.insert(e.second);
        }
    std::set<int> loop(m.boundary.begin(), m.boundary.end());
    CHECK(loop == rim);
    CHECK(loop.count(0) == 0);
}

TEST_CASE("Euler characteristic and boundary edge count") {
    for (const TriangleMesh& m :
         {single_triangle(), quad_split(), fan_disk(12), unit_disk_mesh(5), hemisphere_mesh(6)}) {
        int chi = static_cast<int>(m.vertices.size()) - m.num_edges +
                  static_cast<int>(m.faces.size());
        CHECK(chi == 1);
        std::map<EdgeKey, int> count;
        for (const Face& t : m.faces)
            for (int c = 0; c < 3; ++c) count[edge_key(t[c], t[(c + 1) % 3])] += 1;
        int nb = 0;
        for (const auto& [e, n] : count)
            if (n == 1) ++nb;
        CHECK(nb == static_cast<int>(m.boundary.size()));
    }
}

TEST_CASE("cotangent weights: analytic cases") {
    // two equilateral triangles sharing edge (0,1)
    double h = std::sqrt(3.0) / 2.0;
    TriangleMesh m = make_mesh({{0, 0, 0}, {1, 0, 0}, {0.5, h, 0}, {0.5, -h, 0}},
                               {{0, 1, 2}, {0, 3, 1}});
    EdgeWeights w = cotangent_weights(m);
    CHECK(w.at(0, 1) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));

    // unit square split along the diagonal: opposite angles are both 90 deg
    EdgeWeights wq = cotangent_weights(quad_split());
    CHECK(wq.at(0, 2) == doctest::Approx(0.0).epsilon(1e-12));

    // right isoceles triangle, boundary edge opposite the 45 deg angle
    TriangleMesh tri = make_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});
    EdgeWeights wt = cotangent_weights(tri);
    CHECK(wt.at(0, 1) == doctest::Approx(1.0).epsilon(1e-12));  // opposite angle 45 deg
    CHECK(wt.at(1, 2) == doctest::Approx(0.0).epsilon(1e-12));  // opposite angle 90 deg
}

TEST_CASE("weight symmetry under key order") {
    TriangleMesh m = unit_disk_mesh(4);
    EdgeWeights w = cotangent_weights(m);
    for (const auto& [e, k] : w.w) {
        CHECK(w.at(e.first, e.second) == w.at(e.second, e.first));
    }
}

TEST_CASE("near-degenerate angle reported with face") {
    TriangleMesh m = make_mesh({{0, 0, 0}, {1, 0, 0}, {2, 1e-10, 0}}, {{0, 1, 2}});
    CHECK_THROWS_WITH_AS(cotangent_weights(m), doctest::Contains("face 0"), ValidationError);
}

TEST_CASE("all face areas positive under stored orientation") {
    TriangleMesh m = terrain_mesh(6, 7);
    for (size_t f = 0; f < m.faces.size(); ++f) CHECK(face_area3d(m, static_cast<int>(f)) > 0.0);
}

TEST_CASE("save/load round trip in both formats") {
    TriangleMesh m = terrain_mesh(4, 42);
    for (MeshFormat fmt : {MeshFormat::OFF, MeshFormat::OBJ}) {
        auto p = temp_path(fmt == MeshFormat::OFF ? "rt_mesh.off" : "rt_mesh.obj");
        save_mesh(m, p.string(), fmt);
        TriangleMesh r = load_mesh(p.string(), fmt);
        REQUIRE(r.vertices.size() == m.vertices.size());
        REQUIRE(r.faces == m.faces);
        for (size_t v = 0; v < m.vertices.size(); ++v) {
            CHECK(std::fabs(r.vertices[v].x - m.vertices[v].x) <= 1e-12);
            CHECK(std::fabs(r.vertices[v].y - m.vertices[v].y) <= 1e-12);
            CHECK(std::fabs(r.vertices[v].z - m.vertices[v].z) <= 1e-12);
        }
        std::filesystem::remove(p);
    }
}

TEST_CASE("OFF parse failures carry context") {
    auto p = temp_path("bad.off");
    {
        std::FILE* f = std::fopen(p.string().c_str(), "w");
        std::fputs("3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n", f);  // missing header
        std::fclose(f);
    }
    CHECK_THROWS_WITH_AS(load_mesh(p.string(), MeshFormat::OFF), doctest::Contains("OFF header"),
                         ValidationError);
    std::filesystem::remove(p);
}

TEST_CASE("OBJ ignores normals and texture records") {
    auto p = temp_path("mini.obj");
    {
        std::FILE* f = std::fopen(p.string().c_str(), "w");
        std::fputs("vn 0 0 1\nv 0 0 0\nv 1 0 0\nv 0 1 0\nvt 0 0\nf 1/1/1 2/1/1 3/1/1\n", f);
        std::fclose(f);
    }
    TriangleMesh m = load_mesh(p.string(), MeshFormat::OBJ);
    CHECK(m.vertices.size() == 3);
    CHECK(m.faces.size() == 1);
    std::filesystem::remove(p);
}

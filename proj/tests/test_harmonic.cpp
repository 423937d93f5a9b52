#include <doctest.h>

#include <random>

#include "surfcover/harmonic.hpp"
#include "surfcover/synthetic.hpp"

using namespace surfcover;

TEST_CASE("boundary angles: equal edges give equal spacing") {
    // square boundary traversed 0,1,2,3 with unit edges
    TriangleMesh m = make_mesh({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0.5, 0.5, 0}},
                               {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}});
    std::vector<double> th = boundary_circle_map(m);
    REQUIRE(th.size() == 4);
    CHECK(th[0] == doctest::Approx(0.0));
    CHECK(th[1] == doctest::Approx(M_PI / 2));
    CHECK(th[2] == doctest::Approx(M_PI));
    CHECK(th[3] == doctest::Approx(3 * M_PI / 2));
}

TEST_CASE("boundary angles: cumulative arc length") {
    TriangleMesh m = make_mesh({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}}, {{0, 1, 2}});
    // boundary loop 0->1->2->0, edge lengths 1, 1, sqrt(2)
    std::vector<double> th = boundary_circle_map(m);
    double total = 2.0 + std::sqrt(2.0);
    CHECK(th[0] == doctest::Approx(0.0));
    CHECK(th[1] == doctest::Approx(2 * M_PI * 1.0 / total));
    CHECK(th[2] == doctest::Approx(2 * M_PI * 2.0 / total));
}

TEST_CASE("boundary angles proportional to edge lengths") {
    TriangleMesh m = terrain_mesh(6, 99);
    std::vector<double> th = boundary_circle_map(m);
    const auto& loop = m.boundary;
    double total = 0.0;
    std::vector<double> len(loop.size());
    for (size_t i = 0; i < loop.size(); ++i) {
        len[i] = norm(m.vertices[loop[(i + 1) % loop.size()]] - m.vertices[loop[i]]);
        total += len[i];
    }
    for (size_t i = 0; i + 1 < loop.size(); ++i) {
        double diff = th[i + 1] - th[i];
        CHECK(diff == doctest::Approx(2 * M_PI * len[i] / total).epsilon(1e-12));
        CHECK(diff > 0.0);
    }
}

TEST_CASE("symmetric hub maps to the origin") {
    TriangleMesh m = fan_disk(16);
    EdgeWeights w = cotangent_weights(m);
    DiskEmbedding emb = solve_harmonic(m, w, boundary_circle_map(m));
    CHECK(std::abs(emb.pos[0]) <= 1e-10);
    for (int v : m.boundary) CHECK(std::fabs(std::abs(emb.pos[v]) - 1.0) <= 1e-10);
}

TEST_CASE("flat unit disk reproduces itself") {
    TriangleMesh m = unit_disk_mesh(8);
    EdgeWeights w = cotangent_weights(m);
    DiskEmbedding emb = solve_harmonic(m, w, boundary_circle_map(m));
    // boundary spacing is uniform; the identity (up to rotation) is harmonic.
    // the first boundary vertex sits at angle 0 while in the mesh it sits at
    // angle 0 too, so the embedding matches the input coordinates.
    for (size_t v = 0; v < m.vertices.size(); ++v) {
        CHECK(std::fabs(emb.pos[v].real() - m.vertices[v].x) <= 1e-8);
        CHECK(std::fabs(emb.pos[v].imag() - m.vertices[v].y) <= 1e-8);
    }
    CHECK(harmonic_residual(m, w, emb) <= 1e-8);
}

TEST_CASE("hemisphere residual within tolerance") {
    TriangleMesh m = hemisphere_mesh(13);  // 508 vertices
    CHECK(m.vertices.size() >= 500);
    EdgeWeights w = cotangent_weights(m);
    DiskEmbedding emb = solve_harmonic(m, w, boundary_circle_map(m));
    // independent residual recomputation
    double worst = 0.0;
    std::vector<bool> bnd(m.vertices.size(), false);
    for (int v : m.boundary) bnd[v] = true;
    for (size_t i = 0; i < m.vertices.size(); ++i) {
        if (bnd[i]) continue;
        cpx acc(0, 0);
        for (const auto& [e, k] : w.w) {
            if (e.first == static_cast<int>(i)) acc += k * (emb.pos[e.second] - emb.pos[i]);
            if (e.second == static_cast<int>(i)) acc += k * (emb.pos[e.first] - emb.pos[i]);
        }
        worst = std::max(worst, std::abs(acc));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("harmonic energy analytic cases") {
    // identity embedding of a fine flat disk: energy -> 2*pi
    TriangleMesh m = unit_disk_mesh(18);  // 1944 faces
    EdgeWeights w = cotangent_weights(m);
    DiskEmbedding ident;
    for (const Vec3& v : m.vertices) ident.pos.push_back(cpx(v.x, v.y));
    double e = harmonic_energy(m, w, ident);
    CHECK(e == doctest::Approx(2 * M_PI).epsilon(0.05));

    DiskEmbedding collapsed;
    collapsed.pos.assign(m.vertices.size(), cpx(0.25, -0.5));
    CHECK(harmonic_energy(m, w, collapsed) == 0.0);
}

TEST_CASE("harmonic solve minimizes the energy") {
    TriangleMesh m = hemisphere_mesh(6);
    EdgeWeights w = cotangent_weights(m);
    DiskEmbedding emb = solve_harmonic(m, w, boundary_circle_map(m));
    double e0 = harmonic_energy(m, w, emb);
    std::vector<bool> bnd(m.vertices.size(), false);
    for (int v : m.boundary) bnd[v] = true;
    std::mt19937_64 rng(5);
    auto u = [&]() { return (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5) * 2e-3; };
    for (int trial = 0; trial < 100; ++trial) {
        DiskEmbedding pert = emb;
        for (size_t v = 0; v < pert.pos.size(); ++v)
            if (!bnd[v]) pert.pos[v] += cpx(u(), u());
        CHECK(harmonic_energy(m, w, pert) >= e0 - 1e-12);
    }
}

TEST_CASE("rotated boundary data rotates the solution") {
    TriangleMesh m = hemisphere_mesh(6);
    EdgeWeights w = cotangent_weights(m);
    std::vector<double> th = boundary_circle_map(m);
    DiskEmbedding base = solve_harmonic(m, w, th);
    double alpha = 0.7;
    std::vector<double> th2 = th;
    for (double& t : th2) t += alpha;
    DiskEmbedding rot = solve_harmonic(m, w, th2);
    cpx r = std::polar(1.0, alpha);
    for (size_t v = 0; v < base.pos.size(); ++v)
        CHECK(std::abs(rot.pos[v] - r * base.pos[v]) <= 1e-10);
}

TEST_CASE("maximum principle on a convex-weight mesh") {
    TriangleMesh m = unit_disk_mesh(6);
    EdgeWeights w = cotangent_weights(m);
    bool nonneg = true;
    for (const auto& [e, k] : w.w)
        if (k < 0) nonneg = false;
    DiskEmbedding emb = solve_harmonic(m, w, boundary_circle_map(m));
    if (nonneg) {
        std::vector<bool> bnd(m.vertices.size(), false);
        for (int v : m.boundary) bnd[v] = true;
        for (size_t v = 0; v < emb.pos.size(); ++v)
            if (!bnd[v]) CHECK(std::abs(emb.pos[v]) < 1.0);
    }
}

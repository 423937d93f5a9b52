// Acceptance suite: one line per criterion, exit 0 only if all pass.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <queue>
#include <random>
#include <sstream>

#include "surfcover/coverage.hpp"
#include "surfcover/deformation.hpp"
#include "surfcover/io.hpp"
#include "surfcover/synthetic.hpp"

namespace fs = std::filesystem;
using namespace surfcover;

namespace {

int g_failures = 0;

void report(int num, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << "criterion " << (num < 10 ? "0" : "") << num << " " << name << ": "
              << (ok ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++g_failures;
}

std::mt19937_64 g_rng(2027);
double unit() { return static_cast<double>(g_rng() >> 11) * 0x1.0p-53; }

std::vector<cpx> plane_positions(const TriangleMesh& m) {
    std::vector<cpx> p;
    for (const Vec3& v : m.vertices) p.push_back(cpx(v.x, v.y));
    return p;
}

std::vector<PointConstraint> boundary_constraints(const TriangleMesh& m,
                                                  const std::vector<cpx>& target) {
    std::vector<PointConstraint> cs;
    for (int v : m.boundary) cs.push_back({v, target[v], PointConstraint::Kind::fixed_both});
    return cs;
}

void criterion_1_harmonic_residual() {
    TriangleMesh m = hemisphere_mesh(13);  // 547 vertices
    EdgeWeights w = cotangent_weights(m);
    DiskEmbedding emb = solve_harmonic(m, w, boundary_circle_map(m));
    // independent recomputation of the discrete Laplacian residual
    std::vector<cpx> lap(m.vertices.size(), cpx(0, 0));
    for (const auto& [e, k] : w.w) {
        cpx d = emb.pos[e.second] - emb.pos[e.first];
        lap[e.first] += k * d;
        lap[e.second] -= k * d;
    }
    double worst = 0.0;
    for (size_t v = 0; v < m.vertices.size(); ++v)
        if (!m.is_boundary_vertex(static_cast<int>(v))) worst = std::max(worst, std::abs(lap[v]));
    report(1, "harmonic residual <= 1e-8 on a 500-vertex hemisphere", worst <= 1e-8,
           "V=" + std::to_string(m.vertices.size()) + ", residual=" + fmt_double(worst));
}

std::vector<TriangleMesh> test_suite() {
    return {unit_disk_mesh(10), hemisphere_mesh(10), gaussian_bump_mesh(10, 0.8, 0.3, 0.2, -0.1),
            terrain_mesh(10, 2024, 0.35)};
}

void criterion_2_boundary_fidelity() {
    double worst = 0.0;
    for (const TriangleMesh& m : test_suite()) {
        ConformalDiskMap map = ConformalDiskMap::build(m);
        for (int v : m.boundary)
            worst = std::max(worst, std::fabs(std::abs(map.disk()[v]) - 1.0));
    }
    report(2, "boundary vertices on the unit circle to 1e-10", worst <= 1e-10,
           "worst=" + fmt_double(worst));
}

void criterion_3_bijectivity() {
    int flipped = 0;
    for (const TriangleMesh& m : test_suite())
        flipped += ConformalDiskMap::build(m).diagnostics().flipped_faces;
    report(3, "zero flipped disk faces across the surface suite", flipped == 0,
           "flipped=" + std::to_string(flipped));
}

void criterion_4_distortion() {
    // flat disk: essentially conformal before and after; curved surfaces:
    // the correction pass never increases the mean distortion, and strictly
    // reduces it where the harmonic map is not already at the sampling floor
    // (the terrain patch)
    ConformalDiskMap flat = ConformalDiskMap::build(unit_disk_mesh(10));
    bool flat_ok = flat.diagnostics().mean_abs_mu_before <= 1e-8 &&
                   flat.diagnostics().mean_abs_mu_after <= 1e-8;

    bool curved_ok = true;
    for (TriangleMesh m : {hemisphere_mesh(10), gaussian_bump_mesh(10, 0.8, 0.3, 0.2, -0.1)}) {
        const DiskMapDiagnostics& d = ConformalDiskMap::build(m).diagnostics();
        curved_ok = curved_ok && d.mean_abs_mu_after <= d.mean_abs_mu_before;
    }
    const DiskMapDiagnostics& t = ConformalDiskMap::build(terrain_mesh(10, 2024, 0.35)).diagnostics();
    bool terrain_ok = t.correction_applied && t.mean_abs_mu_after < t.mean_abs_mu_before;
    report(4, "correction reduces mean |mu| (never increases it)",
           flat_ok && curved_ok && terrain_ok,
           "terrain " + fmt_double(t.mean_abs_mu_before) + " -> " +
               fmt_double(t.mean_abs_mu_after));
}

void criterion_5_cayley() {
    double worst_rt = 0.0, worst_im = 0.0;
    for (int i = 0; i < 1000; ++i) {
        cpx z = std::polar(std::sqrt(unit()) * 0.999, 2 * M_PI * unit());
        worst_rt = std::max(worst_rt, std::abs(cayley_inv(cayley(z)) - z));
    }
    for (int i = 0; i < 1000; ++i) {
        cpx z = std::polar(1.0, 2 * M_PI * unit());
        if (std::abs(z - 1.0) < 0.05) continue;  // pole conditioning margin
        worst_im = std::max(worst_im, std::fabs(cayley(z).imag()));
    }
    report(5, "Cayley round trip < 1e-12 and circle -> real axis",
           worst_rt < 1e-12 && worst_im < 1e-12,
           "rt=" + fmt_double(worst_rt) + ", im=" + fmt_double(worst_im));
}

void criterion_6_lbs_roundtrip() {
    TriangleMesh m = unit_disk_mesh(8);
    std::vector<cpx> src = plane_positions(m);
    double worst = 0.0;

    // constant mu = 1/3 (affine stretch)
    {
        std::vector<cpx> tgt = src;
        for (cpx& z : tgt) z = cpx(2.0 * z.real(), z.imag());
        BeltramiField mu{std::vector<cpx>(m.faces.size(), cpx(1.0 / 3.0, 0))};
        std::vector<cpx> out = lbs_solve(src, m.faces, mu, boundary_constraints(m, tgt));
        BeltramiField meas = beltrami_from_map(src, out, m.faces);
        for (const cpx& v : meas.mu) worst = std::max(worst, std::abs(v - cpx(1.0 / 3.0, 0)));
    }
    // smooth synthetic quasi-conformal deformation
    {
        std::vector<cpx> tgt = src;
        for (cpx& z : tgt) z = z + 0.15 * std::conj(z) + cpx(0.05, 0.0) * z * z;
        BeltramiField mu = beltrami_from_map(src, tgt, m.faces);
        std::vector<cpx> out = lbs_solve(src, m.faces, mu, boundary_constraints(m, tgt));
        BeltramiField meas = beltrami_from_map(src, out, m.faces);
        for (size_t f = 0; f < mu.mu.size(); ++f)
            worst = std::max(worst, std::abs(meas.mu[f] - mu.mu[f]));
    }
    report(6, "LBS reconstructs prescribed mu to 1e-8 per face", worst <= 1e-8,
           "worst=" + fmt_double(worst));
}

void criterion_7_voronoi_oracle() {
    bool ok = true;
    double worst = 0.0;
    for (int inst = 0; inst < 20; ++inst) {
        size_t n_sites = 2 + static_cast<size_t>(unit() * 6.99);
        size_t n_samples = 100 + static_cast<size_t>(unit() * 900.0);
        std::vector<cpx> sites;
        for (size_t i = 0; i < n_sites; ++i) sites.push_back(cpx(2 * unit() - 1, 2 * unit() - 1));
        Quadrature quad;
        for (size_t s = 0; s < n_samples; ++s) {
            Sample sm;
            sm.z = cpx(2 * unit() - 1, 2 * unit() - 1);
            sm.weight = unit();
            quad.samples.push_back(sm);
            quad.total_weight += sm.weight;
        }
        VoronoiPartition part = voronoi_assign(sites, quad);
        double h = coverage_cost(sites, quad);

        std::vector<double> mass(n_sites, 0.0);
        std::vector<cpx> moment(n_sites, cpx(0, 0));
        double h2 = 0.0;
        for (size_t s = 0; s < n_samples; ++s) {
            const Sample& sm = quad.samples[s];
            size_t best = 0;
            for (size_t i = 1; i < n_sites; ++i)
                if (std::norm(sm.z - sites[i]) < std::norm(sm.z - sites[best])) best = i;
            ok = ok && part.assign[s] == static_cast<int>(best);
            mass[best] += sm.weight;
            moment[best] += sm.weight * sm.z;
            h2 += sm.weight * std::norm(sm.z - sites[best]);
        }
        for (size_t i = 0; i < n_sites; ++i) {
            worst = std::max(worst, std::fabs(part.mass[i] - mass[i]));
            cpx c = mass[i] > 0 ? moment[i] / mass[i] : sites[i];
            worst = std::max(worst, std::abs(part.centroid[i] - c));
        }
        worst = std::max(worst, std::fabs(h - h2));
    }
    report(7, "Voronoi/centroid/mass/H match brute force on 20 instances", ok && worst <= 1e-12,
           "worst=" + fmt_double(worst));
}

void criterion_8_lloyd() {
    TriangleMesh m = unit_disk_mesh(10);
    ConformalDiskMap map = ConformalDiskMap::build(m);
    DensityField one = DensityField::uniform(m.vertices.size());

    AgentFleet solo = random_fleet(map, 1, 5);
    CoverageTrace t1 = lloyd_run(map, solo, one, {.dt = 1.0, .max_iters = 200, .tol = 1e-6});
    bool solo_ok = std::abs(t1.records.back().disk_positions[0]) < 1e-3;

    AgentFleet six = random_fleet(map, 6, 11);
    CoverageTrace t6 = lloyd_run(map, six, one, {.dt = 1.0, .max_iters = 400, .tol = 1e-3});
    bool six_ok = t6.records.back().max_centroid_dist < 1e-3;

    bool monotone = true;
    for (const CoverageTrace* t : {&t1, &t6})
        for (size_t i = 1; i < t->records.size(); ++i)
            monotone = monotone && t->records[i].cost <= t->records[i - 1].cost + 1e-9;

    report(8, "Lloyd: monotone H, 1-agent to origin, 6-agent converged",
           solo_ok && six_ok && monotone,
           "|p|=" + fmt_double(std::abs(t1.records.back().disk_positions[0])));
}

void criterion_9_analytic_integrals() {
    TriangleMesh m = unit_disk_mesh(18);
    ConformalDiskMap map = ConformalDiskMap::build(m);
    Quadrature quad = build_quadrature(map, DensityField::uniform(m.vertices.size()), 1);

    double h = coverage_cost({cpx(0, 0)}, quad);
    bool cost_ok = std::fabs(h - M_PI / 2.0) <= 0.02 * (M_PI / 2.0);

    Quadrature half;
    for (const Sample& s : quad.samples)
        if (s.z.real() > 0.0) {
            half.samples.push_back(s);
            half.total_weight += s.weight;
        }
    cpx c = voronoi_assign({cpx(0.5, 0)}, half).centroid[0];
    bool centroid_ok = std::abs(c - cpx(4.0 / (3.0 * M_PI), 0.0)) <= 2e-2;
    report(9, "single-site cost ~ pi/2 and half-disk centroid ~ 4/(3 pi)",
           cost_ok && centroid_ok,
           "H=" + fmt_double(h) + ", Cx=" + fmt_double(c.real()));
}

void criterion_10_pullback() {
    TriangleMesh m = gaussian_bump_mesh(10, 0.5, 0.35);
    ConformalDiskMap map = ConformalDiskMap::build(m);
    Quadrature quad = build_quadrature(map, DensityField::uniform(m.vertices.size()), 1);
    VoronoiPartition part =
        voronoi_assign({cpx(-0.4, 0.1), cpx(0.3, -0.2), cpx(0.0, 0.5)}, quad);
    std::vector<int> labels = pullback_partition(map, part, quad);
    bool labels_ok = labels.size() == m.faces.size();
    for (int l : labels) labels_ok = labels_ok && l >= 0 && l < 3;

    // pullback_path o forward: sampled surface locations round-trip in 3D
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        int f = static_cast<int>(unit() * (static_cast<double>(m.faces.size()) - 1));
        double a = unit(), b = unit();
        if (a + b > 1) { a = 1 - a; b = 1 - b; }
        Location loc{f, {1 - a - b, a, b}};
        Vec3 p = surface_point(map, loc);
        Vec3 q = pullback_path(map, {map.forward(loc)})[0];
        worst = std::max(worst, norm(p - q));
    }
    report(10, "pull-back: one label per face, path round trip to 1e-10",
           labels_ok && worst <= 1e-10, "worst=" + fmt_double(worst));
}

void criterion_11_deformation() {
    const double cx = 0.35, cy = 0.1;
    TriangleMesh before = unit_disk_mesh(10);
    TriangleMesh after = gaussian_bump_mesh(10, 0.5, 0.15, cx, cy);
    ConformalDiskMap map_b = ConformalDiskMap::build(before);
    ConformalDiskMap map_a = ConformalDiskMap::build(after);

    bool zero_ok = disk_difference(map_b, map_b).max() == 0.0;

    DeformationMetric metric = disk_difference(map_b, map_a);
    // argmax within 2 rings (edge hops) of the perturbation center
    int target = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (size_t v = 0; v < before.vertices.size(); ++v) {
        double dx = before.vertices[v].x - cx, dy = before.vertices[v].y - cy;
        if (dx * dx + dy * dy < bd) { bd = dx * dx + dy * dy; target = static_cast<int>(v); }
    }
    std::vector<std::vector<int>> adj(before.vertices.size());
    for (const Face& t : before.faces)
        for (int c = 0; c < 3; ++c) {
            adj[t[c]].push_back(t[(c + 1) % 3]);
            adj[t[(c + 1) % 3]].push_back(t[c]);
        }
    std::vector<int> dist(before.vertices.size(), -1);
    std::queue<int> q;
    dist[target] = 0;
    q.push(target);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[v])
            if (dist[w] < 0) { dist[w] = dist[v] + 1; q.push(w); }
    }
    bool argmax_ok = dist[metric.argmax()] >= 0 && dist[metric.argmax()] <= 2;

    // paired simulation: deformation-derived density pulls an agent closer
    DensityField weighted = density_from_deformation(metric, 0.05, 1.0);
    DensityField uniform = DensityField::uniform(after.vertices.size());
    cpx hot = map_a.disk()[metric.argmax()];
    auto nearest = [&](const DensityField& d) {
        AgentFleet fleet = random_fleet(map_a, 4, 2026);
        CoverageTrace tr = lloyd_run(map_a, fleet, d, {.dt = 1.0, .max_iters = 300, .tol = 1e-5});
        double best = std::numeric_limits<double>::infinity();
        for (const cpx& z : tr.records.back().disk_positions)
            best = std::min(best, std::abs(z - hot));
        return best;
    };
    double dw = nearest(weighted), du = nearest(uniform);
    report(11, "deformation: zero metric, localized argmax, density pulls agents",
           zero_ok && argmax_ok && dw < du,
           "ring=" + std::to_string(dist[metric.argmax()]) + ", " + fmt_double(dw) + " < " +
               fmt_double(du));
}

#ifndef SURFCOVER_CLI_PATH
#define SURFCOVER_CLI_PATH ""
#endif

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void criterion_12_determinism() {
    const std::string cli = SURFCOVER_CLI_PATH;
    if (cli.empty() || !fs::exists(cli)) {
        report(12, "repeated CLI runs are byte-identical", false, "CLI binary not found");
        return;
    }
    fs::path work = fs::temp_directory_path() / "surfcover_accept";
    fs::remove_all(work);
    fs::create_directories(work);
    save_mesh(gaussian_bump_mesh(8, 0.5, 0.35), (work / "mesh.off").string(), MeshFormat::OFF);
    {
        std::ofstream cfg(work / "cover.json");
        cfg << "{\"mesh\": \"" << (work / "mesh.off").string()
            << "\", \"n_agents\": 5, \"seed\": 99, \"dt\": 1.0, \"max_iters\": 200, "
               "\"tol\": 1e-4, \"quadrature_order\": 1, \"density\": {\"mode\": \"uniform\"}}";
    }
    auto run = [&](const std::string& out) {
        std::string cmd = cli + " cover --config " + (work / "cover.json").string() + " --out " +
                          out + " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    int r1 = run((work / "a").string());
    int r2 = run((work / "b").string());
    bool ok = r1 == 0 && r2 == 0;
    std::string detail;
    if (ok) {
        for (const auto& entry : fs::directory_iterator(work / "a")) {
            fs::path other = work / "b" / entry.path().filename();
            if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
                ok = false;
                detail = "mismatch: " + entry.path().filename().string();
            }
        }
    } else {
        detail = "exit codes " + std::to_string(r1) + "/" + std::to_string(r2);
    }
    report(12, "repeated CLI runs are byte-identical", ok, detail);
    fs::remove_all(work);
}

}  // namespace

int main() {
    criterion_1_harmonic_residual();
    criterion_2_boundary_fidelity();
    criterion_3_bijectivity();
    criterion_4_distortion();
    criterion_5_cayley();
    criterion_6_lbs_roundtrip();
    criterion_7_voronoi_oracle();
    criterion_8_lloyd();
    criterion_9_analytic_integrals();
    criterion_10_pullback();
    criterion_11_deformation();
    criterion_12_determinism();
    std::cout << (g_failures == 0 ? "all criteria passed"
                                  : std::to_string(g_failures) + " criteria failed")
              << "\n";
    return g_failures == 0 ? 0 : 1;
}

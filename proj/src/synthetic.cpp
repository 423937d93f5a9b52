#include "surfcover/synthetic.hpp"

#include <cmath>
#include <random>

namespace surfcover {

TriangleMesh fan_disk(int n_rim) {
    if (n_rim < 3) throw ValidationError("fan_disk needs at least 3 rim vertices");
    std::vector<Vec3> verts;
    verts.push_back({0, 0, 0});
    for (int i = 0; i < n_rim; ++i) {
        double a = 2.0 * M_PI * i / n_rim;
        verts.push_back({std::cos(a), std::sin(a), 0.0});
    }
    std::vector<Face> faces;
    for (int i = 0; i < n_rim; ++i)
        faces.push_back({0, 1 + i, 1 + (i + 1) % n_rim});
    return make_mesh(std::move(verts), std::move(faces));
}

TriangleMesh unit_disk_mesh(int n_rings) {
    if (n_rings < 1) throw ValidationError("unit_disk_mesh needs at least 1 ring");
    std::vector<Vec3> verts;
    std::vector<int> ring_start;  // first vertex index of ring k (ring 0 = center)
    verts.push_back({0, 0, 0});
    ring_start.push_back(0);
    for (int k = 1; k <= n_rings; ++k) {
        ring_start.push_back(static_cast<int>(verts.size()));
        int m = 6 * k;
        double r = static_cast<double>(k) / n_rings;
        for (int i = 0; i < m; ++i) {
            double a = 2.0 * M_PI * i / m;
            verts.push_back({r * std::cos(a), r * std::sin(a), 0.0});
        }
    }
    std::vector<Face> faces;
    // inner fan
    for (int i = 0; i < 6; ++i)
        faces.push_back({0, 1 + i, 1 + (i + 1) % 6});
    // ring bands: between ring k (6k verts) and ring k+1 (6(k+1) verts),
    // 6 sectors, each with k inner and k+1 outer vertices.
    for (int k = 1; k < n_rings; ++k) {
        int in0 = ring_start[k], out0 = ring_start[k + 1];
        int nin = 6 * k, nout = 6 * (k + 1);
        for (int s = 0; s < 6; ++s) {
            for (int j = 0; j < k; ++j) {
                int a = in0 + (s * k + j) % nin;
                int b = in0 + (s * k + j + 1) % nin;
                int c = out0 + (s * (k + 1) + j) % nout;
                int d = out0 + (s * (k + 1) + j + 1) % nout;
                faces.push_back({a, c, d});
                faces.push_back({a, d, b});
            }
            // closing triangle of the sector
            int a = in0 + (s * k + k) % nin;
            int c = out0 + (s * (k + 1) + k) % nout;
            int d = out0 + (s * (k + 1) + k + 1) % nout;
            faces.push_back({a, c, d});
        }
    }
    return make_mesh(std::move(verts), std::move(faces));
}

TriangleMesh hemisphere_mesh(int n_rings) {
    TriangleMesh disk = unit_disk_mesh(n_rings);
    std::vector<Vec3> verts = disk.vertices;
    for (Vec3& v : verts) {
        double r = std::hypot(v.x, v.y);
        double theta = r * M_PI / 2.0;  // polar angle proportional to radius
        double s = r > 0 ? std::sin(theta) / r : 0.0;
        v = {v.x * s, v.y * s, std::cos(theta)};
    }
    return make_mesh(std::move(verts), disk.faces);
}

TriangleMesh gaussian_bump_mesh(int n_rings, double amp, double sigma, double cx, double cy) {
    TriangleMesh disk = unit_disk_mesh(n_rings);
    std::vector<Vec3> verts = disk.vertices;
    for (Vec3& v : verts) {
        double d2 = (v.x - cx) * (v.x - cx) + (v.y - cy) * (v.y - cy);
        v.z = amp * std::exp(-d2 / (2.0 * sigma * sigma));
    }
    return make_mesh(std::move(verts), disk.faces);
}

TriangleMesh terrain_mesh(int n_rings, uint64_t seed, double amp) {
    TriangleMesh disk = unit_disk_mesh(n_rings);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> freq(0.5, 3.0), phase(0.0, 2.0 * M_PI),
        weight(0.2, 1.0);
    struct Wave { double fx, fy, ph, w; };
    std::vector<Wave> waves(6);
    double wsum = 0.0;
    for (Wave& w : waves) {
        w = {freq(rng), freq(rng), phase(rng), weight(rng)};
        wsum += w.w;
    }
    std::vector<Vec3> verts = disk.vertices;
    for (Vec3& v : verts) {
        double h = 0.0;
        for (const Wave& w : waves)
            h += w.w * std::sin(w.fx * M_PI * v.x + w.fy * M_PI * v.y + w.ph);
        v.z = amp * h / wsum;
    }
    return make_mesh(std::move(verts), disk.faces);
}

std::pair<std::vector<Vec3>, std::vector<Face>> tetrahedron_raw() {
    std::vector<Vec3> verts = {{0, 0, 0}, {1, 0, 0}, {0.5, std::sqrt(3.0) / 2.0, 0},
                               {0.5, std::sqrt(3.0) / 6.0, std::sqrt(6.0) / 3.0}};
    std::vector<Face> faces = {{0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {2, 0, 3}};
    return {verts, faces};
}

}  // namespace surfcover

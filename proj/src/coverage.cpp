#include "surfcover/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <set>

namespace surfcover {

void DensityField::validate(size_t n_vertices) const {
    if (phi.size() != n_vertices) throw ValidationError("density size does not match mesh");
    bool any = false;
    for (double v : phi) {
        if (!(v >= 0.0)) throw ValidationError("negative density value");
        if (v > 0.0) any = true;
    }
    if (!any) throw ValidationError("density is identically zero");
}

DensityField DensityField::uniform(size_t n_vertices, double value) {
    return {std::vector<double>(n_vertices, value)};
}

Vec3 surface_point(const ConformalDiskMap& map, const Location& loc) {
    const Face& t = map.mesh().faces[loc.face];
    const auto& v = map.mesh().vertices;
    return v[t[0]] * loc.bary[0] + v[t[1]] * loc.bary[1] + v[t[2]] * loc.bary[2];
}

namespace {

using Bary = std::array<double, 3>;

void subdivide(const Bary& a, const Bary& b, const Bary& c, int depth,
               const std::function<void(const Bary&, const Bary&, const Bary&)>& emit) {
    if (depth == 0) {
        emit(a, b, c);
        return;
    }
    auto mid = [](const Bary& p, const Bary& q) {
        return Bary{0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1]), 0.5 * (p[2] + q[2])};
    };
    Bary ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
    subdivide(a, ab, ca, depth - 1, emit);
    subdivide(ab, b, bc, depth - 1, emit);
    subdivide(ca, bc, c, depth - 1, emit);
    subdivide(ab, bc, ca, depth - 1, emit);  // central triangle keeps the parent centroid
}

}  // namespace

Quadrature build_quadrature(const ConformalDiskMap& map, const DensityField& density, int order) {
    if (order < 0) throw ValidationError("quadrature order must be >= 0");
    density.validate(map.mesh().vertices.size());
    Quadrature quad;
    const auto& faces = map.mesh().faces;
    quad.face_centroid_sample.assign(faces.size(), -1);
    for (size_t f = 0; f < faces.size(); ++f) {
        const Face& t = faces[f];
        cpx d0 = map.disk()[t[0]], d1 = map.disk()[t[1]], d2 = map.disk()[t[2]];
        double phi0 = density.phi[t[0]], phi1 = density.phi[t[1]], phi2 = density.phi[t[2]];
        size_t first = quad.samples.size();
        subdivide({1, 0, 0}, {0, 1, 0}, {0, 0, 1}, order,
                  [&](const Bary& a, const Bary& b, const Bary& c) {
                      cpx pa = a[0] * d0 + a[1] * d1 + a[2] * d2;
                      cpx pb = b[0] * d0 + b[1] * d1 + b[2] * d2;
                      cpx pc = c[0] * d0 + c[1] * d1 + c[2] * d2;
                      double area = signed_area(pa, pb, pc);
                      Bary cen{(a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0,
                               (a[2] + b[2] + c[2]) / 3.0};
                      double phi = cen[0] * phi0 + cen[1] * phi1 + cen[2] * phi2;
                      Sample s;
                      s.z = (pa + pb + pc) / 3.0;
                      s.weight = area * phi;
                      s.face = static_cast<int>(f);
                      s.bary = cen;
                      quad.samples.push_back(s);
                      quad.total_weight += s.weight;
                  });
        // the sub-triangle whose centroid coincides with the face centroid
        double best = std::numeric_limits<double>::infinity();
        for (size_t i = first; i < quad.samples.size(); ++i) {
            const Bary& b = quad.samples[i].bary;
            double d = std::fabs(b[0] - 1.0 / 3.0) + std::fabs(b[1] - 1.0 / 3.0) +
                       std::fabs(b[2] - 1.0 / 3.0);
            if (d < best) {
                best = d;
                quad.face_centroid_sample[f] = static_cast<int>(i);
            }
        }
    }
    return quad;
}

VoronoiPartition voronoi_assign(const std::vector<cpx>& sites, const Quadrature& quad) {
    const size_t n = sites.size();
    if (n == 0) throw ValidationError("no sites");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (std::abs(sites[i] - sites[j]) < 1e-12)
                throw ValidationError("duplicate sites " + std::to_string(i) + " and " +
                                      std::to_string(j));
    VoronoiPartition part;
    part.sites = sites;
    part.assign.resize(quad.samples.size());
    part.mass.assign(n, 0.0);
    std::vector<cpx> moment(n, cpx(0, 0));
    for (size_t s = 0; s < quad.samples.size(); ++s) {
        const Sample& sm = quad.samples[s];
        int best = 0;
        double bd = std::norm(sm.z - sites[0]);
        for (size_t i = 1; i < n; ++i) {
            double d = std::norm(sm.z - sites[i]);
            if (d < bd) {  // ties keep the lowest index
                bd = d;
                best = static_cast<int>(i);
            }
        }
        part.assign[s] = best;
        part.mass[best] += sm.weight;
        moment[best] += sm.weight * sm.z;
    }
    part.centroid.resize(n);
    for (size_t i = 0; i < n; ++i)
        part.centroid[i] = part.mass[i] > 0.0 ? moment[i] / part.mass[i] : sites[i];
    return part;
}

double coverage_cost(const std::vector<cpx>& sites, const Quadrature& quad) {
    if (sites.empty()) throw ValidationError("no sites");
    double h = 0.0;
    for (const Sample& sm : quad.samples) {
        double best = std::norm(sm.z - sites[0]);
        for (size_t i = 1; i < sites.size(); ++i)
            best = std::min(best, std::norm(sm.z - sites[i]));
        h += sm.weight * best;
    }
    return h;
}

std::vector<cpx> AgentFleet::disk_positions() const {
    std::vector<cpx> out;
    out.reserve(agents.size());
    for (const Agent& a : agents) out.push_back(a.z);
    return out;
}

namespace {

double unit_real(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool inside_disk_image(const ConformalDiskMap& map, const cpx& z) {
    if (std::abs(z) > 1.0 + 1e-9) return false;
    try {
        map.inverse(z);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

// Deterministic nudge for coinciding sites, direction seeded by index.
void separate_sites(std::vector<cpx>& sites) {
    for (size_t i = 0; i < sites.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            if (std::abs(sites[i] - sites[j]) < 1e-12) {
                double a = 2.399963229728653 * static_cast<double>(i + 1);  // golden angle
                sites[i] += 1e-9 * cpx(std::cos(a), std::sin(a));
            }
        }
    }
}

}  // namespace

AgentFleet random_fleet(const ConformalDiskMap& map, int n_agents, uint64_t seed, double gain) {
    if (n_agents < 1) throw ValidationError("need at least 1 agent");
    const auto& mesh = map.mesh();
    std::vector<double> cum(mesh.faces.size());
    double total = 0.0;
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        total += face_area3d(mesh, static_cast<int>(f));
        cum[f] = total;
    }
    std::mt19937_64 rng(seed);
    AgentFleet fleet;
    for (int i = 0; i < n_agents; ++i) {
        double u = unit_real(rng) * total;
        int f = static_cast<int>(std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
        f = std::min(f, static_cast<int>(mesh.faces.size()) - 1);
        double u1 = unit_real(rng), u2 = unit_real(rng);
        if (u1 + u2 > 1.0) {
            u1 = 1.0 - u1;
            u2 = 1.0 - u2;
        }
        Agent a;
        a.loc = {f, {1.0 - u1 - u2, u1, u2}};
        a.z = map.forward(a.loc);
        a.gain = gain;
        fleet.agents.push_back(a);
    }
    std::vector<cpx> sites = fleet.disk_positions();
    separate_sites(sites);
    for (size_t i = 0; i < sites.size(); ++i) {
        if (sites[i] != fleet.agents[i].z) {
            fleet.agents[i].z = sites[i];
            fleet.agents[i].loc = map.inverse(sites[i]);
        }
    }
    return fleet;
}

AgentFleet fleet_from_disk_points(const ConformalDiskMap& map, const std::vector<cpx>& points,
                                  double gain) {
    if (points.empty()) throw ValidationError("need at least 1 agent");
    std::vector<cpx> sites = points;
    separate_sites(sites);
    AgentFleet fleet;
    for (const cpx& z : sites) {
        Agent a;
        a.loc = map.inverse(z);
        a.z = map.forward(a.loc);
        a.gain = gain;
        fleet.agents.push_back(a);
    }
    return fleet;
}

std::vector<cpx> control_step_disk(const ConformalDiskMap& map, const AgentFleet& fleet,
                                   const std::vector<cpx>& centroids, double dt) {
    if (centroids.size() != fleet.agents.size())
        throw ValidationError("centroid count does not match fleet");
    std::vector<cpx> out;
    out.reserve(fleet.agents.size());
    for (size_t i = 0; i < fleet.agents.size(); ++i) {
        const Agent& a = fleet.agents[i];
        if (dt * a.gain > 1.0 + 1e-12)
            throw ValidationError("dt * gain > 1 would overshoot the centroid");
        cpx target = a.z + dt * a.gain * (centroids[i] - a.z);
        if (!inside_disk_image(map, target)) {
            // bisect back toward the current position
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 60; ++it) {
                double s = 0.5 * (lo + hi);
                cpx probe = a.z + s * (target - a.z);
                (inside_disk_image(map, probe) ? lo : hi) = s;
            }
            target = a.z + lo * (target - a.z);
        }
        out.push_back(target);
    }
    return out;
}

namespace {

// Closest point on 3D triangle (Ericson), returned as barycentric coordinates.
std::array<double, 3> closest_point_bary(const Vec3& p, const Vec3& a, const Vec3& b,
                                         const Vec3& c) {
    Vec3 ab = b - a, ac = c - a, ap = p - a;
    double d1 = dot(ab, ap), d2 = dot(ac, ap);
    if (d1 <= 0.0 && d2 <= 0.0) return {1, 0, 0};
    Vec3 bp = p - b;
    double d3 = dot(ab, bp), d4 = dot(ac, bp);
    if (d3 >= 0.0 && d4 <= d3) return {0, 1, 0};
    double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        double v = d1 / (d1 - d3);
        return {1.0 - v, v, 0};
    }
    Vec3 cp = p - c;
    double d5 = dot(ab, cp), d6 = dot(ac, cp);
    if (d6 >= 0.0 && d5 <= d6) return {0, 0, 1};
    double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        double w = d2 / (d2 - d6);
        return {1.0 - w, 0, w};
    }
    double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return {0, 1.0 - w, w};
    }
    double denom = 1.0 / (va + vb + vc);
    double v = vb * denom, w = vc * denom;
    return {1.0 - v - w, v, w};
}

}  // namespace

std::pair<std::vector<Location>, std::vector<bool>> control_step_surface(
    const ConformalDiskMap& map, const AgentFleet& fleet, const std::vector<cpx>& centroids,
    double dt) {
    if (centroids.size() != fleet.agents.size())
        throw ValidationError("centroid count does not match fleet");
    const auto& mesh = map.mesh();
    std::set<EdgeKey> boundary_edges;
    for (size_t i = 0; i < mesh.boundary.size(); ++i)
        boundary_edges.insert(
            edge_key(mesh.boundary[i], mesh.boundary[(i + 1) % mesh.boundary.size()]));

    std::vector<Location> out;
    std::vector<bool> clamped;
    for (size_t i = 0; i < fleet.agents.size(); ++i) {
        const Agent& a = fleet.agents[i];
        if (dt * a.gain > 1.0 + 1e-12)
            throw ValidationError("dt * gain > 1 would overshoot the centroid");
        cpx disk_disp = dt * a.gain * (centroids[i] - a.z);
        const FaceFrame& fr = map.frame(a.loc.face);
        cpx local = map.face_jacobian(a.loc.face).inverse().apply(disk_disp);
        Vec3 p3 = surface_point(map, a.loc);
        Vec3 target = p3 + fr.e1 * local.real() + fr.e2 * local.imag();

        // re-project onto the mesh: nearest point over all faces
        Location best;
        double best_d2 = std::numeric_limits<double>::infinity();
        for (size_t f = 0; f < mesh.faces.size(); ++f) {
            const Face& t = mesh.faces[f];
            std::array<double, 3> b = closest_point_bary(target, mesh.vertices[t[0]],
                                                         mesh.vertices[t[1]], mesh.vertices[t[2]]);
            Vec3 q = mesh.vertices[t[0]] * b[0] + mesh.vertices[t[1]] * b[1] +
                     mesh.vertices[t[2]] * b[2];
            Vec3 d = target - q;
            double d2 = dot(d, d);
            if (d2 < best_d2) {
                best_d2 = d2;
                best = {static_cast<int>(f), b};
            }
        }

        // boundary hit: projected point pinned to a boundary edge or vertex
        bool hit = false;
        const Face& t = mesh.faces[best.face];
        for (int c = 0; c < 3; ++c) {
            if (best.bary[c] < 1e-12 &&
                boundary_edges.count(edge_key(t[(c + 1) % 3], t[(c + 2) % 3])) &&
                best_d2 > 1e-24)
                hit = true;
        }
        out.push_back(best);
        clamped.push_back(hit);
    }
    return {out, clamped};
}

CoverageTrace lloyd_run(const ConformalDiskMap& map, AgentFleet& fleet,
                        const DensityField& density, const LloydConfig& config) {
    if (config.tol <= 0.0) throw ValidationError("tol must be positive");
    if (config.max_iters < 1) throw ValidationError("max_iters must be >= 1");
    for (const Agent& a : fleet.agents)
        if (config.dt * a.gain > 1.0 + 1e-12)
            throw ValidationError("dt * gain > 1 would overshoot the centroid");

    Quadrature quad = build_quadrature(map, density, config.quadrature_order);
    CoverageTrace trace;
    std::vector<cpx> sites = fleet.disk_positions();
    separate_sites(sites);

    for (int iter = 0;; ++iter) {
        VoronoiPartition part = voronoi_assign(sites, quad);
        double h = coverage_cost(sites, quad);
        double maxd = 0.0;
        for (size_t i = 0; i < sites.size(); ++i)
            maxd = std::max(maxd, std::abs(sites[i] - part.centroid[i]));

        TraceRecord rec;
        rec.iter = iter;
        rec.cost = h;
        rec.max_centroid_dist = maxd;
        rec.disk_positions = sites;
        for (size_t i = 0; i < fleet.agents.size(); ++i)
            rec.surface_positions.push_back(fleet.agents[i].loc);
        trace.records.push_back(std::move(rec));
        trace.final_partition = part;

        if (maxd < config.tol) {
            trace.converged = true;
            break;
        }
        if (iter >= config.max_iters) break;

        for (size_t i = 0; i < fleet.agents.size(); ++i) fleet.agents[i].z = sites[i];
        sites = control_step_disk(map, fleet, part.centroid, config.dt);
        separate_sites(sites);
        for (size_t i = 0; i < fleet.agents.size(); ++i) {
            fleet.agents[i].z = sites[i];
            fleet.agents[i].loc = map.inverse(sites[i]);
        }
    }
    return trace;
}

std::vector<int> pullback_partition(const ConformalDiskMap& map, const VoronoiPartition& partition,
                                    const Quadrature& quad) {
    if (partition.assign.size() != quad.samples.size())
        throw ValidationError("partition was not built on this quadrature");
    std::vector<int> labels(map.mesh().faces.size());
    for (size_t f = 0; f < labels.size(); ++f)
        labels[f] = partition.assign[quad.face_centroid_sample[f]];
    return labels;
}

std::vector<Vec3> pullback_path(const ConformalDiskMap& map, const std::vector<cpx>& polyline) {
    std::vector<Vec3> out;
    out.reserve(polyline.size());
    for (size_t i = 0; i < polyline.size(); ++i) {
        try {
            out.push_back(surface_point(map, map.inverse(polyline[i])));
        } catch (const ValidationError& e) {
            throw ValidationError("path point " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace surfcover

#pragma once

#include <cstdint>

#include "surfcover/diskmap.hpp"

namespace surfcover {

// Per-vertex event density, nonnegative, not identically zero.
struct DensityField {
    std::vector<double> phi;

    void validate(size_t n_vertices) const;
    static DensityField uniform(size_t n_vertices, double value = 1.0);
};

// Quadrature sample: disk point, weight = sub-triangle disk area x density.
struct Sample {
    cpx z;
    double weight = 0.0;
    int face = -1;
    std::array<double, 3> bary{0, 0, 0};
};

struct Quadrature {
    std::vector<Sample> samples;
    std::vector<int> face_centroid_sample;  // sample located at each face centroid
    double total_weight = 0.0;
};

// Each disk face subdivided 4^order times, one centroid sample per sub-triangle.
Quadrature build_quadrature(const ConformalDiskMap& map, const DensityField& density, int order);

struct VoronoiPartition {
    std::vector<int> assign;       // sample -> site
    std::vector<double> mass;      // per site
    std::vector<cpx> centroid;     // per site; empty cell -> site position
    std::vector<cpx> sites;
};

// Nearest-site assignment, ties to the lowest site index. Masses/centroids filled.
VoronoiPartition voronoi_assign(const std::vector<cpx>& sites, const Quadrature& quad);

double coverage_cost(const std::vector<cpx>& sites, const Quadrature& quad);

struct Agent {
    Location loc;
    cpx z;
    double gain = 1.0;
};

struct AgentFleet {
    std::vector<Agent> agents;

    std::vector<cpx> disk_positions() const;
};

// Seeded area-weighted placement over disk faces (std::mt19937_64).
AgentFleet random_fleet(const ConformalDiskMap& map, int n_agents, uint64_t seed, double gain = 1.0);
AgentFleet fleet_from_disk_points(const ConformalDiskMap& map, const std::vector<cpx>& points,
                                  double gain = 1.0);

// p <- p + dt*k*(C - p), clamped to the disk image.
std::vector<cpx> control_step_disk(const ConformalDiskMap& map, const AgentFleet& fleet,
                                   const std::vector<cpx>& centroids, double dt);

// Tangent step through the inverse face Jacobian, then re-projection onto the
// mesh. Returns updated locations; boundary-clamped flags in the second slot.
std::pair<std::vector<Location>, std::vector<bool>> control_step_surface(
    const ConformalDiskMap& map, const AgentFleet& fleet, const std::vector<cpx>& centroids,
    double dt);

struct LloydConfig {
    double dt = 1.0;
    int max_iters = 200;
    double tol = 1e-6;
    int quadrature_order = 1;
};

struct TraceRecord {
    int iter = 0;
    double cost = 0.0;
    double max_centroid_dist = 0.0;
    std::vector<cpx> disk_positions;
    std::vector<Location> surface_positions;
};

struct CoverageTrace {
    std::vector<TraceRecord> records;
    VoronoiPartition final_partition;
    bool converged = false;
};

CoverageTrace lloyd_run(const ConformalDiskMap& map, AgentFleet& fleet,
                        const DensityField& density, const LloydConfig& config);

// Face -> owning site, via the face-centroid sample of the partition.
std::vector<int> pullback_partition(const ConformalDiskMap& map, const VoronoiPartition& partition,
                                    const Quadrature& quad);

// Disk polyline lifted to 3D surface points.
std::vector<Vec3> pullback_path(const ConformalDiskMap& map, const std::vector<cpx>& polyline);

Vec3 surface_point(const ConformalDiskMap& map, const Location& loc);

}  // namespace surfcover

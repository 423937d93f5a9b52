#pragma once

#include <cstdint>

#include "surfcover/mesh.hpp"

namespace surfcover {

// Hub vertex plus a regular n-gon rim, radius 1.
TriangleMesh fan_disk(int n_rim);

// Concentric-ring triangulation of the unit disk: ring k at radius k/n_rings
// with 6k vertices; 6*n_rings^2 faces.
TriangleMesh unit_disk_mesh(int n_rings);

// Disk mesh lifted onto the unit hemisphere (equal-polar-angle projection).
TriangleMesh hemisphere_mesh(int n_rings);

// Disk mesh with z = amp * exp(-|p - center|^2 / (2 sigma^2)).
TriangleMesh gaussian_bump_mesh(int n_rings, double amp, double sigma,
                                double cx = 0.0, double cy = 0.0);

// Disk mesh with a smooth random height field (sum of seeded sinusoids).
TriangleMesh terrain_mesh(int n_rings, uint64_t seed, double amp = 0.15);

// Closed tetrahedron; invalid input for the pipeline (no boundary).
std::pair<std::vector<Vec3>, std::vector<Face>> tetrahedron_raw();

}  // namespace surfcover

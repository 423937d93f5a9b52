#pragma once

#include <string>

#include "surfcover/coverage.hpp"
#include "surfcover/diskmap.hpp"

namespace surfcover {

// Self-contained SVG plots of disk-domain data.

std::string svg_disk_mesh(const ConformalDiskMap& map);

// Triangulation at low opacity, per-sample dots colored by owning site,
// sites as filled stars, previous positions as hollow circles.
std::string svg_partition(const ConformalDiskMap& map, const Quadrature& quad,
                          const VoronoiPartition& partition,
                          const std::vector<cpx>& previous_positions);

std::string svg_cost_curve(const std::vector<double>& cost);

// Per-vertex scalar as a per-face heat fill (blue = low, red = high).
std::string svg_heat(const ConformalDiskMap& map, const std::vector<double>& scalar);

}  // namespace surfcover

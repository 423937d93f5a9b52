#pragma once

#include "surfcover/coverage.hpp"
#include "surfcover/diskmap.hpp"

namespace surfcover {

// Per-vertex displacement magnitude between two disk embeddings of the same
// mesh connectivity.
struct DeformationMetric {
    std::vector<double> displacement;

    double max() const;
    int argmax() const;
};

// Rotation (about the origin) minimizing the squared mismatch between the two
// embeddings; removes the rotational gauge before differencing.
cpx optimal_rotation(const std::vector<cpx>& from, const std::vector<cpx>& to);

DeformationMetric disk_difference(const ConformalDiskMap& map_before,
                                  const ConformalDiskMap& map_after);

// phi_v = floor + scale * metric_v / max(metric); uniform floor if metric = 0.
DensityField density_from_deformation(const DeformationMetric& metric, double floor, double scale);

}  // namespace surfcover

#include "surfcover/deformation.hpp"

#include <algorithm>
#include <cmath>

namespace surfcover {

double DeformationMetric::max() const {
    double m = 0.0;
    for (double v : displacement) m = std::max(m, v);
    return m;
}

int DeformationMetric::argmax() const {
    return static_cast<int>(std::max_element(displacement.begin(), displacement.end()) -
                            displacement.begin());
}

cpx optimal_rotation(const std::vector<cpx>& from, const std::vector<cpx>& to) {
    if (from.size() != to.size()) throw ValidationError("embedding sizes differ");
    cpx s(0, 0);
    for (size_t v = 0; v < from.size(); ++v) s += to[v] * std::conj(from[v]);
    double n = std::abs(s);
    return n > 0.0 ? s / n : cpx(1, 0);
}

DeformationMetric disk_difference(const ConformalDiskMap& map_before,
                                  const ConformalDiskMap& map_after) {
    const auto& fa = map_before.mesh().faces;
    const auto& fb = map_after.mesh().faces;
    if (map_before.mesh().vertices.size() != map_after.mesh().vertices.size() || fa != fb)
        throw ValidationError("mesh connectivity mismatch between the two maps");

    const std::vector<cpx>& before = map_before.disk();
    const std::vector<cpx>& after = map_after.disk();
    cpx rot = optimal_rotation(before, after);

    DeformationMetric metric;
    metric.displacement.resize(before.size());
    for (size_t v = 0; v < before.size(); ++v)
        metric.displacement[v] = std::abs(rot * before[v] - after[v]);
    return metric;
}

DensityField density_from_deformation(const DeformationMetric& metric, double floor, double scale) {
    if (floor < 0.0) throw ValidationError("floor must be >= 0");
    if (scale <= 0.0) throw ValidationError("scale must be > 0");
    double m = metric.max();
    if (m == 0.0 && floor == 0.0) throw ValidationError("degenerate density: zero metric and zero floor");
    DensityField density;
    density.phi.resize(metric.displacement.size());
    for (size_t v = 0; v < metric.displacement.size(); ++v)
        density.phi[v] = floor + (m > 0.0 ? scale * metric.displacement[v] / m : 0.0);
    return density;
}

}  // namespace surfcover

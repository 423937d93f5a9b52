#pragma once

#include "surfcover/mesh.hpp"

namespace surfcover {

// Per-vertex planar coordinates, indexed like the source mesh vertices.
struct DiskEmbedding {
    std::vector<cpx> pos;
};

// Boundary angles proportional to cumulative 3D arc length, theta_0 = 0.
std::vector<double> boundary_circle_map(const TriangleMesh& mesh);

// Boundary-constrained harmonic map: boundary vertex i at (cos th_i, sin th_i),
// interior vertices solve sum_j k_ij (z_j - z_i) = 0.
DiskEmbedding solve_harmonic(const TriangleMesh& mesh, const EdgeWeights& weights,
                             const std::vector<double>& boundary_angles);

// sum over edges of k_uv |phi(u) - phi(v)|^2
double harmonic_energy(const TriangleMesh& mesh, const EdgeWeights& weights,
                       const DiskEmbedding& embedding);

// Max over interior vertices of |sum_j k_ij (z_j - z_i)|.
double harmonic_residual(const TriangleMesh& mesh, const EdgeWeights& weights,
                         const DiskEmbedding& embedding);

// Faces with non-positive signed area in the plane.
std::vector<int> flipped_faces(const std::vector<Face>& faces, const std::vector<cpx>& pos);

double signed_area(const cpx& a, const cpx& b, const cpx& c);

}  // namespace surfcover

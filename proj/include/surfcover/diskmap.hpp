#pragma once

#include "surfcover/beltrami.hpp"
#include "surfcover/harmonic.hpp"
#include "surfcover/mesh.hpp"

namespace surfcover {

// Location on the surface: face index plus barycentric coordinates.
struct Location {
    int face = -1;
    std::array<double, 3> bary{0, 0, 0};
};

// Orthonormal tangent frame of a surface face; s1, s2 are the flattened 2D
// coordinates of vertices 1 and 2 relative to vertex 0 (s0 = 0, s2.imag > 0).
struct FaceFrame {
    Vec3 origin, e1, e2;
    cpx s1, s2;
};

struct DiskMapDiagnostics {
    double mean_abs_mu_before = 0.0;
    double mean_abs_mu_after = 0.0;
    double max_dilation = 0.0;
    int flipped_faces = 0;
    // false when correction was disabled or rejected (it would have increased
    // the mean distortion); the harmonic embedding is kept in that case
    bool correction_applied = false;
};

struct BuildOptions {
    bool correction = true;
};

// Composite conformal disk map: harmonic map, Cayley transfer to the
// half-plane, one Beltrami correction pass, Cayley back.
class ConformalDiskMap {
  public:
    static ConformalDiskMap build(const TriangleMesh& mesh, const BuildOptions& opts = {});

    const TriangleMesh& mesh() const { return mesh_; }
    const std::vector<cpx>& disk() const { return disk_; }
    const std::vector<cpx>& harmonic_disk() const { return harmonic_disk_; }
    const std::vector<cpx>& halfplane() const { return halfplane_; }
    const std::vector<cpx>& lbs_image() const { return lbs_image_; }
    const BeltramiField& final_mu() const { return mu_final_; }
    const DiskMapDiagnostics& diagnostics() const { return diag_; }
    const FaceFrame& frame(int f) const { return frames_[f]; }

    cpx forward(const Location& p) const;
    Location inverse(const cpx& z) const;

    // Linear part of the affine map flattened-surface-triangle -> disk-triangle.
    Mat2 face_jacobian(int f) const { return jacobians_[f]; }

    double disk_face_area(int f) const;

  private:
    TriangleMesh mesh_;
    std::vector<cpx> disk_;
    std::vector<cpx> harmonic_disk_;  // after pole-avoidance rotation
    std::vector<cpx> halfplane_;      // Y(rotated harmonic)
    std::vector<cpx> lbs_image_;      // f(Y(...)), empty when correction off
    std::vector<FaceFrame> frames_;
    std::vector<Mat2> jacobians_;
    BeltramiField mu_final_;
    DiskMapDiagnostics diag_;

    // uniform grid over the disk bounding box for point location
    int grid_n_ = 0;
    double grid_x0_ = 0, grid_y0_ = 0, grid_dx_ = 0, grid_dy_ = 0;
    std::vector<std::vector<int>> grid_cells_;

    void finalize();
    std::array<double, 3> bary_in_disk_face(int f, const cpx& z) const;
};

FaceFrame face_frame(const TriangleMesh& mesh, int f);

// mu per face of the piecewise-linear map surface -> plane (surface faces
// flattened in their tangent frames).
BeltramiField beltrami_surface_to_plane(const TriangleMesh& mesh, const std::vector<cpx>& plane);
// mu per face of the inverse direction, plane -> surface.
BeltramiField beltrami_plane_to_surface(const std::vector<cpx>& plane, const TriangleMesh& mesh);

}  // namespace surfcover

#include "surfcover/diskmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace surfcover {

FaceFrame face_frame(const TriangleMesh& mesh, int f) {
    const Face& t = mesh.faces[f];
    const Vec3& v0 = mesh.vertices[t[0]];
    Vec3 d1 = mesh.vertices[t[1]] - v0;
    Vec3 d2 = mesh.vertices[t[2]] - v0;
    FaceFrame fr;
    fr.origin = v0;
    fr.e1 = normalized(d1);
    Vec3 n = normalized(cross(d1, d2));
    fr.e2 = cross(n, fr.e1);
    fr.s1 = cpx(norm(d1), 0.0);
    fr.s2 = cpx(dot(d2, fr.e1), dot(d2, fr.e2));
    return fr;
}

BeltramiField beltrami_surface_to_plane(const TriangleMesh& mesh, const std::vector<cpx>& plane) {
    BeltramiField out;
    out.mu.reserve(mesh.faces.size());
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        const Face& t = mesh.faces[f];
        FaceFrame fr = face_frame(mesh, static_cast<int>(f));
        out.mu.push_back(beltrami_face({cpx(0, 0), fr.s1, fr.s2},
                                       {plane[t[0]], plane[t[1]], plane[t[2]]}));
    }
    return out;
}

BeltramiField beltrami_plane_to_surface(const std::vector<cpx>& plane, const TriangleMesh& mesh) {
    BeltramiField out;
    out.mu.reserve(mesh.faces.size());
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        const Face& t = mesh.faces[f];
        FaceFrame fr = face_frame(mesh, static_cast<int>(f));
        out.mu.push_back(beltrami_face({plane[t[0]], plane[t[1]], plane[t[2]]},
                                       {cpx(0, 0), fr.s1, fr.s2}));
    }
    return out;
}

ConformalDiskMap ConformalDiskMap::build(const TriangleMesh& mesh, const BuildOptions& opts) {
    ConformalDiskMap m;
    m.mesh_ = mesh;
    EdgeWeights weights = cotangent_weights(mesh);
    std::vector<double> angles = boundary_circle_map(mesh);
    DiskEmbedding phi = solve_harmonic(mesh, weights, angles);

    // Rotate so z = 1 sits at the midpoint of the largest boundary angular gap
    // (Cayley pole avoidance with maximal margin).
    const size_t nb = angles.size();
    double best_gap = -1.0, mid = 0.0;
    for (size_t i = 0; i < nb; ++i) {
        double a = angles[i];
        double b = (i + 1 < nb) ? angles[i + 1] : angles[0] + 2.0 * M_PI;
        if (b - a > best_gap) {
            best_gap = b - a;
            mid = 0.5 * (a + b);
        }
    }
    const cpx rot = std::polar(1.0, -mid);
    m.harmonic_disk_.resize(phi.pos.size());
    for (size_t v = 0; v < phi.pos.size(); ++v) m.harmonic_disk_[v] = phi.pos[v] * rot;

    if (!opts.correction) {
        m.disk_ = m.harmonic_disk_;
        m.finalize();
        m.diag_.mean_abs_mu_before = m.diag_.mean_abs_mu_after = m.mu_final_.mean_abs();
        m.diag_.correction_applied = false;
        return m;
    }

    m.halfplane_.resize(m.harmonic_disk_.size());
    for (size_t v = 0; v < m.harmonic_disk_.size(); ++v)
        m.halfplane_[v] = cayley(m.harmonic_disk_[v]);

    // mu of (Y o phi)^{-1} via mu_{f^{-1}} o f = -mu_f * f_z / conj(f_z) with
    // f_z = Y'(z) phi_z and mu_f = mu_phi (Y is holomorphic). Swapping the
    // source/target of the PL half-plane mesh instead would pick up the pole
    // region's straight-triangle inversions and push |mu| past 1.
    // Taper the prescription to zero over a fixed band around the pole, where
    // the straight-triangle representation of Y degrades; the un-corrected
    // band stays at the harmonic embedding.
    constexpr double kPoleTaper = 0.2;
    BeltramiField mu_inv;
    mu_inv.mu.reserve(mesh.faces.size());
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        const Face& t = mesh.faces[f];
        FaceFrame fr = face_frame(mesh, static_cast<int>(f));
        WirtingerDerivs d = wirtinger_face(
            {cpx(0, 0), fr.s1, fr.s2},
            {m.harmonic_disk_[t[0]], m.harmonic_disk_[t[1]], m.harmonic_disk_[t[2]]});
        cpx zc = (m.harmonic_disk_[t[0]] + m.harmonic_disk_[t[1]] + m.harmonic_disk_[t[2]]) / 3.0;
        cpx fz = cpx(0.0, 2.0) / ((1.0 - zc) * (1.0 - zc)) * d.fz;  // Y'(zc) phi_z
        double taper = std::min(1.0, std::abs(1.0 - zc) / kPoleTaper);
        mu_inv.mu.push_back(-(d.fzbar / d.fz) * (fz / std::conj(fz)) * (taper * taper));
    }

    // Faces straddling the Cayley pole invert as straight half-plane
    // triangles; freeze their vertices so those faces drop out of the LBS
    // assembly (all-fixed faces contribute no equations) and the reduced
    // system stays definite.
    std::vector<bool> pole_pinned(mesh.vertices.size(), false);
    for (const Face& t : mesh.faces)
        if (signed_area(m.halfplane_[t[0]], m.halfplane_[t[1]], m.halfplane_[t[2]]) <= 0.0)
            for (int c = 0; c < 3; ++c) pole_pinned[t[c]] = true;

    // Anchor fixed points on the real axis; remaining boundary vertices are
    // pinned to the real axis only (imaginary part zero, real part free).
    std::vector<double> rot_angle(nb);
    for (size_t i = 0; i < nb; ++i) {
        double a = angles[i] - mid;
        rot_angle[i] = a - 2.0 * M_PI * std::floor(a / (2.0 * M_PI));
    }
    auto angular_dist = [](double a, double b) {
        double d = std::fabs(a - b);
        return std::min(d, 2.0 * M_PI - d);
    };
    int n_pole_pins = 0;
    for (size_t v = 0; v < mesh.vertices.size(); ++v)
        if (pole_pinned[v]) ++n_pole_pins;

    // Gauge: with Im pinned to zero along the whole real axis, the remaining
    // linear freedom of the Re system is translation + scale, fixed by two
    // boundary anchors; the pole pins provide the rest of the fixed points.
    // A third independent anchor over-determines that gauge and concentrates
    // distortion (or folds) around itself. Fall back to three anchors only
    // when no face straddles the pole.
    std::vector<double> anchor_targets = {M_PI / 2.0, 3.0 * M_PI / 2.0};
    if (n_pole_pins == 0) anchor_targets.push_back(M_PI);
    std::vector<int> anchor_pos;
    for (double target : anchor_targets) {
        int best = -1;
        double bd = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < nb; ++i) {
            if (std::find(anchor_pos.begin(), anchor_pos.end(), static_cast<int>(i)) !=
                anchor_pos.end())
                continue;
            double d = angular_dist(rot_angle[i], target);
            if (d < bd) {
                bd = d;
                best = static_cast<int>(i);
            }
        }
        anchor_pos.push_back(best);
    }

    std::vector<bool> on_boundary(mesh.vertices.size(), false);
    for (int v : mesh.boundary) on_boundary[v] = true;

    std::vector<PointConstraint> constraints;
    for (size_t v = 0; v < mesh.vertices.size(); ++v)
        if (pole_pinned[v]) {
            cpx target = on_boundary[v] ? cpx(m.halfplane_[v].real(), 0.0) : m.halfplane_[v];
            constraints.push_back({static_cast<int>(v), target, PointConstraint::Kind::fixed_both});
        }
    for (size_t i = 0; i < nb; ++i) {
        int v = mesh.boundary[i];
        if (pole_pinned[v]) continue;
        bool anchor = std::find(anchor_pos.begin(), anchor_pos.end(), static_cast<int>(i)) !=
                      anchor_pos.end();
        constraints.push_back({v, cpx(m.halfplane_[v].real(), 0.0),
                               anchor ? PointConstraint::Kind::fixed_both
                                      : PointConstraint::Kind::fixed_imaginary_zero});
    }

    m.lbs_image_ = lbs_solve(m.halfplane_, mesh.faces, mu_inv, constraints);

    std::vector<cpx> corrected(m.lbs_image_.size());
    for (size_t v = 0; v < m.lbs_image_.size(); ++v) corrected[v] = cayley_inv(m.lbs_image_[v]);

    // Accept the correction only when it does not increase the mean
    // distortion; near-conformal harmonic embeddings already sit at the
    // piecewise-linear sampling floor and cannot be improved by a further
    // discrete pass.
    const double before = beltrami_surface_to_plane(mesh, m.harmonic_disk_).mean_abs();
    bool accept = flipped_faces(mesh.faces, corrected).empty();
    if (accept) {
        BeltramiField mu_corr = beltrami_surface_to_plane(mesh, corrected);
        accept = mu_corr.sup_abs() < 1.0 && mu_corr.mean_abs() <= before;
    }
    if (accept) {
        m.disk_ = std::move(corrected);
        m.diag_.correction_applied = true;
    } else {
        m.disk_ = m.harmonic_disk_;
        m.lbs_image_.clear();
        m.diag_.correction_applied = false;
    }

    m.finalize();
    m.diag_.mean_abs_mu_before = before;
    m.diag_.mean_abs_mu_after = m.mu_final_.mean_abs();
    return m;
}

void ConformalDiskMap::finalize() {
    std::vector<int> flipped = flipped_faces(mesh_.faces, disk_);
    diag_.flipped_faces = static_cast<int>(flipped.size());
    if (!flipped.empty()) {
        std::string msg = "flipped disk faces:";
        for (size_t i = 0; i < flipped.size() && i < 16; ++i) msg += " " + std::to_string(flipped[i]);
        if (flipped.size() > 16) msg += " ...";
        throw NumericalError(msg);
    }

    frames_.resize(mesh_.faces.size());
    jacobians_.resize(mesh_.faces.size());
    for (size_t f = 0; f < mesh_.faces.size(); ++f) {
        frames_[f] = face_frame(mesh_, static_cast<int>(f));
        const Face& t = mesh_.faces[f];
        cpx d1 = disk_[t[1]] - disk_[t[0]];
        cpx d2 = disk_[t[2]] - disk_[t[0]];
        const cpx& s1 = frames_[f].s1;
        const cpx& s2 = frames_[f].s2;
        double det = s1.real() * s2.imag() - s2.real() * s1.imag();
        // J = [d1 d2] * [s1 s2]^{-1}, columns
        Mat2 sinv{s2.imag() / det, -s2.real() / det, -s1.imag() / det, s1.real() / det};
        Mat2 d{d1.real(), d2.real(), d1.imag(), d2.imag()};
        jacobians_[f] = d * sinv;
    }

    mu_final_ = beltrami_surface_to_plane(mesh_, disk_);
    double sup = mu_final_.sup_abs();
    diag_.max_dilation = sup < 1.0 ? (1.0 + sup) / (1.0 - sup)
                                   : std::numeric_limits<double>::infinity();

    // Point-location grid, about two faces per cell on average.
    const int nf = static_cast<int>(mesh_.faces.size());
    grid_n_ = std::max(1, static_cast<int>(std::ceil(std::sqrt(2.0 * nf))));
    double x0 = disk_[0].real(), x1 = x0, y0 = disk_[0].imag(), y1 = y0;
    for (const cpx& z : disk_) {
        x0 = std::min(x0, z.real()); x1 = std::max(x1, z.real());
        y0 = std::min(y0, z.imag()); y1 = std::max(y1, z.imag());
    }
    const double pad = 1e-9 + 1e-12 * std::max(x1 - x0, y1 - y0);
    grid_x0_ = x0 - pad; grid_y0_ = y0 - pad;
    grid_dx_ = (x1 - x0 + 2 * pad) / grid_n_;
    grid_dy_ = (y1 - y0 + 2 * pad) / grid_n_;
    grid_cells_.assign(static_cast<size_t>(grid_n_) * grid_n_, {});
    auto cell_of = [&](double x, double y) {
        int cx = std::clamp(static_cast<int>((x - grid_x0_) / grid_dx_), 0, grid_n_ - 1);
        int cy = std::clamp(static_cast<int>((y - grid_y0_) / grid_dy_), 0, grid_n_ - 1);
        return std::pair<int, int>{cx, cy};
    };
    for (int f = 0; f < nf; ++f) {
        const Face& t = mesh_.faces[f];
        double fx0 = disk_[t[0]].real(), fx1 = fx0, fy0 = disk_[t[0]].imag(), fy1 = fy0;
        for (int c : {1, 2}) {
            fx0 = std::min(fx0, disk_[t[c]].real()); fx1 = std::max(fx1, disk_[t[c]].real());
            fy0 = std::min(fy0, disk_[t[c]].imag()); fy1 = std::max(fy1, disk_[t[c]].imag());
        }
        auto [cx0, cy0] = cell_of(fx0, fy0);
        auto [cx1, cy1] = cell_of(fx1, fy1);
        for (int cy = cy0; cy <= cy1; ++cy)
            for (int cx = cx0; cx <= cx1; ++cx)
                grid_cells_[static_cast<size_t>(cy) * grid_n_ + cx].push_back(f);
    }
}

double ConformalDiskMap::disk_face_area(int f) const {
    const Face& t = mesh_.faces[f];
    return signed_area(disk_[t[0]], disk_[t[1]], disk_[t[2]]);
}

cpx ConformalDiskMap::forward(const Location& p) const {
    if (p.face < 0 || p.face >= static_cast<int>(mesh_.faces.size()))
        throw ValidationError("invalid face index " + std::to_string(p.face));
    double s = p.bary[0] + p.bary[1] + p.bary[2];
    if (p.bary[0] < -1e-12 || p.bary[1] < -1e-12 || p.bary[2] < -1e-12 ||
        std::fabs(s - 1.0) > 1e-12)
        throw ValidationError("invalid barycentric coordinates");
    const Face& t = mesh_.faces[p.face];
    return p.bary[0] * disk_[t[0]] + p.bary[1] * disk_[t[1]] + p.bary[2] * disk_[t[2]];
}

std::array<double, 3> ConformalDiskMap::bary_in_disk_face(int f, const cpx& z) const {
    const Face& t = mesh_.faces[f];
    double A = signed_area(disk_[t[0]], disk_[t[1]], disk_[t[2]]);
    return {signed_area(z, disk_[t[1]], disk_[t[2]]) / A,
            signed_area(disk_[t[0]], z, disk_[t[2]]) / A,
            signed_area(disk_[t[0]], disk_[t[1]], z) / A};
}

Location ConformalDiskMap::inverse(const cpx& z) const {
    if (std::abs(z) > 1.0 + 1e-9)
        throw ValidationError("point outside the unit disk");

    auto try_faces = [&](const std::vector<int>& cand, Location& best, double& best_min) -> bool {
        for (int f : cand) {
            std::array<double, 3> b = bary_in_disk_face(f, z);
            double mn = std::min({b[0], b[1], b[2]});
            if (mn >= -1e-12) {
                best = {f, b};
                best_min = mn;
                return true;
            }
            if (mn > best_min) {
                best = {f, b};
                best_min = mn;
            }
        }
        return false;
    };

    Location best;
    double best_min = -std::numeric_limits<double>::infinity();
    int cx = std::clamp(static_cast<int>((z.real() - grid_x0_) / grid_dx_), 0, grid_n_ - 1);
    int cy = std::clamp(static_cast<int>((z.imag() - grid_y0_) / grid_dy_), 0, grid_n_ - 1);
    bool found = try_faces(grid_cells_[static_cast<size_t>(cy) * grid_n_ + cx], best, best_min);

    if (!found) {
        // grid miss: exhaustive scan
        std::vector<int> all(mesh_.faces.size());
        for (size_t f = 0; f < all.size(); ++f) all[f] = static_cast<int>(f);
        best_min = -std::numeric_limits<double>::infinity();
        found = try_faces(all, best, best_min);
    }
    if (!found && best_min < -1e-7) throw ValidationError("outside disk image");

    // clamp tiny negatives and renormalize
    double s = 0.0;
    for (double& b : best.bary) {
        if (b < 0.0) b = 0.0;
        s += b;
    }
    for (double& b : best.bary) b /= s;
    return best;
}

}  // namespace surfcover

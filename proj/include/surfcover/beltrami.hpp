#pragma once

#include "surfcover/types.hpp"

namespace surfcover {

// Per-face complex distortion coefficient mu; |mu| < 1 on every face for an
// orientation-preserving map.
struct BeltramiField {
    std::vector<cpx> mu;

    double sup_abs() const;
    double mean_abs() const;
    std::vector<int> invalid_faces() const;  // faces with |mu| >= 1
};

// Wirtinger derivatives of the linear map taking one planar triangle onto
// another, from the per-face gradient rows of the source triangle.
struct WirtingerDerivs {
    cpx fz, fzbar;
};
WirtingerDerivs wirtinger_face(const std::array<cpx, 3>& source, const std::array<cpx, 3>& target);

// mu = fzbar / fz of the same per-face linear map.
cpx beltrami_face(const std::array<cpx, 3>& source, const std::array<cpx, 3>& target);

BeltramiField beltrami_from_map(const std::vector<cpx>& source, const std::vector<cpx>& target,
                                const std::vector<Face>& faces);

// K = (1 + sup|mu|) / (1 - sup|mu|)
double max_dilation(const BeltramiField& field);

// Y: unit disk -> upper half-plane, Y(z) = i(1+z)/(1-z); pole at z = 1.
cpx cayley(const cpx& z);
// Y^{-1}(w) = (w-i)/(w+i); pole at w = -i.
cpx cayley_inv(const cpx& w);

struct PointConstraint {
    enum class Kind { fixed_both, fixed_imaginary_zero };
    int vertex = -1;
    cpx target;
    Kind kind = Kind::fixed_both;
};

// Linear Beltrami solver: reconstructs per-vertex positions whose Beltrami
// coefficient matches mu in the discrete least-squares sense, honoring the
// constraints exactly.
std::vector<cpx> lbs_solve(const std::vector<cpx>& positions, const std::vector<Face>& faces,
                           const BeltramiField& mu, const std::vector<PointConstraint>& constraints);

}  // namespace surfcover

#include "surfcover/beltrami.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <algorithm>

namespace surfcover {

double BeltramiField::sup_abs() const {
    double m = 0.0;
    for (const cpx& v : mu) m = std::max(m, std::abs(v));
    return m;
}

double BeltramiField::mean_abs() const {
    if (mu.empty()) return 0.0;
    double s = 0.0;
    for (const cpx& v : mu) s += std::abs(v);
    return s / static_cast<double>(mu.size());
}

std::vector<int> BeltramiField::invalid_faces() const {
    std::vector<int> out;
    for (size_t f = 0; f < mu.size(); ++f)
        if (std::abs(mu[f]) >= 1.0) out.push_back(static_cast<int>(f));
    return out;
}

WirtingerDerivs wirtinger_face(const std::array<cpx, 3>& source, const std::array<cpx, 3>& target) {
    const double a1 = source[0].real(), b1 = source[0].imag();
    const double a2 = source[1].real(), b2 = source[1].imag();
    const double a3 = source[2].real(), b3 = source[2].imag();
    // twice the signed source area
    const double twoA = (a2 - a1) * (b3 - b1) - (a3 - a1) * (b2 - b1);
    if (twoA == 0.0) throw ValidationError("zero source-face area in Beltrami computation");
    // gradient rows of the hat basis: d/dx and d/dy coefficients
    const double fx1 = (b2 - b3) / twoA, fx2 = (b3 - b1) / twoA, fx3 = (b1 - b2) / twoA;
    const double fy1 = (a3 - a2) / twoA, fy2 = (a1 - a3) / twoA, fy3 = (a2 - a1) / twoA;
    const cpx dfdx = fx1 * target[0] + fx2 * target[1] + fx3 * target[2];
    const cpx dfdy = fy1 * target[0] + fy2 * target[1] + fy3 * target[2];
    const cpx i(0.0, 1.0);
    return {0.5 * (dfdx - i * dfdy), 0.5 * (dfdx + i * dfdy)};
}

cpx beltrami_face(const std::array<cpx, 3>& source, const std::array<cpx, 3>& target) {
    WirtingerDerivs d = wirtinger_face(source, target);
    return d.fzbar / d.fz;
}

BeltramiField beltrami_from_map(const std::vector<cpx>& source, const std::vector<cpx>& target,
                                const std::vector<Face>& faces) {
    if (source.size() != target.size())
        throw ValidationError("source/target vertex counts differ");
    BeltramiField out;
    out.mu.reserve(faces.size());
    for (const Face& t : faces) {
        out.mu.push_back(beltrami_face({source[t[0]], source[t[1]], source[t[2]]},
                                       {target[t[0]], target[t[1]], target[t[2]]}));
    }
    return out;
}

double max_dilation(const BeltramiField& field) {
    double s = field.sup_abs();
    if (s >= 1.0) throw NumericalError("map not orientation-preserving: sup|mu| = " + std::to_string(s));
    return (1.0 + s) / (1.0 - s);
}

cpx cayley(const cpx& z) {
    if (std::abs(z - 1.0) < 1e-14) throw ValidationError("Cayley pole: z = 1");
    return cpx(0.0, 1.0) * (1.0 + z) / (1.0 - z);
}

cpx cayley_inv(const cpx& w) {
    if (std::abs(w + cpx(0.0, 1.0)) < 1e-14) throw ValidationError("inverse Cayley pole: w = -i");
    return (w - cpx(0.0, 1.0)) / (w + cpx(0.0, 1.0));
}

namespace {

// Stiffness matrix of div(A(mu) grad u) = 0, P1 elements.
Eigen::SparseMatrix<double> lbs_stiffness(const std::vector<cpx>& pos,
                                          const std::vector<Face>& faces,
                                          const BeltramiField& mu,
                                          const std::vector<bool>& skip_face) {
    const int nv = static_cast<int>(pos.size());
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(9 * faces.size());
    for (size_t f = 0; f < faces.size(); ++f) {
        if (skip_face[f]) continue;
        const Face& t = faces[f];
        const double x1 = pos[t[0]].real(), y1 = pos[t[0]].imag();
        const double x2 = pos[t[1]].real(), y2 = pos[t[1]].imag();
        const double x3 = pos[t[2]].real(), y3 = pos[t[2]].imag();
        const double twoA = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1);
        if (twoA == 0.0)
            throw ValidationError("degenerate face " + std::to_string(f) + " in LBS assembly");
        const double gx[3] = {(y2 - y3) / twoA, (y3 - y1) / twoA, (y1 - y2) / twoA};
        const double gy[3] = {(x3 - x2) / twoA, (x1 - x3) / twoA, (x2 - x1) / twoA};
        const double rho = mu.mu[f].real(), eta = mu.mu[f].imag();
        const double den = 1.0 - rho * rho - eta * eta;
        if (den <= 0.0)
            throw NumericalError("|mu| >= 1 on face " + std::to_string(f));
        const double a11 = ((1.0 - rho) * (1.0 - rho) + eta * eta) / den;
        const double a12 = -2.0 * eta / den;
        const double a22 = ((1.0 + rho) * (1.0 + rho) + eta * eta) / den;
        // signed area: keeps exact linear reproduction even when the source
        // carries inverted slivers (e.g. half-plane faces straddling the pole)
        const double area = 0.5 * twoA;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                double k = area * (gx[r] * (a11 * gx[c] + a12 * gy[c]) +
                                   gy[r] * (a12 * gx[c] + a22 * gy[c]));
                trips.emplace_back(t[r], t[c], k);
            }
    }
    Eigen::SparseMatrix<double> K(nv, nv);
    K.setFromTriplets(trips.begin(), trips.end());
    K.makeCompressed();
    return K;
}

// Solve K x = 0 with Dirichlet values on `fixed`; fixed columns move to the rhs.
Eigen::VectorXd solve_component(const Eigen::SparseMatrix<double>& K,
                                const std::vector<bool>& fixed,
                                const Eigen::VectorXd& fixed_values) {
    const int nv = static_cast<int>(fixed.size());
    std::vector<int> free_index(nv, -1);
    int n_free = 0;
    for (int v = 0; v < nv; ++v)
        if (!fixed[v]) free_index[v] = n_free++;

    Eigen::VectorXd x = fixed_values;
    if (n_free == 0) return x;

    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_free);
    for (int col = 0; col < K.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(K, col); it; ++it) {
            int r = static_cast<int>(it.row()), c = static_cast<int>(it.col());
            if (fixed[r]) continue;
            if (fixed[c])
                rhs(free_index[r]) -= it.value() * fixed_values(c);
            else
                trips.emplace_back(free_index[r], free_index[c], it.value());
        }
    }
    Eigen::SparseMatrix<double> A(n_free, n_free);
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();

    const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
    if (ldlt.info() == Eigen::Success) {
        Eigen::VectorXd sol = ldlt.solve(rhs);
        if (ldlt.info() == Eigen::Success &&
            (A * sol - rhs).cwiseAbs().maxCoeff() <= 1e-8 * scale) {
            for (int v = 0; v < nv; ++v)
                if (!fixed[v]) x(v) = sol(free_index[v]);
            return x;
        }
    }
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(A);
    if (lu.info() != Eigen::Success) throw NumericalError("LBS system is rank-deficient");
    Eigen::VectorXd sol = lu.solve(rhs);
    if (lu.info() != Eigen::Success) throw NumericalError("LBS solve failed");
    for (int v = 0; v < nv; ++v)
        if (!fixed[v]) x(v) = sol(free_index[v]);
    return x;
}

}  // namespace

std::vector<cpx> lbs_solve(const std::vector<cpx>& positions, const std::vector<Face>& faces,
                           const BeltramiField& mu, const std::vector<PointConstraint>& constraints) {
    const int nv = static_cast<int>(positions.size());
    if (mu.mu.size() != faces.size()) throw ValidationError("mu field size does not match face count");
    for (const cpx& p : positions)
        if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
            throw ValidationError("non-finite coordinate in LBS input");
    if (double s = mu.sup_abs(); s >= 1.0)
        throw NumericalError("sup|mu| = " + std::to_string(s) + " >= 1");

    std::vector<bool> fixed_re(nv, false), fixed_im(nv, false);
    Eigen::VectorXd val_re = Eigen::VectorXd::Zero(nv), val_im = Eigen::VectorXd::Zero(nv);
    std::vector<cpx> anchors;
    for (const PointConstraint& pc : constraints) {
        if (pc.vertex < 0 || pc.vertex >= nv)
            throw ValidationError("constraint references invalid vertex " + std::to_string(pc.vertex));
        if ((fixed_im[pc.vertex] && pc.kind == PointConstraint::Kind::fixed_imaginary_zero) ||
            (fixed_re[pc.vertex] && pc.kind == PointConstraint::Kind::fixed_both))
            throw ValidationError("conflicting constraints at vertex " + std::to_string(pc.vertex));
        if (pc.kind == PointConstraint::Kind::fixed_both) {
            if (fixed_im[pc.vertex] && val_im(pc.vertex) != pc.target.imag())
                throw ValidationError("conflicting constraints at vertex " + std::to_string(pc.vertex));
            fixed_re[pc.vertex] = fixed_im[pc.vertex] = true;
            val_re(pc.vertex) = pc.target.real();
            val_im(pc.vertex) = pc.target.imag();
            anchors.push_back(pc.target);
        } else {
            fixed_im[pc.vertex] = true;
            val_im(pc.vertex) = 0.0;
        }
    }
    if (anchors.size() < 3) throw ValidationError("need at least 3 fixed_both constraints");

    bool has_im_pins = false;
    for (const PointConstraint& pc : constraints)
        if (pc.kind == PointConstraint::Kind::fixed_imaginary_zero) has_im_pins = true;

    // Non-collinearity of the anchor targets. Only meaningful when the anchors
    // are the sole constraints; with the real axis pinned the anchors are
    // intentionally collinear on it.
    if (!has_im_pins) {
        double spread = 0.0, best = 0.0;
        cpx p0 = anchors[0], p1 = anchors[0];
        for (const cpx& a : anchors)
            for (const cpx& b : anchors) spread = std::max(spread, std::abs(a - b));
        for (const cpx& a : anchors)
            if (std::abs(a - p0) > std::abs(p1 - p0)) p1 = a;
        for (const cpx& a : anchors) {
            double ar = std::abs((p1.real() - p0.real()) * (a.imag() - p0.imag()) -
                                 (a.real() - p0.real()) * (p1.imag() - p0.imag()));
            best = std::max(best, ar);
        }
        if (best <= 1e-9 * spread * spread)
            throw ValidationError("fixed_both constraint targets are collinear");
    }

    // Faces whose vertices are all fully constrained contribute no equations;
    // skip them so degenerate (e.g. inverted-to-flat) fully pinned faces do
    // not abort the assembly.
    std::vector<bool> skip_face(faces.size(), false);
    for (size_t f = 0; f < faces.size(); ++f) {
        const Face& t = faces[f];
        skip_face[f] = fixed_re[t[0]] && fixed_re[t[1]] && fixed_re[t[2]] &&
                       fixed_im[t[0]] && fixed_im[t[1]] && fixed_im[t[2]];
    }

    Eigen::SparseMatrix<double> K = lbs_stiffness(positions, faces, mu, skip_face);
    Eigen::VectorXd re = solve_component(K, fixed_re, val_re);
    Eigen::VectorXd im = solve_component(K, fixed_im, val_im);

    std::vector<cpx> out(nv);
    for (int v = 0; v < nv; ++v) out[v] = cpx(re(v), im(v));
    return out;
}

}  // namespace surfcover

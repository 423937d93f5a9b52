#include "surfcover/harmonic.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace surfcover {

std::vector<double> boundary_circle_map(const TriangleMesh& mesh) {
    const std::vector<int>& loop = mesh.boundary;
    const size_t n = loop.size();
    std::vector<double> lengths(n);
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const Vec3& a = mesh.vertices[loop[i]];
        const Vec3& b = mesh.vertices[loop[(i + 1) % n]];
        lengths[i] = norm(b - a);
        if (lengths[i] <= 0.0)
            throw ValidationError("zero-length boundary edge at loop position " + std::to_string(i));
        total += lengths[i];
    }
    std::vector<double> theta(n);
    double cum = 0.0;
    for (size_t i = 0; i < n; ++i) {
        theta[i] = 2.0 * M_PI * cum / total;
        cum += lengths[i];
    }
    return theta;
}

DiskEmbedding solve_harmonic(const TriangleMesh& mesh, const EdgeWeights& weights,
                             const std::vector<double>& boundary_angles) {
    const int nv = static_cast<int>(mesh.vertices.size());
    const std::vector<int>& loop = mesh.boundary;
    if (boundary_angles.size() != loop.size())
        throw ValidationError("boundary angle count does not match boundary loop");

    std::vector<int> interior_index(nv, -1);
    std::vector<cpx> fixed(nv);
    std::vector<bool> is_fixed(nv, false);
    for (size_t i = 0; i < loop.size(); ++i) {
        is_fixed[loop[i]] = true;
        fixed[loop[i]] = cpx(std::cos(boundary_angles[i]), std::sin(boundary_angles[i]));
    }
    int n_int = 0;
    for (int v = 0; v < nv; ++v)
        if (!is_fixed[v]) interior_index[v] = n_int++;

    DiskEmbedding emb;
    emb.pos.assign(nv, cpx(0, 0));
    for (int v = 0; v < nv; ++v)
        if (is_fixed[v]) emb.pos[v] = fixed[v];

    if (n_int > 0) {
        // Interior subsystem; boundary values moved to the right-hand side.
        // Real and imaginary parts share the matrix.
        std::vector<Eigen::Triplet<double>> trips;
        Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n_int, 2);
        for (const auto& [e, k] : weights.w) {
            auto add = [&](int u, int v) {
                if (is_fixed[u]) return;
                int iu = interior_index[u];
                trips.emplace_back(iu, iu, k);
                if (is_fixed[v]) {
                    rhs(iu, 0) += k * fixed[v].real();
                    rhs(iu, 1) += k * fixed[v].imag();
                } else {
                    trips.emplace_back(iu, interior_index[v], -k);
                }
            };
            add(e.first, e.second);
            add(e.second, e.first);
        }
        Eigen::SparseMatrix<double> A(n_int, n_int);
        A.setFromTriplets(trips.begin(), trips.end());
        A.makeCompressed();
        Eigen::SparseLU<Eigen::SparseMatrix<double>> solver(A);
        if (solver.info() != Eigen::Success)
            throw NumericalError("harmonic system is singular; refine the mesh");
        Eigen::MatrixXd x = solver.solve(rhs);
        if (solver.info() != Eigen::Success)
            throw NumericalError("harmonic solve failed; refine the mesh");
        for (int v = 0; v < nv; ++v)
            if (!is_fixed[v]) emb.pos[v] = cpx(x(interior_index[v], 0), x(interior_index[v], 1));
    }

    double res = harmonic_residual(mesh, weights, emb);
    if (res > 1e-8 * weights.mean_abs())
        throw NumericalError("harmonic residual " + std::to_string(res) +
                             " exceeds tolerance; refine the mesh");
    return emb;
}

double harmonic_energy(const TriangleMesh& mesh, const EdgeWeights& weights,
                       const DiskEmbedding& embedding) {
    if (embedding.pos.size() != mesh.vertices.size())
        throw ValidationError("embedding size does not match mesh");
    double e = 0.0;
    for (const auto& [edge, k] : weights.w)
        e += k * std::norm(embedding.pos[edge.first] - embedding.pos[edge.second]);
    return 0.5 * e;  // E(f) = 1/2 sum_k k_uv |f_u - f_v|^2
}

double harmonic_residual(const TriangleMesh& mesh, const EdgeWeights& weights,
                         const DiskEmbedding& embedding) {
    const int nv = static_cast<int>(mesh.vertices.size());
    std::vector<cpx> lap(nv, cpx(0, 0));
    for (const auto& [e, k] : weights.w) {
        cpx d = embedding.pos[e.second] - embedding.pos[e.first];
        lap[e.first] += k * d;
        lap[e.second] -= k * d;
    }
    std::vector<bool> on_boundary(nv, false);
    for (int v : mesh.boundary) on_boundary[v] = true;
    double worst = 0.0;
    for (int v = 0; v < nv; ++v)
        if (!on_boundary[v]) worst = std::max(worst, std::abs(lap[v]));
    return worst;
}

double signed_area(const cpx& a, const cpx& b, const cpx& c) {
    return 0.5 * ((b.real() - a.real()) * (c.imag() - a.imag()) -
                  (c.real() - a.real()) * (b.imag() - a.imag()));
}

std::vector<int> flipped_faces(const std::vector<Face>& faces, const std::vector<cpx>& pos) {
    std::vector<int> out;
    for (size_t f = 0; f < faces.size(); ++f) {
        const Face& t = faces[f];
        if (signed_area(pos[t[0]], pos[t[1]], pos[t[2]]) <= 0.0)
            out.push_back(static_cast<int>(f));
    }
    return out;
}

}  // namespace surfcover

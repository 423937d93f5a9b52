#pragma once

#include <map>
#include <utility>

#include "surfcover/types.hpp"

namespace surfcover {

// Triangulated surface with disk topology: exactly one boundary loop,
// V - E + F = 1, consistent CCW face orientation.
struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<Face> faces;
    std::vector<int> boundary;  // loop order, starts at lowest boundary vertex, surface on the left
    int num_edges = 0;

    bool is_boundary_vertex(int v) const;
};

enum class MeshFormat { OFF, OBJ };

// Validates topology, extracts the boundary loop. Throws ValidationError.
TriangleMesh make_mesh(std::vector<Vec3> vertices, std::vector<Face> faces);

TriangleMesh load_mesh(const std::string& path, MeshFormat format);
TriangleMesh load_mesh(const std::string& path);  // format from extension
void save_mesh(const TriangleMesh& mesh, const std::string& path, MeshFormat format);

using EdgeKey = std::pair<int, int>;
inline EdgeKey edge_key(int u, int v) { return u < v ? EdgeKey{u, v} : EdgeKey{v, u}; }

// k_uv = cot(alpha) + cot(beta), keyed by undirected edge.
struct EdgeWeights {
    std::map<EdgeKey, double> w;

    double at(int u, int v) const;
    double mean_abs() const;
};

const std::vector<int>& boundary_loop(const TriangleMesh& mesh);

// Cotangents of the opposite angles, negative weights kept as-is.
EdgeWeights cotangent_weights(const TriangleMesh& mesh);

double face_area3d(const TriangleMesh& mesh, int f);
double bbox_diagonal(const TriangleMesh& mesh);

}  // namespace surfcover

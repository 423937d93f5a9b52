#include "surfcover/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace surfcover {

namespace {

uint64_t dir_key(int u, int v) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) | static_cast<uint32_t>(v);
}

std::string fmt_edge(int u, int v) {
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

bool TriangleMesh::is_boundary_vertex(int v) const {
    return std::find(boundary.begin(), boundary.end(), v) != boundary.end();
}

double face_area3d(const TriangleMesh& mesh, int f) {
    const Face& t = mesh.faces[f];
    Vec3 e1 = mesh.vertices[t[1]] - mesh.vertices[t[0]];
    Vec3 e2 = mesh.vertices[t[2]] - mesh.vertices[t[0]];
    return 0.5 * norm(cross(e1, e2));
}

double bbox_diagonal(const TriangleMesh& mesh) {
    if (mesh.vertices.empty()) return 0.0;
    Vec3 lo = mesh.vertices[0], hi = mesh.vertices[0];
    for (const Vec3& v : mesh.vertices) {
        lo.x = std::min(lo.x, v.x); lo.y = std::min(lo.y, v.y); lo.z = std::min(lo.z, v.z);
        hi.x = std::max(hi.x, v.x); hi.y = std::max(hi.y, v.y); hi.z = std::max(hi.z, v.z);
    }
    return norm(hi - lo);
}

TriangleMesh make_mesh(std::vector<Vec3> vertices, std::vector<Face> faces) {
    TriangleMesh mesh;
    mesh.vertices = std::move(vertices);
    mesh.faces = std::move(faces);
    const int nv = static_cast<int>(mesh.vertices.size());
    const int nf = static_cast<int>(mesh.faces.size());
    if (nv < 3 || nf < 1) throw ValidationError("mesh has too few vertices or faces");

    for (int f = 0; f < nf; ++f) {
        const Face& t = mesh.faces[f];
        for (int c = 0; c < 3; ++c) {
            if (t[c] < 0 || t[c] >= nv)
                throw ValidationError("face " + std::to_string(f) + " references invalid vertex " +
                                      std::to_string(t[c]));
        }
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
            throw ValidationError("face " + std::to_string(f) + " repeats a vertex");
    }

    const double diag = bbox_diagonal(mesh);
    const double area_floor = 1e-12 * diag * diag;
    for (int f = 0; f < nf; ++f) {
        if (face_area3d(mesh, f) <= area_floor)
            throw ValidationError("degenerate face " + std::to_string(f));
    }

    // Each directed edge may appear at most once; a repeat means a non-manifold
    // edge or an orientation flip between the two incident faces.
    std::unordered_map<uint64_t, int> directed;  // directed edge -> face
    directed.reserve(3 * nf);
    for (int f = 0; f < nf; ++f) {
        const Face& t = mesh.faces[f];
        for (int c = 0; c < 3; ++c) {
            int u = t[c], v = t[(c + 1) % 3];
            auto [it, fresh] = directed.emplace(dir_key(u, v), f);
            if (!fresh)
                throw ValidationError("non-manifold or inconsistently oriented edge " +
                                      fmt_edge(u, v) + " shared by faces " +
                                      std::to_string(it->second) + " and " + std::to_string(f));
        }
    }

    // Undirected edge census; 1 incident face = boundary edge, 2 = interior.
    std::map<EdgeKey, int> edge_count;
    for (const auto& [k, f] : directed) {
        (void)f;
        int u = static_cast<int>(k >> 32), v = static_cast<int>(k & 0xffffffffu);
        edge_count[edge_key(u, v)] += 1;
    }
    mesh.num_edges = static_cast<int>(edge_count.size());
    for (const auto& [e, cnt] : edge_count) {
        if (cnt > 2)
            throw ValidationError("non-manifold edge " + fmt_edge(e.first, e.second));
    }

    // Boundary directed edges: no opposite partner. Walking them keeps the
    // surface on the left (faces are CCW).
    std::map<int, int> next;  // tail -> head, ordered for determinism
    int n_boundary_edges = 0;
    for (const auto& [k, f] : directed) {
        (void)f;
        int u = static_cast<int>(k >> 32), v = static_cast<int>(k & 0xffffffffu);
        if (!directed.count(dir_key(v, u))) {
            ++n_boundary_edges;
            auto [it, fresh] = next.emplace(u, v);
            if (!fresh)
                throw ValidationError("non-manifold boundary vertex " + std::to_string(u));
        }
    }
    if (n_boundary_edges == 0) throw ValidationError("no boundary loop (closed surface)");

    int start = next.begin()->first;  // lowest boundary vertex index
    mesh.boundary.clear();
    int cur = start;
    do {
        mesh.boundary.push_back(cur);
        auto it = next.find(cur);
        if (it == next.end()) throw ValidationError("broken boundary at vertex " + std::to_string(cur));
        cur = it->second;
        if (static_cast<int>(mesh.boundary.size()) > n_boundary_edges)
            throw ValidationError("boundary traversal does not close");
    } while (cur != start);

    if (static_cast<int>(mesh.boundary.size()) != n_boundary_edges)
        throw ValidationError("multiple boundary loops (" +
                              std::to_string(n_boundary_edges - static_cast<int>(mesh.boundary.size())) +
                              " boundary edges outside the first loop)");

    const int chi = nv - mesh.num_edges + nf;
    if (chi != 1)
        throw ValidationError("not a topological disk: V-E+F = " + std::to_string(chi));

    return mesh;
}

const std::vector<int>& boundary_loop(const TriangleMesh& mesh) { return mesh.boundary; }

double EdgeWeights::at(int u, int v) const {
    auto it = w.find(edge_key(u, v));
    if (it == w.end()) throw ValidationError("no weight for edge " + fmt_edge(u, v));
    return it->second;
}

double EdgeWeights::mean_abs() const {
    if (w.empty()) return 0.0;
    double s = 0.0;
    for (const auto& [e, k] : w) s += std::abs(k);
    return s / static_cast<double>(w.size());
}

EdgeWeights cotangent_weights(const TriangleMesh& mesh) {
    EdgeWeights out;
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        const Face& t = mesh.faces[f];
        for (int c = 0; c < 3; ++c) {
            int i = t[c], j = t[(c + 1) % 3], k = t[(c + 2) % 3];
            // angle at i, opposite edge (j,k)
            Vec3 a = mesh.vertices[j] - mesh.vertices[i];
            Vec3 b = mesh.vertices[k] - mesh.vertices[i];
            double cr = norm(cross(a, b));
            double dt = dot(a, b);
            double angle = std::atan2(cr, dt);
            if (angle < 1e-9)
                throw ValidationError("near-degenerate angle in face " + std::to_string(f));
            out.w[edge_key(j, k)] += dt / cr;
        }
    }
    return out;
}

namespace {

MeshFormat format_from_path(const std::string& path) {
    auto pos = path.rfind('.');
    std::string ext = pos == std::string::npos ? "" : path.substr(pos + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(c));
    if (ext == "off") return MeshFormat::OFF;
    if (ext == "obj") return MeshFormat::OBJ;
    throw ValidationError("cannot infer mesh format from path: " + path);
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open mesh file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

bool content_line(const std::string& s, char comment) {
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c != comment;
    }
    return false;
}

TriangleMesh parse_off(const std::vector<std::string>& lines, const std::string& path) {
    std::vector<std::string> body;
    for (const auto& l : lines)
        if (content_line(l, '#')) body.push_back(l);
    if (body.empty() || body[0].substr(0, 3) != "OFF")
        throw ValidationError(path + ": missing OFF header");
    size_t idx = 1;
    auto next_stream = [&]() -> std::istringstream {
        if (idx >= body.size()) throw ValidationError(path + ": truncated OFF file");
        return std::istringstream(body[idx++]);
    };
    int nv = 0, nf = 0, ne = 0;
    {
        auto s = next_stream();
        if (!(s >> nv >> nf >> ne)) throw ValidationError(path + ": bad OFF counts line");
    }
    std::vector<Vec3> verts(nv);
    for (int i = 0; i < nv; ++i) {
        auto s = next_stream();
        if (!(s >> verts[i].x >> verts[i].y >> verts[i].z))
            throw ValidationError(path + ": bad vertex line " + std::to_string(i));
    }
    std::vector<Face> faces(nf);
    for (int i = 0; i < nf; ++i) {
        auto s = next_stream();
        int k = 0;
        if (!(s >> k)) throw ValidationError(path + ": bad face line " + std::to_string(i));
        if (k != 3) throw ValidationError(path + ": face " + std::to_string(i) + " is not a triangle");
        if (!(s >> faces[i][0] >> faces[i][1] >> faces[i][2]))
            throw ValidationError(path + ": bad face line " + std::to_string(i));
    }
    return make_mesh(std::move(verts), std::move(faces));
}

TriangleMesh parse_obj(const std::vector<std::string>& lines, const std::string& path) {
    std::vector<Vec3> verts;
    std::vector<Face> faces;
    int ln = 0;
    for (const auto& line : lines) {
        ++ln;
        std::istringstream s(line);
        std::string tag;
        if (!(s >> tag)) continue;
        if (tag == "v") {
            Vec3 v;
            if (!(s >> v.x >> v.y >> v.z))
                throw ValidationError(path + ": bad v record at line " + std::to_string(ln));
            verts.push_back(v);
        } else if (tag == "f") {
            Face f{};
            for (int c = 0; c < 3; ++c) {
                std::string tok;
                if (!(s >> tok)) throw ValidationError(path + ": bad f record at line " + std::to_string(ln));
                // accept "i", "i/t", "i/t/n"
                f[c] = std::stoi(tok.substr(0, tok.find('/'))) - 1;
            }
            std::string extra;
            if (s >> extra)
                throw ValidationError(path + ": non-triangular face at line " + std::to_string(ln));
            faces.push_back(f);
        }
        // vn/vt/usemtl etc. ignored
    }
    return make_mesh(std::move(verts), std::move(faces));
}

}  // namespace

TriangleMesh load_mesh(const std::string& path, MeshFormat format) {
    auto lines = read_lines(path);
    return format == MeshFormat::OFF ? parse_off(lines, path) : parse_obj(lines, path);
}

TriangleMesh load_mesh(const std::string& path) { return load_mesh(path, format_from_path(path)); }

void save_mesh(const TriangleMesh& mesh, const std::string& path, MeshFormat format) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write mesh file: " + path);
    char buf[128];
    if (format == MeshFormat::OFF) {
        out << "OFF\n" << mesh.vertices.size() << " " << mesh.faces.size() << " "
            << mesh.num_edges << "\n";
        for (const Vec3& v : mesh.vertices) {
            std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", v.x, v.y, v.z);
            out << buf;
        }
        for (const Face& f : mesh.faces) out << "3 " << f[0] << " " << f[1] << " " << f[2] << "\n";
    } else {
        for (const Vec3& v : mesh.vertices) {
            std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
            out << buf;
        }
        for (const Face& f : mesh.faces)
            out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
    }
}

}  // namespace surfcover

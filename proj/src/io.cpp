#include "surfcover/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace surfcover {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << content;
}

std::string csv_embedding(const std::vector<cpx>& pos) {
    std::ostringstream s;
    s << "vertex_id,u,v\n";
    for (size_t v = 0; v < pos.size(); ++v)
        s << v << "," << fmt_double(pos[v].real()) << "," << fmt_double(pos[v].imag()) << "\n";
    return s.str();
}

std::string csv_beltrami(const BeltramiField& field) {
    std::ostringstream s;
    s << "face_id,re_mu,im_mu,abs_mu\n";
    for (size_t f = 0; f < field.mu.size(); ++f)
        s << f << "," << fmt_double(field.mu[f].real()) << "," << fmt_double(field.mu[f].imag())
          << "," << fmt_double(std::abs(field.mu[f])) << "\n";
    return s.str();
}

std::string csv_trace(const CoverageTrace& trace) {
    std::ostringstream s;
    s << "iter,H,max_centroid_dist\n";
    for (const TraceRecord& r : trace.records)
        s << r.iter << "," << fmt_double(r.cost) << "," << fmt_double(r.max_centroid_dist) << "\n";
    return s.str();
}

std::string csv_partition_labels(const std::vector<int>& labels) {
    std::ostringstream s;
    s << "face_id,site\n";
    for (size_t f = 0; f < labels.size(); ++f) s << f << "," << labels[f] << "\n";
    return s.str();
}

std::string csv_metric(const DeformationMetric& metric) {
    std::ostringstream s;
    s << "vertex_id,displacement\n";
    for (size_t v = 0; v < metric.displacement.size(); ++v)
        s << v << "," << fmt_double(metric.displacement[v]) << "\n";
    return s.str();
}

std::string csv_density(const DensityField& density) {
    std::ostringstream s;
    s << "vertex_id,phi\n";
    for (size_t v = 0; v < density.phi.size(); ++v)
        s << v << "," << fmt_double(density.phi[v]) << "\n";
    return s.str();
}

std::string json_diagnostics(const DiskMapDiagnostics& diag) {
    nlohmann::ordered_json j;
    j["mean_abs_mu_before"] = diag.mean_abs_mu_before;
    j["mean_abs_mu_after"] = diag.mean_abs_mu_after;
    j["max_dilation"] = diag.max_dilation;
    j["flipped_faces"] = diag.flipped_faces;
    j["correction_applied"] = diag.correction_applied;
    return j.dump(2) + "\n";
}

std::string json_positions(const ConformalDiskMap& map, const CoverageTrace& trace) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const TraceRecord& r : trace.records) {
        nlohmann::ordered_json rec;
        rec["iter"] = r.iter;
        auto disk = nlohmann::ordered_json::array();
        for (const cpx& z : r.disk_positions) disk.push_back({z.real(), z.imag()});
        auto surf = nlohmann::ordered_json::array();
        for (const Location& loc : r.surface_positions) {
            Vec3 p = surface_point(map, loc);
            surf.push_back({p.x, p.y, p.z});
        }
        rec["disk"] = disk;
        rec["surface"] = surf;
        j.push_back(rec);
    }
    return j.dump(2) + "\n";
}

std::string json_paths(const std::vector<std::vector<Vec3>>& paths) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& path : paths) {
        auto p = nlohmann::ordered_json::array();
        for (const Vec3& v : path) p.push_back({v.x, v.y, v.z});
        j.push_back(p);
    }
    return j.dump(2) + "\n";
}

}  // namespace surfcover

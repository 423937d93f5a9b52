#pragma once

#include <string>

#include "surfcover/beltrami.hpp"
#include "surfcover/coverage.hpp"
#include "surfcover/deformation.hpp"
#include "surfcover/diskmap.hpp"

namespace surfcover {

// CSV/JSON emitters; doubles printed with %.17g for lossless round trips and
// byte-identical reruns.

std::string csv_embedding(const std::vector<cpx>& pos);               // vertex_id,u,v
std::string csv_beltrami(const BeltramiField& field);                 // face_id,re_mu,im_mu,abs_mu
std::string csv_trace(const CoverageTrace& trace);                    // iter,H,max_centroid_dist
std::string csv_partition_labels(const std::vector<int>& labels);     // face_id,site
std::string csv_metric(const DeformationMetric& metric);              // vertex_id,displacement
std::string csv_density(const DensityField& density);                 // vertex_id,phi

std::string json_diagnostics(const DiskMapDiagnostics& diag);
std::string json_positions(const ConformalDiskMap& map, const CoverageTrace& trace);
std::string json_paths(const std::vector<std::vector<Vec3>>& paths);

void write_file(const std::string& path, const std::string& content);
std::string fmt_double(double v);

}  // namespace surfcover

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "surfcover/coverage.hpp"
#include "surfcover/deformation.hpp"
#include "surfcover/io.hpp"
#include "surfcover/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace surfcover;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

struct RunConfig {
    std::string mesh;
    std::string mesh_after;  // deformation density mode only
    int n_agents = 1;
    uint64_t seed = 0;
    std::vector<double> gains;  // broadcast if size 1
    double dt = 1.0;
    int max_iters = 200;
    double tol = 1e-6;
    int quadrature_order = 1;
    bool density_deformation = false;
    double density_floor = 1.0;
    double density_scale = 1.0;
    std::string out;
};

void require_keys(const ordered_json& j, const std::vector<std::string>& allowed,
                  const std::string& where) {
    for (const auto& [key, _] : j.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ValidationError("unknown config key \"" + key + "\" in " + where);
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config: " + path);
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const ordered_json::parse_error& e) {
        throw ValidationError(std::string("config parse error: ") + e.what());
    }
    require_keys(j, {"mesh", "mesh_after", "n_agents", "seed", "gain", "dt", "max_iters", "tol",
                     "quadrature_order", "density", "out"}, "config");

    RunConfig cfg;
    if (!j.contains("mesh")) throw ValidationError("config is missing \"mesh\"");
    cfg.mesh = j.at("mesh").get<std::string>();
    cfg.n_agents = j.value("n_agents", 1);
    if (cfg.n_agents < 1) throw ValidationError("n_agents must be >= 1");
    cfg.seed = j.value("seed", 0ULL);
    if (j.contains("gain")) {
        if (j["gain"].is_array())
            cfg.gains = j["gain"].get<std::vector<double>>();
        else
            cfg.gains = {j["gain"].get<double>()};
    } else {
        cfg.gains = {1.0};
    }
    if (cfg.gains.size() != 1 && cfg.gains.size() != static_cast<size_t>(cfg.n_agents))
        throw ValidationError("gain list length must be 1 or n_agents");
    for (double g : cfg.gains)
        if (!(g > 0.0)) throw ValidationError("gains must be positive");
    cfg.dt = j.value("dt", 1.0);
    cfg.max_iters = j.value("max_iters", 200);
    cfg.tol = j.value("tol", 1e-6);
    if (!(cfg.tol > 0.0)) throw ValidationError("tol must be positive");
    cfg.quadrature_order = j.value("quadrature_order", 1);
    for (double g : cfg.gains)
        if (cfg.dt * g > 1.0 + 1e-12)
            throw ValidationError("dt * gain must be <= 1");
    if (j.contains("density")) {
        const ordered_json& d = j["density"];
        require_keys(d, {"mode", "floor", "scale"}, "density");
        std::string mode = d.value("mode", "uniform");
        if (mode == "uniform") {
            require_keys(d, {"mode"}, "uniform density");
        } else if (mode == "deformation") {
            cfg.density_deformation = true;
            cfg.density_floor = d.value("floor", 1.0);
            cfg.density_scale = d.value("scale", 1.0);
        } else {
            throw ValidationError("density mode must be \"uniform\" or \"deformation\"");
        }
    }
    if (cfg.density_deformation) {
        if (!j.contains("mesh_after"))
            throw ValidationError("deformation density requires \"mesh_after\"");
        cfg.mesh_after = j.at("mesh_after").get<std::string>();
    } else if (j.contains("mesh_after")) {
        throw ValidationError("\"mesh_after\" is only valid with deformation density");
    }
    cfg.out = j.value("out", "");
    return cfg;
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const std::vector<std::string>& files,
                    std::optional<uint64_t> seed) {
    ordered_json j;
    j["command"] = command;
    if (seed) j["seed"] = *seed;
    j["files"] = files;
    write_file((out_dir / "manifest.json").string(), j.dump(2) + "\n");
}

fs::path prepare_out(const std::string& out) {
    if (out.empty()) throw ValidationError("output directory not set (--out or config \"out\")");
    fs::path p(out);
    fs::create_directories(p);
    return p;
}

int cmd_check(const std::string& mesh_path) {
    try {
        TriangleMesh mesh = load_mesh(mesh_path);
        std::cout << "mesh: " << mesh_path << "\n"
                  << "vertices: " << mesh.vertices.size() << "\n"
                  << "faces: " << mesh.faces.size() << "\n"
                  << "edges: " << mesh.num_edges << "\n"
                  << "boundary_loops: 1\n"
                  << "boundary_length: " << mesh.boundary.size() << "\n"
                  << "euler_characteristic: 1\n"
                  << "manifold: pass\n"
                  << "orientation: pass\n"
                  << "degenerate_faces: none\n"
                  << "status: valid\n";
        return kExitOk;
    } catch (const ValidationError& e) {
        std::cout << "mesh: " << mesh_path << "\n"
                  << "status: invalid\n"
                  << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

int cmd_param(const std::string& mesh_path, bool no_correction, const std::string& out) {
    fs::path out_dir = prepare_out(out);
    TriangleMesh mesh = load_mesh(mesh_path);
    ConformalDiskMap map = ConformalDiskMap::build(mesh, {.correction = !no_correction});

    write_file((out_dir / "disk.csv").string(), csv_embedding(map.disk()));
    write_file((out_dir / "mu.csv").string(), csv_beltrami(map.final_mu()));
    write_file((out_dir / "diagnostics.json").string(), json_diagnostics(map.diagnostics()));
    write_file((out_dir / "disk.svg").string(), svg_disk_mesh(map));
    write_manifest(out_dir, "param",
                   {"disk.csv", "mu.csv", "diagnostics.json", "disk.svg", "manifest.json"},
                   std::nullopt);

    const DiskMapDiagnostics& d = map.diagnostics();
    std::cout << "flipped_faces: " << d.flipped_faces << "\n"
              << "mean_abs_mu_before: " << fmt_double(d.mean_abs_mu_before) << "\n"
              << "mean_abs_mu_after: " << fmt_double(d.mean_abs_mu_after) << "\n"
              << "max_dilation: " << fmt_double(d.max_dilation) << "\n"
              << "correction_applied: " << (d.correction_applied ? "true" : "false") << "\n";
    return kExitOk;
}

int cmd_cover(const std::string& config_path, const std::string& out_override,
              std::optional<uint64_t> seed_override) {
    RunConfig cfg = parse_config(config_path);
    if (!out_override.empty()) cfg.out = out_override;
    if (seed_override) cfg.seed = *seed_override;
    fs::path out_dir = prepare_out(cfg.out);

    TriangleMesh mesh = load_mesh(cfg.mesh);
    ConformalDiskMap map = ConformalDiskMap::build(mesh);

    DensityField density = DensityField::uniform(mesh.vertices.size());
    std::optional<DeformationMetric> metric;
    if (cfg.density_deformation) {
        TriangleMesh after = load_mesh(cfg.mesh_after);
        ConformalDiskMap map_after = ConformalDiskMap::build(after);
        metric = disk_difference(map, map_after);
        density = density_from_deformation(*metric, cfg.density_floor, cfg.density_scale);
    }

    AgentFleet fleet = random_fleet(map, cfg.n_agents, cfg.seed);
    for (size_t i = 0; i < fleet.agents.size(); ++i)
        fleet.agents[i].gain = cfg.gains[cfg.gains.size() == 1 ? 0 : i];

    LloydConfig lloyd{.dt = cfg.dt, .max_iters = cfg.max_iters, .tol = cfg.tol,
                      .quadrature_order = cfg.quadrature_order};
    CoverageTrace trace = lloyd_run(map, fleet, density, lloyd);

    Quadrature quad = build_quadrature(map, density, cfg.quadrature_order);
    std::vector<int> labels = pullback_partition(map, trace.final_partition, quad);

    // per-agent disk trajectory pulled back onto the surface
    std::vector<std::vector<Vec3>> paths(fleet.agents.size());
    for (const TraceRecord& rec : trace.records)
        for (size_t i = 0; i < rec.disk_positions.size(); ++i)
            paths[i].push_back(surface_point(map, map.inverse(rec.disk_positions[i])));

    std::vector<double> costs;
    for (const TraceRecord& rec : trace.records) costs.push_back(rec.cost);

    write_file((out_dir / "trace.csv").string(), csv_trace(trace));
    write_file((out_dir / "positions.json").string(), json_positions(map, trace));
    write_file((out_dir / "partition.csv").string(), csv_partition_labels(labels));
    write_file((out_dir / "paths.json").string(), json_paths(paths));
    write_file((out_dir / "partition.svg").string(),
               svg_partition(map, quad, trace.final_partition,
                             trace.records.front().disk_positions));
    write_file((out_dir / "cost.svg").string(), svg_cost_curve(costs));
    std::vector<std::string> files = {"trace.csv",     "positions.json", "partition.csv",
                                      "paths.json",    "partition.svg",  "cost.svg",
                                      "manifest.json"};
    if (metric) {
        write_file((out_dir / "metric.csv").string(), csv_metric(*metric));
        write_file((out_dir / "density.csv").string(), csv_density(density));
        files.insert(files.end() - 1, "metric.csv");
        files.insert(files.end() - 1, "density.csv");
    }
    write_manifest(out_dir, "cover", files, cfg.seed);

    std::cout << "iterations: " << trace.records.back().iter << "\n"
              << "converged: " << (trace.converged ? "true" : "false") << "\n"
              << "final_cost: " << fmt_double(trace.records.back().cost) << "\n"
              << "max_centroid_dist: " << fmt_double(trace.records.back().max_centroid_dist)
              << "\n";
    return kExitOk;
}

int cmd_deform(const std::string& before_path, const std::string& after_path,
               const std::string& out, double floor, double scale) {
    fs::path out_dir = prepare_out(out);
    TriangleMesh before = load_mesh(before_path);
    TriangleMesh after = load_mesh(after_path);
    ConformalDiskMap map_before = ConformalDiskMap::build(before);
    ConformalDiskMap map_after = ConformalDiskMap::build(after);

    DeformationMetric metric = disk_difference(map_before, map_after);
    write_file((out_dir / "metric.csv").string(), csv_metric(metric));
    write_file((out_dir / "metric.svg").string(), svg_heat(map_after, metric.displacement));
    std::vector<std::string> files = {"metric.csv", "metric.svg", "manifest.json"};

    if (metric.max() == 0.0 && floor == 0.0) {
        std::cout << "warning: degenerate density (zero metric and zero floor); density.csv "
                     "not written\n";
    } else {
        DensityField density = density_from_deformation(metric, floor, scale);
        write_file((out_dir / "density.csv").string(), csv_density(density));
        files.insert(files.end() - 1, "density.csv");
    }
    write_manifest(out_dir, "deform", files, std::nullopt);

    std::cout << "max_displacement: " << fmt_double(metric.max()) << "\n"
              << "argmax_vertex: " << metric.argmax() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conformal disk mapping and multi-agent coverage toolkit"};
    app.require_subcommand(1);

    std::string mesh_path, out_dir, config_path, before_path, after_path;
    bool no_correction = false;
    double floor = 1.0, scale = 1.0;
    std::optional<uint64_t> seed_override;

    CLI::App* check = app.add_subcommand("check", "Validate a mesh file");
    check->add_option("--mesh", mesh_path, "Mesh file (.off or .obj)")->required();

    CLI::App* param = app.add_subcommand("param", "Build the conformal disk map");
    param->add_option("--mesh", mesh_path, "Mesh file (.off or .obj)")->required();
    param->add_option("--out", out_dir, "Output directory")->required();
    param->add_flag("--no-correction", no_correction, "Skip the Beltrami correction pass");

    CLI::App* cover = app.add_subcommand("cover", "Run coverage optimization");
    cover->add_option("--config", config_path, "JSON run configuration")->required();
    cover->add_option("--out", out_dir, "Output directory (overrides config)");
    cover->add_option("--seed-override", seed_override, "Replace the config seed");

    CLI::App* deform = app.add_subcommand("deform", "Difference two parameterizations");
    deform->add_option("--before", before_path, "Mesh before deformation")->required();
    deform->add_option("--after", after_path, "Mesh after deformation")->required();
    deform->add_option("--out", out_dir, "Output directory")->required();
    deform->add_option("--floor", floor, "Density floor (default 1)");
    deform->add_option("--scale", scale, "Density scale (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (check->parsed()) return cmd_check(mesh_path);
        if (param->parsed()) return cmd_param(mesh_path, no_correction, out_dir);
        if (cover->parsed()) return cmd_cover(config_path, out_dir, seed_override);
        return cmd_deform(before_path, after_path, out_dir, floor, scale);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

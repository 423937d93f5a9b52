#include "surfcover/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace surfcover {

namespace {

constexpr int kSize = 800;
constexpr double kSpan = 1.1;  // disk plots cover [-1.1, 1.1]

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double px(double x) { return (x + kSpan) / (2.0 * kSpan) * kSize; }
double py(double y) { return (kSpan - y) / (2.0 * kSpan) * kSize; }

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string site_color(int i) { return kPalette[i % 10]; }

std::string header() {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n"
      << "<rect width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"white\"/>\n";
    return s.str();
}

std::string mesh_edges(const ConformalDiskMap& map, double opacity) {
    std::ostringstream s;
    s << "<g stroke=\"#404040\" stroke-width=\"0.5\" stroke-opacity=\"" << num(opacity)
      << "\" fill=\"none\">\n";
    for (const Face& t : map.mesh().faces) {
        const cpx& a = map.disk()[t[0]];
        const cpx& b = map.disk()[t[1]];
        const cpx& c = map.disk()[t[2]];
        s << "<path d=\"M" << num(px(a.real())) << " " << num(py(a.imag())) << " L"
          << num(px(b.real())) << " " << num(py(b.imag())) << " L" << num(px(c.real())) << " "
          << num(py(c.imag())) << " Z\"/>\n";
    }
    s << "</g>\n";
    return s.str();
}

std::string star(double cx, double cy, double r, const std::string& fill) {
    std::ostringstream s;
    s << "<path fill=\"" << fill << "\" d=\"M";
    for (int k = 0; k < 10; ++k) {
        double rad = (k % 2 == 0) ? r : 0.4 * r;
        double a = -M_PI / 2.0 + k * M_PI / 5.0;
        s << (k ? " L" : "") << num(cx + rad * std::cos(a)) << " " << num(cy + rad * std::sin(a));
    }
    s << " Z\"/>\n";
    return s.str();
}

}  // namespace

std::string svg_disk_mesh(const ConformalDiskMap& map) {
    std::ostringstream s;
    s << header();
    s << "<circle cx=\"" << num(px(0)) << "\" cy=\"" << num(py(0)) << "\" r=\""
      << num(kSize / (2.0 * kSpan)) << "\" fill=\"none\" stroke=\"#c0c0c0\"/>\n";
    s << mesh_edges(map, 0.6);
    s << "</svg>\n";
    return s.str();
}

std::string svg_partition(const ConformalDiskMap& map, const Quadrature& quad,
                          const VoronoiPartition& partition,
                          const std::vector<cpx>& previous_positions) {
    std::ostringstream s;
    s << header();
    s << mesh_edges(map, 0.25);
    s << "<g>\n";
    for (size_t i = 0; i < quad.samples.size(); ++i) {
        const cpx& z = quad.samples[i].z;
        s << "<circle cx=\"" << num(px(z.real())) << "\" cy=\"" << num(py(z.imag()))
          << "\" r=\"1.6\" fill=\"" << site_color(partition.assign[i]) << "\" fill-opacity=\"0.6\"/>\n";
    }
    s << "</g>\n";
    for (const cpx& z : previous_positions)
        s << "<circle cx=\"" << num(px(z.real())) << "\" cy=\"" << num(py(z.imag()))
          << "\" r=\"6\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    for (size_t i = 0; i < partition.sites.size(); ++i)
        s << star(px(partition.sites[i].real()), py(partition.sites[i].imag()), 10,
                  site_color(static_cast<int>(i)));
    s << "</svg>\n";
    return s.str();
}

std::string svg_cost_curve(const std::vector<double>& cost) {
    const double mx = 80, my = 60;  // margins
    const double w = kSize - 2 * mx, h = kSize - 2 * my;
    double lo = cost.empty() ? 0.0 : *std::min_element(cost.begin(), cost.end());
    double hi = cost.empty() ? 1.0 : *std::max_element(cost.begin(), cost.end());
    if (hi <= lo) hi = lo + 1.0;
    std::ostringstream s;
    s << header();
    s << "<rect x=\"" << num(mx) << "\" y=\"" << num(my) << "\" width=\"" << num(w)
      << "\" height=\"" << num(h) << "\" fill=\"none\" stroke=\"black\"/>\n";
    s << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (size_t i = 0; i < cost.size(); ++i) {
        double x = mx + (cost.size() > 1 ? w * i / (cost.size() - 1) : 0.0);
        double y = my + h * (1.0 - (cost[i] - lo) / (hi - lo));
        s << num(x) << "," << num(y) << " ";
    }
    s << "\"/>\n";
    s << "<text x=\"" << num(kSize / 2.0) << "\" y=\"" << num(kSize - 20)
      << "\" text-anchor=\"middle\" font-size=\"18\">iteration</text>\n";
    s << "<text x=\"20\" y=\"" << num(kSize / 2.0)
      << "\" text-anchor=\"middle\" font-size=\"18\" transform=\"rotate(-90 20 "
      << num(kSize / 2.0) << ")\">H</text>\n";
    s << "<text x=\"" << num(mx) << "\" y=\"" << num(my - 8) << "\" font-size=\"14\">"
      << num(hi) << "</text>\n";
    s << "<text x=\"" << num(mx) << "\" y=\"" << num(my + h + 20) << "\" font-size=\"14\">"
      << num(lo) << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

std::string svg_heat(const ConformalDiskMap& map, const std::vector<double>& scalar) {
    if (scalar.size() != map.mesh().vertices.size())
        throw ValidationError("scalar size does not match mesh");
    double lo = *std::min_element(scalar.begin(), scalar.end());
    double hi = *std::max_element(scalar.begin(), scalar.end());
    double span = hi > lo ? hi - lo : 1.0;
    std::ostringstream s;
    s << header();
    s << "<g stroke=\"none\">\n";
    for (const Face& t : map.mesh().faces) {
        double v = (scalar[t[0]] + scalar[t[1]] + scalar[t[2]]) / 3.0;
        double u = (v - lo) / span;
        int r = static_cast<int>(255 * u);
        int b = static_cast<int>(255 * (1.0 - u));
        const cpx& a = map.disk()[t[0]];
        const cpx& bb = map.disk()[t[1]];
        const cpx& c = map.disk()[t[2]];
        s << "<path fill=\"rgb(" << r << ",40," << b << ")\" d=\"M" << num(px(a.real())) << " "
          << num(py(a.imag())) << " L" << num(px(bb.real())) << " " << num(py(bb.imag())) << " L"
          << num(px(c.real())) << " " << num(py(c.imag())) << " Z\"/>\n";
    }
    s << "</g>\n";
    s << "</svg>\n";
    return s.str();
}

}  // namespace surfcover

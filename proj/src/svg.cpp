#include "otexplore/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace otx {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string render_trajectories_svg(
    const Domain& domain, const std::vector<Vec2>& sample_points,
    const std::vector<std::vector<Vec2>>& trajectories) {
  const double w = std::max(domain.x_max - domain.x_min, 1e-9);
  const double h = std::max(domain.y_max - domain.y_min, 1e-9);
  const double scale = 800.0 / std::max(w, h);
  const double pad = 20.0;
  const auto sx = [&](double x) { return pad + (x - domain.x_min) * scale; };
  // SVG y axis points down.
  const auto sy = [&](double y) { return pad + (domain.y_max - y) * scale; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << w * scale + 2 * pad << "\" height=\"" << h * scale + 2 * pad
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const Vec2& p : sample_points) {
    out << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y)
        << "\" r=\"1.5\" fill=\"#7fbf7f\" fill-opacity=\"0.6\"/>\n";
  }
  for (std::size_t k = 0; k < trajectories.size(); ++k) {
    const char* color = kPalette[k % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.2\" points=\"";
    for (const Vec2& p : trajectories[k])
      out << sx(p.x) << "," << sy(p.y) << " ";
    out << "\"/>\n";
    if (!trajectories[k].empty()) {
      const Vec2& s = trajectories[k].front();
      out << "<path d=\"M" << sx(s.x) - 5 << " " << sy(s.y) << " h10 M"
          << sx(s.x) << " " << sy(s.y) - 5 << " v10\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

void write_trajectories_svg(const std::string& path, const Domain& domain,
                            const std::vector<Vec2>& sample_points,
                            const std::vector<std::vector<Vec2>>& trajectories) {
  std::ofstream out(path);
  out << render_trajectories_svg(domain, sample_points, trajectories);
}

}  // namespace otx

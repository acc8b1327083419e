#include "kshare/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace kshare {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 56.0;
constexpr double kLegendWidth = 120.0;

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Blue at 0% through to red at 100%.
std::string workload_color(int pct) {
  const double t = std::clamp(pct / 100.0, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(40 + t * (220 - 40)));
  const int g = static_cast<int>(std::lround(90 + (1.0 - std::abs(2.0 * t - 1.0)) * 80));
  const int b = static_cast<int>(std::lround(220 - t * (220 - 40)));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

bool is_baseline(const ProjectedPoint& p) { return p.label.rfind("baseline/", 0) == 0; }

}  // namespace

std::string render_scatter_svg(const Projection2D& projection, const std::string& title) {
  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
  if (!projection.points.empty()) {
    min_x = max_x = projection.points.front().x;
    min_y = max_y = projection.points.front().y;
  }
  for (const auto& p : projection.points) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double span_x = max_x - min_x > 0.0 ? max_x - min_x : 1.0;
  const double span_y = max_y - min_y > 0.0 ? max_y - min_y : 1.0;
  const double plot_w = kWidth - 2.0 * kMargin - kLegendWidth;
  const double plot_h = kHeight - 2.0 * kMargin;
  auto sx = [&](double x) { return kMargin + (x - min_x) / span_x * plot_w; };
  auto sy = [&](double y) { return kHeight - kMargin - (y - min_y) / span_y * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  svg << "  <rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << fixed(plot_w) << "\" height=\""
      << fixed(plot_h) << "\" fill=\"none\" stroke=\"#444\"/>\n";
  if (!title.empty()) {
    svg << "  <text x=\"" << kMargin << "\" y=\"" << kMargin - 20 << "\" font-family=\"sans-serif\" font-size=\"14\">"
        << escape(title) << "</text>\n";
  }
  svg << "  <text x=\"" << fixed(kMargin + plot_w / 2) << "\" y=\"" << kHeight - 16
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">PC1</text>\n";
  svg << "  <text x=\"16\" y=\"" << fixed(kMargin + plot_h / 2)
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << fixed(kMargin + plot_h / 2) << ")\">PC2</text>\n";

  std::string path;
  for (const auto& p : projection.points) {
    if (is_baseline(p)) continue;
    path += (path.empty() ? "" : " ") + fixed(sx(p.x)) + "," + fixed(sy(p.y));
  }
  if (!path.empty()) {
    svg << "  <polyline class=\"trajectory\" points=\"" << path
        << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1.5\"/>\n";
  }

  for (const auto& p : projection.points) {
    const bool base = is_baseline(p);
    svg << "  <circle class=\"point\" cx=\"" << fixed(sx(p.x)) << "\" cy=\"" << fixed(sy(p.y)) << "\" r=\""
        << (base ? 4 : 5) << "\" fill=\"" << (base ? "#9a9a9a" : workload_color(p.workload_pct)) << "\">"
        << "<title>" << escape(p.label) << " @ " << p.workload_pct << "%</title></circle>\n";
  }

  const double lx = kWidth - kMargin - kLegendWidth + 16;
  double ly = kMargin + 8;
  svg << "  <g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "    <rect x=\"" << fixed(lx) << "\" y=\"" << fixed(ly) << "\" width=\"10\" height=\"10\" fill=\"#9a9a9a\"/>\n";
  svg << "    <text x=\"" << fixed(lx + 16) << "\" y=\"" << fixed(ly + 9) << "\">baseline</text>\n";
  for (int pct = 0; pct <= 100; pct += 25) {
    ly += 18;
    svg << "    <rect x=\"" << fixed(lx) << "\" y=\"" << fixed(ly) << "\" width=\"10\" height=\"10\" fill=\""
        << workload_color(pct) << "\"/>\n";
    svg << "    <text x=\"" << fixed(lx + 16) << "\" y=\"" << fixed(ly + 9) << "\">target " << pct << "%</text>\n";
  }
  svg << "  </g>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace kshare

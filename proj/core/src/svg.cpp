#include "dwlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dwlab {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Box {
  double x0, x1, y0, y1;
};

}  // namespace

void emit_loglog_svg(const std::string& path, const std::string& title,
                     const std::vector<SvgSeries>& series, const std::vector<DecayFit>& fits,
                     std::optional<double> reference_slope) {
  double lx0 = 0.0, lx1 = 0.0, ly0 = 0.0, ly1 = 0.0;
  bool first = true;
  for (const auto& s : series) {
    for (size_t i = 0; i < s.t.size(); ++i) {
      if (!(s.t[i] > 0.0) || !(s.value[i] > 0.0)) continue;
      double lx = std::log10(s.t[i]);
      double ly = std::log10(s.value[i]);
      if (first) {
        lx0 = lx1 = lx;
        ly0 = ly1 = ly;
        first = false;
      } else {
        lx0 = std::min(lx0, lx);
        lx1 = std::max(lx1, lx);
        ly0 = std::min(ly0, ly);
        ly1 = std::max(ly1, ly);
      }
    }
  }
  if (first) {
    throw std::invalid_argument("svg: nothing to plot");
  }
  if (lx1 - lx0 < 1e-12) lx1 = lx0 + 1.0;
  if (ly1 - ly0 < 1e-12) ly1 = ly0 + 1.0;

  const double W = 720.0, H = 480.0, ml = 70.0, mr = 20.0, mt = 40.0, mb = 50.0;
  Box plot{ml, W - mr, mt, H - mb};
  auto px = [&](double lx) { return plot.x0 + (lx - lx0) / (lx1 - lx0) * (plot.x1 - plot.x0); };
  auto py = [&](double ly) { return plot.y1 - (ly - ly0) / (ly1 - ly0) * (plot.y1 - plot.y0); };

  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) {
    throw std::runtime_error("svg: cannot open " + path);
  }
  std::fprintf(fp, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
  std::fprintf(fp,
               "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
               "viewBox=\"0 0 %.0f %.0f\">\n",
               W, H, W, H);
  for (size_t k = 0; k < fits.size(); ++k) {
    std::fprintf(fp, "<!-- fitted_slope[%zu] = %.6f (stderr %.6f) over t in [%g, %g] -->\n", k,
                 fits[k].slope, fits[k].stderr_, fits[k].t_lo, fits[k].t_hi);
  }
  if (reference_slope) {
    std::fprintf(fp, "<!-- reference_slope = %.6f -->\n", *reference_slope);
  }
  std::fprintf(fp, "<rect width=\"%.0f\" height=\"%.0f\" fill=\"white\"/>\n", W, H);
  std::fprintf(fp,
               "<text x=\"%.0f\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" "
               "text-anchor=\"middle\">%s</text>\n",
               0.5 * W, title.c_str());
  std::fprintf(fp,
               "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
               "stroke=\"black\"/>\n",
               plot.x0, plot.y0, plot.x1 - plot.x0, plot.y1 - plot.y0);

  // Decade grid lines with labels.
  for (int d = static_cast<int>(std::ceil(lx0)); d <= static_cast<int>(std::floor(lx1)); ++d) {
    double x = px(d);
    std::fprintf(fp,
                 "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#cccccc\"/>\n",
                 x, plot.y0, x, plot.y1);
    std::fprintf(fp,
                 "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"12\" "
                 "text-anchor=\"middle\">1e%d</text>\n",
                 x, plot.y1 + 18.0, d);
  }
  for (int d = static_cast<int>(std::ceil(ly0)); d <= static_cast<int>(std::floor(ly1)); ++d) {
    double y = py(d);
    std::fprintf(fp,
                 "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#cccccc\"/>\n",
                 plot.x0, y, plot.x1, y);
    std::fprintf(fp,
                 "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"12\" "
                 "text-anchor=\"end\">1e%d</text>\n",
                 plot.x0 - 6.0, y + 4.0, d);
  }

  for (size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % 6];
    std::fprintf(fp, "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\" points=\"",
                 color);
    for (size_t i = 0; i < s.t.size(); ++i) {
      if (!(s.t[i] > 0.0) || !(s.value[i] > 0.0)) continue;
      std::fprintf(fp, "%.2f,%.2f ", px(std::log10(s.t[i])), py(std::log10(s.value[i])));
    }
    std::fprintf(fp, "\"/>\n");
    std::fprintf(fp,
                 "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"13\" "
                 "fill=\"%s\">%s</text>\n",
                 plot.x0 + 10.0, plot.y0 + 18.0 + 16.0 * static_cast<double>(k), color,
                 s.label.c_str());
  }

  // Reference decay drawn through the last point of the first series.
  if (reference_slope && !series.empty()) {
    const auto& s = series[0];
    for (size_t i = s.t.size(); i-- > 0;) {
      if (!(s.t[i] > 0.0) || !(s.value[i] > 0.0)) continue;
      double lxb = std::log10(s.t[i]);
      double lyb = std::log10(s.value[i]);
      double lxa = std::max(lx0, lxb - 1.5);
      double lya = lyb - *reference_slope * (lxb - lxa);
      std::fprintf(fp,
                   "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#444444\" "
                   "stroke-dasharray=\"6 4\"/>\n",
                   px(lxa), py(lya), px(lxb), py(lyb));
      break;
    }
  }
  std::fprintf(fp, "</svg>\n");
  if (std::fclose(fp) != 0) {
    throw std::runtime_error("svg: write failed for " + path);
  }
}

}  // namespace dwlab

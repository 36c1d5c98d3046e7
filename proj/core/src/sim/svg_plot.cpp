#include "georos/sim/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace georos::sim {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void write_loglog_svg(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<PlotSeries>& series) {
  const double W = 640, H = 480;
  const double L = 70, R = 160, T = 40, B = 55;  // margins; legend on the right

  double xmin = std::numeric_limits<double>::infinity(), xmax = 0;
  double ymin = xmin, ymax = 0;
  for (const PlotSeries& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(std::isfinite(s.x[i]) && std::isfinite(s.y[i]) && s.x[i] > 0 && s.y[i] > 0))
        continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (!(xmax > 0) || !(ymax > 0)) {  // nothing plottable
    xmin = ymin = 0.1;
    xmax = ymax = 10.0;
  }
  auto pad = [](double& lo, double& hi) {
    const double f = std::pow(hi / lo, 0.05);
    lo /= f;
    hi *= f;
    if (lo == hi) {
      lo /= 2;
      hi *= 2;
    }
  };
  pad(xmin, xmax);
  pad(ymin, ymax);

  auto px = [&](double x) {
    return L + (std::log10(x) - std::log10(xmin)) /
                   (std::log10(xmax) - std::log10(xmin)) * (W - L - R);
  };
  auto py = [&](double y) {
    return H - B - (std::log10(y) - std::log10(ymin)) /
                       (std::log10(ymax) - std::log10(ymin)) * (H - T - B);
  };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write plot file '" + path + "'");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << (L + (W - L - R) / 2) << "\" y=\"22\" font-size=\"15\" "
      << "text-anchor=\"middle\" font-family=\"sans-serif\">" << title << "</text>\n";

  // decade grid and tick labels
  for (int e = static_cast<int>(std::ceil(std::log10(xmin)));
       e <= static_cast<int>(std::floor(std::log10(xmax))); ++e) {
    const double x = std::pow(10.0, e);
    out << "<line x1=\"" << px(x) << "\" y1=\"" << T << "\" x2=\"" << px(x) << "\" y2=\""
        << (H - B) << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << px(x) << "\" y=\"" << (H - B + 18)
        << "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">1e" << e
        << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(std::log10(ymin)));
       e <= static_cast<int>(std::floor(std::log10(ymax))); ++e) {
    const double y = std::pow(10.0, e);
    out << "<line x1=\"" << L << "\" y1=\"" << py(y) << "\" x2=\"" << (W - R) << "\" y2=\""
        << py(y) << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << (L - 6) << "\" y=\"" << (py(y) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">1e" << e
        << "</text>\n";
  }
  out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << (W - L - R)
      << "\" height=\"" << (H - T - B) << "\" fill=\"none\" stroke=\"black\"/>\n"
      << "<text x=\"" << (L + (W - L - R) / 2) << "\" y=\"" << (H - 12)
      << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\">" << xlabel
      << "</text>\n"
      << "<text x=\"18\" y=\"" << (T + (H - T - B) / 2)
      << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "transform=\"rotate(-90 18 " << (T + (H - T - B) / 2) << ")\">" << ylabel
      << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const PlotSeries& s = series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(std::isfinite(s.x[i]) && std::isfinite(s.y[i]) && s.x[i] > 0 && s.y[i] > 0))
        continue;
      pts += fmt(px(s.x[i])) + "," + fmt(py(s.y[i])) + " ";
      out << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i])
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    if (!pts.empty())
      out << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\"/>\n";
    const double ly = T + 16 + 18 * static_cast<double>(si);
    out << "<line x1=\"" << (W - R + 10) << "\" y1=\"" << ly << "\" x2=\"" << (W - R + 34)
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << (W - R + 40) << "\" y=\"" << (ly + 4)
        << "\" font-size=\"12\" font-family=\"sans-serif\">" << s.name << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace georos::sim

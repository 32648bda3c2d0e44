#include "hystbl/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "hystbl/errors.hpp"

namespace hystbl {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Tick spacing from the 1-2-5 progression, aiming at about n ticks.
double nice_step(double span, int n) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / n;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  if (r < 1.5) return mag;
  if (r < 3.5) return 2.0 * mag;
  if (r < 7.5) return 5.0 * mag;
  return 10.0 * mag;
}

}  // namespace

void write_svg_plot(const std::string& path, const PlotSpec& spec,
                    const std::vector<Series>& series) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (double v : s.x) {
      xmin = std::min(xmin, v);
      xmax = std::max(xmax, v);
    }
    for (double v : s.y) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (!(xmin < xmax)) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (!(ymin < ymax)) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const int W = spec.width, H = spec.height;
  const int ml = 64, mr = 16, mt = spec.title.empty() ? 16 : 34, mb = 46;
  const double pw = W - ml - mr, ph = H - mt - mb;
  auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto Y = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ofstream out(path);
  if (!out) throw Error("cannot open output file: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";

  const double xstep = nice_step(xmax - xmin, 8);
  const double ystep = nice_step(ymax - ymin, 6);
  out << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (double t = std::ceil(xmin / xstep) * xstep; t <= xmax + 1e-12 * xstep; t += xstep)
    out << "<line x1=\"" << fmt(X(t)) << "\" y1=\"" << mt << "\" x2=\"" << fmt(X(t)) << "\" y2=\""
        << mt + ph << "\"/>\n";
  for (double t = std::ceil(ymin / ystep) * ystep; t <= ymax + 1e-12 * ystep; t += ystep)
    out << "<line x1=\"" << ml << "\" y1=\"" << fmt(Y(t)) << "\" x2=\"" << ml + pw << "\" y2=\""
        << fmt(Y(t)) << "\"/>\n";
  out << "</g>\n";

  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
  for (double t = std::ceil(xmin / xstep) * xstep; t <= xmax + 1e-12 * xstep; t += xstep)
    out << "<text x=\"" << fmt(X(t)) << "\" y=\"" << mt + ph + 16
        << "\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
  for (double t = std::ceil(ymin / ystep) * ystep; t <= ymax + 1e-12 * ystep; t += ystep)
    out << "<text x=\"" << ml - 6 << "\" y=\"" << fmt(Y(t) + 4)
        << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
  out << "</g>\n";

  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << fmt(pw) << "\" height=\""
      << fmt(ph) << "\" fill=\"none\" stroke=\"#333333\"/>\n";

  for (const auto& s : series) {
    if (s.x.empty()) continue;
    if (s.markers) {
      out << "<g fill=\"" << s.color << "\">\n";
      for (std::size_t i = 0; i < s.x.size(); ++i)
        out << "<circle cx=\"" << fmt(X(s.x[i])) << "\" cy=\"" << fmt(Y(s.y[i]))
            << "\" r=\"1.6\"/>\n";
      out << "</g>\n";
      continue;
    }
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"" << s.width
        << "\"";
    if (s.dashed) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      out << fmt(X(s.x[i])) << "," << fmt(Y(s.y[i])) << (i + 1 < s.x.size() ? " " : "");
    out << "\"/>\n";
  }

  int ly = mt + 14;
  for (const auto& s : series) {
    if (s.label.empty()) continue;
    out << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << ly - 4 << "\" x2=\"" << ml + pw - 122
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << s.color << "\" stroke-width=\"2\""
        << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
    out << "<text x=\"" << ml + pw - 116 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
    ly += 16;
  }

  auto label = [&](double x, double y, const std::string& text, const char* anchor,
                   const char* extra) {
    out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"" << anchor << "\""
        << extra << ">" << text << "</text>\n";
  };
  if (!spec.title.empty()) label(ml + pw / 2, 20, spec.title, "middle", "");
  if (!spec.xlabel.empty()) label(ml + pw / 2, H - 10, spec.xlabel, "middle", "");
  if (!spec.ylabel.empty())
    label(16, mt + ph / 2, spec.ylabel, "middle",
          (" transform=\"rotate(-90 16 " + fmt(mt + ph / 2) + ")\"").c_str());
  out << "</svg>\n";
}

}  // namespace hystbl

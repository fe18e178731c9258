#include "geomsense/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace geomsense::svg {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo = 0, hi = 1;
  void expand(double v) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
};

}  // namespace

std::string line_plot(const std::vector<Series>& series, const LinePlotOptions& opts) {
  const int ml = 70, mr = 20, mt = 40, mb = 50;
  const double pw = opts.width - ml - mr, ph = opts.height - mt - mb;

  double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      const double yv = opts.log_y ? std::log10(std::max(s.y[i], 1e-300)) : s.y[i];
      if (!std::isfinite(s.x[i]) || !std::isfinite(yv)) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, yv);
      y_hi = std::max(y_hi, yv);
    }
  if (x_lo > x_hi) { x_lo = 0; x_hi = 1; }
  if (y_lo > y_hi) { y_lo = 0; y_hi = 1; }
  if (x_hi == x_lo) x_hi = x_lo + 1;
  if (y_hi == y_lo) y_hi = y_lo + 1;

  const auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * pw; };
  const auto py = [&](double y) {
    const double yv = opts.log_y ? std::log10(std::max(y, 1e-300)) : y;
    return mt + ph - (yv - y_lo) / (y_hi - y_lo) * ph;
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width
     << "\" height=\"" << opts.height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << opts.width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"14\">" << escape(opts.title) << "</text>\n";

  // frame and ticks
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = x_lo + (x_hi - x_lo) * k / 5.0;
    const double yv = y_lo + (y_hi - y_lo) * k / 5.0;
    os << "<line x1=\"" << px(xv) << "\" y1=\"" << mt + ph << "\" x2=\"" << px(xv)
       << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << px(xv) << "\" y=\"" << mt + ph + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(xv)
       << "</text>\n";
    const double yd = opts.log_y ? std::pow(10.0, yv) : yv;
    os << "<line x1=\"" << ml - 5 << "\" y1=\"" << mt + ph - k / 5.0 * ph << "\" x2=\"" << ml
       << "\" y2=\"" << mt + ph - k / 5.0 * ph << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << ml - 8 << "\" y=\"" << mt + ph - k / 5.0 * ph + 3
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(yd)
       << "</text>\n";
  }
  os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << opts.height - 8
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
     << escape(opts.x_label) << "</text>\n"
     << "<text x=\"16\" y=\"" << mt + ph / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        "transform=\"rotate(-90 16 " << mt + ph / 2 << ")\">" << escape(opts.y_label)
     << "</text>\n";

  for (size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    os << "<polyline fill=\"none\" stroke=\"" << kPalette[si % 8] << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < s.x.size(); ++i)
      os << fmt(px(s.x[i])) << "," << fmt(py(s.y[i])) << " ";
    os << "\"/>\n";
    os << "<text x=\"" << ml + pw - 6 << "\" y=\"" << mt + 14 + 14 * double(si)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
       << kPalette[si % 8] << "\">" << escape(s.name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string heatmap(const Eigen::MatrixXd& values, const HeatmapOptions& opts) {
  const int ml = 60, mr = 20, mt = 40, mb = 50;
  const double pw = opts.width - ml - mr, ph = opts.height - mt - mb;
  const int nx = int(values.rows()), np = int(values.cols());
  const double vmax = std::max(values.cwiseAbs().maxCoeff(), 1e-300);

  const auto color = [&](double v) {
    const double t = std::clamp(v / vmax, -1.0, 1.0);
    int r, g, b;
    if (t >= 0) {  // white -> red
      r = 255;
      g = b = int(255 * (1 - t));
    } else {  // white -> blue
      b = 255;
      r = g = int(255 * (1 + t));
    }
    std::ostringstream c;
    c << "rgb(" << r << "," << g << "," << b << ")";
    return c.str();
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
     << opts.height << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << opts.width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"14\">" << escape(opts.title) << "</text>\n";

  const double cw = pw / nx, chh = ph / np;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < np; ++j)
      os << "<rect x=\"" << fmt(ml + i * cw) << "\" y=\"" << fmt(mt + ph - (j + 1) * chh)
         << "\" width=\"" << fmt(cw + 0.5) << "\" height=\"" << fmt(chh + 0.5) << "\" fill=\""
         << color(values(i, j)) << "\"/>\n";

  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = opts.x_min + (opts.x_max - opts.x_min) * k / 4.0;
    const double yv = opts.y_min + (opts.y_max - opts.y_min) * k / 4.0;
    os << "<text x=\"" << ml + pw * k / 4.0 << "\" y=\"" << mt + ph + 16
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(xv)
       << "</text>\n"
       << "<text x=\"" << ml - 6 << "\" y=\"" << mt + ph - ph * k / 4.0 + 3
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(yv)
       << "</text>\n";
  }
  os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << opts.height - 8
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
     << escape(opts.x_label) << "</text>\n"
     << "<text x=\"14\" y=\"" << mt + ph / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        "transform=\"rotate(-90 14 " << mt + ph / 2 << ")\">" << escape(opts.y_label)
     << "</text>\n</svg>\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace geomsense::svg

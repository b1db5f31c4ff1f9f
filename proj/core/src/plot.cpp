#include "molcav/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "molcav/error.hpp"

namespace molcav {

namespace {

constexpr std::array<const char*, 6> kPalette = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"};

std::string fmt(double v, int prec = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  std::string s(buf);
  if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
  return s;
}

std::string tick_label(double v, double step) {
  if (v == 0.0) return "0";
  const double a = std::abs(v);
  if (a >= 1e5 || a < 1e-3) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2g", v);
    return buf;
  }
  const int decimals = std::max(0, static_cast<int>(std::ceil(-std::log10(step) - 1e-9)));
  return fmt(v, decimals);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// 1-2-5 tick spacing giving roughly `target` intervals.
double nice_step(double span, int target) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  const double nice = r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0;
  return nice * mag;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool valid() const { return lo <= hi; }
};

// Expands to tick multiples; a flat series gets a unit-width band.
void pad(Range& r, double& step) {
  if (r.hi - r.lo < 1e-300) {
    const double w = r.lo == 0.0 ? 1.0 : std::abs(r.lo) * 0.1;
    r.lo -= w;
    r.hi += w;
  }
  step = nice_step(r.hi - r.lo, 5);
  r.lo = std::floor(r.lo / step + 1e-9) * step;
  r.hi = std::ceil(r.hi / step - 1e-9) * step;
}

// White at zero, blue for negative, red for positive; t in [-1, 1].
std::string diverging(double t) {
  t = std::clamp(t, -1.0, 1.0);
  const std::array<double, 3> white{255, 255, 255}, red{178, 24, 43}, blue{33, 102, 172};
  const auto& end = t < 0 ? blue : red;
  const double a = std::abs(t);
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(white[0] + a * (end[0] - white[0]))),
                static_cast<int>(std::lround(white[1] + a * (end[1] - white[1]))),
                static_cast<int>(std::lround(white[2] + a * (end[2] - white[2]))));
  return buf;
}

}  // namespace

std::string render_line_plot(const LinePlot& plot) {
  if (plot.series.empty()) throw Error("plot: no series to draw");
  Range xr, yr;
  for (const auto& s : plot.series) {
    if (s.x.size() != s.y.size()) throw Error("plot: series '" + s.label + "' has mismatched x and y lengths");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
        xr.add(s.x[i]);
        yr.add(s.y[i]);
      }
    }
  }
  if (!xr.valid()) throw Error("plot: series contain no finite points");
  double xstep = 1.0, ystep = 1.0;
  pad(xr, xstep);
  pad(yr, ystep);

  const double W = 760, H = 460, L = 90, R = 170, T = 44, B = 64;
  const double pw = W - L - R, ph = H - T - B;
  auto sx = [&](double x) { return L + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto sy = [&](double y) { return T + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
    << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << fmt(L + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(plot.title)
    << "</text>\n";

  for (double t = xr.lo; t <= xr.hi + 0.5 * xstep; t += xstep) {
    const double x = sx(t);
    o << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(T) << "\" x2=\"" << fmt(x) << "\" y2=\"" << fmt(T + ph)
      << "\" stroke=\"#e5e5e5\"/>\n";
    o << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(T + ph + 18) << "\" text-anchor=\"middle\">" << tick_label(t, xstep)
      << "</text>\n";
  }
  for (double t = yr.lo; t <= yr.hi + 0.5 * ystep; t += ystep) {
    const double y = sy(t);
    o << "<line x1=\"" << fmt(L) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(L + pw) << "\" y2=\"" << fmt(y)
      << "\" stroke=\"#e5e5e5\"/>\n";
    o << "<text x=\"" << fmt(L - 8) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">" << tick_label(t, ystep)
      << "</text>\n";
  }
  o << "<rect x=\"" << fmt(L) << "\" y=\"" << fmt(T) << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << fmt(L + pw / 2) << "\" y=\"" << fmt(H - 18) << "\" text-anchor=\"middle\">"
    << escape(plot.x_label) << "</text>\n";
  o << "<text transform=\"translate(22," << fmt(T + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
    << escape(plot.y_label) << "</text>\n";

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    const char* colour = kPalette[k % kPalette.size()];
    std::string pts;
    auto flush = [&] {
      if (!pts.empty())
        o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.8\" points=\"" << pts << "\"/>\n";
      pts.clear();
    };
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      if (!pts.empty()) pts += ' ';
      pts += fmt(sx(s.x[i])) + "," + fmt(sy(s.y[i]));
    }
    flush();
    const double ly = T + 14 + 20.0 * static_cast<double>(k);
    o << "<line x1=\"" << fmt(L + pw + 14) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(L + pw + 40) << "\" y2=\""
      << fmt(ly) << "\" stroke=\"" << colour << "\" stroke-width=\"2.5\"/>\n";
    o << "<text x=\"" << fmt(L + pw + 46) << "\" y=\"" << fmt(ly + 4) << "\">" << escape(s.label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::vector<ContourSegment> contour_segments(const WignerField& f, double level) {
  std::vector<ContourSegment> segs;
  const std::size_t nq = f.grid.q_points, np = f.grid.p_points;
  if (nq < 2 || np < 2) return segs;
  for (std::size_t i = 0; i + 1 < nq; ++i) {
    for (std::size_t j = 0; j + 1 < np; ++j) {
      // corners counter-clockwise from (i, j)
      const std::array<double, 4> v{f.at(i, j) - level, f.at(i + 1, j) - level, f.at(i + 1, j + 1) - level,
                                    f.at(i, j + 1) - level};
      const std::array<double, 4> cx{f.grid.q(i), f.grid.q(i + 1), f.grid.q(i + 1), f.grid.q(i)};
      const std::array<double, 4> cy{f.grid.p(j), f.grid.p(j), f.grid.p(j + 1), f.grid.p(j + 1)};
      int mask = 0;
      for (int k = 0; k < 4; ++k)
        if (v[static_cast<std::size_t>(k)] > 0) mask |= 1 << k;
      if (mask == 0 || mask == 15) continue;

      auto cross = [&](int e, double& x, double& y) {
        const auto a = static_cast<std::size_t>(e), b = static_cast<std::size_t>((e + 1) % 4);
        const double t = v[a] / (v[a] - v[b]);
        x = cx[a] + t * (cx[b] - cx[a]);
        y = cy[a] + t * (cy[b] - cy[a]);
      };
      std::vector<int> edges;
      for (int e = 0; e < 4; ++e) {
        const bool a = v[static_cast<std::size_t>(e)] > 0, b = v[static_cast<std::size_t>((e + 1) % 4)] > 0;
        if (a != b) edges.push_back(e);
      }
      if (edges.size() == 2) {
        ContourSegment s{};
        cross(edges[0], s.x0, s.y0);
        cross(edges[1], s.x1, s.y1);
        segs.push_back(s);
      } else if (edges.size() == 4) {
        // saddle: the cell centre decides which corners connect
        const double centre = 0.25 * (v[0] + v[1] + v[2] + v[3]);
        const bool c0 = v[0] > 0;
        const std::array<int, 4> pair = (centre > 0) == c0 ? std::array<int, 4>{0, 1, 2, 3} : std::array<int, 4>{3, 0, 1, 2};
        for (int k = 0; k < 4; k += 2) {
          ContourSegment s{};
          cross(pair[static_cast<std::size_t>(k)], s.x0, s.y0);
          cross(pair[static_cast<std::size_t>(k + 1)], s.x1, s.y1);
          segs.push_back(s);
        }
      }
    }
  }
  return segs;
}

std::string render_wigner_plot(const std::vector<WignerField>& panels, const std::string& title) {
  if (panels.empty()) throw Error("plot: no Wigner field to draw");
  double vmax = 0.0;
  for (const auto& p : panels) {
    if (p.values.empty() || p.values.size() != p.grid.q_points * p.grid.p_points)
      throw Error("plot: Wigner field is empty or inconsistent with its grid");
    for (double w : p.values)
      if (std::isfinite(w)) vmax = std::max(vmax, std::abs(w));
  }
  if (!(vmax > 0.0)) vmax = 1.0;

  const double side = 340, L = 70, gap = 80, T = 56, B = 60, bar = 90;
  const double W = L + static_cast<double>(panels.size()) * side + static_cast<double>(panels.size() - 1) * gap + bar;
  const double H = T + side + B;
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(W, 0) << "\" height=\"" << fmt(H, 0)
    << "\" viewBox=\"0 0 " << fmt(W, 0) << ' ' << fmt(H, 0) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << fmt(W / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
    << "</text>\n";

  const std::array<double, 4> fractions{0.05, 0.25, 0.5, 0.75};
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const auto& f = panels[k];
    const double x0 = L + static_cast<double>(k) * (side + gap);
    const double qr = f.grid.q_range, pr = f.grid.p_range;
    auto sx = [&](double q) { return x0 + (q + qr) / (2 * qr) * side; };
    auto sy = [&](double p) { return T + (1.0 - (p + pr) / (2 * pr)) * side; };

    // cell map, thinned to at most ~120 cells per axis
    const std::size_t nq = f.grid.q_points, np = f.grid.p_points;
    const std::size_t sq = std::max<std::size_t>(1, (nq + 119) / 120), sp = std::max<std::size_t>(1, (np + 119) / 120);
    const double cw = side / std::ceil(static_cast<double>(nq) / static_cast<double>(sq));
    const double ch = side / std::ceil(static_cast<double>(np) / static_cast<double>(sp));
    for (std::size_t i = 0, ci = 0; i < nq; i += sq, ++ci) {
      for (std::size_t j = 0, cj = 0; j < np; j += sp, ++cj) {
        const double w = f.at(i, j);
        if (std::abs(w) < 1e-3 * vmax) continue;  // background is already white
        o << "<rect x=\"" << fmt(x0 + static_cast<double>(ci) * cw) << "\" y=\""
          << fmt(T + side - static_cast<double>(cj + 1) * ch) << "\" width=\"" << fmt(cw + 0.05) << "\" height=\""
          << fmt(ch + 0.05) << "\" fill=\"" << diverging(w / vmax) << "\"/>\n";
      }
    }
    for (double frac : fractions) {
      for (double sign : {1.0, -1.0}) {
        const auto segs = contour_segments(f, sign * frac * vmax);
        if (segs.empty()) continue;
        o << "<path fill=\"none\" stroke=\"" << (sign > 0 ? "#67001f" : "#053061") << "\" stroke-width=\"0.7\""
          << (sign < 0 ? " stroke-dasharray=\"3,2\"" : "") << " d=\"";
        for (const auto& s : segs)
          o << 'M' << fmt(sx(s.x0)) << ',' << fmt(sy(s.y0)) << 'L' << fmt(sx(s.x1)) << ',' << fmt(sy(s.y1));
        o << "\"/>\n";
      }
    }
    o << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(T) << "\" width=\"" << fmt(side) << "\" height=\"" << fmt(side)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    const double qs = nice_step(2 * qr, 6), ps = nice_step(2 * pr, 6);
    for (double t = std::ceil(-qr / qs) * qs; t <= qr + 1e-9; t += qs)
      o << "<text x=\"" << fmt(sx(t)) << "\" y=\"" << fmt(T + side + 16) << "\" text-anchor=\"middle\">"
        << tick_label(t, qs) << "</text>\n";
    for (double t = std::ceil(-pr / ps) * ps; t <= pr + 1e-9; t += ps)
      o << "<text x=\"" << fmt(x0 - 6) << "\" y=\"" << fmt(sy(t) + 4) << "\" text-anchor=\"end\">"
        << tick_label(t, ps) << "</text>\n";
    o << "<text x=\"" << fmt(x0 + side / 2) << "\" y=\"" << fmt(T - 8) << "\" text-anchor=\"middle\">t = "
      << fmt(f.time_fs, 1) << " fs</text>\n";
    o << "<text x=\"" << fmt(x0 + side / 2) << "\" y=\"" << fmt(T + side + 38)
      << "\" text-anchor=\"middle\">x = sqrt(omega) q (dimensionless)</text>\n";
    o << "<text transform=\"translate(" << fmt(x0 - 40) << "," << fmt(T + side / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">y = p / sqrt(omega) (dimensionless)</text>\n";
  }

  // colour bar with white at zero
  const double bx = W - bar + 24, bh = side;
  for (int i = 0; i < 100; ++i) {
    const double t = 1.0 - (static_cast<double>(i) + 0.5) / 50.0;
    o << "<rect x=\"" << fmt(bx) << "\" y=\"" << fmt(T + bh * i / 100.0) << "\" width=\"16\" height=\""
      << fmt(bh / 100.0 + 0.05) << "\" fill=\"" << diverging(t) << "\"/>\n";
  }
  o << "<rect x=\"" << fmt(bx) << "\" y=\"" << fmt(T) << "\" width=\"16\" height=\"" << fmt(bh)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", vmax);
  o << "<text x=\"" << fmt(bx + 20) << "\" y=\"" << fmt(T + 4) << "\">" << buf << "</text>\n";
  o << "<text x=\"" << fmt(bx + 20) << "\" y=\"" << fmt(T + bh / 2 + 4) << "\">0</text>\n";
  std::snprintf(buf, sizeof buf, "%.3g", -vmax);
  o << "<text x=\"" << fmt(bx + 20) << "\" y=\"" << fmt(T + bh + 4) << "\">" << buf << "</text>\n";
  o << "<text x=\"" << fmt(bx + 8) << "\" y=\"" << fmt(T - 8) << "\" text-anchor=\"middle\">W</text>\n";
  o << "</svg>\n";
  return o.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("short write on " + path.string());
}

}  // namespace molcav

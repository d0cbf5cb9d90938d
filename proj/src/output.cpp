#include "nrl/harness/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nrl/errors.hpp"

namespace nrl {

namespace {

std::string num(double v, const char* f = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write '" + path + "'");
  return os;
}

std::string escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '&': o += "&amp;"; break;
      case '"': o += "&quot;"; break;
      default: o += c;
    }
  }
  return o;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<RunRecord>& rows) {
  os << csv_header << '\n';
  for (const auto& r : rows)
    os << num(r.epsilon) << ',' << num(r.t) << ',' << num(r.err_u0) << ',' << num(r.err_ua) << ',' << num(r.residual) << ','
       << num(r.kg_energy_drift) << ',' << num(r.nls_mass_drift) << '\n';
}

std::vector<RunRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != csv_header) throw IoError("csv: missing or unexpected header");
  std::vector<RunRecord> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    double v[7];
    std::stringstream ss(line);
    std::string cell;
    int k = 0;
    while (std::getline(ss, cell, ',')) {
      if (k >= 7) throw IoError("csv: too many columns on line " + std::to_string(lineno));
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v[k]);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) throw IoError("csv: bad number on line " + std::to_string(lineno));
      ++k;
    }
    if (k != 7) throw IoError("csv: expected 7 columns on line " + std::to_string(lineno));
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
  }
  return rows;
}

void emit_csv(const std::vector<RunRecord>& rows, const std::string& path) {
  auto os = open_out(path);
  write_csv(os, rows);
  if (!os) throw IoError("write failed for '" + path + "'");
}

void write_svg_plot(std::ostream& os, const std::vector<Series>& series, const PlotOptions& opt) {
  const double W = 640, H = 420, left = 80, right = 150, top = 40, bottom = 60;
  const double pw = W - left - right, ph = H - top - bottom;
  auto tx = [&](double x) { return opt.log_x ? std::log10(x) : x; };
  auto ty = [&](double y) { return opt.log_y ? std::log10(y) : y; };

  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series)
    for (auto [x, y] : s.points) {
      if ((opt.log_x && !(x > 0)) || (opt.log_y && !(y > 0)) || !std::isfinite(x) || !std::isfinite(y)) continue;
      x0 = std::min(x0, tx(x));
      x1 = std::max(x1, tx(x));
      y0 = std::min(y0, ty(y));
      y1 = std::max(y1, ty(y));
    }
  if (!(x0 <= x1)) x0 = 0, x1 = 1;
  if (!(y0 <= y1)) y0 = 0, y1 = 1;
  if (opt.log_x) x0 = std::floor(x0), x1 = std::max(std::ceil(x1), x0 + 1);
  if (opt.log_y) y0 = std::floor(y0), y1 = std::max(std::ceil(y1), y0 + 1);
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  auto px = [&](double x) { return left + (tx(x) - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + ph - (ty(y) - y0) / (y1 - y0) * ph; };
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
     << W << ' ' << H << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
     << "<text x=\"" << left + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
     << escape(opt.title) << "</text>\n"
     << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  // ticks: decades on log axes, five intervals otherwise
  auto ticks = [](double a, double b, bool log) {
    std::vector<double> t;
    if (log)
      for (double k = a; k <= b + 1e-9; k += 1) t.push_back(k);
    else
      for (int k = 0; k <= 5; ++k) t.push_back(a + (b - a) * k / 5);
    return t;
  };
  for (double k : ticks(x0, x1, opt.log_x)) {
    const double x = left + (k - x0) / (x1 - x0) * pw;
    const std::string label = opt.log_x ? "1e" + num(k, "%.0f") : num(k, "%.3g");
    os << "<line x1=\"" << num(x, "%.2f") << "\" y1=\"" << top + ph << "\" x2=\"" << num(x, "%.2f") << "\" y2=\"" << top + ph + 5
       << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << num(x, "%.2f") << "\" y=\"" << top + ph + 20 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
       << label << "</text>\n";
  }
  for (double k : ticks(y0, y1, opt.log_y)) {
    const double y = top + ph - (k - y0) / (y1 - y0) * ph;
    const std::string label = opt.log_y ? "1e" + num(k, "%.0f") : num(k, "%.3g");
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << num(y, "%.2f") << "\" x2=\"" << left << "\" y2=\"" << num(y, "%.2f")
       << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << left - 8 << "\" y=\"" << num(y + 4, "%.2f") << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << label << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
     << escape(opt.xlabel) << "</text>\n"
     << "<text x=\"18\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 "
     << top + ph / 2 << ")\">" << escape(opt.ylabel) << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* c = colors[i % 8];
    std::vector<std::pair<double, double>> pts;
    for (auto [x, y] : series[i].points)
      if (!((opt.log_x && !(x > 0)) || (opt.log_y && !(y > 0)) || !std::isfinite(x) || !std::isfinite(y))) pts.emplace_back(x, y);
    std::sort(pts.begin(), pts.end());
    if (!pts.empty()) {
      os << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t k = 0; k < pts.size(); ++k)
        os << (k ? " " : "") << num(px(pts[k].first), "%.2f") << ',' << num(py(pts[k].second), "%.2f");
      os << "\"/>\n";
      for (auto [x, y] : pts)
        os << "<circle cx=\"" << num(px(x), "%.2f") << "\" cy=\"" << num(py(y), "%.2f") << "\" r=\"3\" fill=\"" << c << "\"/>\n";
    }
    const double ly = top + 14 + 18 * double(i);
    os << "<line x1=\"" << left + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 30 << "\" y2=\"" << ly << "\" stroke=\"" << c
       << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << left + pw + 35 << "\" y=\"" << ly + 4 << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(series[i].name)
       << "</text>\n";
  }
  os << "</svg>\n";
}

void emit_svg_plot(const std::vector<Series>& series, const std::string& path, const PlotOptions& opt) {
  auto os = open_out(path);
  write_svg_plot(os, series, opt);
  if (!os) throw IoError("write failed for '" + path + "'");
}

}  // namespace nrl

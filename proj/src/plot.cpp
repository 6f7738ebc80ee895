#include "hdres/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hdres/records_io.hpp"

namespace hdres {

namespace {

constexpr int kWidth = 760;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 180;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 55;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#17becf", "#e377c2", "#7f7f7f", "#bcbd22"};

std::string fmt_tick(double v) {
  std::ostringstream os;
  os << format_float(v);
  return os.str();
}

}  // namespace

double record_field(const TrialRecord& r, const std::string& field) {
  if (field == "trial") return static_cast<double>(r.trial);
  if (field == "D") return static_cast<double>(r.dim);
  if (field == "F") return static_cast<double>(r.factors);
  if (field == "n") return static_cast<double>(r.codebook_size);
  if (field == "M") return static_cast<double>(r.search_space);
  if (field == "beta") return r.beta;
  if (field == "sigma") return r.sigma;
  if (field == "k") return static_cast<double>(r.k);
  if (field == "accuracy") return r.accuracy;
  if (field == "iterations") return static_cast<double>(r.iterations);
  if (field == "converged") return r.converged ? 1.0 : 0.0;
  if (field == "success") return r.success ? 1.0 : 0.0;
  throw std::invalid_argument("unknown numeric record field: " + field);
}

std::string record_group_value(const TrialRecord& r, const std::string& field) {
  if (field == "experiment") return r.experiment;
  if (field == "kind") return to_string(r.kind);
  if (field == "rule") return is_attention(r.rule) ? "attention" : "original";
  return format_float(record_field(r, field));
}

void emit_plot(std::span<const TrialRecord> records, const std::string& x_field,
               const std::string& y_field, std::span<const std::string> group_fields,
               const std::filesystem::path& path) {
  if (records.empty()) throw std::invalid_argument("emit_plot: no records");

  // group key -> x -> (sum, count)
  std::map<std::string, std::map<double, std::pair<double, std::size_t>>> series;
  for (const TrialRecord& r : records) {
    std::string key;
    for (const std::string& g : group_fields) {
      if (!key.empty()) key += ", ";
      key += g + "=" + record_group_value(r, g);
    }
    const double x = record_field(r, x_field);
    const double y = record_field(r, y_field);
    auto& cell = series[key][x];
    cell.first += y;
    cell.second += 1;
  }

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  for (const auto& [key, pts] : series) {
    for (const auto& [x, sc] : pts) {
      const double y = sc.first / static_cast<double>(sc.second);
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax == xmin) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax == ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto sx = [&](double x) { return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w; };
  auto sy = [&](double y) { return kMarginTop + (1.0 - (y - ymin) / (ymax - ymin)) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">mean " << y_field << " vs " << x_field
      << "</text>\n";

  // axes
  svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
      << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
      << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double fx = xmin + (xmax - xmin) * t / 5.0;
    const double fy = ymin + (ymax - ymin) * t / 5.0;
    svg << "<line x1=\"" << sx(fx) << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << sx(fx)
        << "\" y2=\"" << kMarginTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << sx(fx) << "\" y=\"" << kMarginTop + plot_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt_tick(fx) << "</text>\n";
    svg << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << sy(fy) << "\" x2=\"" << kMarginLeft
        << "\" y2=\"" << sy(fy) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << sy(fy) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt_tick(fy)
        << "</text>\n";
  }
  svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_field
      << "</text>\n";

  std::size_t color_idx = 0;
  for (const auto& [key, pts] : series) {
    const char* color = kPalette[color_idx % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::ostringstream poly;
    for (const auto& [x, sc] : pts) {
      const double y = sc.first / static_cast<double>(sc.second);
      poly << sx(x) << "," << sy(y) << " ";
      svg << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"3\" fill=\"" << color
          << "\"/>\n";
    }
    if (pts.size() > 1) {
      svg << "<polyline points=\"" << poly.str() << "\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.8\"/>\n";
    }
    const double ly = kMarginTop + 14.0 * static_cast<double>(color_idx);
    svg << "<rect x=\"" << kMarginLeft + plot_w + 12 << "\" y=\"" << ly - 8
        << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << kMarginLeft + plot_w + 27 << "\" y=\"" << ly + 1
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << (key.empty() ? "all" : key)
        << "</text>\n";
    ++color_idx;
  }
  svg << "</svg>\n";

  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open plot file: " + path.string());
  os << svg.str();
  if (!os) throw std::runtime_error("plot write failed: " + path.string());
}

}  // namespace hdres

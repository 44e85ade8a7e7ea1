#include "eqbox/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "eqbox/error.hpp"

namespace eqbox {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
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

}  // namespace

std::string bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::Upper: return "UPPER";
    case BoundKind::Oracle: return "ORACLE";
    case BoundKind::Lower: return "LOWER";
    case BoundKind::Margin: return "MARGIN";
  }
  return "UNKNOWN";
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const ExperimentReport& r) {
  std::string out = "instance,metric,value,kind,err,seed,wall_ms\n";
  for (const auto& row : r.rows) {
    out += csv_field(row.instance) + "," + csv_field(row.metric) + "," + format_number(row.value) + "," +
           bound_kind_name(row.kind) + "," + format_number(row.err) + "," + std::to_string(row.seed) + "," +
           format_number(row.wall_ms) + "\n";
  }
  return out;
}

Json to_json(const ExperimentReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"instance", row.instance},
                    {"metric", row.metric},
                    {"value", row.value},
                    {"kind", bound_kind_name(row.kind)},
                    {"err", row.err},
                    {"seed", row.seed},
                    {"wall_ms", row.wall_ms}});
  return Json{{"title", r.title}, {"rows", rows}};
}

std::string to_svg(const ExperimentReport& r) {
  // series keep first-appearance order
  std::vector<std::string> names;
  std::map<std::string, std::vector<double>> series;
  for (const auto& row : r.rows) {
    if (!series.count(row.metric)) names.push_back(row.metric);
    series[row.metric].push_back(row.value);
  }
  double ymax = 0.0;
  std::size_t xmax = 1;
  for (const auto& [_, ys] : series) {
    for (double y : ys)
      if (std::isfinite(y)) ymax = std::max(ymax, y);
    xmax = std::max(xmax, ys.size());
  }
  if (ymax <= 0.0) ymax = 1.0;
  constexpr double W = 640, H = 400, L = 60, R = 160, T = 30, B = 50;
  auto px = [&](std::size_t i) { return L + (xmax > 1 ? static_cast<double>(i) / static_cast<double>(xmax - 1) : 0.5) * (W - L - R); };
  auto py = [&](double y) { return H - B - (std::isfinite(y) ? y / ymax : 0.0) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  s << "<title>" << xml_escape(r.title) << "</title>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  s << "<text x=\"" << L - 5 << "\" y=\"" << T + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << format_number(ymax) << "</text>\n";
  s << "<text x=\"" << L - 5 << "\" y=\"" << H - B + 4 << "\" text-anchor=\"end\" font-size=\"11\">0</text>\n";
  s << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\" font-size=\"12\">row</text>\n";
  for (std::size_t k = 0; k < names.size(); ++k) {
    const auto& ys = series[names[k]];
    const char* color = colors[k % 8];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < ys.size(); ++i) s << (i ? " " : "") << format_number(px(i)) << "," << format_number(py(ys[i]));
    s << "\"/>\n";
    s << "<text x=\"" << W - R + 10 << "\" y=\"" << T + 16 * (k + 1) << "\" font-size=\"12\" fill=\"" << color << "\">"
      << xml_escape(names[k]) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::vector<std::filesystem::path> emit_report(const ExperimentReport& r, const std::vector<std::string>& formats,
                                               const std::filesystem::path& stem) {
  std::vector<std::filesystem::path> written;
  for (const auto& f : formats) {
    std::filesystem::path p = stem;
    p += "." + f;
    if (f == "csv")
      write_text_file(p, to_csv(r));
    else if (f == "json")
      write_text_file(p, to_json(r).dump(2) + "\n");
    else if (f == "svg")
      write_text_file(p, to_svg(r));
    else
      throw Error(Errc::InvalidArgument, "unknown report format " + f);
    written.push_back(p);
  }
  return written;
}

}  // namespace eqbox

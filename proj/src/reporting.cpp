#include "ccost/reporting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "ccost/catalog_io.hpp"
#include "json_util.hpp"

namespace ccost {

using nlohmann::ordered_json;

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto nl = text.find('\n', start);
    out.emplace_back(text.substr(start, nl == std::string_view::npos ? nl : nl - start));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

// Greedy word wrap; embedded newlines always break. width 0 disables wrapping.
std::vector<std::string> wrap(std::string_view text, std::size_t width) {
  std::vector<std::string> out;
  for (const auto& paragraph : split_lines(text)) {
    if (width == 0 || paragraph.size() <= width) {
      out.push_back(paragraph);
      continue;
    }
    std::istringstream words(paragraph);
    std::string word;
    std::string line;
    while (words >> word) {
      if (!line.empty() && line.size() + 1 + word.size() > width) {
        out.push_back(std::move(line));
        line.clear();
      }
      if (!line.empty()) line += ' ';
      line += word;
    }
    out.push_back(std::move(line));
  }
  return out;
}

std::string rstrip(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

// Column-aligned plain-text table. Cells may span several lines; rows are
// separated by a rule when any cell in the table is multi-line.
class TextTable {
 public:
  TextTable(std::vector<std::string> headers, std::vector<std::size_t> wrap_widths)
      : headers_(std::move(headers)), wrap_(std::move(wrap_widths)) {
    wrap_.resize(headers_.size(), 0);
  }

  void add_row(const std::vector<std::string>& cells) {
    std::vector<std::vector<std::string>> row;
    for (std::size_t i = 0; i < headers_.size(); ++i) {
      row.push_back(wrap(i < cells.size() ? cells[i] : "", wrap_[i]));
      if (row.back().size() > 1) multiline_ = true;
    }
    rows_.push_back(std::move(row));
  }

  std::string str() const {
    std::vector<std::size_t> widths;
    for (const auto& h : headers_) widths.push_back(h.size());
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        for (const auto& line : row[i]) widths[i] = std::max(widths[i], line.size());
      }
    }
    std::string rule;
    for (std::size_t i = 0; i < widths.size(); ++i) {
      if (i) rule += "-+-";
      rule += std::string(widths[i], '-');
    }
    rule += '\n';

    auto render = [&](const std::vector<std::string>& cells) {
      std::string line;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += " | ";
        line += cells[i];
        line += std::string(widths[i] - cells[i].size(), ' ');
      }
      return rstrip(std::move(line)) + "\n";
    };

    std::string out = render(headers_) + rule;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (r && multiline_) out += rule;
      const auto& row = rows_[r];
      std::size_t height = 0;
      for (const auto& cell : row) height = std::max(height, cell.size());
      for (std::size_t k = 0; k < height; ++k) {
        std::vector<std::string> cells;
        for (const auto& cell : row) cells.push_back(k < cell.size() ? cell[k] : "");
        out += render(cells);
      }
    }
    return out;
  }

 private:
  std::vector<std::string> headers_;
  std::vector<std::size_t> wrap_;
  std::vector<std::vector<std::vector<std::string>>> rows_;
  bool multiline_ = false;
};

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
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

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  std::string s = num(v);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

// Smallest 1/2/5 x 10^k step giving at most five intervals.
double nice_step(double max_value) {
  const double raw = max_value / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

std::vector<std::string> sorted_requirement_ids(const Catalog& catalog) {
  std::vector<std::string> ids;
  for (const auto& r : catalog.requirements) ids.push_back(r.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string effort_csv(const Catalog& catalog) {
  std::string out = "requirement,group_id,ct,ie\n";
  for (const auto& row : effort_table(catalog)) {
    out += csv_field(row.requirement) + "," + std::to_string(row.group_id) + "," +
           std::to_string(row.ct) + "," + format_effort(row.ie) + "\n";
  }
  return out;
}

std::string effort_text(const Catalog& catalog) {
  TextTable table({"Req.", "ID", "ct", "ct_max", "IE"}, {});
  for (const auto& row : effort_table(catalog)) {
    table.add_row({row.requirement, std::to_string(row.group_id), std::to_string(row.ct),
                   std::to_string(row.ct_max), format_effort(row.ie)});
  }
  return table.str();
}

std::string effort_digest(const Catalog& catalog) { return sha256_hex(effort_csv(catalog)); }

std::string bar_chart_svg(std::string_view title, const std::vector<std::string>& categories,
                          const std::vector<ChartSeries>& series, double y_max) {
  constexpr double width = 800, height = 400;
  constexpr double left = 60, right = 170, top = 48, bottom = 44;
  constexpr double plot_w = width - left - right, plot_h = height - top - bottom;

  if (y_max <= 0) {
    double max_value = 0;
    for (const auto& s : series) {
      for (const auto& [cat, value] : s.points) max_value = std::max(max_value, std::stod(value));
    }
    if (max_value <= 0) max_value = 1;
    const double step = nice_step(max_value);
    y_max = step * std::ceil(max_value / step);
  }
  const double step = nice_step(y_max);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"400\" "
         "viewBox=\"0 0 800 400\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"400\" fill=\"#ffffff\"/>\n";
  out += "<text x=\"" + num(left + plot_w / 2) + "\" y=\"24\" text-anchor=\"middle\" "
         "font-size=\"16\">" + xml_escape(title) + "</text>\n";

  for (int i = 0; i * step <= y_max + 1e-9; ++i) {
    const double v = i * step;
    const double y = top + plot_h - v / y_max * plot_h;
    out += "<line x1=\"" + num(left) + "\" y1=\"" + num(y) + "\" x2=\"" + num(left + plot_w) +
           "\" y2=\"" + num(y) + "\" stroke=\"#dddddd\"/>\n";
    out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(y + 4) +
           "\" text-anchor=\"end\">" + tick_label(v) + "</text>\n";
  }
  out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + plot_h) + "\" x2=\"" +
         num(left + plot_w) + "\" y2=\"" + num(top + plot_h) + "\" stroke=\"#333333\"/>\n";
  out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) +
         "\" y2=\"" + num(top + plot_h) + "\" stroke=\"#333333\"/>\n";

  const double band = categories.empty() ? plot_w : plot_w / categories.size();
  const double bar_w = series.empty() ? 0 : band * 0.8 / series.size();
  for (std::size_t c = 0; c < categories.size(); ++c) {
    const double band_x = left + c * band;
    for (std::size_t s = 0; s < series.size(); ++s) {
      const auto& pts = series[s].points;
      auto it = std::find_if(pts.begin(), pts.end(),
                             [&](const auto& p) { return p.first == categories[c]; });
      if (it == pts.end()) continue;
      const double v = std::stod(it->second);
      const double h = std::min(v, y_max) / y_max * plot_h;
      out += "<rect class=\"bar\" x=\"" + num(band_x + band * 0.1 + s * bar_w) + "\" y=\"" +
             num(top + plot_h - h) + "\" width=\"" + num(bar_w) + "\" height=\"" + num(h) +
             "\" fill=\"" + kPalette[s % std::size(kPalette)] + "\" data-series=\"" +
             xml_escape(series[s].label) + "\" data-category=\"" + xml_escape(categories[c]) +
             "\" data-value=\"" + xml_escape(it->second) + "\"/>\n";
    }
    out += "<text x=\"" + num(band_x + band / 2) + "\" y=\"" + num(top + plot_h + 18) +
           "\" text-anchor=\"middle\">" + xml_escape(categories[c]) + "</text>\n";
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    const double y = top + 10 + s * 20;
    out += "<rect x=\"" + num(left + plot_w + 16) + "\" y=\"" + num(y - 10) +
           "\" width=\"12\" height=\"12\" fill=\"" + kPalette[s % std::size(kPalette)] + "\"/>\n";
    out += "<text x=\"" + num(left + plot_w + 34) + "\" y=\"" + num(y) + "\">" +
           xml_escape(series[s].label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

Chart importance_chart(const Catalog& catalog) {
  const auto report = requirement_importance(catalog);
  const auto categories = sorted_requirement_ids(catalog);

  std::vector<StandardRef> standards = catalog.standards;
  std::sort(standards.begin(), standards.end(),
            [](const StandardRef& a, const StandardRef& b) { return a.id < b.id; });

  Chart chart;
  chart.csv = "requirement,standard,count\n";
  std::vector<ChartSeries> series;
  for (const auto& s : standards) series.push_back({s.label, {}});
  for (const auto& req : categories) {
    const auto* entry = report.find(req);
    for (std::size_t i = 0; i < standards.size(); ++i) {
      const auto count = std::to_string(entry->per_standard.at(standards[i].id));
      series[i].points.emplace_back(req, count);
      chart.csv += csv_field(req) + "," + csv_field(standards[i].id) + "," + count + "\n";
    }
  }
  chart.svg = bar_chart_svg("Controls per requirement and standard", categories, series, 0);
  return chart;
}

std::string importance_text(const Catalog& catalog) {
  const auto report = requirement_importance(catalog);
  std::vector<StandardRef> standards = catalog.standards;
  std::sort(standards.begin(), standards.end(),
            [](const StandardRef& a, const StandardRef& b) { return a.id < b.id; });

  std::vector<std::string> headers{"Rank", "Req.", "Total"};
  for (const auto& s : standards) headers.push_back(s.label);
  headers.emplace_back("Depends on");
  TextTable table(headers, {});
  for (const auto& r : report.requirements) {
    std::vector<std::string> cells{std::to_string(r.rank), r.requirement, std::to_string(r.total)};
    for (const auto& s : standards) cells.push_back(std::to_string(r.per_standard.at(s.id)));
    std::string deps;
    for (const auto& d : r.depends_on) deps += (deps.empty() ? "" : " ") + d;
    cells.push_back(deps);
    table.add_row(cells);
  }
  return table.str();
}

Chart assessment_chart(const Catalog& catalog, const std::string& catalog_fingerprint,
                       std::span<const Assessment> assessments, bool normalized) {
  const auto categories = sorted_requirement_ids(catalog);
  Chart chart;
  chart.csv = "requirement,subject,value\n";
  std::vector<ChartSeries> series;
  std::int64_t most_points = 1;
  for (const auto& a : assessments) {
    ChartSeries s{a.subject, {}};
    for (const auto& score : score_assessment(catalog, catalog_fingerprint, a)) {
      std::string value;
      if (normalized) {
        value = score.max_points == 0 ? "0.00" : format_fixed2(score.points / score.max_points);
      } else {
        value = format_points(score.points);
        most_points = std::max(most_points, score.max_points);
      }
      s.points.emplace_back(score.requirement, value);
    }
    series.push_back(std::move(s));
  }
  // CSV rows follow the plotting order: category-major, then series.
  for (const auto& req : categories) {
    for (const auto& s : series) {
      for (const auto& [cat, value] : s.points) {
        if (cat == req) chart.csv += csv_field(req) + "," + csv_field(s.label) + "," + value + "\n";
      }
    }
  }
  chart.svg = bar_chart_svg(normalized ? "Requirement applicability (0-1)"
                                       : "Applicability points per requirement",
                            categories, series,
                            normalized ? 1.0 : static_cast<double>(most_points));
  return chart;
}

std::string catalog_extract(const Catalog& catalog, std::string_view requirement_id) {
  const auto groups = groups_of(catalog, requirement_id);
  TextTable table({"Req.", "ID", "Control IDs", "Assessment"}, {0, 0, 40, 60});
  for (const auto& g : groups) {
    std::string ids;
    for (const auto& c : g.controls) ids += (ids.empty() ? "[" : " [") + c + "]";
    table.add_row({std::string(requirement_id), std::to_string(g.group_id), ids,
                   g.assessment_guidance});
  }
  return table.str();
}

std::string summary_json(const Catalog& catalog, const std::string& catalog_fingerprint,
                         const Assessment& assessment) {
  const auto scores = score_assessment(catalog, catalog_fingerprint, assessment);
  const auto residual = residual_effort(catalog, catalog_fingerprint, assessment);

  ordered_json root = ordered_json::object();
  root["subject"] = assessment.subject;
  root["catalog_fingerprint"] = catalog_fingerprint;
  root["scores"] = ordered_json::array();
  for (const auto& s : scores) {
    ordered_json o = ordered_json::object();
    o["requirement"] = s.requirement;
    o["points"] = format_points(s.points);
    o["max_points"] = s.max_points;
    o["normalized"] = s.max_points == 0 ? "0.00" : format_fixed2(s.points / s.max_points);
    root["scores"].push_back(std::move(o));
  }
  ordered_json res = ordered_json::object();
  res["groups"] = ordered_json::array();
  for (const auto& g : residual.groups) {
    ordered_json o = ordered_json::object();
    o["key"] = g.key.str();
    o["rating"] = rating_name(g.rating);
    o["ie"] = format_effort(g.ie);
    o["ie_exact"] = format_exact(g.ie);
    o["residual"] = format_fixed2(g.residual);
    o["residual_exact"] = format_exact(g.residual);
    res["groups"].push_back(std::move(o));
  }
  res["requirements"] = ordered_json::array();
  for (const auto& [req, value] : residual.per_requirement) {
    ordered_json o = ordered_json::object();
    o["requirement"] = req;
    o["residual"] = format_fixed2(value);
    o["residual_exact"] = format_exact(value);
    res["requirements"].push_back(std::move(o));
  }
  res["total"] = format_fixed2(residual.total);
  res["total_exact"] = format_exact(residual.total);
  root["residuals"] = std::move(res);
  return detail::dump_canonical(root);
}

std::string summary_text(const Catalog& catalog, const std::string& catalog_fingerprint,
                         const Assessment& assessment) {
  const auto scores = score_assessment(catalog, catalog_fingerprint, assessment);
  const auto residual = residual_effort(catalog, catalog_fingerprint, assessment);
  TextTable table({"Req.", "Points", "Max", "Residual"}, {});
  for (const auto& s : scores) {
    table.add_row({s.requirement, format_points(s.points), std::to_string(s.max_points),
                   format_fixed2(residual.per_requirement.at(s.requirement))});
  }
  return "Subject: " + assessment.subject + "\n" + table.str() +
         "Total residual effort: " + format_fixed2(residual.total) + "\n";
}

std::string effort_json(const Catalog& catalog) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : effort_table(catalog)) {
    ordered_json o = ordered_json::object();
    o["requirement"] = row.requirement;
    o["group_id"] = row.group_id;
    o["ct"] = row.ct;
    o["ct_max"] = row.ct_max;
    o["ie"] = format_effort(row.ie);
    o["ie_exact"] = format_exact(row.ie);
    rows.push_back(std::move(o));
  }
  return detail::dump_canonical(rows);
}

std::string importance_json(const Catalog& catalog) {
  ordered_json reqs = ordered_json::array();
  for (const auto& r : requirement_importance(catalog).requirements) {
    ordered_json o = ordered_json::object();
    o["requirement"] = r.requirement;
    o["rank"] = r.rank;
    o["total"] = r.total;
    o["per_standard"] = ordered_json::object();
    for (const auto& [std_id, count] : r.per_standard) o["per_standard"][std_id] = count;
    o["depends_on"] = r.depends_on;
    reqs.push_back(std::move(o));
  }
  ordered_json root = ordered_json::object();
  root["requirements"] = std::move(reqs);
  return detail::dump_canonical(root);
}

std::string verdict_json(const ScreeningVerdict& verdict) {
  ordered_json root = ordered_json::object();
  root["pass"] = verdict.pass;
  root["failed"] = ordered_json::array();
  for (auto c : verdict.failed) {
    ordered_json o = ordered_json::object();
    o["criterion"] = criterion_name(c);
    o["label"] = criterion_label(c);
    root["failed"].push_back(std::move(o));
  }
  return detail::dump_canonical(root);
}

std::string verdict_text(const ScreeningVerdict& verdict) {
  if (verdict.pass) return "pass\n";
  std::string out = "fail:";
  for (auto c : verdict.failed) {
    out += " (" + std::string(criterion_label(c)) + ") " + std::string(criterion_name(c));
  }
  return out + "\n";
}

}  // namespace ccost

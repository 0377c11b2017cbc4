#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccost/assessment.hpp"
#include "ccost/catalog.hpp"
#include "ccost/scoring.hpp"

namespace ccost {

struct ChartSeries {
  std::string label;
  std::vector<std::pair<std::string, std::string>> points;  // (category, decimal value)
};

/// An SVG chart and the CSV holding exactly the plotted values.
struct Chart {
  std::string svg;
  std::string csv;
};

/// "requirement,group_id,ct,ie" followed by one row per effort_table row.
std::string effort_csv(const Catalog& catalog);

/// Plain-text version of effort_csv for terminals.
std::string effort_text(const Catalog& catalog);

/// SHA-256 of effort_csv; the Improve-phase artifact of a project.
std::string effort_digest(const Catalog& catalog);

/// Grouped bars: one category per requirement, one series per standard.
/// CSV twin header: "requirement,standard,count".
Chart importance_chart(const Catalog& catalog);

std::string importance_text(const Catalog& catalog);

/// Per-requirement points per subject. With `normalized`, points are divided by
/// max_points (0-1 axis). CSV twin header: "requirement,subject,value".
/// Every assessment is checked against `catalog_fingerprint`.
Chart assessment_chart(const Catalog& catalog, const std::string& catalog_fingerprint,
                       std::span<const Assessment> assessments, bool normalized);

/// The catalog table of one requirement: Req. | ID | Control IDs | Assessment.
/// Throws UnknownRequirementError.
std::string catalog_extract(const Catalog& catalog, std::string_view requirement_id);

/// Deterministic 800x400 grouped bar chart. `y_max` <= 0 auto-scales.
std::string bar_chart_svg(std::string_view title, const std::vector<std::string>& categories,
                          const std::vector<ChartSeries>& series, double y_max);

/// Scores plus residual efforts as canonical JSON. This is the exact body the
/// service returns for a summary.
std::string summary_json(const Catalog& catalog, const std::string& catalog_fingerprint,
                         const Assessment& assessment);

std::string summary_text(const Catalog& catalog, const std::string& catalog_fingerprint,
                         const Assessment& assessment);

std::string effort_json(const Catalog& catalog);
std::string importance_json(const Catalog& catalog);
std::string verdict_json(const ScreeningVerdict& verdict);
std::string verdict_text(const ScreeningVerdict& verdict);

std::string csv_field(std::string_view text);

}  // namespace ccost

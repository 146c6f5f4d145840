#include "longtail/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "longtail/error.hpp"
#include "longtail/svg.hpp"

namespace longtail {
namespace {

constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 50.0;
constexpr double kMarginBottom = 70.0;
constexpr double kLegendWidth = 170.0;

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

// Linear mapping from data space into the plot rectangle plus axis drawing.
class Frame {
 public:
  Frame(const FigureSpec& spec, double right_margin)
      : left_(kMarginLeft),
        top_(kMarginTop),
        right_(std::max(left_ + 1.0, spec.width - right_margin)),
        bottom_(std::max(top_ + 1.0, spec.height - kMarginBottom)) {}

  double left() const { return left_; }
  double right() const { return right_; }
  double top() const { return top_; }
  double bottom() const { return bottom_; }
  double width() const { return right_ - left_; }
  double height() const { return bottom_ - top_; }

  void set_x(std::vector<double> ticks) {
    x_ticks_ = std::move(ticks);
    x_ = {x_ticks_.front(), x_ticks_.back()};
  }
  void set_y(std::vector<double> ticks) {
    y_ticks_ = std::move(ticks);
    y_ = {y_ticks_.front(), y_ticks_.back()};
  }

  double px(double x) const { return left_ + (x - x_.lo) / (x_.hi - x_.lo) * width(); }
  double py(double y) const { return bottom_ - (y - y_.lo) / (y_.hi - y_.lo) * height(); }

  void draw_axes(svg::Document& doc, std::string_view x_label, std::string_view y_label, bool x_ticks = true) const {
    doc.raw("<g class=\"axes\">\n");
    for (double t : y_ticks_) {
      const double y = py(t);
      doc.line(left_, y, right_, y, "#e6e6e6");
      doc.line(left_ - 5, y, left_, y, "#333333");
      doc.text(left_ - 8, y + 4, svg::tick_label(t), "text-anchor=\"end\"");
    }
    if (x_ticks) {
      for (double t : x_ticks_) {
        const double x = px(t);
        doc.line(x, bottom_, x, bottom_ + 5, "#333333");
        doc.text(x, bottom_ + 20, svg::tick_label(t), "text-anchor=\"middle\"");
      }
    }
    doc.line(left_, bottom_, right_, bottom_, "#333333");
    doc.line(left_, top_, left_, bottom_, "#333333");
    doc.text((left_ + right_) / 2, bottom_ + 45, x_label, "text-anchor=\"middle\" class=\"axis-label\"");
    doc.text(20, (top_ + bottom_) / 2, y_label,
             fmt::format("text-anchor=\"middle\" class=\"axis-label\" transform=\"rotate(-90 20 {:.2f})\"",
                         (top_ + bottom_) / 2));
    doc.raw("</g>\n");
  }

 private:
  double left_, top_, right_, bottom_;
  Range x_, y_;
  std::vector<double> x_ticks_, y_ticks_;
};

void draw_title(svg::Document& doc, const FigureSpec& spec) {
  doc.text(spec.width / 2.0, 28, spec.title, "text-anchor=\"middle\" font-size=\"16\" class=\"title\"");
}

void draw_no_data(svg::Document& doc, const Frame& f, std::string_view note = "no data") {
  doc.text((f.left() + f.right()) / 2, (f.top() + f.bottom()) / 2, note,
           "text-anchor=\"middle\" class=\"no-data\" fill=\"#666666\"");
}

std::string md_cell(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n' || c == '\r') out += ' ';
    else out += c;
  }
  return out;
}

}  // namespace

void FigureSpec::validate() const {
  if (width <= 0 || height <= 0)
    throw AnalysisError(fmt::format("figure dimensions must be positive, got {}x{}", width, height));
}

std::string render_resolution_scatter(std::span<const ResolutionRecord> records, const AnomalySet& anomalies,
                                      const FigureSpec& spec) {
  spec.validate();
  if (records.size() != anomalies.entries.size())
    throw AnalysisError("resolution scatter: records and anomaly set are not row-aligned");

  svg::Document doc(spec.width, spec.height);
  draw_title(doc, spec);
  Frame frame(spec, kMarginRight);

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo, y_hi = 0.0;
  for (const auto& r : records) {
    const double x = fractional_year(r.created);
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
    y_hi = std::max(y_hi, r.resolution_days);
  }
  if (records.empty()) {
    x_lo = 0.0;
    x_hi = 1.0;
  }
  frame.set_x(svg::nice_ticks(x_lo, x_hi));
  frame.set_y(svg::nice_ticks(0.0, y_hi > 0.0 ? y_hi : 1.0));
  frame.draw_axes(doc, "Created (year)", "Resolution time (days)");
  if (records.empty()) draw_no_data(doc, frame);

  doc.raw("<g class=\"points\">\n");
  for (int pass = 0; pass < 2; ++pass) {
    const bool anomalous_pass = pass == 1;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (anomalies.entries[i].is_anomaly != anomalous_pass) continue;
      const double x = frame.px(fractional_year(records[i].created));
      const double y = frame.py(records[i].resolution_days);
      if (anomalous_pass)
        doc.circle(x, y, 3.0, svg::kAnomalyColor, "class=\"point anomaly\"");
      else
        doc.circle(x, y, 2.5, svg::kNeutralColor, "class=\"point\" fill-opacity=\"0.6\"");
    }
  }
  doc.raw("</g>\n");
  const auto n_anomalous = anomalies.anomaly_count();
  doc.circle(frame.right() - 150, frame.top() + 10, 4, svg::kAnomalyColor, "class=\"legend-swatch\"");
  doc.text(frame.right() - 140, frame.top() + 14, fmt::format("anomalous ({})", n_anomalous));
  doc.circle(frame.right() - 150, frame.top() + 28, 4, svg::kNeutralColor, "class=\"legend-swatch\"");
  doc.text(frame.right() - 140, frame.top() + 32, fmt::format("typical ({})", records.size() - n_anomalous));
  return doc.finish();
}

std::string render_monthly_bars(const MonthlyCounts& series, const FigureSpec& spec) {
  spec.validate();
  svg::Document doc(spec.width, spec.height);
  draw_title(doc, spec);
  Frame frame(spec, kMarginRight);

  std::size_t max_count = 0;
  for (const auto& m : series) max_count = std::max(max_count, m.count);
  frame.set_x({0.0, std::max<double>(1.0, static_cast<double>(series.size()))});
  frame.set_y(svg::nice_ticks(0.0, std::max<double>(1.0, static_cast<double>(max_count)), 10, true));
  frame.draw_axes(doc, "Month (created)", "Anomalies", false);
  if (series.empty()) draw_no_data(doc, frame);

  const double slot = frame.width() / std::max<double>(1.0, static_cast<double>(series.size()));
  const double bar_w = std::max(slot * 0.8, 0.5);
  const std::size_t label_every = std::max<std::size_t>(1, (series.size() + 9) / 10);
  doc.raw("<g class=\"bars\">\n");
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double x = frame.left() + slot * static_cast<double>(i) + (slot - bar_w) / 2;
    const double top = frame.py(static_cast<double>(series[i].count));
    doc.rect(x, top, bar_w, frame.bottom() - top, svg::kAnomalyColor,
             fmt::format("class=\"bar\" data-month=\"{}\" data-count=\"{}\"", series[i].month.to_string(),
                         series[i].count));
  }
  doc.raw("</g>\n");
  for (std::size_t i = 0; i < series.size(); i += label_every) {
    const double x = frame.left() + slot * (static_cast<double>(i) + 0.5);
    doc.line(x, frame.bottom(), x, frame.bottom() + 5, "#333333");
    doc.text(x, frame.bottom() + 20, series[i].month.to_string(), "text-anchor=\"middle\"");
  }
  return doc.finish();
}

std::string render_cluster_scatter(const Embedding2D& embedding, const Clustering& clustering,
                                   const FigureSpec& spec) {
  spec.validate();
  if (embedding.size() != clustering.assignments.size())
    throw AnalysisError(fmt::format("cluster scatter: {} embedded documents but {} assignments", embedding.size(),
                                    clustering.assignments.size()));

  svg::Document doc(spec.width, spec.height);
  draw_title(doc, spec);
  Frame frame(spec, kMarginRight + kLegendWidth);

  double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
  if (!embedding.empty()) {
    x_lo = x_hi = embedding.front().x;
    y_lo = y_hi = embedding.front().y;
  }
  for (const auto& p : embedding) {
    x_lo = std::min(x_lo, p.x);
    x_hi = std::max(x_hi, p.x);
    y_lo = std::min(y_lo, p.y);
    y_hi = std::max(y_hi, p.y);
  }
  frame.set_x(svg::nice_ticks(x_lo, x_hi));
  frame.set_y(svg::nice_ticks(y_lo, y_hi));
  frame.draw_axes(doc, "Principal component 1", "Principal component 2");
  if (embedding.empty()) draw_no_data(doc, frame);

  doc.raw("<g class=\"points\">\n");
  for (std::size_t i = 0; i < embedding.size(); ++i) {
    const auto c = clustering.assignments[i];
    doc.circle(frame.px(embedding[i].x), frame.py(embedding[i].y), 3.0, svg::kPalette[c % svg::kPalette.size()],
               fmt::format("class=\"point cluster-{}\" fill-opacity=\"0.8\"", c));
  }
  doc.raw("</g>\n<g class=\"legend\">\n");
  const auto sizes = clustering.sizes();
  for (std::size_t c = 0; c < clustering.k; ++c) {
    const double y = frame.top() + 10 + 22.0 * static_cast<double>(c);
    doc.raw(fmt::format("<g class=\"legend-entry\" data-cluster=\"{}\">\n", c));
    doc.rect(frame.right() + 20, y - 9, 12, 12, svg::kPalette[c % svg::kPalette.size()]);
    doc.text(frame.right() + 38, y + 2, fmt::format("Cluster {} (n={})", c, sizes[c]));
    doc.raw("</g>\n");
  }
  doc.raw("</g>\n");
  return doc.finish();
}

std::string render_empty_figure(const FigureSpec& spec, std::string_view note) {
  spec.validate();
  svg::Document doc(spec.width, spec.height);
  draw_title(doc, spec);
  Frame frame(spec, kMarginRight);
  draw_no_data(doc, frame, note);
  return doc.finish();
}

std::string render_summary_table(std::span<const RepoSummary> summaries) {
  std::string out =
      "| Project | Total Reports | Duplicates | Duplicate Rate (%) |\n"
      "|:--|--:|--:|--:|\n";
  for (const auto& s : summaries) {
    out += fmt::format("| {} | {} | {} | {:.1f} |\n", md_cell(s.project), s.total_reports, s.duplicates,
                       s.duplicate_rate_pct);
  }
  return out;
}

std::string write_report(std::span<const ProjectReport> projects) {
  std::string out = "# Bug resolution anomaly report\n\n## Dataset summary\n\n";
  std::vector<RepoSummary> summaries;
  for (const auto& p : projects) summaries.push_back(p.summary);
  out += render_summary_table(summaries);

  out +=
      "\n## Resolution-time anomalies\n\n"
      "| Project | Resolved | Anomalies | Z-score flags | IQR flags | Mean (days) | Median (days) | "
      "Upper IQR fence (days) |\n"
      "|:--|--:|--:|--:|--:|--:|--:|--:|\n";
  for (const auto& p : projects) {
    if (!p.anomalies) continue;
    const auto& a = *p.anomalies;
    out += fmt::format("| {} | {} | {} | {} | {} | {:.1f} | {:.1f} | {:.1f} |\n", md_cell(p.summary.project),
                       a.resolved, a.anomalies, a.z_flagged, a.iqr_flagged, a.stats.mean, a.stats.median,
                       a.stats.upper_fence(a.iqr_multiplier));
  }

  out +=
      "\n## Anomaly clusters\n\n"
      "| Project | Cluster | Keywords |\n"
      "|:--|:--|:--|\n";
  for (const auto& p : projects) {
    if (!p.themes) continue;
    for (const auto& theme : *p.themes) {
      std::string keywords;
      for (const auto& [term, weight] : theme.top_terms) keywords += (keywords.empty() ? "" : ", ") + term;
      out += fmt::format("| {} | Cluster {} | {} |\n", md_cell(p.summary.project), theme.cluster_index,
                         md_cell(keywords));
    }
  }

  std::string notes;
  for (const auto& p : projects) {
    if (!p.note.empty()) notes += fmt::format("- {}: {}\n", p.summary.project, p.note);
  }
  if (!notes.empty()) out += "\n## Notes\n\n" + notes;
  return out;
}

}  // namespace longtail

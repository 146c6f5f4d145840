#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "longtail/anomaly.hpp"
#include "longtail/cluster.hpp"
#include "longtail/ingest.hpp"
#include "longtail/reduce.hpp"

namespace longtail {

enum class FigureKind { resolution_scatter, monthly_bars, cluster_scatter };

struct FigureSpec {
  FigureKind kind = FigureKind::resolution_scatter;
  std::string title;
  int width = 900;
  int height = 600;

  /// Throws AnalysisError unless both dimensions are positive.
  void validate() const;
};

/// Resolution time against creation date, one <circle class="point"> per
/// record; anomalous bugs carry the extra class "anomaly" and are red.
/// `records` must be row-aligned with `anomalies`.
std::string render_resolution_scatter(std::span<const ResolutionRecord> records, const AnomalySet& anomalies,
                                      const FigureSpec& spec = {});

/// One <rect class="bar"> per month, zero-count months included.
std::string render_monthly_bars(const MonthlyCounts& series, const FigureSpec& spec = {});

/// Embedding coloured by cluster with a legend of cluster sizes. Throws
/// AnalysisError when the embedding and clustering have different lengths.
std::string render_cluster_scatter(const Embedding2D& embedding, const Clustering& clustering,
                                   const FigureSpec& spec = {});

/// Placeholder cluster plot used when clustering was skipped.
std::string render_empty_figure(const FigureSpec& spec, std::string_view note);

struct AnomalyOverview {
  std::size_t resolved = 0;
  std::size_t anomalies = 0;
  std::size_t z_flagged = 0;
  std::size_t iqr_flagged = 0;
  DistributionStats stats;
  double iqr_multiplier = 1.5;
};

struct ProjectReport {
  RepoSummary summary;
  std::optional<AnomalyOverview> anomalies;
  /// Present when clustering ran, one entry per cluster.
  std::optional<std::vector<ClusterTheme>> themes;
  /// Why the project was downgraded (empty when it was not).
  std::string note;
};

/// Markdown table with the Project / Total Reports / Duplicates /
/// Duplicate Rate (%) columns.
std::string render_summary_table(std::span<const RepoSummary> summaries);

/// Full cross-project Markdown report: the duplicate summary table, an
/// anomaly overview table, the Project / Cluster / Keywords theme table and
/// notes for downgraded projects.
std::string write_report(std::span<const ProjectReport> projects);

}  // namespace longtail

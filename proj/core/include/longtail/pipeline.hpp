#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "longtail/anomaly.hpp"
#include "longtail/cluster.hpp"
#include "longtail/ingest.hpp"
#include "longtail/reduce.hpp"
#include "longtail/report.hpp"
#include "longtail/textvec.hpp"

namespace longtail {

enum class ClusterSpace { pca2d, tfidf };

struct ProjectInput {
  std::string name;
  std::filesystem::path csv;
};

/// Parses "<name>=<path>".
ProjectInput parse_project_input(std::string_view spec);

struct PipelineConfig {
  std::vector<ProjectInput> inputs;
  std::filesystem::path out_dir;
  AnomalyConfig anomaly;
  KMeansConfig kmeans;  // k = 3, seed = 42 by default
  std::size_t top_terms = 10;
  ClusterSpace cluster_space = ClusterSpace::pca2d;
  BucketKey bucket_key = BucketKey::created;
  SchemaConfig schema;
  DuplicateRule duplicates;
  /// Also write embedding.csv and tfidf.json per project.
  bool dump_intermediates = false;

  /// Throws ConfigError on empty or duplicate inputs, unusable project names,
  /// missing input files, or out-of-range numeric settings.
  void validate() const;
};

enum class LogLevel { info, warn, error };
using LogSink = std::function<void(LogLevel, std::string_view)>;

/// Everything computed for one project, kept in memory.
struct ProjectAnalysis {
  std::string project;
  RepoSummary summary;
  std::vector<ResolutionRecord> records;
  std::optional<AnomalySet> anomalies;
  MonthlyCounts monthly;
  std::vector<std::size_t> anomalous;  // record indices that entered vectorisation
  std::optional<DocTermMatrix> tfidf;
  std::optional<PcaModel> pca;
  Embedding2D embedding;
  std::optional<Clustering> clustering;
  std::vector<ClusterTheme> themes;
  std::string note;  // why the analysis stopped early, if it did
};

/// Runs the analysis stages on already parsed reports. Analytic problems
/// (no resolved bugs, fewer anomalies than k, empty vocabulary) stop the
/// analysis at that stage and are recorded in `note`; they never throw.
/// `source` names the input file in data-quality warnings.
ProjectAnalysis analyze_project(std::string project, const ParseResult& parsed, const PipelineConfig& config,
                                const LogSink& log = {}, std::string_view source = {});

/// Writes the six per-project artifacts (plus the optional dumps) into
/// `dir`, replacing stale files from earlier runs.
void write_project_artifacts(const ProjectAnalysis& analysis, const PipelineConfig& config,
                             const std::filesystem::path& dir);

/// anomalies.csv content.
std::string anomalies_csv(const AnomalySet* anomalies);
/// monthly_counts.csv content.
std::string monthly_counts_csv(const MonthlyCounts& series);
/// clusters.json content.
std::string clusters_json(const ProjectAnalysis& analysis, const PipelineConfig& config);
/// embedding.csv content.
std::string embedding_csv(const ProjectAnalysis& analysis);

enum class ProjectStatus { ok, degraded, failed };

struct ProjectOutcome {
  std::string project;
  ProjectStatus status = ProjectStatus::ok;
  std::string message;
};

struct PipelineResult {
  int exit_code = 0;  // 0 all projects analysed, 2 some project failed
  std::vector<ProjectOutcome> projects;
};

/// Per-project artifact file names, relative to <out>/<project>/.
inline constexpr std::string_view kArtifactFiles[] = {"anomalies.csv",          "clusters.json",
                                                      "monthly_counts.csv",     "resolution_scatter.svg",
                                                      "monthly_anomalies.svg",  "cluster_scatter.svg"};
inline constexpr std::string_view kDumpFiles[] = {"embedding.csv", "tfidf.json"};

/// Full pipeline over every input followed by <out>/report.md. Throws
/// ConfigError before writing anything when the configuration is invalid.
/// A project whose CSV cannot be read or lacks required columns is reported
/// as failed; the others are still processed.
PipelineResult run_pipeline(const PipelineConfig& config, const LogSink& log = {});

/// Duplicate summary only. Returns the Markdown table; also writes
/// <out>/report.md when `out_dir` is non-empty.
struct SummaryResult {
  int exit_code = 0;
  std::vector<RepoSummary> summaries;
  std::string markdown;
};
SummaryResult run_summary(const PipelineConfig& config, const LogSink& log = {});

/// Writes through a temporary file in the same directory and renames it
/// over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace longtail

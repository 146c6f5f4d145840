#include "longtail/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <system_error>

#include <fmt/format.h>
#include <json.hpp>

#include "longtail/csv.hpp"
#include "longtail/error.hpp"

namespace fs = std::filesystem;

namespace longtail {
namespace {

void emit(const LogSink& log, LogLevel level, std::string_view message) {
  if (log) log(level, message);
}

bool valid_project_name(std::string_view name) {
  if (name.empty() || name == "." || name == "..") return false;
  return std::none_of(name.begin(), name.end(), [](char c) {
    return c == '/' || c == '\\' || static_cast<unsigned char>(c) < 0x20;
  });
}

std::string fmt6(double v) { return fmt::format("{:.6g}", v); }

std::string_view to_string(ClusterSpace s) { return s == ClusterSpace::pca2d ? "pca2d" : "tfidf"; }

void remove_stale(const fs::path& dir) {
  std::error_code ec;
  for (auto name : kArtifactFiles) fs::remove(dir / name, ec);
  for (auto name : kDumpFiles) fs::remove(dir / name, ec);
}

AnomalyOverview overview(const ProjectAnalysis& a, const PipelineConfig& config) {
  AnomalyOverview o;
  o.resolved = a.records.size();
  o.anomalies = a.anomalies->anomaly_count();
  o.z_flagged = a.anomalies->z_count();
  o.iqr_flagged = a.anomalies->iqr_count();
  o.stats = a.anomalies->stats;
  o.iqr_multiplier = config.anomaly.iqr_multiplier;
  return o;
}

}  // namespace

ProjectInput parse_project_input(std::string_view spec) {
  const auto eq = spec.find('=');
  if (eq == std::string_view::npos || eq == 0 || eq + 1 == spec.size())
    throw ConfigError(fmt::format("input '{}' is not of the form <name>=<path>", spec));
  return {std::string(spec.substr(0, eq)), fs::path(std::string(spec.substr(eq + 1)))};
}

void PipelineConfig::validate() const {
  if (inputs.empty()) throw ConfigError("at least one --input is required");
  std::set<std::string> seen;
  for (const auto& in : inputs) {
    if (!valid_project_name(in.name)) throw ConfigError(fmt::format("invalid project name '{}'", in.name));
    if (!seen.insert(in.name).second) throw ConfigError(fmt::format("project '{}' given twice", in.name));
    std::error_code ec;
    if (!fs::is_regular_file(in.csv, ec))
      throw ConfigError(fmt::format("input file '{}' for project '{}' does not exist", in.csv.string(), in.name));
  }
  try {
    anomaly.validate();
    kmeans.validate();
  } catch (const AnalysisError& e) {
    throw ConfigError(e.what());
  }
}

ProjectAnalysis analyze_project(std::string project, const ParseResult& parsed, const PipelineConfig& config,
                                const LogSink& log, std::string_view source) {
  ProjectAnalysis a;
  a.project = std::move(project);
  a.summary = dataset_summary(a.project, parsed.reports, config.duplicates);

  std::vector<std::size_t> report_of;  // record index -> report index
  std::vector<Diagnostic> diagnostics;
  for (std::size_t i = 0; i < parsed.reports.size(); ++i) {
    if (auto rec = compute_resolution(parsed.reports[i], &diagnostics)) {
      a.records.push_back(std::move(*rec));
      report_of.push_back(i);
    }
  }
  for (const auto& d : diagnostics) emit(log, LogLevel::warn, fmt::format("{}:{}: {}", source.empty() ? a.project : source, d.line, d.cause));

  const auto stop = [&](std::string why) {
    emit(log, LogLevel::warn, fmt::format("{}: {}", a.project, why));
    a.note = std::move(why);
    return std::move(a);
  };

  if (a.records.empty()) return stop("no resolved bugs; anomaly detection skipped");
  a.anomalies = detect_anomalies(a.records, config.anomaly);
  a.monthly = monthly_counts(a.records, *a.anomalies, config.bucket_key);
  a.anomalous = a.anomalies->anomaly_indices();

  const auto k = config.kmeans.k;
  if (a.anomalous.empty()) return stop("no anomalies; clustering skipped");
  if (a.anomalous.size() < k)
    return stop(fmt::format("only {} anomalies for k = {}; clustering skipped", a.anomalous.size(), k));

  std::vector<TokenList> corpus;
  corpus.reserve(a.anomalous.size());
  for (auto idx : a.anomalous) corpus.push_back(tokenize(parsed.reports[report_of[idx]].summary));

  try {
    const auto vocab = build_vocabulary(corpus);
    a.tfidf = tfidf_matrix(corpus, vocab);
    a.pca = pca_fit(*a.tfidf, 2);
    for (const auto& w : a.pca->warnings) emit(log, LogLevel::warn, fmt::format("{}: PCA: {}", a.project, w));
    a.embedding = pca_transform(*a.pca, *a.tfidf);
    const auto points = config.cluster_space == ClusterSpace::pca2d ? PointMatrix::from(a.embedding)
                                                                     : PointMatrix::from(*a.tfidf);
    a.clustering = kmeans(points, config.kmeans);
    a.themes = cluster_top_terms(*a.tfidf, *a.clustering, config.top_terms);
  } catch (const AnalysisError& e) {
    a.clustering.reset();
    a.themes.clear();
    return stop(fmt::format("clustering skipped: {}", e.what()));
  }
  return a;
}

std::string anomalies_csv(const AnomalySet* anomalies) {
  std::string out = "bug_id,resolution_days,z_score,z_flag,iqr_flag,is_anomaly\n";
  if (!anomalies) return out;
  const auto b = [](bool v) { return v ? "true" : "false"; };
  for (const auto& e : anomalies->entries) {
    out += fmt::format("{},{},{},{},{},{}\n", csv::escape(e.bug_id), fmt6(e.resolution_days), fmt6(e.z_score),
                       b(e.z_flag), b(e.iqr_flag), b(e.is_anomaly));
  }
  return out;
}

std::string monthly_counts_csv(const MonthlyCounts& series) {
  std::string out = "month,count\n";
  for (const auto& m : series) out += fmt::format("{},{}\n", m.month.to_string(), m.count);
  return out;
}

std::string clusters_json(const ProjectAnalysis& a, const PipelineConfig& config) {
  nlohmann::ordered_json j;
  j["k"] = config.kmeans.k;
  j["seed"] = config.kmeans.seed;
  j["cluster_space"] = to_string(config.cluster_space);
  auto clusters = nlohmann::ordered_json::array();
  if (a.clustering) {
    j["inertia"] = a.clustering->inertia;
    std::vector<std::vector<std::string>> members(a.clustering->k);
    for (std::size_t d = 0; d < a.clustering->assignments.size(); ++d)
      members[a.clustering->assignments[d]].push_back(a.records[a.anomalous[d]].bug_id);
    for (const auto& theme : a.themes) {
      nlohmann::ordered_json c;
      c["index"] = theme.cluster_index;
      c["size"] = theme.size;
      auto terms = nlohmann::ordered_json::array();
      for (const auto& [term, weight] : theme.top_terms) terms.push_back({term, weight});
      c["top_terms"] = std::move(terms);
      c["bug_ids"] = members[theme.cluster_index];
      clusters.push_back(std::move(c));
    }
  } else {
    j["inertia"] = nullptr;
    j["skipped"] = a.note;
  }
  j["clusters"] = std::move(clusters);
  return j.dump(2) + "\n";
}

std::string embedding_csv(const ProjectAnalysis& a) {
  std::string out = "bug_id,x,y\n";
  for (std::size_t d = 0; d < a.embedding.size(); ++d) {
    out += fmt::format("{},{},{}\n", csv::escape(a.records[a.anomalous[d]].bug_id), fmt6(a.embedding[d].x),
                       fmt6(a.embedding[d].y));
  }
  return out;
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError(fmt::format("cannot write '{}'", tmp.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InputError(fmt::format("cannot write '{}'", tmp.string()));
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError(fmt::format("cannot replace '{}'", path.string()));
  }
}

void write_project_artifacts(const ProjectAnalysis& a, const PipelineConfig& config, const fs::path& dir) {
  fs::create_directories(dir);
  remove_stale(dir);

  const AnomalySet* anomalies = a.anomalies ? &*a.anomalies : nullptr;
  write_file_atomic(dir / "anomalies.csv", anomalies_csv(anomalies));
  write_file_atomic(dir / "monthly_counts.csv", monthly_counts_csv(a.monthly));
  write_file_atomic(dir / "clusters.json", clusters_json(a, config));

  FigureSpec scatter{FigureKind::resolution_scatter, a.project + ": resolution time by creation date"};
  FigureSpec bars{FigureKind::monthly_bars, a.project + ": anomalies per month"};
  FigureSpec clusters{FigureKind::cluster_scatter, a.project + ": clusters of anomalous summaries"};
  if (anomalies) {
    write_file_atomic(dir / "resolution_scatter.svg", render_resolution_scatter(a.records, *anomalies, scatter));
  } else {
    write_file_atomic(dir / "resolution_scatter.svg", render_resolution_scatter({}, AnomalySet{}, scatter));
  }
  write_file_atomic(dir / "monthly_anomalies.svg", render_monthly_bars(a.monthly, bars));
  if (a.clustering) {
    write_file_atomic(dir / "cluster_scatter.svg", render_cluster_scatter(a.embedding, *a.clustering, clusters));
  } else {
    write_file_atomic(dir / "cluster_scatter.svg", render_empty_figure(clusters, a.note));
  }

  if (config.dump_intermediates) {
    write_file_atomic(dir / "embedding.csv", embedding_csv(a));
    if (a.tfidf) write_file_atomic(dir / "tfidf.json", tfidf_to_json(*a.tfidf));
  }
}

PipelineResult run_pipeline(const PipelineConfig& config, const LogSink& log) {
  config.validate();
  if (config.out_dir.empty()) throw ConfigError("--out is required");
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec || !fs::is_directory(config.out_dir))
    throw ConfigError(fmt::format("cannot create output directory '{}'", config.out_dir.string()));

  PipelineResult result;
  std::vector<ProjectReport> reports;
  std::string failures;
  for (const auto& input : config.inputs) {
    const auto dir = config.out_dir / input.name;
    ProjectOutcome outcome{input.name, ProjectStatus::ok, {}};
    try {
      emit(log, LogLevel::info, fmt::format("{}: reading {}", input.name, input.csv.string()));
      const auto parsed = load_bug_reports(input.csv, config.schema);
      for (const auto& d : parsed.diagnostics) emit(log, LogLevel::warn, fmt::format("{}:{}: {}", input.csv.string(), d.line, d.cause));

      auto analysis = analyze_project(input.name, parsed, config, log, input.csv.string());
      write_project_artifacts(analysis, config, dir);

      ProjectReport report{analysis.summary, std::nullopt, std::nullopt, analysis.note};
      if (analysis.anomalies) report.anomalies = overview(analysis, config);
      if (analysis.clustering) report.themes = analysis.themes;
      reports.push_back(std::move(report));

      if (!analysis.note.empty()) {
        outcome.status = ProjectStatus::degraded;
        outcome.message = analysis.note;
      }
      emit(log, LogLevel::info,
           fmt::format("{}: {} reports, {} resolved, {} anomalies", input.name, analysis.summary.total_reports,
                       analysis.records.size(), analysis.anomalous.size()));
    } catch (const Error& e) {
      outcome.status = ProjectStatus::failed;
      outcome.message = e.what();
      emit(log, LogLevel::error, fmt::format("{}: {}", input.name, e.what()));
      remove_stale(dir);
      failures += fmt::format("- {}: {}\n", input.name, e.what());
    } catch (const fs::filesystem_error& e) {
      outcome.status = ProjectStatus::failed;
      outcome.message = e.what();
      emit(log, LogLevel::error, fmt::format("{}: {}", input.name, e.what()));
      failures += fmt::format("- {}: {}\n", input.name, e.what());
    }
    if (outcome.status == ProjectStatus::failed) result.exit_code = 2;
    result.projects.push_back(std::move(outcome));
  }

  auto markdown = write_report(reports);
  if (!failures.empty()) markdown += "\n## Failed projects\n\n" + failures;
  write_file_atomic(config.out_dir / "report.md", markdown);
  return result;
}

SummaryResult run_summary(const PipelineConfig& config, const LogSink& log) {
  config.validate();
  SummaryResult result;
  std::string failures;
  for (const auto& input : config.inputs) {
    try {
      const auto parsed = load_bug_reports(input.csv, config.schema);
      for (const auto& d : parsed.diagnostics) emit(log, LogLevel::warn, fmt::format("{}:{}: {}", input.csv.string(), d.line, d.cause));
      result.summaries.push_back(dataset_summary(input.name, parsed.reports, config.duplicates));
    } catch (const Error& e) {
      emit(log, LogLevel::error, fmt::format("{}: {}", input.name, e.what()));
      failures += fmt::format("- {}: {}\n", input.name, e.what());
      result.exit_code = 2;
    }
  }
  result.markdown = render_summary_table(result.summaries);
  if (!failures.empty()) result.markdown += "\nFailed projects:\n\n" + failures;
  if (!config.out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw ConfigError(fmt::format("cannot create output directory '{}'", config.out_dir.string()));
    write_file_atomic(config.out_dir / "report.md", "# Dataset summary\n\n" + result.markdown);
  }
  return result;
}

}  // namespace longtail

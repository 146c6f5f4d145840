// longtail: flag anomalously long bug-resolution times in issue-tracker
// exports and group the anomalous bugs by summary text.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "longtail/error.hpp"
#include "longtail/pipeline.hpp"

namespace {

bool use_color() {
  const char* no_color = std::getenv("NO_COLOR");
  if (no_color != nullptr && no_color[0] != '\0') return false;
  return ::isatty(STDERR_FILENO) != 0;
}

longtail::LogSink make_logger(bool quiet) {
  const bool color = use_color();
  return [color, quiet](longtail::LogLevel level, std::string_view message) {
    if (quiet && level == longtail::LogLevel::info) return;
    std::string_view tag = "INFO";
    std::string_view ansi = "\x1b[36m";
    if (level == longtail::LogLevel::warn) {
      tag = "WARN";
      ansi = "\x1b[33m";
    } else if (level == longtail::LogLevel::error) {
      tag = "ERROR";
      ansi = "\x1b[31m";
    }
    if (color)
      std::cerr << ansi << tag << "\x1b[0m " << message << '\n';
    else
      std::cerr << tag << ' ' << message << '\n';
  };
}

struct Options {
  std::vector<std::string> inputs;
  std::string out;
  double z_threshold = 3.0;
  double iqr_multiplier = 1.5;
  std::size_t k = 3;
  std::uint64_t seed = 42;
  std::size_t top_terms = 10;
  std::string cluster_space = "pca2d";
  std::string bucket_key = "created";
  std::string duplicate_column;
  std::string duplicate_literal = "Duplicate";
  std::string schema;
  bool dump = false;
  bool quiet = false;
};

void add_common(CLI::App& cmd, Options& o) {
  cmd.add_option("--input", o.inputs, "Project CSV as <name>=<path>; repeatable")->required();
  cmd.add_option("--duplicate-column", o.duplicate_column,
                 "Column holding the duplicate marker (default: the resolution column)");
  cmd.add_option("--duplicate-literal", o.duplicate_literal,
                 "Marker value counted as duplicate, case-insensitive; empty counts any non-empty marker")
      ->capture_default_str();
  cmd.add_option("--schema", o.schema, "key=value file mapping logical fields to CSV column names");
  cmd.add_flag("-q,--quiet", o.quiet, "Only print warnings and errors");
}

longtail::PipelineConfig to_config(const Options& o) {
  longtail::PipelineConfig cfg;
  for (const auto& spec : o.inputs) cfg.inputs.push_back(longtail::parse_project_input(spec));
  cfg.out_dir = o.out;
  cfg.anomaly.z_threshold = o.z_threshold;
  cfg.anomaly.iqr_multiplier = o.iqr_multiplier;
  cfg.kmeans.k = o.k;
  cfg.kmeans.seed = o.seed;
  cfg.top_terms = o.top_terms;
  cfg.cluster_space = o.cluster_space == "tfidf" ? longtail::ClusterSpace::tfidf : longtail::ClusterSpace::pca2d;
  cfg.bucket_key = o.bucket_key == "resolved" ? longtail::BucketKey::resolved : longtail::BucketKey::created;
  if (!o.schema.empty()) cfg.schema = longtail::SchemaConfig::from_file(o.schema);
  if (!o.duplicate_column.empty()) cfg.schema.duplicate_column = o.duplicate_column;
  cfg.duplicates.literal = o.duplicate_literal;
  cfg.dump_intermediates = o.dump;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detect and explain anomalously long bug-resolution times"};
  app.set_config("--config", "", "TOML/INI file with option defaults; command-line flags take precedence");
  app.require_subcommand(1);

  Options opts;
  auto* analyze = app.add_subcommand("analyze", "Run the full anomaly and clustering pipeline");
  add_common(*analyze, opts);
  analyze->add_option("--out", opts.out, "Output directory")->required();
  analyze->add_option("--z-threshold", opts.z_threshold, "Flag |z| strictly above this")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  analyze->add_option("--iqr-multiplier", opts.iqr_multiplier, "Tukey fence multiplier")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  analyze->add_option("--k", opts.k, "Number of clusters")->capture_default_str()->check(CLI::PositiveNumber);
  analyze->add_option("--seed", opts.seed, "KMeans seed")->capture_default_str();
  analyze->add_option("--top-terms", opts.top_terms, "Keywords reported per cluster")->capture_default_str();
  analyze->add_option("--cluster-space", opts.cluster_space, "Space clustered by KMeans")
      ->capture_default_str()
      ->check(CLI::IsMember({"pca2d", "tfidf"}));
  analyze->add_option("--bucket-key", opts.bucket_key, "Timestamp used for monthly counts")
      ->capture_default_str()
      ->check(CLI::IsMember({"created", "resolved"}));
  analyze->add_flag("--dump-intermediates", opts.dump, "Also write embedding.csv and tfidf.json");

  auto* summary = app.add_subcommand("summary-only", "Print the per-project duplicate summary table");
  add_common(*summary, opts);
  summary->add_option("--out", opts.out, "Also write <out>/report.md");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  const auto log = make_logger(opts.quiet);
  try {
    const auto cfg = to_config(opts);
    if (*summary) {
      const auto result = longtail::run_summary(cfg, log);
      std::cout << result.markdown;
      return result.exit_code;
    }
    const auto result = longtail::run_pipeline(cfg, log);
    return result.exit_code;
  } catch (const longtail::ConfigError& e) {
    log(longtail::LogLevel::error, e.what());
    return 1;
  } catch (const longtail::InputError& e) {
    // schema file problems surface here
    log(longtail::LogLevel::error, e.what());
    return 1;
  } catch (const std::exception& e) {
    log(longtail::LogLevel::error, e.what());
    return 1;
  }
}

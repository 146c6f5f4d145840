#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "longtail/ingest.hpp"
#include "longtail/timestamp.hpp"

namespace longtail {

struct AnomalyConfig {
  double z_threshold = 3.0;     // flag when |z| > z_threshold
  double iqr_multiplier = 1.5;  // flag outside [q1 - m*iqr, q3 + m*iqr]

  /// Throws AnalysisError unless both values are finite and strictly positive.
  void validate() const;
};

/// Location and spread of a sample of resolution times (days).
/// `stddev` is the population standard deviation; quartiles are type-7
/// (linear interpolation at position p*(n-1) of the sorted sample).
struct DistributionStats {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double iqr = 0.0;

  double lower_fence(double multiplier) const { return q1 - multiplier * iqr; }
  double upper_fence(double multiplier) const { return q3 + multiplier * iqr; }
};

/// Type-7 quantile of an already sorted, non-empty sample.
double quantile_sorted(std::span<const double> sorted, double p);

/// Throws AnalysisError("no resolved bugs") on empty input.
DistributionStats distribution_stats(std::span<const double> durations);

struct ZScore {
  double score = 0.0;
  bool flagged = false;
};

/// z = (x - mean) / std, flagged when |z| > threshold. A zero std gives
/// z = 0 everywhere and no flags.
std::vector<ZScore> zscore_flags(std::span<const double> durations, const DistributionStats& stats,
                                 double threshold);

/// Flagged when strictly outside the Tukey fences.
std::vector<bool> iqr_flags(std::span<const double> durations, const DistributionStats& stats,
                            double multiplier);

struct AnomalyEntry {
  std::string bug_id;
  double resolution_days = 0.0;
  double z_score = 0.0;
  bool z_flag = false;
  bool iqr_flag = false;
  bool is_anomaly = false;  // z_flag || iqr_flag
};

/// Per-bug detector output, row-aligned with the records it was computed from.
struct AnomalySet {
  DistributionStats stats;
  AnomalyConfig config;
  std::vector<AnomalyEntry> entries;

  std::size_t anomaly_count() const;
  std::size_t z_count() const;
  std::size_t iqr_count() const;
  /// Positions (into `entries`) of the anomalous bugs, ascending.
  std::vector<std::size_t> anomaly_indices() const;
};

/// Runs both detectors over the records and takes their union.
AnomalySet detect_anomalies(std::span<const ResolutionRecord> records, const AnomalyConfig& config = {});

enum class BucketKey { created, resolved };

struct MonthlyCount {
  YearMonth month;
  std::size_t count = 0;

  bool operator==(const MonthlyCount&) const = default;
};

/// Contiguous months from the first to the last anomalous bucket, zero-filled.
using MonthlyCounts = std::vector<MonthlyCount>;

/// Buckets the anomalous bugs by the UTC month of `key`. `records` must be
/// the row-aligned input of `anomalies`.
MonthlyCounts monthly_counts(std::span<const ResolutionRecord> records, const AnomalySet& anomalies,
                             BucketKey key = BucketKey::created);

}  // namespace longtail

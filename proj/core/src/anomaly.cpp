#include "longtail/anomaly.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "longtail/error.hpp"

namespace longtail {

void AnomalyConfig::validate() const {
  if (!(std::isfinite(z_threshold) && z_threshold > 0.0))
    throw AnalysisError(fmt::format("z threshold must be positive, got {}", z_threshold));
  if (!(std::isfinite(iqr_multiplier) && iqr_multiplier > 0.0))
    throw AnalysisError(fmt::format("IQR multiplier must be positive, got {}", iqr_multiplier));
}

double quantile_sorted(std::span<const double> sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

DistributionStats distribution_stats(std::span<const double> durations) {
  if (durations.empty()) throw AnalysisError("no resolved bugs");

  DistributionStats s;
  s.count = durations.size();
  const double n = static_cast<double>(durations.size());

  double sum = 0.0;
  for (double x : durations) sum += x;
  s.mean = sum / n;
  double ss = 0.0;
  for (double x : durations) ss += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(ss / n);

  std::vector<double> sorted(durations.begin(), durations.end());
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q3 = quantile_sorted(sorted, 0.75);
  s.iqr = s.q3 - s.q1;
  return s;
}

std::vector<ZScore> zscore_flags(std::span<const double> durations, const DistributionStats& stats,
                                 double threshold) {
  std::vector<ZScore> out(durations.size());
  if (stats.stddev <= 0.0) return out;
  for (std::size_t i = 0; i < durations.size(); ++i) {
    const double z = (durations[i] - stats.mean) / stats.stddev;
    out[i] = {z, std::abs(z) > threshold};
  }
  return out;
}

std::vector<bool> iqr_flags(std::span<const double> durations, const DistributionStats& stats,
                            double multiplier) {
  const double lo = stats.lower_fence(multiplier);
  const double hi = stats.upper_fence(multiplier);
  std::vector<bool> out(durations.size());
  for (std::size_t i = 0; i < durations.size(); ++i) out[i] = durations[i] < lo || durations[i] > hi;
  return out;
}

std::size_t AnomalySet::anomaly_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const AnomalyEntry& e) { return e.is_anomaly; }));
}

std::size_t AnomalySet::z_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const AnomalyEntry& e) { return e.z_flag; }));
}

std::size_t AnomalySet::iqr_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const AnomalyEntry& e) { return e.iqr_flag; }));
}

std::vector<std::size_t> AnomalySet::anomaly_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].is_anomaly) out.push_back(i);
  }
  return out;
}

AnomalySet detect_anomalies(std::span<const ResolutionRecord> records, const AnomalyConfig& config) {
  config.validate();
  std::vector<double> durations;
  durations.reserve(records.size());
  for (const auto& r : records) durations.push_back(r.resolution_days);

  AnomalySet set;
  set.config = config;
  set.stats = distribution_stats(durations);
  const auto z = zscore_flags(durations, set.stats, config.z_threshold);
  const auto iqr = iqr_flags(durations, set.stats, config.iqr_multiplier);

  set.entries.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    set.entries.push_back({records[i].bug_id, durations[i], z[i].score, z[i].flagged, iqr[i],
                           z[i].flagged || iqr[i]});
  }
  return set;
}

MonthlyCounts monthly_counts(std::span<const ResolutionRecord> records, const AnomalySet& anomalies,
                             BucketKey key) {
  if (records.size() != anomalies.entries.size())
    throw AnalysisError("monthly_counts: records and anomaly set are not row-aligned");

  std::map<YearMonth, std::size_t> buckets;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!anomalies.entries[i].is_anomaly) continue;
    const auto ts = key == BucketKey::created ? records[i].created : records[i].resolved;
    ++buckets[YearMonth::of(ts)];
  }

  MonthlyCounts out;
  if (buckets.empty()) return out;
  const auto last = buckets.rbegin()->first;
  for (auto m = buckets.begin()->first; m <= last; m = m.next()) {
    const auto it = buckets.find(m);
    out.push_back({m, it == buckets.end() ? 0 : it->second});
  }
  return out;
}

}  // namespace longtail

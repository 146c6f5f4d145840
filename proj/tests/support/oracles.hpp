#pragma once

// Reference implementations used only by tests. Each one evaluates the
// textbook definition directly and shares no code with the library path it
// checks.

#include <cstddef>
#include <string>
#include <vector>

namespace longtail::testing {

/// Type-7 quantile straight from the definition (sorts its own copy).
double oracle_quantile(std::vector<double> sample, double p);

/// |x - mean| / population std > threshold; std == 0 flags nothing.
std::vector<bool> oracle_z_flags(const std::vector<double>& sample, double threshold);

/// Strictly outside [q1 - m*iqr, q3 + m*iqr].
std::vector<bool> oracle_iqr_flags(const std::vector<double>& sample, double multiplier);

struct DenseTfidf {
  std::vector<std::string> terms;
  std::vector<std::vector<double>> rows;
};

/// tf * (ln((1+N)/(1+df)) + 1), L2-normalised per non-empty row, computed by
/// counting with linear scans over the raw token lists.
DenseTfidf oracle_tfidf(const std::vector<std::vector<std::string>>& corpus);

/// Eigenvalues (descending) of the centred covariance (denominator n - 1)
/// of a dense row-major n x d matrix, via Eigen's self-adjoint solver.
std::vector<double> oracle_covariance_eigenvalues(const std::vector<double>& data, std::size_t n, std::size_t d);

/// Sum of per-column variances (denominator n - 1).
double oracle_total_variance(const std::vector<double>& data, std::size_t n, std::size_t d);

/// Minimum within-cluster sum of squares over every labelling of the points
/// with k labels (k^n enumeration).
double brute_force_kmeans_optimum(const std::vector<std::vector<double>>& points, std::size_t k);

/// Element counts of a parsed SVG document.
struct SvgCounts {
  bool well_formed = false;
  std::size_t points = 0;          // elements whose class list contains "point"
  std::size_t anomaly_points = 0;  // ... and "anomaly"
  std::size_t bars = 0;            // class "bar"
  std::size_t legend_entries = 0;  // class "legend-entry"
  std::size_t no_data = 0;         // class "no-data"
  std::vector<double> bar_heights;
  std::vector<std::string> fills;  // fill of each point
  std::string error;
};

/// Parses with an XML parser and counts classed elements.
SvgCounts inspect_svg(const std::string& svg);

}  // namespace longtail::testing

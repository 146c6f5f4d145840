#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "longtail/reduce.hpp"
#include "longtail/textvec.hpp"

namespace longtail {

struct KMeansConfig {
  std::size_t k = 3;
  std::uint64_t seed = 42;
  std::size_t max_iters = 300;
  double tol = 1e-6;  // stop once no centroid coordinate moves by tol or more
  std::size_t n_restarts = 10;

  void validate() const;
};

/// Dense row-major point set.
struct PointMatrix {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> data;

  PointMatrix() = default;
  PointMatrix(std::size_t rows, std::size_t cols) : n(rows), dim(cols), data(rows * cols, 0.0) {}

  std::span<const double> row(std::size_t i) const { return {data.data() + i * dim, dim}; }
  std::span<double> row(std::size_t i) { return {data.data() + i * dim, dim}; }

  static PointMatrix from(const Embedding2D& embedding);
  static PointMatrix from(const DocTermMatrix& matrix);
  static PointMatrix from_rows(const std::vector<std::vector<double>>& rows);
};

double squared_distance(std::span<const double> a, std::span<const double> b);

struct Clustering {
  std::size_t k = 0;
  std::vector<std::size_t> assignments;         // per point, in [0, k)
  std::vector<std::vector<double>> centroids;   // k points
  double inertia = 0.0;                          // sum of squared distances to the assigned centroid
  std::size_t iterations_run = 0;
  std::size_t restart = 0;                       // index of the restart that won

  std::vector<std::size_t> sizes() const;
};

/// Observer for Lloyd iterations: (restart, iteration, inertia of the
/// assignment made at that iteration). The last call of each restart
/// reports the final assignment.
using KMeansTrace = std::function<void(std::size_t restart, std::size_t iteration, double inertia)>;

/// Lloyd's algorithm with k-means++ seeding, best of `n_restarts` runs
/// (restart r seeds its generator with seed + r). Points are processed in
/// lexicographic value order, so results do not depend on input order.
/// Ties in nearest-centroid assignment go to the lowest centroid index; an
/// empty cluster is re-seeded with the point farthest from its centroid.
/// Throws AnalysisError("k exceeds corpus size") when there are fewer
/// points than k.
Clustering kmeans(const PointMatrix& points, const KMeansConfig& config, const KMeansTrace& trace = {});

/// Sum of squared distances of each point to its assigned centroid.
double clustering_inertia(const PointMatrix& points, const Clustering& clustering);

struct ClusterTheme {
  std::size_t cluster_index = 0;
  std::size_t size = 0;
  std::vector<std::pair<std::string, double>> top_terms;  // (term, mean TF-IDF weight)
};

/// Top `m` terms of each cluster ranked by the mean TF-IDF weight over its
/// member documents (descending, ties in term order). Terms with zero mean
/// are never listed. Empty clusters get an empty list.
std::vector<ClusterTheme> cluster_top_terms(const DocTermMatrix& matrix, const Clustering& clustering,
                                            std::size_t m = 10);

}  // namespace longtail

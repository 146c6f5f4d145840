#include "longtail/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "longtail/error.hpp"

namespace longtail {
namespace {

// Uniform in [0, 1) from the top 53 bits; identical on every platform.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct RunResult {
  std::vector<std::size_t> assignments;
  std::vector<double> centroids;  // k * dim
  double inertia = 0.0;
  std::size_t iterations = 0;
};

class Lloyd {
 public:
  Lloyd(const PointMatrix& points, const KMeansConfig& config) : p_(points), cfg_(config) {}

  RunResult run(std::size_t restart, const KMeansTrace& trace) {
    std::mt19937_64 rng(cfg_.seed + restart);
    RunResult r;
    r.centroids = seed(rng);
    r.assignments.assign(p_.n, 0);
    std::vector<double> dist(p_.n, 0.0);

    const auto k = cfg_.k;
    const auto dim = p_.dim;
    std::vector<double> next(k * dim);
    std::vector<std::size_t> counts(k);
    for (r.iterations = 1; r.iterations <= cfg_.max_iters; ++r.iterations) {
      const double inertia = assign(r.centroids, r.assignments, dist);
      if (trace) trace(restart, r.iterations, inertia);

      std::fill(next.begin(), next.end(), 0.0);
      std::fill(counts.begin(), counts.end(), 0);
      for (std::size_t i = 0; i < p_.n; ++i) {
        const auto c = r.assignments[i];
        ++counts[c];
        const auto row = p_.row(i);
        for (std::size_t d = 0; d < dim; ++d) next[c * dim + d] += row[d];
      }
      for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) continue;
        for (std::size_t d = 0; d < dim; ++d) next[c * dim + d] /= static_cast<double>(counts[c]);
      }
      for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] != 0) continue;
        std::size_t far = 0;
        for (std::size_t i = 1; i < p_.n; ++i) {
          if (dist[i] > dist[far]) far = i;
        }
        dist[far] = -1.0;
        const auto row = p_.row(far);
        std::copy(row.begin(), row.end(), next.begin() + static_cast<std::ptrdiff_t>(c * dim));
      }

      double shift = 0.0;
      for (std::size_t i = 0; i < next.size(); ++i) shift = std::max(shift, std::abs(next[i] - r.centroids[i]));
      r.centroids.swap(next);
      if (shift < cfg_.tol) break;
    }
    r.iterations = std::min(r.iterations, cfg_.max_iters);
    r.inertia = assign(r.centroids, r.assignments, dist);
    if (trace) trace(restart, r.iterations + 1, r.inertia);
    return r;
  }

 private:
  std::span<const double> centroid(const std::vector<double>& c, std::size_t j) const {
    return {c.data() + j * p_.dim, p_.dim};
  }

  double assign(const std::vector<double>& centroids, std::vector<std::size_t>& assignments,
                std::vector<double>& dist) const {
    double inertia = 0.0;
    for (std::size_t i = 0; i < p_.n; ++i) {
      std::size_t best = 0;
      double best_d = squared_distance(p_.row(i), centroid(centroids, 0));
      for (std::size_t c = 1; c < cfg_.k; ++c) {
        const double d = squared_distance(p_.row(i), centroid(centroids, c));
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      assignments[i] = best;
      dist[i] = best_d;
      inertia += best_d;
    }
    return inertia;
  }

  // k-means++: first seed uniform, later seeds with probability proportional
  // to the squared distance from the nearest chosen seed.
  std::vector<double> seed(std::mt19937_64& rng) const {
    const auto n = p_.n;
    const auto dim = p_.dim;
    std::vector<double> centroids;
    centroids.reserve(cfg_.k * dim);
    std::vector<bool> chosen(n, false);
    auto take = [&](std::size_t i) {
      chosen[i] = true;
      const auto row = p_.row(i);
      centroids.insert(centroids.end(), row.begin(), row.end());
    };

    take(std::min(static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)), n - 1));
    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(p_.row(i), centroid(centroids, 0));

    for (std::size_t c = 1; c < cfg_.k; ++c) {
      double total = 0.0;
      for (double d : d2) total += d;
      std::size_t pick = n;
      const double target = uniform01(rng) * total;
      if (total > 0.0) {
        double cum = 0.0;
        std::size_t last_positive = n;
        for (std::size_t i = 0; i < n; ++i) {
          if (d2[i] <= 0.0) continue;
          last_positive = i;
          cum += d2[i];
          if (cum > target) {
            pick = i;
            break;
          }
        }
        if (pick == n) pick = last_positive;
      } else {
        for (std::size_t i = 0; i < n && pick == n; ++i) {
          if (!chosen[i]) pick = i;
        }
      }
      take(pick);
      const auto added = centroid(centroids, c);
      for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], squared_distance(p_.row(i), added));
    }
    return centroids;
  }

  const PointMatrix& p_;
  const KMeansConfig& cfg_;
};

}  // namespace

void KMeansConfig::validate() const {
  if (k < 1) throw AnalysisError("k must be at least 1");
  if (max_iters < 1) throw AnalysisError("max_iters must be at least 1");
  if (n_restarts < 1) throw AnalysisError("n_restarts must be at least 1");
  if (!(tol >= 0.0)) throw AnalysisError("tol must be non-negative");
}

PointMatrix PointMatrix::from(const Embedding2D& embedding) {
  PointMatrix m(embedding.size(), 2);
  for (std::size_t i = 0; i < embedding.size(); ++i) {
    m.data[2 * i] = embedding[i].x;
    m.data[2 * i + 1] = embedding[i].y;
  }
  return m;
}

PointMatrix PointMatrix::from(const DocTermMatrix& matrix) {
  PointMatrix m(matrix.n_docs, matrix.n_terms());
  m.data = matrix.dense();
  return m;
}

PointMatrix PointMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  PointMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.dim) throw AnalysisError("ragged point rows");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

std::vector<std::size_t> Clustering::sizes() const {
  std::vector<std::size_t> out(k, 0);
  for (auto a : assignments) ++out[a];
  return out;
}

Clustering kmeans(const PointMatrix& points, const KMeansConfig& config, const KMeansTrace& trace) {
  config.validate();
  if (points.n < config.k)
    throw AnalysisError(fmt::format("k exceeds corpus size ({} points, k = {})", points.n, config.k));

  // Lexicographic value order makes seeding and summation independent of
  // the caller's row order.
  std::vector<std::size_t> order(points.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ra = points.row(a);
    const auto rb = points.row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  });
  PointMatrix sorted(points.n, points.dim);
  for (std::size_t i = 0; i < points.n; ++i) {
    const auto src = points.row(order[i]);
    std::copy(src.begin(), src.end(), sorted.row(i).begin());
  }

  Lloyd lloyd(sorted, config);
  RunResult best;
  std::size_t best_restart = 0;
  for (std::size_t r = 0; r < config.n_restarts; ++r) {
    auto run = lloyd.run(r, trace);
    if (r == 0 || run.inertia < best.inertia) {
      best = std::move(run);
      best_restart = r;
    }
  }

  Clustering out;
  out.k = config.k;
  out.inertia = best.inertia;
  out.iterations_run = best.iterations;
  out.restart = best_restart;
  out.assignments.resize(points.n);
  for (std::size_t i = 0; i < points.n; ++i) out.assignments[order[i]] = best.assignments[i];
  for (std::size_t c = 0; c < config.k; ++c) {
    out.centroids.emplace_back(best.centroids.begin() + static_cast<std::ptrdiff_t>(c * points.dim),
                               best.centroids.begin() + static_cast<std::ptrdiff_t>((c + 1) * points.dim));
  }
  return out;
}

double clustering_inertia(const PointMatrix& points, const Clustering& clustering) {
  double s = 0.0;
  for (std::size_t i = 0; i < points.n; ++i)
    s += squared_distance(points.row(i), clustering.centroids[clustering.assignments[i]]);
  return s;
}

std::vector<ClusterTheme> cluster_top_terms(const DocTermMatrix& matrix, const Clustering& clustering,
                                            std::size_t m) {
  if (clustering.assignments.size() != matrix.n_docs)
    throw AnalysisError("clustering is not row-aligned with the document-term matrix");

  const auto d = matrix.n_terms();
  std::vector<std::vector<double>> sums(clustering.k, std::vector<double>(d, 0.0));
  std::vector<std::size_t> sizes(clustering.k, 0);
  for (std::size_t i = 0; i < matrix.n_docs; ++i) {
    const auto c = clustering.assignments[i];
    ++sizes[c];
    for (const auto& e : matrix.rows[i]) sums[c][e.column] += e.weight;
  }

  std::vector<ClusterTheme> themes;
  for (std::size_t c = 0; c < clustering.k; ++c) {
    ClusterTheme theme{c, sizes[c], {}};
    if (sizes[c] > 0 && m > 0) {
      std::vector<std::pair<double, std::size_t>> ranked;
      for (std::size_t t = 0; t < d; ++t) {
        if (sums[c][t] > 0.0) ranked.emplace_back(sums[c][t] / static_cast<double>(sizes[c]), t);
      }
      const auto keep = std::min(m, ranked.size());
      std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end(),
                        [](const auto& a, const auto& b) {
                          return a.first != b.first ? a.first > b.first : a.second < b.second;
                        });
      for (std::size_t i = 0; i < keep; ++i)
        theme.top_terms.emplace_back(matrix.vocabulary.terms[ranked[i].second], ranked[i].first);
    }
    themes.push_back(std::move(theme));
  }
  return themes;
}

}  // namespace longtail

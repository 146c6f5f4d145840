#include "longtail/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "longtail/error.hpp"

namespace longtail {
namespace {

constexpr int kMaxSweeps = 100;
constexpr double kJacobiTolerance = 1e-12;

void sort_descending(SymmetricEigen& e) {
  const auto n = e.n;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return e.values[a] > e.values[b]; });
  std::vector<double> values(n), vectors(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    values[j] = e.values[order[j]];
    for (std::size_t i = 0; i < n; ++i) vectors[i * n + j] = e.vectors[i * n + order[j]];
  }
  e.values = std::move(values);
  e.vectors = std::move(vectors);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double sparse_dot(const SparseRow& row, std::span<const double> v) {
  double s = 0.0;
  for (const auto& e : row) s += e.weight * v[e.column];
  return s;
}

void fix_sign(std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  if (v[best] < 0.0) {
    for (auto& x : v) x = -x;
  }
}

// Gram-Schmidt of the unit vectors e_0, e_1, ... against `basis`; appends
// the first direction with a substantial orthogonal residual.
std::vector<double> orthogonal_completion(const std::vector<std::vector<double>>& basis, std::size_t dim) {
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<double> v(dim, 0.0);
    v[k] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const double p = dot(v, b);
        for (std::size_t i = 0; i < dim; ++i) v[i] -= p * b[i];
      }
    }
    const double norm = std::sqrt(dot(v, v));
    if (norm > 0.5) {
      for (auto& x : v) x /= norm;
      return v;
    }
  }
  throw AnalysisError("cannot complete orthonormal basis");
}

}  // namespace

SymmetricEigen jacobi_eigen(std::span<const double> input, std::size_t n) {
  if (input.size() != n * n) throw AnalysisError("jacobi_eigen: matrix is not n x n");
  std::vector<double> a(input.begin(), input.end());
  SymmetricEigen e;
  e.n = n;
  e.vectors.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e.vectors[i * n + i] = 1.0;

  double frob = 0.0;
  for (double x : a) frob += x * x;
  const double stop = kJacobiTolerance * std::max(1.0, std::sqrt(frob));

  auto& v = e.vectors;
  for (; e.sweeps < kMaxSweeps; ++e.sweeps) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off += a[i * n + j] * a[i * n + j];
    if (std::sqrt(off) < stop) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }
  e.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) e.values[i] = a[i * n + i];
  sort_descending(e);
  return e;
}

SymmetricEigen symmetric_eigen(std::span<const double> a, std::size_t n) {
  if (n <= kJacobiMaxDim) return jacobi_eigen(a, n);
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> m(a.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(m), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw AnalysisError("eigen-decomposition did not converge");
  SymmetricEigen e;
  e.n = n;
  e.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  e.vectors.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      e.vectors[i * n + j] = solver.eigenvectors()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  sort_descending(e);
  return e;
}

PcaModel pca_fit(std::span<const SparseRow> rows, std::size_t n_terms, std::size_t n_components) {
  const std::size_t n = rows.size();
  const std::size_t d = n_terms;
  if (n < 2) throw AnalysisError("insufficient documents");
  if (n_components == 0 || n_components > std::min(n, d))
    throw AnalysisError(fmt::format("cannot extract {} components from a {}x{} matrix", n_components, n, d));

  PcaModel model;
  model.n_terms = d;
  model.mean.assign(d, 0.0);
  for (const auto& row : rows)
    for (const auto& e : row) model.mean[e.column] += e.weight;
  for (auto& m : model.mean) m /= static_cast<double>(n);
  const auto& mu = model.mean;
  const double denom = static_cast<double>(n - 1);

  model.used_gram = d > n;
  std::vector<std::vector<double>> comps;
  std::vector<double> variances;
  if (!model.used_gram) {
    // C = (X^T X - n mu mu^T) / (n - 1)
    std::vector<double> cov(d * d, 0.0);
    for (const auto& row : rows)
      for (const auto& a : row)
        for (const auto& b : row) cov[a.column * d + b.column] += a.weight * b.weight;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        cov[i * d + j] = (cov[i * d + j] - static_cast<double>(n) * mu[i] * mu[j]) / denom;
    const auto eig = symmetric_eigen(cov, d);
    for (std::size_t j = 0; j < n_components; ++j) {
      std::vector<double> v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = eig.vectors[i * d + j];
      comps.push_back(std::move(v));
      variances.push_back(eig.values[j]);
    }
  } else {
    // G = Xc Xc^T / (n - 1), Xc = X - 1 mu^T
    std::vector<double> row_mu(n);
    for (std::size_t i = 0; i < n; ++i) row_mu[i] = sparse_dot(rows[i], mu);
    const double mu_mu = dot(mu, mu);
    std::vector<double> dense_i(d, 0.0);
    std::vector<double> gram(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& e : rows[i]) dense_i[e.column] = e.weight;
      for (std::size_t j = i; j < n; ++j) {
        const double g = (sparse_dot(rows[j], dense_i) - row_mu[i] - row_mu[j] + mu_mu) / denom;
        gram[i * n + j] = g;
        gram[j * n + i] = g;
      }
      for (const auto& e : rows[i]) dense_i[e.column] = 0.0;
    }
    const auto eig = symmetric_eigen(gram, n);
    const double scale_floor = 1e-12 * std::max(1.0, eig.values.empty() ? 0.0 : eig.values.front());
    for (std::size_t j = 0; j < n_components; ++j) {
      const double lambda = eig.values[j];
      if (lambda <= scale_floor) break;
      // v = Xc^T u, normalised
      std::vector<double> v(d, 0.0);
      double u_sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double ui = eig.vectors[i * n + j];
        u_sum += ui;
        for (const auto& e : rows[i]) v[e.column] += ui * e.weight;
      }
      for (std::size_t k = 0; k < d; ++k) v[k] -= u_sum * mu[k];
      const double norm = std::sqrt(dot(v, v));
      for (auto& x : v) x /= norm;
      comps.push_back(std::move(v));
      variances.push_back(lambda);
    }
  }

  // Variance below the numerical floor counts as a missing direction.
  const double variance_floor = 1e-12 * std::max(1.0, variances.empty() ? 0.0 : variances.front());
  model.rank = 0;
  for (std::size_t j = 0; j < variances.size(); ++j) {
    if (variances[j] > variance_floor) {
      ++model.rank;
    } else {
      variances[j] = 0.0;
    }
  }
  while (comps.size() < n_components) {
    comps.push_back(orthogonal_completion(comps, d));
    variances.push_back(0.0);
  }
  if (model.rank < n_components) {
    model.warnings.push_back(fmt::format("centred data has rank {} < {} components; {} direction(s) "
                                         "completed with zero variance",
                                         model.rank, n_components, n_components - model.rank));
  }
  for (auto& c : comps) fix_sign(c);
  model.components = std::move(comps);
  model.explained_variance = std::move(variances);
  return model;
}

PcaModel pca_fit(const DocTermMatrix& matrix, std::size_t n_components) {
  return pca_fit(matrix.rows, matrix.n_terms(), n_components);
}

PcaModel pca_fit_dense(std::span<const double> data, std::size_t n_rows, std::size_t n_cols,
                       std::size_t n_components) {
  if (data.size() != n_rows * n_cols) throw AnalysisError("pca_fit_dense: data size mismatch");
  std::vector<SparseRow> rows(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i)
    for (std::size_t j = 0; j < n_cols; ++j)
      if (data[i * n_cols + j] != 0.0) rows[i].push_back({static_cast<std::uint32_t>(j), data[i * n_cols + j]});
  return pca_fit(rows, n_cols, n_components);
}

std::vector<std::vector<double>> pca_project(const PcaModel& model, std::span<const SparseRow> rows) {
  std::vector<double> offsets;
  for (const auto& c : model.components) offsets.push_back(dot(model.mean, c));
  std::vector<std::vector<double>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    for (const auto& e : row) {
      if (e.column >= model.n_terms) throw AnalysisError("pca_project: column outside the model's term space");
    }
    std::vector<double> coords(model.components.size());
    for (std::size_t j = 0; j < coords.size(); ++j) coords[j] = sparse_dot(row, model.components[j]) - offsets[j];
    out.push_back(std::move(coords));
  }
  return out;
}

Embedding2D pca_transform(const PcaModel& model, const DocTermMatrix& matrix) {
  if (matrix.n_terms() != model.n_terms)
    throw AnalysisError(fmt::format("term space mismatch: model has {} terms, matrix has {}", model.n_terms,
                                    matrix.n_terms()));
  if (model.components.size() < 2) throw AnalysisError("model has fewer than two components");
  const auto coords = pca_project(model, matrix.rows);
  Embedding2D out;
  out.reserve(coords.size());
  for (const auto& c : coords) out.push_back({c[0], c[1]});
  return out;
}

}  // namespace longtail

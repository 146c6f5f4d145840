#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "longtail/textvec.hpp"

namespace longtail {

/// Eigen-decomposition of a dense symmetric matrix.
struct SymmetricEigen {
  std::size_t n = 0;
  std::vector<double> values;   // descending
  std::vector<double> vectors;  // column j (vectors[i * n + j]) pairs with values[j]
  int sweeps = 0;               // Jacobi sweeps used (0 for the tridiagonal path)
};

/// Cyclic Jacobi rotations on a row-major n x n symmetric matrix. Stops when
/// the off-diagonal Frobenius norm drops below 1e-12 * max(1, ||A||_F) or
/// after 100 sweeps.
SymmetricEigen jacobi_eigen(std::span<const double> a, std::size_t n);

/// Dimensions above which symmetric_eigen switches from Jacobi to Householder
/// tridiagonalisation with implicit QL.
inline constexpr std::size_t kJacobiMaxDim = 256;

SymmetricEigen symmetric_eigen(std::span<const double> a, std::size_t n);

struct PcaModel {
  std::size_t n_terms = 0;
  std::vector<double> mean;                     // per column
  std::vector<std::vector<double>> components;  // orthonormal, each of length n_terms
  std::vector<double> explained_variance;       // descending, >= 0, denominator n - 1
  std::size_t rank = 0;                         // components with non-zero variance
  bool used_gram = false;                       // fitted through the n_docs x n_docs Gram matrix
  std::vector<std::string> warnings;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Row-aligned 2-D coordinates of a DocTermMatrix.
using Embedding2D = std::vector<Point2>;

/// Mean-centres the rows and extracts the leading principal directions.
/// The covariance matrix is decomposed when n_terms <= n_docs, otherwise the
/// Gram matrix of the centred rows is decomposed and mapped back. Each
/// component's largest-magnitude coordinate is made positive.
///
/// Throws AnalysisError("insufficient documents") when n_docs < 2 and when
/// n_components exceeds min(n_docs, n_terms). If the centred data has rank
/// below n_components the missing directions are filled from the orthogonal
/// complement with zero variance and a warning is recorded.
PcaModel pca_fit(const DocTermMatrix& matrix, std::size_t n_components = 2);
PcaModel pca_fit(std::span<const SparseRow> rows, std::size_t n_terms, std::size_t n_components = 2);
/// Dense row-major input, n_rows x n_cols.
PcaModel pca_fit_dense(std::span<const double> data, std::size_t n_rows, std::size_t n_cols,
                       std::size_t n_components = 2);

/// Coordinates of each centred row on every component.
std::vector<std::vector<double>> pca_project(const PcaModel& model, std::span<const SparseRow> rows);

/// Throws AnalysisError on a term-space mismatch or a model with fewer than
/// two components.
Embedding2D pca_transform(const PcaModel& model, const DocTermMatrix& matrix);

}  // namespace longtail

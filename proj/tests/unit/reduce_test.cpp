#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "longtail/error.hpp"
#include "longtail/reduce.hpp"
#include "oracles.hpp"
#include "synth.hpp"

using namespace longtail;

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

std::vector<double> random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t d, double zero_prob = 0.0) {
  std::vector<double> m(n * d);
  for (auto& x : m) x = testing::uniform01(rng) < zero_prob ? 0.0 : testing::uniform01(rng) * 2.0 - 1.0;
  return m;
}

void check_model(const PcaModel& model) {
  for (std::size_t a = 0; a < model.components.size(); ++a) {
    CHECK(std::abs(dot(model.components[a], model.components[a]) - 1.0) <= 1e-8);
    for (std::size_t b = a + 1; b < model.components.size(); ++b)
      CHECK(std::abs(dot(model.components[a], model.components[b])) <= 1e-8);
    if (a > 0) CHECK(model.explained_variance[a - 1] >= model.explained_variance[a]);
    CHECK(model.explained_variance[a] >= 0.0);
  }
}

}  // namespace

TEST_CASE("jacobi agrees with the reference solver") {
  std::mt19937_64 rng(1);
  for (std::size_t n : {1u, 2u, 3u, 5u, 9u}) {
    auto b = random_matrix(rng, n, n);
    std::vector<double> sym(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sym[i * n + j] = b[i * n + j] + b[j * n + i];
    const auto e = jacobi_eigen(sym, n);
    // A v = lambda v for every pair
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        double av = 0.0;
        for (std::size_t j = 0; j < n; ++j) av += sym[i * n + j] * e.vectors[j * n + k];
        CHECK(std::abs(av - e.values[k] * e.vectors[i * n + k]) <= 1e-10);
      }
    }
    CHECK(std::is_sorted(e.values.rbegin(), e.values.rend()));
    CHECK(e.sweeps < 100);
  }
  CHECK_THROWS_AS(jacobi_eigen(std::vector<double>{1, 2, 3}, 2), AnalysisError);
}

TEST_CASE("tridiagonal path agrees with Jacobi") {
  std::mt19937_64 rng(2);
  const std::size_t n = kJacobiMaxDim + 4;
  auto b = random_matrix(rng, n, n);
  std::vector<double> sym(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sym[i * n + j] = b[i * n + j] + b[j * n + i];
  const auto big = symmetric_eigen(sym, n);
  const auto jac = jacobi_eigen(sym, n);
  for (std::size_t k = 0; k < n; ++k) CHECK(big.values[k] == doctest::Approx(jac.values[k]).epsilon(1e-9));
}

TEST_CASE("PCA on random 6x4 matrices matches a direct covariance eigensolve") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto data = random_matrix(rng, 6, 4);
    const auto model = pca_fit_dense(data, 6, 4, 2);
    CHECK_FALSE(model.used_gram);
    check_model(model);
    const auto oracle = testing::oracle_covariance_eigenvalues(data, 6, 4);
    CHECK(std::abs(model.explained_variance[0] - oracle[0]) <= 1e-8);
    CHECK(std::abs(model.explained_variance[1] - oracle[1]) <= 1e-8);

    const auto all = pca_fit_dense(data, 6, 4, 4);
    const double sum = std::accumulate(all.explained_variance.begin(), all.explained_variance.end(), 0.0);
    CHECK(sum == doctest::Approx(testing::oracle_total_variance(data, 6, 4)).epsilon(1e-10));
  }
}

TEST_CASE("Gram path matches the covariance path") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5, d = 12;
    const auto data = random_matrix(rng, n, d, 0.5);
    const auto model = pca_fit_dense(data, n, d, 2);
    CHECK(model.used_gram);
    check_model(model);
    const auto oracle = testing::oracle_covariance_eigenvalues(data, n, d);
    CHECK(std::abs(model.explained_variance[0] - oracle[0]) <= 1e-8);
    CHECK(std::abs(model.explained_variance[1] - oracle[1]) <= 1e-8);
  }
}

TEST_CASE("transform: variance, centring, contraction") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 8 + testing::uniform_index(rng, 10), d = 3 + testing::uniform_index(rng, 20);
    const auto data = random_matrix(rng, n, d, 0.6);
    DocTermMatrix m;
    m.n_docs = n;
    for (std::size_t t = 0; t < d; ++t) m.vocabulary.terms.push_back("t" + std::to_string(t));
    m.rows.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (data[i * d + j] != 0.0) m.rows[i].push_back({static_cast<std::uint32_t>(j), data[i * d + j]});

    const auto model = pca_fit(m, 2);
    const auto emb = pca_transform(model, m);
    REQUIRE(emb.size() == n);
    double mx = 0, my = 0, vx = 0, vy = 0;
    for (const auto& p : emb) {
      mx += p.x;
      my += p.y;
      vx += p.x * p.x;
      vy += p.y * p.y;
    }
    CHECK(std::abs(mx / n) <= 1e-9);
    CHECK(std::abs(my / n) <= 1e-9);
    CHECK(std::abs(vx / (n - 1) - model.explained_variance[0]) <= 1e-8);
    CHECK(std::abs(vy / (n - 1) - model.explained_variance[1]) <= 1e-8);

    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        double full = 0.0;
        for (std::size_t j = 0; j < d; ++j) full += std::pow(data[a * d + j] - data[b * d + j], 2);
        const double flat = std::pow(emb[a].x - emb[b].x, 2) + std::pow(emb[a].y - emb[b].y, 2);
        CHECK(flat <= full + 1e-12);
      }
    }

    std::vector<SparseRow> mean_row(1);
    for (std::size_t j = 0; j < d; ++j)
      if (model.mean[j] != 0.0) mean_row[0].push_back({static_cast<std::uint32_t>(j), model.mean[j]});
    const auto origin = pca_project(model, mean_row);
    CHECK(std::abs(origin[0][0]) <= 1e-12);
    CHECK(std::abs(origin[0][1]) <= 1e-12);

    const auto again = pca_fit(m, 2);
    CHECK(again.components == model.components);
  }
}

TEST_CASE("rank-deficient input") {
  // points on a line through term space
  std::vector<double> line;
  for (int i = 0; i < 6; ++i) {
    line.push_back(1.0 * i);
    line.push_back(2.0 * i);
    line.push_back(-0.5 * i);
  }
  const auto model = pca_fit_dense(line, 6, 3, 2);
  CHECK(model.explained_variance[1] <= 1e-8);
  CHECK(model.rank == 1);
  CHECK_FALSE(model.warnings.empty());
  check_model(model);

  // same thing through the Gram path
  std::vector<double> wide(4 * 10, 0.0);
  for (int i = 0; i < 4; ++i) wide[i * 10 + 3] = static_cast<double>(i);
  const auto gm = pca_fit_dense(wide, 4, 10, 2);
  CHECK(gm.used_gram);
  CHECK(gm.rank == 1);
  CHECK(gm.explained_variance[1] == 0.0);
  check_model(gm);
  CHECK(gm.components[0][3] == doctest::Approx(1.0));
}

TEST_CASE("two documents sit symmetrically on the first axis") {
  const std::vector<double> two{1, 0, 0, 0, 1, 1};
  const auto model = pca_fit_dense(two, 2, 3, 2);
  std::vector<SparseRow> rows{{{0, 1.0}}, {{1, 1.0}, {2, 1.0}}};
  const auto p = pca_project(model, rows);
  CHECK(p[0][0] == doctest::Approx(-p[1][0]));
  CHECK(std::abs(p[0][1]) <= 1e-12);
  CHECK(model.explained_variance[1] == 0.0);
}

TEST_CASE("sign convention: largest-magnitude coordinate is positive") {
  std::mt19937_64 rng(6);
  const auto data = random_matrix(rng, 7, 5);
  for (const auto& c : pca_fit_dense(data, 7, 5, 3).components) {
    const auto it = std::max_element(c.begin(), c.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    CHECK(*it > 0.0);
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_WITH_AS(pca_fit_dense(std::vector<double>{1, 2}, 1, 2, 1), "insufficient documents", AnalysisError);
  CHECK_THROWS_AS(pca_fit_dense(std::vector<double>{1, 2, 3, 4}, 2, 2, 3), AnalysisError);
  CHECK_THROWS_AS(pca_fit_dense(std::vector<double>{1, 2, 3, 4}, 4, 1, 2), AnalysisError);

  const auto model = pca_fit_dense(std::vector<double>{1, 0, 0, 1, 1, 1}, 3, 2, 2);
  DocTermMatrix other;
  other.n_docs = 1;
  other.vocabulary.terms = {"a", "b", "c"};
  other.rows = {{{2, 1.0}}};
  CHECK_THROWS_AS(pca_transform(model, other), AnalysisError);
}

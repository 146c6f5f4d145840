#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "longtail/anomaly.hpp"
#include "longtail/cluster.hpp"
#include "longtail/reduce.hpp"
#include "longtail/textvec.hpp"

using namespace longtail;

namespace {

const std::vector<std::string> kWords{"flaky", "test",   "failure", "compaction", "repair", "tab",   "window",
                                      "abfs",  "token",  "header",  "s3a",        "update", "upgrade", "page",
                                      "layout", "crash", "leak",    "timeout",    "hint",   "gossip"};

std::vector<std::string> summaries(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> out(n);
  for (auto& s : out) {
    for (int w = 0; w < 7; ++w) s += kWords[rng() % kWords.size()] + (w % 3 ? " " : ", the ");
  }
  return out;
}

DocTermMatrix matrix(std::size_t n) {
  std::vector<TokenList> corpus;
  for (const auto& s : summaries(n, 1)) corpus.push_back(tokenize(s));
  return tfidf_matrix(corpus, build_vocabulary(corpus));
}

void BM_Tokenize(benchmark::State& state) {
  const auto docs = summaries(1000, 2);
  for (auto _ : state)
    for (const auto& d : docs) benchmark::DoNotOptimize(tokenize(d));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Tokenize);

void BM_Tfidf(benchmark::State& state) {
  std::vector<TokenList> corpus;
  for (const auto& s : summaries(state.range(0), 3)) corpus.push_back(tokenize(s));
  for (auto _ : state) benchmark::DoNotOptimize(tfidf_matrix(corpus, build_vocabulary(corpus)));
}
BENCHMARK(BM_Tfidf)->Arg(100)->Arg(1000)->Arg(10000);

void BM_Detect(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::exponential_distribution<double> dist(1.0 / 12.0);
  std::vector<ResolutionRecord> recs(state.range(0));
  for (auto& r : recs) r.resolution_days = dist(rng);
  for (auto _ : state) benchmark::DoNotOptimize(detect_anomalies(recs));
}
BENCHMARK(BM_Detect)->Arg(1000)->Arg(30000);

void BM_Pca(benchmark::State& state) {
  const auto m = matrix(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pca_fit(m, 2));
}
BENCHMARK(BM_Pca)->Arg(100)->Arg(1000);

void BM_KMeans(benchmark::State& state) {
  const auto m = matrix(state.range(0));
  const auto points = PointMatrix::from(pca_transform(pca_fit(m, 2), m));
  for (auto _ : state) benchmark::DoNotOptimize(kmeans(points, {}));
}
BENCHMARK(BM_KMeans)->Arg(100)->Arg(1000);

}  // namespace
BENCHMARK_MAIN();

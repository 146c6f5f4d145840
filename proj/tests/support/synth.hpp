#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace longtail::testing {

/// Uniform double in [0, 1) that is identical across standard libraries.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
}

struct SynthProjectOptions {
  std::size_t rows = 1000;
  std::uint64_t seed = 7;
  double outlier_fraction = 0.03;   // bugs with 700-2000 day resolution times
  double duplicate_fraction = 0.1;  // Resolution == "Duplicate"
  double unresolved_fraction = 0.05;
};

/// GitBugs-shaped CSV with a planted population of extremely slow bugs whose
/// summaries come from three themed vocabularies. Timestamp spellings vary
/// between ISO-8601, "YYYY-MM-DD HH:MM:SS" and Jira style.
std::string synth_project_csv(const SynthProjectOptions& options);

/// The three themed vocabularies used by synth_project_csv.
const std::array<std::vector<std::string>, 3>& planted_themes();

struct PlantedCorpus {
  std::vector<std::string> summaries;
  std::vector<int> labels;  // planted vocabulary of each summary
  std::array<std::vector<std::string>, 3> vocabularies;
};

/// `docs` summaries, each built from `words_per_doc` words drawn from one of
/// three disjoint `vocab_size`-term vocabularies (round-robin labels).
PlantedCorpus planted_corpus(std::size_t docs, std::size_t vocab_size, std::uint64_t seed,
                             std::size_t words_per_doc = 6);

}  // namespace longtail::testing

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace longtail {

using Token = std::string;
using TokenList = std::vector<Token>;

/// Splits a summary into lowercase [a-z0-9]+ tokens. Any other character,
/// including every non-ASCII code point, separates tokens. Fragments shorter
/// than two characters and English stopwords are dropped, so "doesn't open"
/// becomes {"doesn", "open"}.
TokenList tokenize(std::string_view summary);

/// The built-in stopword list (318 entries, the classic Glasgow-derived
/// English list), sorted.
std::span<const std::string_view> english_stopwords();
bool is_stopword(std::string_view term);

/// Lexicographically ordered term set with document frequencies.
struct Vocabulary {
  std::vector<std::string> terms;
  std::vector<std::size_t> df;  // df[i] = number of documents containing terms[i]
  std::unordered_map<std::string, std::uint32_t> index;

  std::size_t size() const { return terms.size(); }
  /// Column of `term`, or -1 when absent.
  std::int64_t find(std::string_view term) const;
};

/// Throws AnalysisError("empty vocabulary") when no document has a token.
Vocabulary build_vocabulary(std::span<const TokenList> corpus);

struct SparseEntry {
  std::uint32_t column = 0;
  double weight = 0.0;

  bool operator==(const SparseEntry&) const = default;
};

using SparseRow = std::vector<SparseEntry>;  // sorted by column

/// Document-term TF-IDF matrix. Non-empty rows have unit L2 norm; empty
/// documents keep an all-zero (empty) row.
struct DocTermMatrix {
  std::size_t n_docs = 0;
  Vocabulary vocabulary;
  std::vector<double> idf;  // per column
  std::vector<SparseRow> rows;

  std::size_t n_terms() const { return vocabulary.size(); }
  /// Weight at (doc, column); 0 for absent entries.
  double at(std::size_t doc, std::size_t column) const;
  /// Row-major dense copy, n_docs x n_terms.
  std::vector<double> dense() const;
};

/// Smoothed inverse document frequency ln((1 + n_docs) / (1 + df)) + 1.
double smoothed_idf(std::size_t n_docs, std::size_t df);

/// tf(d,t) * idf(t) with raw counts as tf, then L2-normalizes each row.
/// Tokens missing from `vocab` are ignored.
DocTermMatrix tfidf_matrix(std::span<const TokenList> corpus, const Vocabulary& vocab);

/// {"terms": [...], "rows": [[[col, weight], ...], ...]} at full precision.
std::string tfidf_to_json(const DocTermMatrix& matrix);

}  // namespace longtail

#include "longtail/textvec.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "longtail/error.hpp"

namespace longtail {
namespace {

constexpr std::size_t kMinTokenLength = 2;

bool is_token_char(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

}  // namespace

TokenList tokenize(std::string_view summary) {
  TokenList out;
  std::string current;
  const auto flush = [&] {
    if (current.size() >= kMinTokenLength && !is_stopword(current)) out.push_back(current);
    current.clear();
  };
  for (unsigned char c : summary) {
    if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
    if (is_token_char(c))
      current += static_cast<char>(c);
    else
      flush();
  }
  flush();
  return out;
}

std::int64_t Vocabulary::find(std::string_view term) const {
  const auto it = index.find(std::string(term));
  return it == index.end() ? -1 : static_cast<std::int64_t>(it->second);
}

Vocabulary build_vocabulary(std::span<const TokenList> corpus) {
  std::map<std::string, std::size_t, std::less<>> df;
  for (const auto& doc : corpus) {
    std::vector<std::string_view> seen(doc.begin(), doc.end());
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (auto t : seen) {
      auto it = df.find(t);
      if (it == df.end())
        df.emplace(std::string(t), 1);
      else
        ++it->second;
    }
  }
  if (df.empty()) throw AnalysisError("empty vocabulary");

  Vocabulary v;
  v.terms.reserve(df.size());
  v.df.reserve(df.size());
  for (auto& [term, count] : df) {
    v.index.emplace(term, static_cast<std::uint32_t>(v.terms.size()));
    v.terms.push_back(term);
    v.df.push_back(count);
  }
  return v;
}

double DocTermMatrix::at(std::size_t doc, std::size_t column) const {
  const auto& row = rows.at(doc);
  const auto it = std::lower_bound(row.begin(), row.end(), column,
                                   [](const SparseEntry& e, std::size_t c) { return e.column < c; });
  return it != row.end() && it->column == column ? it->weight : 0.0;
}

std::vector<double> DocTermMatrix::dense() const {
  const auto d = n_terms();
  std::vector<double> out(n_docs * d, 0.0);
  for (std::size_t i = 0; i < n_docs; ++i) {
    for (const auto& e : rows[i]) out[i * d + e.column] = e.weight;
  }
  return out;
}

double smoothed_idf(std::size_t n_docs, std::size_t df) {
  return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(df))) + 1.0;
}

DocTermMatrix tfidf_matrix(std::span<const TokenList> corpus, const Vocabulary& vocab) {
  DocTermMatrix m;
  m.n_docs = corpus.size();
  m.vocabulary = vocab;
  m.idf.resize(vocab.size());
  for (std::size_t t = 0; t < vocab.size(); ++t) m.idf[t] = smoothed_idf(corpus.size(), vocab.df[t]);

  m.rows.reserve(corpus.size());
  for (const auto& doc : corpus) {
    std::vector<std::uint32_t> cols;
    cols.reserve(doc.size());
    for (const auto& tok : doc) {
      if (auto it = vocab.index.find(tok); it != vocab.index.end()) cols.push_back(it->second);
    }
    std::sort(cols.begin(), cols.end());

    SparseRow row;
    for (std::size_t i = 0; i < cols.size();) {
      std::size_t j = i;
      while (j < cols.size() && cols[j] == cols[i]) ++j;
      row.push_back({cols[i], static_cast<double>(j - i) * m.idf[cols[i]]});
      i = j;
    }
    double norm = 0.0;
    for (const auto& e : row) norm += e.weight * e.weight;
    norm = std::sqrt(norm);
    for (auto& e : row) e.weight /= norm;
    m.rows.push_back(std::move(row));
  }
  return m;
}

std::string tfidf_to_json(const DocTermMatrix& matrix) {
  nlohmann::ordered_json j;
  j["terms"] = matrix.vocabulary.terms;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : matrix.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& e : row) r.push_back({e.column, e.weight});
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump() + "\n";
}

}  // namespace longtail

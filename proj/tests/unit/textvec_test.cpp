#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <regex>

#include "longtail/error.hpp"
#include "longtail/textvec.hpp"
#include "oracles.hpp"
#include "synth.hpp"

using namespace longtail;

TEST_CASE("tokenize") {
  CHECK(tokenize("").empty());
  CHECK(tokenize("   \t\n").empty());
  CHECK(tokenize("doesn't open") == TokenList{"doesn", "open"});
  CHECK(tokenize("Fix NPE in s3a upload") == TokenList{"fix", "npe", "s3a", "upload"});
  CHECK(tokenize("the and of it").empty());
  CHECK(tokenize("[ABFS] Token-header: x y z") == TokenList{"abfs", "token", "header"});
  CHECK(tokenize("Caf\xC3\xA9 cr\xC3\xA8me jdk17") == TokenList{"caf", "cr", "jdk17"});
  CHECK(tokenize("CEP-21 add_update") == TokenList{"cep", "21", "add", "update"});
}

TEST_CASE("stopword list is sorted and queryable") {
  const auto words = english_stopwords();
  CHECK(words.size() == 318);
  CHECK(std::is_sorted(words.begin(), words.end()));
  CHECK(is_stopword("in"));
  CHECK(is_stopword("the"));
  CHECK_FALSE(is_stopword("doesn"));
  CHECK_FALSE(is_stopword("test"));
}

TEST_CASE("property: tokens match the token alphabet") {
  std::mt19937_64 rng(3);
  const std::regex token_re("[a-z0-9]{2,}");
  for (int i = 0; i < 300; ++i) {
    std::string s;
    const auto len = testing::uniform_index(rng, 60);
    for (std::size_t j = 0; j < len; ++j) s += static_cast<char>(testing::uniform_index(rng, 256));
    for (const auto& t : tokenize(s)) {
      CHECK(std::regex_match(t, token_re));
      CHECK_FALSE(is_stopword(t));
    }
  }
}

TEST_CASE("build_vocabulary") {
  const std::vector<TokenList> corpus{{"b2", "a1"}, {"b2"}};
  const auto v = build_vocabulary(corpus);
  CHECK(v.terms == std::vector<std::string>{"a1", "b2"});
  CHECK(v.df == std::vector<std::size_t>{1, 2});
  CHECK(v.find("b2") == 1);
  CHECK(v.find("zz") == -1);

  const std::vector<TokenList> repeated{{"x9", "x9"}};
  CHECK(build_vocabulary(repeated).df == std::vector<std::size_t>{1});

  const std::vector<TokenList> empty{{}, {}};
  CHECK_THROWS_WITH_AS(build_vocabulary(empty), "empty vocabulary", AnalysisError);
}

TEST_CASE("tfidf_matrix worked examples") {
  const std::vector<TokenList> single{{"bug", "bug"}};
  const auto m = tfidf_matrix(single, build_vocabulary(single));
  CHECK(m.idf[0] == 1.0);
  REQUIRE(m.rows[0].size() == 1);
  CHECK(m.rows[0][0].weight == 1.0);

  const std::vector<TokenList> shared{{"common", "rare"}, {"common"}, {}};
  const auto s = tfidf_matrix(shared, build_vocabulary(shared));
  CHECK(s.idf[s.vocabulary.find("common")] == doctest::Approx(std::log(4.0 / 3.0) + 1.0));
  CHECK(s.at(1, s.vocabulary.find("rare")) == 0.0);
  CHECK(s.rows[2].empty());
  CHECK(s.n_docs == 3);

  const std::vector<TokenList> everywhere{{"aa", "bb"}, {"aa"}};
  const auto e = tfidf_matrix(everywhere, build_vocabulary(everywhere));
  CHECK(e.idf[0] == 1.0);
  CHECK(e.idf[1] > 1.0);
}

TEST_CASE("property: TF-IDF equals direct evaluation; norms, rarity ordering, determinism") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> alphabet{"t0", "t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8", "t9"};
  for (int trial = 0; trial < 500; ++trial) {
    const auto n_docs = 1 + testing::uniform_index(rng, 5);
    const auto n_terms = 1 + testing::uniform_index(rng, 10);
    std::vector<TokenList> corpus(n_docs);
    for (auto& doc : corpus) {
      const auto len = testing::uniform_index(rng, 8);
      for (std::size_t i = 0; i < len; ++i) doc.push_back(alphabet[testing::uniform_index(rng, n_terms)]);
    }
    if (std::all_of(corpus.begin(), corpus.end(), [](const TokenList& d) { return d.empty(); }))
      corpus[0].push_back(alphabet[0]);

    const auto vocab = build_vocabulary(corpus);
    const auto m = tfidf_matrix(corpus, vocab);
    const auto oracle = testing::oracle_tfidf(corpus);
    REQUIRE(oracle.terms == vocab.terms);
    for (std::size_t d = 0; d < n_docs; ++d) {
      double norm = 0.0;
      for (std::size_t t = 0; t < vocab.size(); ++t) {
        CHECK(std::abs(m.at(d, t) - oracle.rows[d][t]) <= 1e-12);
        norm += m.at(d, t) * m.at(d, t);
      }
      for (const auto& e : m.rows[d]) CHECK(e.weight > 0.0);
      if (!corpus[d].empty()) CHECK(std::abs(std::sqrt(norm) - 1.0) <= 1e-9);
    }
    for (std::size_t t = 0; t < vocab.size(); ++t) CHECK(m.idf[t] >= 1.0);
    for (std::size_t a = 0; a < vocab.size(); ++a) {
      for (std::size_t b = 0; b < vocab.size(); ++b) {
        if (vocab.df[a] < vocab.df[b]) CHECK(m.idf[a] > m.idf[b]);
      }
    }
    const auto again = tfidf_matrix(corpus, build_vocabulary(corpus));
    CHECK(again.rows == m.rows);
    CHECK(again.vocabulary.terms == m.vocabulary.terms);
  }
}

TEST_CASE("tfidf json dump") {
  const std::vector<TokenList> corpus{{"aa", "bb"}, {}};
  const auto json = tfidf_to_json(tfidf_matrix(corpus, build_vocabulary(corpus)));
  CHECK(json.find("\"terms\":[\"aa\",\"bb\"]") != std::string::npos);
  CHECK(json.find("\"rows\":[[[0,0.7071067811865476],[1,0.7071067811865476]],[]]") != std::string::npos);
}

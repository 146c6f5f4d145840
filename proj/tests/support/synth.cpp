#include "synth.hpp"

#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "longtail/csv.hpp"
#include "longtail/timestamp.hpp"

namespace longtail::testing {
namespace {

const std::vector<std::string> kCommonWords = {
    "crash",  "button",  "dialog", "update", "docs",    "typo",     "config", "option", "label",  "icon",
    "render", "startup", "memory", "leak",   "cache",   "timeout",  "log",    "format", "parser", "locale",
    "font",   "scroll",  "menu",   "build",  "warning", "deprecate", "api",   "client", "server", "query"};

std::string pick_words(std::mt19937_64& rng, const std::vector<std::string>& words, std::size_t count) {
  std::string out;
  for (std::size_t i = 0; i < count; ++i) {
    if (!out.empty()) out += ' ';
    out += words[uniform_index(rng, words.size())];
  }
  return out;
}

std::string render_time(Timestamp ts, int style) {
  using namespace std::chrono;
  const auto day_point = floor<days>(ts);
  const year_month_day ymd{day_point};
  const hh_mm_ss<milliseconds> tod{ts - day_point};
  static constexpr const char* kMonths[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                            "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  switch (style) {
    case 0:
      return format_timestamp(time_point_cast<seconds>(ts));
    case 1:
      return fmt::format("{:04}-{:02}-{:02} {:02}:{:02}:{:02}", static_cast<int>(ymd.year()),
                         static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                         tod.hours().count(), tod.minutes().count(), tod.seconds().count());
    default:
      return fmt::format("{:02}/{}/{:02} {:02}:{:02}", static_cast<unsigned>(ymd.day()),
                         kMonths[static_cast<unsigned>(ymd.month()) - 1], static_cast<int>(ymd.year()) % 100,
                         tod.hours().count(), tod.minutes().count());
  }
}

}  // namespace

const std::array<std::vector<std::string>, 3>& planted_themes() {
  static const std::array<std::vector<std::string>, 3> themes = {
      std::vector<std::string>{"flaky", "testsuite", "intermittent", "junit", "dtest", "assertion", "jenkins",
                               "harness"},
      std::vector<std::string>{"abfs", "s3a", "token", "header", "credential", "bucket", "endpoint", "upload"},
      std::vector<std::string>{"imap", "folder", "mailbox", "account", "inbox", "compose", "attachment",
                               "signature"}};
  return themes;
}

std::string synth_project_csv(const SynthProjectOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::string out = "Issue_id,Priority,Status,Resolution,Created,Resolved,Summary\n";
  using namespace std::chrono;
  const auto start = time_point_cast<milliseconds>(sys_days{2015y / January / 1});
  constexpr double kSpanDays = 8.0 * 365.0;
  static constexpr const char* kPriorities[] = {"Major", "Minor", "Critical", "Trivial"};

  for (std::size_t i = 0; i < o.rows; ++i) {
    const auto created = start + milliseconds(static_cast<long long>(uniform01(rng) * kSpanDays * 86'400'000.0 / 60'000.0) * 60'000);
    const bool outlier = uniform01(rng) < o.outlier_fraction;
    const bool unresolved = !outlier && uniform01(rng) < o.unresolved_fraction;
    const bool duplicate = uniform01(rng) < o.duplicate_fraction;

    std::string summary;
    double days = 0.0;
    if (outlier) {
      const auto& theme = planted_themes()[uniform_index(rng, 3)];
      summary = pick_words(rng, theme, 4) + " " + pick_words(rng, kCommonWords, 1);
      days = 700.0 + uniform01(rng) * 1300.0;
    } else {
      summary = pick_words(rng, kCommonWords, 4);
      days = -std::log(1.0 - uniform01(rng)) * 12.0;
    }
    if (uniform01(rng) < 0.1) summary = "\"" + summary + "\", doesn't reproduce";

    const int style = static_cast<int>(uniform_index(rng, 3));
    // Jira style has minute resolution; keep the resolved stamp on whole minutes as well.
    const auto resolved = created + minutes(static_cast<long long>(days * 1440.0));
    out += fmt::format("{}-{},{},{},{},{},{},{}\n", "BUG", i + 1, kPriorities[uniform_index(rng, 4)],
                       unresolved ? "Open" : "Resolved",
                       duplicate ? "Duplicate" : (unresolved ? "" : "Fixed"), render_time(created, style),
                       unresolved ? "" : render_time(resolved, style), csv::escape(summary));
  }
  return out;
}

PlantedCorpus planted_corpus(std::size_t docs, std::size_t vocab_size, std::uint64_t seed,
                             std::size_t words_per_doc) {
  PlantedCorpus c;
  static constexpr const char* kPrefix[] = {"alpha", "bravo", "charlie"};
  for (int v = 0; v < 3; ++v) {
    for (std::size_t t = 0; t < vocab_size; ++t) c.vocabularies[v].push_back(fmt::format("{}{:02}", kPrefix[v], t));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t d = 0; d < docs; ++d) {
    const int label = static_cast<int>(d % 3);
    c.labels.push_back(label);
    c.summaries.push_back(pick_words(rng, c.vocabularies[label], words_per_doc));
  }
  return c;
}

}  // namespace longtail::testing

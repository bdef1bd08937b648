#include "ctfagent/corpus_stats.hpp"

#include <cstdio>
#include <sstream>

namespace ctfagent {

namespace {

constexpr std::array<PlatformKind, kPlatformCount> kAllPlatforms = {
    PlatformKind::picoctf, PlatformKind::overthewire, PlatformKind::synthetic};
constexpr std::array<Category, kCategoryCount> kAllCategories = {
    Category::GeneralSkills,      Category::Cryptography, Category::WebExploitation,
    Category::Forensics,          Category::ReverseEngineering,
    Category::BinaryExploitation};
constexpr std::array<Difficulty, kDifficultyCount> kAllDifficulties = {
    Difficulty::easy, Difficulty::medium, Difficulty::hard};

}  // namespace

long long CorpusStats::by_platform(PlatformKind p) const {
  long long sum = 0;
  for (Category c : kAllCategories)
    for (Difficulty d : kAllDifficulties) sum += cell(p, c, d);
  return sum;
}

long long CorpusStats::by_category(Category c) const {
  long long sum = 0;
  for (PlatformKind p : kAllPlatforms)
    for (Difficulty d : kAllDifficulties) sum += cell(p, c, d);
  return sum;
}

long long CorpusStats::by_difficulty(Difficulty d) const {
  long long sum = 0;
  for (PlatformKind p : kAllPlatforms)
    for (Category c : kAllCategories) sum += cell(p, c, d);
  return sum;
}

long long CorpusStats::by_platform_category(PlatformKind p, Category c) const {
  long long sum = 0;
  for (Difficulty d : kAllDifficulties) sum += cell(p, c, d);
  return sum;
}

long long CorpusStats::total() const {
  long long sum = 0;
  for (PlatformKind p : kAllPlatforms) sum += by_platform(p);
  return sum;
}

CorpusStats corpus_stats(const Benchmark& benchmark) {
  CorpusStats stats;
  for (const auto& m : benchmark.manifests) stats.add(m.platform, m.category, m.difficulty);
  return stats;
}

std::string render_corpus_stats(const CorpusStats& stats) {
  std::ostringstream out;
  char line[160];

  for (PlatformKind p : kAllPlatforms) {
    if (stats.by_platform(p) == 0) continue;
    out << "platform: " << platform_to_string(p) << "\n";
    snprintf(line, sizeof(line), "  %-20s %6s %6s %6s %6s\n", "category", "easy", "medium", "hard",
             "total");
    out << line;
    for (Category c : kAllCategories) {
      if (stats.by_platform_category(p, c) == 0) continue;
      snprintf(line, sizeof(line), "  %-20s %6lld %6lld %6lld %6lld\n",
               category_to_string(c).c_str(), stats.count(p, c, Difficulty::easy),
               stats.count(p, c, Difficulty::medium), stats.count(p, c, Difficulty::hard),
               stats.by_platform_category(p, c));
      out << line;
    }
    out << "\n";
  }

  snprintf(line, sizeof(line), "difficulty totals: easy %lld, medium %lld, hard %lld\n",
           stats.by_difficulty(Difficulty::easy), stats.by_difficulty(Difficulty::medium),
           stats.by_difficulty(Difficulty::hard));
  out << line;

  out << "totals:";
  bool first = true;
  for (PlatformKind p : kAllPlatforms) {
    if (stats.by_platform(p) == 0) continue;
    out << (first ? " " : ", ") << platform_to_string(p) << " " << stats.by_platform(p);
    first = false;
  }
  out << (first ? " " : ", ") << "total " << stats.total() << "\n";
  return out.str();
}

}  // namespace ctfagent

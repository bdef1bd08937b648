#pragma once

#include <array>
#include <string>

#include "ctfagent/manifest.hpp"

namespace ctfagent {

// Challenge counts by platform x category x difficulty.
class CorpusStats {
 public:
  void add(PlatformKind p, Category c, Difficulty d) { ++cell(p, c, d); }

  long long count(PlatformKind p, Category c, Difficulty d) const { return cell(p, c, d); }
  long long by_platform(PlatformKind p) const;
  long long by_category(Category c) const;
  long long by_difficulty(Difficulty d) const;
  long long by_platform_category(PlatformKind p, Category c) const;
  long long by_platform_category_difficulty(PlatformKind p, Category c, Difficulty d) const {
    return cell(p, c, d);
  }
  long long total() const;

 private:
  long long& cell(PlatformKind p, Category c, Difficulty d) {
    return cells_[static_cast<size_t>(p)][static_cast<size_t>(c)][static_cast<size_t>(d)];
  }
  long long cell(PlatformKind p, Category c, Difficulty d) const {
    return cells_[static_cast<size_t>(p)][static_cast<size_t>(c)][static_cast<size_t>(d)];
  }

  std::array<std::array<std::array<long long, kDifficultyCount>, kCategoryCount>, kPlatformCount>
      cells_{};
};

CorpusStats corpus_stats(const Benchmark& benchmark);

// Text table: one category x difficulty section per non-empty platform,
// closing with "totals: <platform> N, ..., total M".
std::string render_corpus_stats(const CorpusStats& stats);

}  // namespace ctfagent

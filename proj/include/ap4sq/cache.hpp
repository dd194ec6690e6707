#pragma once

// Line-oriented rank cache: "d rank_lo rank_hi [x y]" per line, '#' starts a
// comment. Later lines for the same d override earlier ones.

#include "ap4sq/curves.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace ap4sq {

struct CacheRecord {
  Integer d;
  int rank_lo = 0;
  int rank_hi = 0;
  std::optional<Point<Rational>> witness;

  /// Rank known to be zero, or a point of infinite order known.
  bool conclusive() const { return rank_hi == 0 || witness.has_value(); }
  std::string to_line() const;
};

CacheRecord parse_cache_line(const std::string& line);

class RankCache {
 public:
  /// Loads the file if it exists; a missing file is an empty cache.
  explicit RankCache(std::filesystem::path path);

  std::optional<CacheRecord> lookup(const Integer& d) const;
  /// Appends the record unless an equally conclusive one is already stored.
  void store(const CacheRecord& rec);

  std::size_t size() const { return records_.size(); }

 private:
  std::filesystem::path path_;
  std::map<Integer, CacheRecord> records_;
};

}  // namespace ap4sq

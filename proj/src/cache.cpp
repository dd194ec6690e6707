#include "ap4sq/cache.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ap4sq {

std::string CacheRecord::to_line() const {
  std::string s = d.get_str() + " " + std::to_string(rank_lo) + " " + std::to_string(rank_hi);
  if (witness && !witness->is_infinity()) s += " " + to_string(witness->x()) + " " + to_string(witness->y());
  return s;
}

CacheRecord parse_cache_line(const std::string& line) {
  std::istringstream in(line);
  std::string d, lo, hi, x, y;
  if (!(in >> d >> lo >> hi)) throw std::invalid_argument("bad cache line: " + line);
  CacheRecord r;
  r.d = Integer(d);
  r.rank_lo = std::stoi(lo);
  r.rank_hi = std::stoi(hi);
  if (in >> x) {
    if (!(in >> y)) throw std::invalid_argument("bad cache line: " + line);
    Point<Rational> P(parse_rational(x), parse_rational(y));
    detail::require_on_curve(twist_curve(r.d), P);
    r.witness = P;
  }
  if (r.rank_lo < 0 || r.rank_lo > r.rank_hi) throw std::invalid_argument("bad ranks in cache line: " + line);
  return r;
}

RankCache::RankCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    CacheRecord r = parse_cache_line(line);
    records_.insert_or_assign(r.d, std::move(r));
  }
}

std::optional<CacheRecord> RankCache::lookup(const Integer& d) const {
  auto it = records_.find(d);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void RankCache::store(const CacheRecord& rec) {
  auto it = records_.find(rec.d);
  if (it != records_.end() && (it->second.conclusive() || !rec.conclusive())) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot write cache file " + path_.string());
  out << rec.to_line() << '\n';
  records_.insert_or_assign(rec.d, rec);
}

}  // namespace ap4sq

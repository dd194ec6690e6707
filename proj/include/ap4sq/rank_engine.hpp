#pragma once

// Rank of E^d(Q): lower bounds from point search, upper bounds from a
// complete 2-descent. Since rank E(Q) = 0, the field Q(sqrt(d)) carries a
// non-constant progression of four squares iff rank E^d(Q) > 0.

#include "ap4sq/curves.hpp"
#include "ap4sq/parametrization.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ap4sq {

/// First non-torsion point with naive height max(|m|, e^2) <= height_bound,
/// x = m/e^2, ordered by e, then |m|, then m > 0 first; y > 0.
std::optional<Point<Rational>> naive_point_search(const Curve& c, std::int64_t height_bound, unsigned threads = 1);

struct DescentOptions {
  std::int64_t box = 1000;
  unsigned threads = 1;
};

struct SelmerClass {
  Integer b1, b2;
  friend bool operator==(const SelmerClass&, const SelmerClass&) = default;
};

struct DescentResult {
  int rank_lo = 0;
  int rank_hi = 0;
  std::optional<Point<Rational>> witness;
  std::size_t surviving_pairs = 0;
  std::vector<SelmerClass> selmer;
  bool exact() const { return rank_lo == rank_hi; }
};

/// Locally soluble (b1, b2) pairs, in enumeration order.
std::vector<SelmerClass> selmer_classes(const Curve& c);

/// The image of a rational point under the 2-descent map.
SelmerClass descent_image(const Curve& c, const Point<Rational>& P);

DescentResult two_descent(const Curve& c, const DescentOptions& opts = {});

enum class VerdictKind { yes, no, yes_under_bsd, unknown };

std::string to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::unknown;
  std::string evidence;
  /// Present exactly for yes.
  std::optional<APDescription<QuadraticElement>> ap;
  std::optional<Point<Rational>> witness;
  std::optional<DescentResult> descent;
};

struct EngineOptions {
  std::int64_t height_bound = 1000000;
  std::int64_t descent_box = 1000;
  bool descent = true;
  bool use_criteria = true;
  unsigned threads = 1;
};

/// The progression built from a non-torsion point of E^d(Q).
APDescription<QuadraticElement> progression_from_twist_point(const Point<Rational>& P, const Integer& d);

/// Whether Q(sqrt(d)) has a non-constant progression of four squares.
Verdict field_rank_positive(const Integer& d, const EngineOptions& opts = {});

}  // namespace ap4sq

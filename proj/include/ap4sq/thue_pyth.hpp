#pragma once

// Four-square progressions from Pythagorean triples. For coprime (a, b),
// (a^2+b^2)^2 - 4n, (a^2+b^2)^2, (a^2+b^2)^2 + 4n are squares with
// n = ab(a^2-b^2); the next term F(a,b) = (a^2+b^2)^2 + 8n is a square in
// Q(sqrt(F(a,b))). The Thue scan looks for small F(x,y) = d.

#include "ap4sq/exact_arith.hpp"
#include "ap4sq/parametrization.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace ap4sq {

/// F(x,y) = (x^2+y^2)^2 + 8xy(x^2-y^2).
Integer thue_eval(const Integer& x, const Integer& y);

struct ThueHit {
  Integer d;
  std::vector<std::pair<std::int64_t, std::int64_t>> solutions;
};

struct ThueScanOptions {
  /// Match the squarefree part of F instead of F itself.
  bool squarefree_part = false;
  /// Keep d = 1, i.e. the field Q.
  bool include_rational = false;
  unsigned threads = 1;
};

/// Squarefree d with 0 < |d| <= dmax hit on |x|, |y| <= box, sorted by d; the
/// solutions of each d by (|x|, |y|, x, y).
std::vector<ThueHit> thue_scan(std::int64_t dmax, std::int64_t box, const ThueScanOptions& opts = {});

struct PythagoreanAP {
  Integer n;
  std::array<Integer, 3> three_term;
  Integer fourth;
  Integer field_d;
  APQuadruple<QuadraticElement> quadruple;
};

/// Needs ab != 0, a != +-b, gcd(a, b) = 1.
PythagoreanAP pythagorean_ap(const Integer& a, const Integer& b);

/// F(a,b) = 1 mod 24; needs gcd(a, b) = 1 and a, b of opposite parity.
bool congruence_class_check(const Integer& a, const Integer& b);

}  // namespace ap4sq

#pragma once

// Congruence criteria for theta-congruent numbers (theta = pi/3, 2pi/3)
// and discordant pairs: ternary form representation counts, the prime
// residue theorem for p = 23 mod 24, and the conjectural residue classes.

#include "ap4sq/exact_arith.hpp"
#include "ap4sq/rank_engine.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ap4sq {

/// q = aX^2 + bY^2 + cZ^2 + yz*YZ + xz*XZ + xy*XY, positive definite.
class TernaryForm {
 public:
  TernaryForm(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t yz = 0, std::int64_t xz = 0,
              std::int64_t xy = 0);

  std::int64_t operator()(std::int64_t X, std::int64_t Y, std::int64_t Z) const;
  /// Symmetric Gram matrix with halved cross terms.
  std::array<std::array<Rational, 3>, 3> gram() const;
  std::string to_string() const;

  std::int64_t a, b, c, yz, xz, xy;
};

bool is_positive_definite(const TernaryForm& f);

namespace forms {
const TernaryForm& yoshida_2pi3_a();
const TernaryForm& yoshida_2pi3_b();
const TernaryForm& yoshida_pi3_a();
const TernaryForm& yoshida_pi3_b();
const TernaryForm& ono_a();
const TernaryForm& ono_b();
/// By CLI identifier, e.g. "yoshida-2pi3-a".
std::optional<TernaryForm> by_name(std::string_view id);
}  // namespace forms

/// #{(X,Y,Z) in Z^3 : q(X,Y,Z) = n}.
std::uint64_t count_representations(const TernaryForm& f, std::int64_t n, unsigned threads = 1);

enum class CriterionVerdict { unconditional_no, conditional_yes_bsd, not_applicable };

struct CriterionOutcome {
  bool applicable = false;
  std::uint64_t count_a = 0;
  std::uint64_t count_b = 0;
  CriterionVerdict verdict = CriterionVerdict::not_applicable;
};

std::string to_string(CriterionVerdict v);

/// n = 1, 7, 13 mod 24: n is not 2pi/3-congruent if the counts differ.
CriterionOutcome yoshida_2pi3(std::int64_t n);
/// n > 1, n = 1, 7, 19 mod 24: n is not pi/3-congruent if the counts differ.
CriterionOutcome yoshida_pi3(std::int64_t n);
/// n odd: (6n, -18n) is discordant if the counts differ.
CriterionOutcome ono_6n_discordant(std::int64_t n);

/// n prime and n = 23 mod 24: n is theta-congruent for pi/3 and 2pi/3.
bool kan_test(std::int64_t n);

enum class Angle { pi_over_3, two_pi_over_3 };
std::string to_string(Angle a);
ThetaParams theta_params(Angle a);

/// Residues conjectured to give theta-congruent n.
bool conjecture1_class(std::int64_t n, Angle angle);

struct ConcordantWitness {
  Integer x, y, z, t;
};

/// First (x, y) in 1..bound, coprime, ordered by (y, x), with x^2 + M y^2 = t^2
/// and x^2 + N y^2 = z^2; z, t >= 0.
std::optional<ConcordantWitness> concordant_witness_search(const Integer& M, const Integer& N, std::int64_t bound);

/// One prime per residue class mod 24 coprime to 6, two for most classes.
inline constexpr std::array<std::int64_t, 13> kTablePrimes{5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

/// Table cell for d = sign * multiplier * p.
Verdict table_entry(std::int64_t p, int multiplier, int sign, const EngineOptions& opts = {});

/// Whether n is theta-congruent: E_{n,theta} has a point of order > 2.
Verdict theta_congruent(std::int64_t n, Angle angle, const EngineOptions& opts = {});

}  // namespace ap4sq

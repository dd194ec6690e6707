#pragma once

// Local solubility of the 2-descent homogeneous spaces of
// y^2 = x(x+A)(x+B). The pair (b1, b2) stands for
//   x = b1 u^2,  x + A = b2 v^2,  x + B = b1 b2 w^2,
// which is soluble over a field K iff some u in P^1(K) makes both
//   b2 (b1 u^2 + A)  and  b1 b2 (b1 u^2 + B)
// squares in K.

#include "ap4sq/exact_arith.hpp"

#include <vector>

namespace ap4sq {

/// Exponent of p in n; n != 0.
unsigned valuation(const Integer& n, const Integer& p);

/// n != 0 is a square in Q_p.
bool is_padic_square(const Integer& n, const Integer& p);

bool real_soluble(const Integer& b1, const Integer& b2, const Integer& A, const Integer& B);
bool padic_soluble(const Integer& b1, const Integer& b2, const Integer& A, const Integer& B, const Integer& p);

/// 2 and the primes dividing A B (A-B), ascending.
std::vector<Integer> bad_primes(const Integer& A, const Integer& B);

/// The signed squarefree divisors of n: +-1 times products of distinct primes of n.
std::vector<Integer> squarefree_divisors(const Integer& n);

}  // namespace ap4sq

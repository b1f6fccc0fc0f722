#pragma once

// Graded character of the observable algebra in three equivalent forms.

#include "toda/qseries.hpp"

namespace toda {

/// [n choose m] = [n]! / ([m]! [n-m]!), truncated after q^order.
QSeries q_binomial(int n, int m, int order = 40);

struct GradedCharacter {
  int n = 0;
  QSeries chi;
  /// delta(d), the dimension of the degree-d subspace.
  Rational delta(int d) const { return chi[d]; }
};

/// 1/[n]! * 1/[n-1]! * [1]/[n+1]! * [1]/[n]! * [2n]!/[1]
GradedCharacter character_product(int n, int order = 40);

/// ([2n-1 choose n-1] - q [2n-1 choose n-2]) / ([n]! [n-1]!)
GradedCharacter character_binomial(int n, int order = 40);

/// Alternating sum from deg C = 2, deg Q = 1:
/// (sum_{k=0}^{n-1} (-q)^k [2n-1 choose n-1-k] - q^2 sum_{k=0}^{n-3} (-q)^k [2n-1 choose n-3-k]) / ([n-1]! [n]!)
QSeries character_resolution(int n, int order = 40);

/// The n = 2 character as (1/[2]!)(1 + q/[1] + q^2/[1]), before simplification.
QSeries character_two_unsimplified(int order = 40);

/// The simplified n = 2 expression (1/[2]!)(1 + q^2).
QSeries character_two_simplified(int order = 40);

}  // namespace toda

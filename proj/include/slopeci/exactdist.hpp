#pragma once

// Exact null distributions for the two rank statistics the intervals are
// built on: Kendall's K over n independent observations, and the Wilcoxon
// signed-rank statistic T+ over N items.  Probabilities are exact rationals.

#include <optional>
#include <vector>

#include "slopeci/rational.hpp"

namespace slopeci::exactdist {

enum class Kind { kendall, signed_rank };

// Exact signed-rank distributions are computed up to this N; above it the
// quantile helper falls back to a normal approximation and says so.
inline constexpr int kSignedRankExactLimit = 2000;

struct ExactDistribution {
  Kind kind;
  int size;                        // n (kendall) or N (signed_rank)
  std::vector<long long> support;  // ascending
  std::vector<Rational> pmf;       // aligned with support; sums to 1

  // P(X >= value); value need not lie in the support.
  Rational upper_tail(long long value) const;
};

// Distribution of K = N_c - N_d under the null that all n! orderings are
// equally likely.  Support is {-N, -N+2, ..., N} with N = n(n-1)/2.
ExactDistribution kendall_null_distribution(int n);

// Smallest k with the parity of N such that P(K >= k) <= a.  Returns nullopt
// when even k = N fails, i.e. when 1/n! > a.  Requires 0 < a < 1/2.
std::optional<long long> kendall_upper_quantile(int n, const Rational& a);

// Distribution of T+ = sum of ranks of positive items among N, under
// independent fair signs.  Support is {0, ..., N(N+1)/2}.
ExactDistribution signed_rank_null_distribution(int N);

struct SignedRankQuantile {
  long long value;
  bool exact;  // false when the normal approximation was used
};

// Smallest t with P(T+ >= t) <= a.  Exact for N <= kSignedRankExactLimit,
// normal approximation with continuity correction beyond.  Returns nullopt
// when even t = N(N+1)/2 fails, i.e. when 2^-N > a.  Requires 0 < a < 1/2.
std::optional<SignedRankQuantile> signed_rank_upper_quantile(int N, const Rational& a);

// The large-N normal approximation on its own, exposed so it can be compared
// against the exact quantile in the range where both are available.
std::optional<SignedRankQuantile> signed_rank_upper_quantile_approx(int N,
                                                                    const Rational& a);

}  // namespace slopeci::exactdist

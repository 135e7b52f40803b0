#pragma once

// Distribution-free confidence intervals for the slope of a simple linear
// regression: the classical interval built on Kendall's K over the pairwise
// slopes, and the signed-rank-style interval built on Walsh averages of the
// pairwise slopes.  Both intervals are open: (lower, upper).

#include <optional>

#include "slopeci/rational.hpp"
#include "slopeci/slopes.hpp"

namespace slopeci::intervals {

enum class Method { theil, tukey };

struct Interval {
  Method method;
  double lower = 0.0;
  double upper = 0.0;
  // 1-based order-statistic indices of the endpoints: into the sorted slopes
  // for theil, into the sorted Walsh averages for tukey.
  long long lower_index = 0;
  long long upper_index = 0;
  // Exact achieved confidence, 1 - 2 P(K >= k); only the theil interval
  // has one.
  std::optional<Rational> achieved_confidence;
  // True when ties collapse the open interval to the empty set (lower ==
  // upper).  Reported, not thrown.
  bool degenerate = false;
};

struct KendallTestResult {
  long long concordant = 0;
  long long discordant = 0;
  long long tied_pairs = 0;
  long long statistic = 0;  // K = concordant - discordant
  Rational tau;             // K / N (N counts all pairs, ties included)
  // Two-sided critical value at the requested alpha; nullopt when no level-
  // alpha test exists for this n.
  std::optional<long long> critical_value;
  std::optional<bool> reject;
};

// Tests H0: beta1 = beta_star by applying Kendall's K to the residuals
// y_i - beta_star * x_i.  Requires 0 < alpha < 1.
KendallTestResult kendall_slope_test(const slopes::Dataset& data, double beta_star,
                                     const Rational& alpha);

// Confidence (s_l, s_u) built from k = k_n(alpha/2):
//   l = (N - k)/2 + 1,  u = (N + k)/2,  so l + u = N + 1.
// Throws unachievable_level when no such k exists (max level 1 - 2/n!).
Interval theil_ci(const slopes::Dataset& data, const Rational& level);

// Confidence (w_L, w_U) over the P = N(N+1)/2 Walsh averages of the slopes,
// U = t_N(alpha/2), L = P - U + 1.  Throws unachievable_level when no such t
// exists (max level 1 - 2^(1-N)).  The nominal level is NOT attained in the
// regression setting; see theil_type_confidence and the coverage engine.
Interval tukey_ci(const slopes::Dataset& data, const Rational& level);

// Exact confidence 1 - 2 P(K >= k) of the interval (s_l, s_u) over the
// N = n(n-1)/2 pairwise slopes, where k = N - 2(l - 1).  Requires
// 1 <= l <= u <= N and l + u = N + 1.
Rational theil_type_confidence(int n, long long l, long long u);

}  // namespace slopeci::intervals

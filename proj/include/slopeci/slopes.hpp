#pragma once

// Pairwise slopes of a simple-regression data set and order statistics of
// their Walsh averages.  The Walsh helpers never materialise the O(N^2)
// array of averages; they count and select in the implied sorted multiset.

#include <cstddef>
#include <utility>
#include <vector>

namespace slopeci::slopes {

struct Dataset {
  // Validates n >= 2 and strictly increasing x; throws invalid_dataset.
  Dataset(std::vector<double> x_in, std::vector<double> y_in);

  std::size_t size() const { return x.size(); }

  std::vector<double> x;
  std::vector<double> y;
};

struct SlopeSet {
  std::vector<double> values;                   // ascending
  std::vector<std::pair<int, int>> pair_index;  // 1-based (i, j), i < j, aligned
  bool has_ties = false;

  std::size_t count() const { return values.size(); }            // N
  long long walsh_count() const {                                // P = N(N+1)/2
    long long n = static_cast<long long>(values.size());
    return n * (n + 1) / 2;
  }
};

// All N = n(n-1)/2 slopes (y_i - y_j)/(x_i - x_j), sorted ascending with a
// stable pair-index order on ties.
SlopeSet pairwise_slopes(const Dataset& data);

// Median of the sorted slopes (midpoint of the central pair for even N).
double theil_estimate(const SlopeSet& slopes);

// Number of Walsh averages (s_i + s_j)/2, i <= j, strictly below t.
// Exact: counts pairs with s_i + s_j < 2t, which is free of rounding.
long long count_walsh_below(const SlopeSet& slopes, double t);

// Same with <=.
long long count_walsh_at_or_below(const SlopeSet& slopes, double t);

// k-th smallest Walsh average, 1 <= k <= P (1-based, multiset order).
double walsh_select(const SlopeSet& slopes, long long k);

}  // namespace slopeci::slopes

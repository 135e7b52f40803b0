#include "slopeci/slopes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slopeci/errors.hpp"

namespace slopeci::slopes {

Dataset::Dataset(std::vector<double> x_in, std::vector<double> y_in)
    : x(std::move(x_in)), y(std::move(y_in)) {
  if (x.size() != y.size()) throw invalid_dataset("x and y must have equal length");
  if (x.size() < 2) throw invalid_dataset("need at least two observations");
  for (double v : x)
    if (!std::isfinite(v)) throw invalid_dataset("x values must be finite");
  for (double v : y)
    if (!std::isfinite(v)) throw invalid_dataset("y values must be finite");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i - 1] < x[i]))
      throw invalid_dataset("x values must be strictly increasing (no duplicate design points)");
}

SlopeSet pairwise_slopes(const Dataset& data) {
  int n = static_cast<int>(data.size());
  SlopeSet out;
  std::size_t N = static_cast<std::size_t>(n) * (n - 1) / 2;
  std::vector<std::pair<double, std::pair<int, int>>> tagged;
  tagged.reserve(N);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      tagged.push_back({(data.y[i] - data.y[j]) / (data.x[i] - data.x[j]), {i + 1, j + 1}});
  // Stable sort keeps the lexicographic (i, j) generation order among ties.
  std::stable_sort(tagged.begin(), tagged.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  out.values.reserve(N);
  out.pair_index.reserve(N);
  for (auto& t : tagged) {
    out.values.push_back(t.first);
    out.pair_index.push_back(t.second);
  }
  for (std::size_t i = 1; i < out.values.size(); ++i)
    if (out.values[i] == out.values[i - 1]) out.has_ties = true;
  return out;
}

double theil_estimate(const SlopeSet& slopes) {
  if (slopes.values.empty()) throw invalid_parameter("no slopes to take a median of");
  std::size_t N = slopes.values.size();
  if (N % 2 == 1) return slopes.values[N / 2];
  return (slopes.values[N / 2 - 1] + slopes.values[N / 2]) / 2.0;
}

namespace {

// Shared two-pointer core: counts pairs i <= j with s_i + s_j < bound
// (strict) or <= bound.  Comparing sums against 2t instead of averages
// against t avoids the halving, so the count is exact in floating point.
long long count_pairs(const std::vector<double>& s, double bound, bool strict) {
  long long count = 0;
  std::size_t n = s.size();
  // j is the length of the prefix of s whose elements pair validly with
  // s[i]; it only shrinks as i grows, so the scan is linear.
  std::size_t j = n;
  for (std::size_t i = 0; i < n; ++i) {
    auto ok = [&](double sum) { return strict ? sum < bound : sum <= bound; };
    while (j > 0 && !ok(s[i] + s[j - 1])) --j;
    if (j <= i) break;  // nothing >= the diagonal; later i only make sums larger
    count += static_cast<long long>(j - i);
  }
  return count;
}

}  // namespace

long long count_walsh_below(const SlopeSet& slopes, double t) {
  return count_pairs(slopes.values, 2.0 * t, /*strict=*/true);
}

long long count_walsh_at_or_below(const SlopeSet& slopes, double t) {
  return count_pairs(slopes.values, 2.0 * t, /*strict=*/false);
}

double walsh_select(const SlopeSet& slopes, long long k) {
  long long P = slopes.walsh_count();
  if (k < 1 || k > P) throw invalid_parameter("walsh_select: k out of range 1..P");
  const auto& s = slopes.values;

  // Invariant: count_at_or_below(lo) < k <= count_at_or_below(hi), so the
  // k-th average lies in (lo, hi].  Bisect on the double midpoint until the
  // interval has no interior double left, then hi is the answer.  Every
  // candidate value is an exact count boundary, so the result equals the
  // k-th element of the sorted multiset exactly.
  double lo = s.front();
  double hi = s.back();
  if (count_pairs(s, 2.0 * lo, false) >= k) return lo;  // k-th can't sit below the minimum

  while (std::nextafter(lo, std::numeric_limits<double>::infinity()) < hi) {
    double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo) mid = std::nextafter(lo, std::numeric_limits<double>::infinity());
    if (mid >= hi) mid = std::nextafter(hi, -std::numeric_limits<double>::infinity());
    if (count_pairs(s, 2.0 * mid, false) >= k)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace slopeci::slopes

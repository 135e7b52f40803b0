#pragma once

// Seeded Monte Carlo coverage study for the slope intervals.  Replicate r of
// a run draws its errors from rng::replicate_stream(seed, r) (n variates in
// index order), so coverage results are bit-for-bit reproducible for a given
// seed regardless of thread count.

#include <cstdint>
#include <string>
#include <vector>

#include "slopeci/intervals.hpp"
#include "slopeci/rational.hpp"
#include "slopeci/rng.hpp"

namespace slopeci::mc {

enum class DesignKind { evenly_spaced, two_clusters, explicit_x };

struct DesignSpec {
  DesignKind kind = DesignKind::evenly_spaced;
  int n = 0;                      // ignored for explicit_x
  std::vector<double> explicit_x;

  static DesignSpec evenly_spaced(int n) { return {DesignKind::evenly_spaced, n, {}}; }
  static DesignSpec two_clusters(int n) { return {DesignKind::two_clusters, n, {}}; }
  static DesignSpec explicit_points(std::vector<double> x) {
    return {DesignKind::explicit_x, static_cast<int>(x.size()), std::move(x)};
  }
};

enum class ErrorFamily { normal, cauchy, uniform };

struct ErrorSpec {
  ErrorFamily family = ErrorFamily::normal;
  double normal_sd = 0.1;
  double cauchy_location = 0.0;
  double cauchy_scale = 0.1;
  double uniform_lo = -0.2;
  double uniform_hi = 0.2;

  static ErrorSpec normal(double sd);
  static ErrorSpec cauchy(double location, double scale);
  static ErrorSpec uniform(double lo, double hi);
};

// Design points on [0, 1]:
//   evenly_spaced: x_i = (i - 1)/(n - 1), i = 1..n  (needs n >= 2)
//   two_clusters:  even n >= 4; equidistant points on (0, 1/3) and (2/3, 1):
//                  x_i = (i - 1)/(3(n/2 - 1))            for i = 1..n/2
//                  x_i = 2/3 + (i - n/2 - 1)/(3(n/2 - 1)) for i = n/2+1..n
std::vector<double> make_design(const DesignSpec& spec);

// n error draws from `stream` in index order.
std::vector<double> sample_errors(const ErrorSpec& spec, int n, rng::Stream& stream);

struct CoverageReport {
  intervals::Method method;
  DesignSpec design;
  ErrorSpec errors;
  Rational level;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  std::uint64_t hits = 0;           // replicates whose open interval covers beta1
  std::uint64_t boundary_hits = 0;  // replicates where beta1 equals an endpoint
  Rational coverage;                // hits / reps, exact
  double std_error = 0.0;           // binomial, from the point estimate
};

// Simulates y_i = intercept + slope * x_i + e_i and counts coverage of
// `slope` by the open interval, via order-statistic counting (no endpoint
// arithmetic).  Exact ties with beta1 are tallied separately as
// boundary_hits.  Throws unachievable_level when the method cannot attain
// `level` at this n.
CoverageReport coverage(intervals::Method method, const DesignSpec& design,
                        const ErrorSpec& errors, const Rational& level,
                        std::uint64_t reps, std::uint64_t seed, double slope = 1.0,
                        double intercept = 0.0);

}  // namespace slopeci::mc

#pragma once

// Exact evaluation of the coverage upper bound for the Walsh-average ("a la
// Tukey") slope interval at n = 5 and confidence level 0.95, where the
// interval is (w_9, w_47) over the P = 55 Walsh averages of the N = 10
// slopes.  Coverage events are decomposed over the admissible orderings of
// the pairwise slopes; each (ordering, condition) cell is a polytope in the
// error vector (e_1..e_5) in U(-h, h)^5, whose exact volume gives its
// probability.

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "slopeci/geometry.hpp"
#include "slopeci/rational.hpp"

namespace slopeci::exact5 {

using PairIndex = std::pair<int, int>;  // 1-based (i, j), i < j <= 5

// A realisable ascending order of the 10 pairwise slopes S_ij.
struct SlopeOrdering {
  std::array<PairIndex, 10> order;  // order[0] = smallest slope's pair
};

// The four cells of the coverage decomposition.  With slopes s_1 < ... <
// s_10 and Walsh averages w_k, the interval is (w_9, w_47).  The key
// equivalences are w_9 >= s_2 iff 2 s_2 <= s_1 + s_9, and w_47 <= s_9 iff
// s_2 + s_10 <= 2 s_9; combined with w_1 = s_1 and w_55 = s_10 they bound
// the interval by outer slope order statistics in each cell:
//   p1: 2 s_2 <= s_1 + s_9  and  s_2 + s_10 <= 2 s_9   ->  CI in (s_2, s_9)
//   p2: 2 s_2 <= s_1 + s_9  and  2 s_9 < s_2 + s_10    ->  CI in (s_2, s_10)
//   p3: s_1 + s_9 < 2 s_2   and  s_2 + s_10 <= 2 s_9   ->  CI in (s_1, s_9)
//   p4: s_1 + s_9 < 2 s_2   and  2 s_9 < s_2 + s_10    ->  CI in (s_1, s_10)
// p_c is the probability of the cell's condition intersected with beta1
// falling in the widened interval, so p1+p2+p3+p4 bounds coverage above.
enum class Condition { p1, p2, p3, p4 };

// All slope orderings realisable by some error vector (for strictly
// increasing x); 768 of them for n = 5.
std::vector<SlopeOrdering> admissible_orderings();

// Halfspace system over (e_1..e_5) for one ordering: the 9 chained ordering
// constraints S_(k) < S_(k+1) plus the cube |e_i| < h.  Centred model with
// beta1 = 0: S_ij - beta1 = (e_i - e_j)/(x_i - x_j).
geometry::Polytope ordering_polytope(const SlopeOrdering& ordering,
                                     const std::array<Rational, 5>& x,
                                     const Rational& h);

// ordering_polytope plus the 4 halfspaces of `condition`: the 2 endpoint-
// selection constraints of the cell and the 2 coverage constraints
// s_a < 0 < s_b for the cell's interval (s_a, s_b).  23 halfspaces total.
geometry::Polytope compile_polytope(const SlopeOrdering& ordering, Condition condition,
                                    const std::array<Rational, 5>& x, const Rational& h);

struct BoundResult {
  Rational p1, p2, p3, p4;
  Rational bound;          // p1 + p2 + p3 + p4
  bool full_mode = false;  // all four probabilities from direct volumes
  // In fast mode on an equidistant design, p3 = p2 and p4 = 0 come from
  // symmetry arguments instead of volume sweeps.
  bool used_symmetry = false;
  std::size_t ordering_count = 0;
  // Per-ordering volumes, aligned with admissible_orderings(); entries are
  // nullopt for cells not computed in fast mode.
  std::vector<std::array<std::optional<Rational>, 4>> cell_volumes;
};

// Exact bound for design x (strictly increasing) and error half-width h > 0.
// fast mode exploits the equidistance symmetries when they apply; full mode
// computes all four probabilities by direct volume sweeps.
BoundResult compute_bound(const std::array<Rational, 5>& x, const Rational& h,
                          bool full_mode);

struct McBoundCheck {
  std::array<double, 4> p{};
  std::array<double, 4> std_error{};
  double bound = 0.0;
  std::uint64_t samples = 0;
};

// Monte Carlo cross-check of the four cell probabilities by direct sampling
// of e ~ U(-h, h)^5.
McBoundCheck mc_bound_check(const std::array<Rational, 5>& x, const Rational& h,
                            std::uint64_t samples, std::uint64_t seed);

}  // namespace slopeci::exact5

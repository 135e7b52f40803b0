#include "slopeci/exact5.hpp"

#include <algorithm>
#include <cmath>

#include "slopeci/errors.hpp"
#include "slopeci/rng.hpp"
#include "slopeci/threads.hpp"

namespace slopeci::exact5 {

namespace {

// The 10 index pairs (i, j), i < j <= 5, in lexicographic order.
const std::array<PairIndex, 10> kPairs = {{{1, 2},
                                           {1, 3},
                                           {1, 4},
                                           {1, 5},
                                           {2, 3},
                                           {2, 4},
                                           {2, 5},
                                           {3, 4},
                                           {3, 5},
                                           {4, 5}}};

void check_design(const std::array<Rational, 5>& x) {
  for (int i = 1; i < 5; ++i)
    if (!(x[i - 1] < x[i])) throw invalid_parameter("design points must be strictly increasing");
}

// Linear form over (e_1..e_5) of the centred slope S_ij - beta1 =
// (e_i - e_j)/(x_i - x_j).
std::array<Rational, 5> slope_form(const PairIndex& pair, const std::array<Rational, 5>& x) {
  std::array<Rational, 5> form{};
  Rational r = Rational(1) / (x[pair.first - 1] - x[pair.second - 1]);
  form[pair.first - 1] += r;
  form[pair.second - 1] -= r;
  return form;
}

geometry::Halfspace make_halfspace(const std::array<Rational, 5>& coeffs, Rational bound) {
  geometry::Halfspace h;
  h.coefficients.assign(coeffs.begin(), coeffs.end());
  h.bound = std::move(bound);
  return h;
}

std::array<Rational, 5> combine(std::initializer_list<std::pair<int, std::array<Rational, 5>>> terms) {
  std::array<Rational, 5> out{};
  for (const auto& [w, form] : terms)
    for (int j = 0; j < 5; ++j) out[j] += w * form[j];
  return out;
}

}  // namespace

std::vector<SlopeOrdering> admissible_orderings() {
  std::vector<SlopeOrdering> result;
  std::array<bool, 10> placed{};
  std::array<int, 10> sequence{};  // positions -> pair ids

  auto pair_id = [](int a, int b) {  // a < b, 1-based
    static const int index[6][6] = {{-1, -1, -1, -1, -1, -1}, {-1, -1, 0, 1, 2, 3},
                                    {-1, -1, -1, 4, 5, 6},    {-1, -1, -1, -1, 7, 8},
                                    {-1, -1, -1, -1, -1, 9},  {-1, -1, -1, -1, -1, -1}};
    return index[a][b];
  };

  // Placing pair (a, c) is legal iff for every intermediate b exactly one of
  // (a, b), (b, c) is already placed: the slope of the outer pair always lies
  // strictly between the two inner slopes, so it can be neither the first nor
  // the last of its trio to appear in the ascending order.
  auto can_place = [&](int id) {
    int a = kPairs[id].first, c = kPairs[id].second;
    for (int b = a + 1; b < c; ++b) {
      bool left = placed[pair_id(a, b)];
      bool right = placed[pair_id(b, c)];
      if (left == right) return false;
    }
    return true;
  };

  auto recurse = [&](auto&& self, int depth) -> void {
    if (depth == 10) {
      SlopeOrdering ord;
      for (int t = 0; t < 10; ++t) ord.order[t] = kPairs[sequence[t]];
      result.push_back(ord);
      return;
    }
    for (int id = 0; id < 10; ++id) {
      if (placed[id] || !can_place(id)) continue;
      placed[id] = true;
      sequence[depth] = id;
      self(self, depth + 1);
      placed[id] = false;
    }
  };
  recurse(recurse, 0);
  return result;
}

geometry::Polytope ordering_polytope(const SlopeOrdering& ordering,
                                     const std::array<Rational, 5>& x, const Rational& h) {
  check_design(x);
  if (!(h > 0)) throw invalid_parameter("error half-width must be positive");

  geometry::Polytope p;
  p.dimension = 5;
  std::array<std::array<Rational, 5>, 10> forms;
  for (int t = 0; t < 10; ++t) forms[t] = slope_form(ordering.order[t], x);

  for (int t = 0; t + 1 < 10; ++t)
    p.halfspaces.push_back(make_halfspace(combine({{1, forms[t]}, {-1, forms[t + 1]}}), 0));

  for (int j = 0; j < 5; ++j) {
    std::array<Rational, 5> up{};
    up[j] = 1;
    p.halfspaces.push_back(make_halfspace(up, h));
    std::array<Rational, 5> down{};
    down[j] = -1;
    p.halfspaces.push_back(make_halfspace(down, h));
  }
  return p;
}

geometry::Polytope compile_polytope(const SlopeOrdering& ordering, Condition condition,
                                    const std::array<Rational, 5>& x, const Rational& h) {
  geometry::Polytope p = ordering_polytope(ordering, x, h);

  std::array<std::array<Rational, 5>, 10> forms;
  for (int t = 0; t < 10; ++t) forms[t] = slope_form(ordering.order[t], x);
  // s_k of the sorted slopes is the form at position k-1.
  const auto& s1 = forms[0];
  const auto& s2 = forms[1];
  const auto& s9 = forms[8];
  const auto& s10 = forms[9];

  auto negate = [](const std::array<Rational, 5>& f) {
    std::array<Rational, 5> g{};
    for (int j = 0; j < 5; ++j) g[j] = -f[j];
    return g;
  };
  auto is_zero = [](const std::array<Rational, 5>& f) {
    for (const auto& c : f)
      if (c != 0) return false;
    return true;
  };

  // With dependent designs (e.g. equally spaced x, where 2*S_13 = S_12 +
  // S_23 identically) a condition row can vanish.  A vanished non-strict
  // row (form <= 0) is vacuously true and is dropped; a vanished strict row
  // (form < 0) can never hold, so the whole cell is empty.
  std::vector<geometry::Halfspace> extra;
  bool empty_cell = false;
  auto add_condition = [&](const std::array<Rational, 5>& form, bool strict) {
    if (is_zero(form)) {
      if (strict) empty_cell = true;
      return;
    }
    extra.push_back(make_halfspace(form, 0));
  };

  switch (condition) {
    case Condition::p1:
      add_condition(combine({{2, s2}, {-1, s1}, {-1, s9}}), false);
      add_condition(combine({{1, s2}, {1, s10}, {-2, s9}}), false);
      extra.push_back(make_halfspace(s2, 0));            // s_2 < beta1
      extra.push_back(make_halfspace(negate(s9), 0));    // beta1 < s_9
      break;
    case Condition::p2:
      add_condition(combine({{2, s2}, {-1, s1}, {-1, s9}}), false);
      add_condition(combine({{2, s9}, {-1, s2}, {-1, s10}}), true);
      extra.push_back(make_halfspace(s2, 0));
      extra.push_back(make_halfspace(negate(s10), 0));
      break;
    case Condition::p3:
      add_condition(combine({{1, s1}, {1, s9}, {-2, s2}}), true);
      add_condition(combine({{1, s2}, {1, s10}, {-2, s9}}), false);
      extra.push_back(make_halfspace(s1, 0));
      extra.push_back(make_halfspace(negate(s9), 0));
      break;
    case Condition::p4:
      add_condition(combine({{1, s1}, {1, s9}, {-2, s2}}), true);
      add_condition(combine({{2, s9}, {-1, s2}, {-1, s10}}), true);
      extra.push_back(make_halfspace(s1, 0));
      extra.push_back(make_halfspace(negate(s10), 0));
      break;
  }

  if (empty_cell) {
    // Replace the condition block with a marker row that contradicts the
    // cube (e_1 <= -2h against e_1 >= -h), leaving an exactly empty cell.
    std::array<Rational, 5> marker{};
    marker[0] = 1;
    extra.clear();
    extra.push_back(make_halfspace(marker, -2 * h));
  }

  // Keep the layout ordering rows, then condition rows, then cube rows.
  p.halfspaces.insert(p.halfspaces.begin() + 9, extra.begin(), extra.end());
  return p;
}

BoundResult compute_bound(const std::array<Rational, 5>& x, const Rational& h,
                          bool full_mode) {
  check_design(x);
  if (!(h > 0)) throw invalid_parameter("error half-width must be positive");

  auto orderings = admissible_orderings();
  bool equidistant = true;
  for (int i = 2; i < 5; ++i)
    if (x[i] - x[i - 1] != x[1] - x[0]) equidistant = false;
  bool use_symmetry = !full_mode && equidistant;

  std::vector<Condition> cells;
  if (use_symmetry)
    cells = {Condition::p1, Condition::p2};
  else
    cells = {Condition::p1, Condition::p2, Condition::p3, Condition::p4};

  using Ledger = std::vector<std::array<std::optional<Rational>, 4>>;
  auto chunks = threads::run_partitioned<Ledger>(
      orderings.size(), [&](std::uint64_t begin, std::uint64_t end) {
        Ledger part;
        part.reserve(end - begin);
        for (std::uint64_t i = begin; i < end; ++i) {
          std::array<std::optional<Rational>, 4> row;
          for (Condition c : cells) {
            auto poly = compile_polytope(orderings[i], c, x, h);
            row[static_cast<int>(c)] = geometry::volume(poly);
          }
          part.push_back(std::move(row));
        }
        return part;
      });

  BoundResult out;
  out.full_mode = full_mode;
  out.used_symmetry = use_symmetry;
  out.ordering_count = orderings.size();
  out.cell_volumes.reserve(orderings.size());
  for (auto& part : chunks)
    for (auto& row : part) out.cell_volumes.push_back(std::move(row));

  Rational side = Rational(2) * h;
  Rational denom = side * side * side * side * side;  // cube volume (2h)^5

  std::array<Rational, 4> sums{};
  for (const auto& row : out.cell_volumes)
    for (int c = 0; c < 4; ++c)
      if (row[c]) sums[c] += *row[c];

  out.p1 = sums[0] / denom;
  out.p2 = sums[1] / denom;
  out.p3 = use_symmetry ? out.p2 : sums[2] / denom;
  out.p4 = use_symmetry ? Rational(0) : sums[3] / denom;
  out.bound = out.p1 + out.p2 + out.p3 + out.p4;
  return out;
}

McBoundCheck mc_bound_check(const std::array<Rational, 5>& x, const Rational& h,
                            std::uint64_t samples, std::uint64_t seed) {
  check_design(x);
  if (!(h > 0)) throw invalid_parameter("error half-width must be positive");
  if (samples == 0) throw invalid_parameter("mc_bound_check needs at least one sample");

  std::array<double, 5> xd;
  for (int i = 0; i < 5; ++i) xd[i] = to_double(x[i]);
  double hd = to_double(h);

  struct Counts {
    std::array<std::uint64_t, 4> hit{};
  };
  // The cell conditions sit exactly on a hyperplane with positive
  // probability whenever the design makes slope forms dependent (for equally
  // spaced x, 2*S_ik = S_ij + S_jk identically whenever x_k - x_j equals
  // x_j - x_i).  Near-zero slacks are therefore reclassified with exact
  // rational arithmetic; doubles convert exactly, so the decision matches
  // the polytope computation's closed/strict split.
  auto chunks = threads::run_partitioned<Counts>(
      samples, [&](std::uint64_t begin, std::uint64_t end) {
        Counts counts;
        struct Slope {
          double value;
          int i, j;
        };
        std::array<Slope, 10> s;
        auto exact_slope = [&](const std::array<double, 5>& e, int a, int b) {
          return (rational_from_double(e[a]) - rational_from_double(e[b])) /
                 (x[a] - x[b]);
        };
        for (std::uint64_t r = begin; r < end; ++r) {
          auto stream = rng::replicate_stream(seed, r);
          std::array<double, 5> e;
          for (int i = 0; i < 5; ++i) e[i] = stream.next_uniform(-hd, hd);
          int t = 0;
          for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) s[t++] = {(e[i] - e[j]) / (xd[i] - xd[j]), i, j};
          std::sort(s.begin(), s.end(),
                    [](const Slope& a, const Slope& b) { return a.value < b.value; });
          double scale = std::max({1.0, std::fabs(s[0].value), std::fabs(s[9].value)});
          double slack_a = 2 * s[1].value - (s[0].value + s[8].value);
          double slack_b = (s[1].value + s[9].value) - 2 * s[8].value;
          bool cond_a, cond_b;
          if (std::fabs(slack_a) > 1e-9 * scale) {
            cond_a = slack_a < 0;   // w_9 >= s_2
          } else {
            cond_a = 2 * exact_slope(e, s[1].i, s[1].j) <=
                     exact_slope(e, s[0].i, s[0].j) + exact_slope(e, s[8].i, s[8].j);
          }
          if (std::fabs(slack_b) > 1e-9 * scale) {
            cond_b = slack_b < 0;   // w_47 <= s_9
          } else {
            cond_b = exact_slope(e, s[1].i, s[1].j) + exact_slope(e, s[9].i, s[9].j) <=
                     2 * exact_slope(e, s[8].i, s[8].j);
          }
          int cell = cond_a ? (cond_b ? 0 : 1) : (cond_b ? 2 : 3);
          double lo = cond_a ? s[1].value : s[0].value;
          double hi = cond_b ? s[8].value : s[9].value;
          if (lo < 0.0 && 0.0 < hi) ++counts.hit[cell];
        }
        return counts;
      });

  McBoundCheck out;
  out.samples = samples;
  std::array<std::uint64_t, 4> totals{};
  for (const auto& c : chunks)
    for (int i = 0; i < 4; ++i) totals[i] += c.hit[i];
  double n = static_cast<double>(samples);
  for (int i = 0; i < 4; ++i) {
    out.p[i] = static_cast<double>(totals[i]) / n;
    out.std_error[i] = std::sqrt(out.p[i] * (1.0 - out.p[i]) / n);
    out.bound += out.p[i];
  }
  return out;
}

}  // namespace slopeci::exact5

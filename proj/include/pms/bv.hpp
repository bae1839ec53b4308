#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "pms/errors.hpp"
#include "pms/space.hpp"

namespace pms {

// Real function over the points of a space.
template <typename T>
using BVFunction = std::vector<T>;

template <typename T>
struct VariationMeasure {
  std::vector<T> density;  // |Du|({x}) per point
  T total;                 // Var(u) = sum of densities

  T of_window(const SubsetMask& a) const {
    T sum(0);
    a.for_each([&](std::size_t x) { sum += density[x]; });
    return sum;
  }
};

template <typename T>
struct Slope {
  std::vector<T> values;  // |grad u|(x) = |Du|({x}) / m(x)
  double p = 1.0;         // exponent the slope is used for; numerically p-independent
};

namespace detail {

template <typename T>
void validate_function(const FiniteSpace<T>& space, const BVFunction<T>& u) {
  if (u.size() != space.points()) throw domain_error("function length does not match space");
  for (auto& v : u)
    if (!scalar_traits<T>::is_finite(v)) throw domain_error("function has non-finite entries");
}

template <typename T>
T variation_slack(const FiniteSpace<T>& space, const T& scale) {
  if constexpr (scalar_traits<T>::is_exact)
    return T(0);
  else
    return scalar_traits<T>::tolerance() * (T(1) + (scale < T(0) ? T(-scale) : scale));
}

// Superlevel decomposition: for distinct values w_0 < w_1 < ... of u, the set
// {u > t} is constant on [w_{j-1}, w_j) and equals {u >= w_j}.
template <typename T>
std::vector<T> distinct_sorted(const BVFunction<T>& u) {
  std::vector<T> vals(u);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

template <typename T>
SubsetMask at_least(const BVFunction<T>& u, const T& threshold) {
  SubsetMask m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] >= threshold) m.set(i, true);
  return m;
}

template <typename T>
SubsetMask at_most(const BVFunction<T>& u, const T& threshold) {
  SubsetMask m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] <= threshold) m.set(i, true);
  return m;
}

// Edge-sum variation (1/2) sum_{x,y} w |u(x)-u(y)|; cut oracles only.
template <typename T>
T edge_sum_variation(const FiniteSpace<T>& space, const BVFunction<T>& u) {
  T sum(0);
  for (auto& e : space.oracle().edges()) sum += e.weight * abs_value(u[e.a] - u[e.b]);
  return sum;
}

}  // namespace detail

// Total variation through the level decomposition: an exact finite sum of
// P({u > t}) over the value gaps of u.  For cut oracles the edge sum is
// cross-checked against it.
template <typename T>
T variation(const FiniteSpace<T>& space, const BVFunction<T>& u) {
  detail::validate_function(space, u);
  auto vals = detail::distinct_sorted(u);
  T level_sum(0);
  if (space.oracle().has_cut_form()) {
    // Sweep from the top value down, maintaining the cut of {u >= w} with
    // O(deg) updates per point.
    std::vector<std::size_t> order(u.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (u[a] != u[b]) return u[b] < u[a];
      return a < b;
    });
    std::vector<char> inside(u.size(), 0);
    T cut(0);
    std::size_t idx = 0;
    for (std::size_t j = vals.size(); j-- > 0;) {
      const T& level = vals[j];
      while (idx < order.size() && u[order[idx]] >= level) {
        std::size_t x = order[idx++];
        for (auto& [y, w] : space.oracle().neighbors(x)) cut += inside[y] ? -w : w;
        inside[x] = 1;
      }
      if (j > 0) level_sum += (level - vals[j - 1]) * cut;
    }
  } else {
    for (std::size_t j = 1; j < vals.size(); ++j) {
      T gap = vals[j] - vals[j - 1];
      level_sum += gap * space.perimeter(detail::at_least(u, vals[j]));
    }
  }
  // The tails contribute P(X) and P(empty) over unbounded intervals.
  T tails = space.perimeter(space.full_mask()) + space.perimeter(space.empty_mask());
  if (tails > detail::variation_slack(space, level_sum))
    throw domain_error("variation is infinite: the oracle violates P.1/P.2");
  if (space.oracle().has_cut_form()) {
    T edge = detail::edge_sum_variation(space, u);
    T scale = edge + level_sum;
    if (abs_value(edge - level_sum) > detail::variation_slack(space, scale))
      throw theorem_violation_error("coarea mismatch: level integral differs from edge sum");
  }
  return level_sum;
}

// Per-point variation measure |Du|; cut oracle required.
template <typename T>
VariationMeasure<T> variation_measure(const FiniteSpace<T>& space, const BVFunction<T>& u) {
  detail::validate_function(space, u);
  if (!space.oracle().has_cut_form())
    throw unsupported_operation_error("variation measure requires a relative (cut) oracle");
  VariationMeasure<T> out;
  out.density.assign(space.points(), T(0));
  for (auto& e : space.oracle().edges()) {
    T half = e.weight * abs_value(u[e.a] - u[e.b]) / T(2);
    out.density[e.a] += half;
    out.density[e.b] += half;
  }
  out.total = T(0);
  for (auto& d : out.density) out.total += d;
  return out;
}

// Two-sided Cavalieri/coarea pair (||u||_1, Var(u)) via the symmetric level
// family F^t = {u > t} for t >= 0 and {u < t} for t < 0.  Requires P.7.
template <typename T>
std::pair<T, T> symmetric_coarea(const FiniteSpace<T>& space, const BVFunction<T>& u) {
  detail::validate_function(space, u);
  if (!space.oracle().declares(Axiom::P7))
    throw axiom_missing_error("symmetric coarea needs P.7 declared or verified");

  T mass(0), var(0);
  auto vals = detail::distinct_sorted(u);
  // Positive side: thresholds at the positive values of u.
  {
    T prev(0);
    for (auto& v : vals) {
      if (v <= T(0)) continue;
      SubsetMask f = detail::at_least(u, v);  // {u > t} for t in [prev, v)
      mass += (v - prev) * space.measure_of(f);
      var += (v - prev) * space.perimeter(f);
      prev = v;
    }
  }
  // Negative side: thresholds at the negative values, walked towards zero.
  {
    T prev(0);
    for (std::size_t j = vals.size(); j-- > 0;) {
      const T& v = vals[j];
      if (v >= T(0)) continue;
      SubsetMask f = detail::at_most(u, v);  // {u < t} for t in (v, prev]
      mass += (prev - v) * space.measure_of(f);
      var += (prev - v) * space.perimeter(f);
      prev = v;
    }
  }

  // Internal cross-checks: both identities are exact finite sums.
  T direct_mass(0);
  for (std::size_t i = 0; i < u.size(); ++i) direct_mass += space.measure(i) * abs_value(u[i]);
  if (abs_value(direct_mass - mass) > detail::variation_slack(space, direct_mass))
    throw theorem_violation_error("symmetric coarea: Cavalieri mass mismatch");
  T var_plain = variation(space, u);
  if (abs_value(var_plain - var) > detail::variation_slack(space, var_plain + var))
    throw theorem_violation_error("symmetric coarea: variation mismatch");
  return {mass, var};
}

// The weak p-slope collapses to the 1-slope on finite spaces: the constant
// sequence u_k = u realizes |grad u| inside Slope_p(u), and window-wise lower
// semicontinuity forces any competitor above it pointwise.
template <typename T>
Slope<T> weak_p_slope(const FiniteSpace<T>& space, const BVFunction<T>& u, double p) {
  if (!(p > 1.0)) throw domain_error("weak p-slope needs p in (1, inf)");
  auto dm = variation_measure(space, u);
  Slope<T> s;
  s.p = p;
  s.values.resize(space.points());
  for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] = dm.density[i] / space.measure(i);
  return s;
}

template <typename T>
Slope<T> one_slope(const FiniteSpace<T>& space, const BVFunction<T>& u) {
  auto dm = variation_measure(space, u);
  Slope<T> s;
  s.p = 1.0;
  s.values.resize(space.points());
  for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] = dm.density[i] / space.measure(i);
  return s;
}

// L1 distance between |D phi(u)| and phi'(u) |Du|.  A diagnostic only: the
// chain rule needs a locality property that no cut perimeter has, so the
// defect is reported, never asserted zero.
template <typename T>
T chain_rule_defect(const FiniteSpace<T>& space, const BVFunction<T>& u,
                    const std::function<T(const T&)>& phi,
                    const std::function<T(const T&)>& phi_prime) {
  detail::validate_function(space, u);
  auto vals = detail::distinct_sorted(u);
  for (auto& v : vals)
    if (phi_prime(v) < T(0))
      throw domain_error("chain rule diagnostic needs a strictly increasing phi");
  for (std::size_t j = 1; j < vals.size(); ++j)
    if (!(phi(vals[j]) > phi(vals[j - 1])))
      throw domain_error("chain rule diagnostic needs a strictly increasing phi");

  BVFunction<T> composed(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) composed[i] = phi(u[i]);
  auto lhs = variation_measure(space, composed);
  auto rhs = variation_measure(space, u);
  T defect(0);
  for (std::size_t i = 0; i < u.size(); ++i)
    defect += abs_value(lhs.density[i] - phi_prime(u[i]) * rhs.density[i]);
  return defect;
}

// Var(lambda u + (1-lambda) v) <= lambda Var(u) + (1-lambda) Var(v), within
// 1e-12 in float mode.
template <typename T>
bool convexity_check(const FiniteSpace<T>& space, const BVFunction<T>& u, const BVFunction<T>& v,
                     const T& lambda) {
  if (lambda < T(0) || lambda > T(1)) throw domain_error("lambda must lie in [0, 1]");
  for (Axiom a : {Axiom::P1, Axiom::P2, Axiom::P3, Axiom::P4})
    if (!space.oracle().declares(a))
      throw axiom_missing_error("convexity check needs P.1-P.4 declared (cut oracles qualify)");
  detail::validate_function(space, u);
  detail::validate_function(space, v);
  BVFunction<T> mix(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    mix[i] = lambda * u[i] + (T(1) - lambda) * v[i];
  T lhs = variation(space, mix);
  T rhs = lambda * variation(space, u) + (T(1) - lambda) * variation(space, v);
  if constexpr (scalar_traits<T>::is_exact)
    return lhs <= rhs;
  else
    return lhs <= rhs + 1e-12 * (1.0 + std::abs(to_double(rhs)));
}

}  // namespace pms

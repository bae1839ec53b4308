#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "pms/space.hpp"

namespace pms {

// Perimeter and measure for every subset of a ground set, indexed by local
// bit masks over `ground` (point ground[i] at bit i).  Perimeter counts cut
// edges to all of X, not just to the ground set.
template <typename T>
struct SubsetTables {
  std::vector<std::size_t> ground;
  std::vector<T> perimeter;
  std::vector<T> measure;

  SubsetMask to_global(std::uint32_t local, std::size_t n) const {
    SubsetMask m(n);
    for (std::size_t i = 0; i < ground.size(); ++i)
      if ((local >> i) & 1u) m.set(ground[i], true);
    return m;
  }
};

template <typename T>
SubsetTables<T> subset_tables(const FiniteSpace<T>& space, const std::vector<std::size_t>& ground) {
  const std::size_t k = ground.size();
  if (k > 24) throw size_error("exhaustive enumeration limited to 24 points");
  SubsetTables<T> t;
  t.ground = ground;
  const std::size_t count = std::size_t{1} << k;
  t.perimeter.assign(count, T(0));
  t.measure.assign(count, T(0));

  std::vector<std::ptrdiff_t> local_of(space.points(), -1);
  for (std::size_t i = 0; i < k; ++i) local_of[ground[i]] = static_cast<std::ptrdiff_t>(i);

  if (space.oracle().has_cut_form()) {
    std::vector<T> degree(k, T(0));
    for (std::size_t i = 0; i < k; ++i) degree[i] = space.oracle().weighted_degree(ground[i]);
    for (std::size_t s = 1; s < count; ++s) {
      const unsigned low = static_cast<unsigned>(std::countr_zero(s));
      const std::size_t prev = s & (s - 1);
      T delta = degree[low];
      for (auto& [y, w] : space.oracle().neighbors(ground[low])) {
        auto ly = local_of[y];
        if (ly >= 0 && ((prev >> ly) & 1u)) delta -= T(2) * w;
      }
      t.perimeter[s] = t.perimeter[prev] + delta;
      t.measure[s] = t.measure[prev] + space.measure(ground[low]);
    }
    if constexpr (!scalar_traits<T>::is_exact) {
      // The lowbit recursion can leave a tiny negative residue on zero-cut
      // sets; clamp it so downstream ratio signs stay meaningful.
      for (auto& p : t.perimeter)
        if (p < 0 && p > -1e-12) p = 0;
    }
  } else {
    SubsetMask m(space.points());
    for (std::size_t s = 1; s < count; ++s) {
      const unsigned low = static_cast<unsigned>(std::countr_zero(s));
      const std::size_t prev = s & (s - 1);
      m = t.to_global(static_cast<std::uint32_t>(s), space.points());
      t.perimeter[s] = space.perimeter(m);
      t.measure[s] = t.measure[prev] + space.measure(ground[low]);
    }
    t.perimeter[0] = space.perimeter(SubsetMask(space.points()));
  }
  return t;
}

template <typename T>
SubsetTables<T> subset_tables(const FiniteSpace<T>& space) {
  std::vector<std::size_t> all(space.points());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return subset_tables(space, all);
}

}  // namespace pms

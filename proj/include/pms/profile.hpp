#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "pms/enumerate.hpp"
#include "pms/rng.hpp"
#include "pms/space.hpp"

namespace pms {

// Isoperimetric profile f(eps) = min { P(E)/m(E) : 0 < m(E) <= eps }, stored
// as breakpoints at the achievable measures.
template <typename T>
struct IsoperimetricProfile {
  std::vector<std::pair<T, T>> breakpoints;  // (eps, f(eps)), eps increasing, f non-increasing
  bool exact = true;

  // Least-ratio bound valid for sets of measure <= eps; empty when no set
  // that small exists (the constraint is vacuous there).
  std::optional<T> value_at(const T& eps) const {
    std::optional<T> out;
    for (auto& [m, f] : breakpoints) {
      if (m <= eps)
        out = f;
      else
        break;
    }
    return out;
  }

  // Positivity on proper subsets: the meaningful finite-space reading of the
  // isoperimetric property (the whole space always has zero ratio when the
  // perimeter of X vanishes).
  bool positive_on_proper(const T& total_measure) const {
    for (auto& [m, f] : breakpoints)
      if (m < total_measure && f <= T(0)) return false;
    return true;
  }
};

// Exact profile by exhaustive enumeration; n <= 20.
template <typename T>
IsoperimetricProfile<T> isoperimetric_profile(const FiniteSpace<T>& space) {
  const std::size_t n = space.points();
  if (n > 20) throw size_error("exact profile limited to n <= 20 (use sampled_profile)");
  auto tables = subset_tables(space);
  const std::size_t count = std::size_t{1} << n;

  std::vector<std::uint32_t> order(count - 1);
  for (std::size_t s = 1; s < count; ++s) order[s - 1] = static_cast<std::uint32_t>(s);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return tables.measure[a] < tables.measure[b];
  });

  IsoperimetricProfile<T> profile;
  bool have_min = false;
  T running_min(0);
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    const std::uint32_t s = order[idx];
    T ratio = tables.perimeter[s] / tables.measure[s];
    if (!have_min || ratio < running_min) {
      running_min = ratio;
      have_min = true;
    }
    const bool last_of_measure =
        idx + 1 == order.size() || tables.measure[order[idx + 1]] != tables.measure[s];
    if (last_of_measure) {
      if (!profile.breakpoints.empty() && profile.breakpoints.back().second == running_min)
        continue;  // same bound extends; keep breakpoints minimal
      profile.breakpoints.emplace_back(tables.measure[s], running_min);
    }
  }
  return profile;
}

// Random-subset lower-confidence profile for spaces beyond the exhaustive
// range; flagged as inexact.
template <typename T>
IsoperimetricProfile<T> sampled_profile(const FiniteSpace<T>& space, std::uint64_t seed,
                                        std::size_t samples) {
  const std::size_t n = space.points();
  std::vector<std::pair<T, T>> observed;
  observed.reserve(samples + n);
  for (std::size_t i = 0; i < n; ++i) {
    SubsetMask m(n);
    m.set(i, true);
    observed.emplace_back(space.measure(i), space.perimeter(m) / space.measure(i));
  }
  for (std::size_t trial = 0; trial < samples; ++trial) {
    auto rng = stream(seed, trial);
    SubsetMask m(n);
    double density = rng.next_unit();
    for (std::size_t i = 0; i < n; ++i)
      if (rng.next_unit() < density) m.set(i, true);
    if (m.empty()) m.set(rng.next_below(n), true);
    T mass = space.measure_of(m);
    observed.emplace_back(mass, space.perimeter(m) / mass);
  }
  std::sort(observed.begin(), observed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  IsoperimetricProfile<T> profile;
  profile.exact = false;
  bool have_min = false;
  T running_min(0);
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!have_min || observed[i].second < running_min) {
      running_min = observed[i].second;
      have_min = true;
    }
    const bool last_of_measure =
        i + 1 == observed.size() || observed[i + 1].first != observed[i].first;
    if (last_of_measure) {
      if (!profile.breakpoints.empty() && profile.breakpoints.back().second == running_min)
        continue;
      profile.breakpoints.emplace_back(observed[i].first, running_min);
    }
  }
  return profile;
}

}  // namespace pms

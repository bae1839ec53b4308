#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pms/enumerate.hpp"
#include "pms/parallel.hpp"
#include "pms/profile.hpp"
#include "pms/rng.hpp"
#include "pms/space.hpp"

namespace pms {

enum class Verdict { HoldsByStructure, HoldsExhaustive, HoldsRandomized, Violated, NotApplicable };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::HoldsByStructure: return "holds (proved by structure)";
    case Verdict::HoldsExhaustive: return "holds (verified exhaustively)";
    case Verdict::HoldsRandomized: return "holds (randomized)";
    case Verdict::Violated: return "violated";
    case Verdict::NotApplicable: return "not applicable";
  }
  return "?";
}

struct AxiomWitness {
  std::vector<SubsetMask> sets;
  std::string detail;
};

struct AxiomFinding {
  Axiom axiom;
  Verdict verdict = Verdict::NotApplicable;
  std::size_t trials = 0;  // randomized verdicts only
  std::string justification;
  std::optional<AxiomWitness> witness;
};

struct CheckMode {
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::size_t trials = 1024;
  unsigned jobs = 1;

  static CheckMode Exhaustive(unsigned jobs = 1) { return {true, 0, 0, jobs}; }
  static CheckMode Randomized(std::uint64_t seed, std::size_t trials = 1024, unsigned jobs = 1) {
    return {false, seed, trials, jobs};
  }
};

template <typename T>
struct AxiomReport {
  std::vector<AxiomFinding> findings;

  const AxiomFinding* find(Axiom a) const {
    for (auto& f : findings)
      if (f.axiom == a) return &f;
    return nullptr;
  }

  bool holds(Axiom a) const {
    auto* f = find(a);
    return f && (f->verdict == Verdict::HoldsByStructure || f->verdict == Verdict::HoldsExhaustive ||
                 f->verdict == Verdict::HoldsRandomized);
  }

  // Every recorded witness must still fail its axiom when re-evaluated.
  bool recheck_witnesses(const FiniteSpace<T>& space) const {
    const T tol = equality_slack(space);
    for (auto& f : findings) {
      if (f.verdict != Verdict::Violated) continue;
      if (!f.witness) return false;
      const auto& sets = f.witness->sets;
      switch (f.axiom) {
        case Axiom::P1:
          if (!(abs_value(space.perimeter(sets.at(0))) > tol)) return false;
          break;
        case Axiom::P2:
          if (!(abs_value(space.perimeter(sets.at(0))) > tol)) return false;
          break;
        case Axiom::P3: {
          const auto& e = sets.at(0);
          const auto& fset = sets.at(1);
          T lhs = space.perimeter(e & fset) + space.perimeter(e | fset);
          T rhs = space.perimeter(e) + space.perimeter(fset);
          if (!(lhs > rhs + tol)) return false;
          break;
        }
        case Axiom::P6: {
          const auto& e = sets.at(0);
          if (e.empty()) return false;
          if (!(space.perimeter(e) <= tol)) return false;
          break;
        }
        case Axiom::P7: {
          const auto& e = sets.at(0);
          if (!(abs_value(space.perimeter(e) - space.perimeter(e.complement())) > tol)) return false;
          break;
        }
        case Axiom::RPL: {
          // Discrete topology: every set is clopen with empty boundary, so
          // locality would force all relative perimeters to vanish.
          if (!(relative_perimeter(space, sets.at(0), sets.at(1)) > tol)) return false;
          break;
        }
        default:
          return false;
      }
    }
    return true;
  }

private:
  static T equality_slack(const FiniteSpace<T>& space) {
    if constexpr (scalar_traits<T>::is_exact) {
      return T(0);
    } else {
      return scalar_traits<T>::tolerance() * (T(1) + to_double(space.total_measure()));
    }
  }
};

namespace detail {

template <typename T>
T check_slack(const FiniteSpace<T>& space, const std::type_identity_t<T>& scale) {
  (void)space;
  if constexpr (scalar_traits<T>::is_exact)
    return T(0);
  else
    return scalar_traits<T>::tolerance() * (T(1) + scale);
}

template <typename T>
void validate_oracle_values(const FiniteSpace<T>& space, const CheckMode& mode) {
  auto probe = [&](const SubsetMask& m) {
    T v = space.perimeter(m);
    if (!scalar_traits<T>::is_finite(v))
      throw malformed_oracle_error("perimeter oracle returned a non-finite value on " + m.to_string());
    if (v < T(0))
      throw malformed_oracle_error("perimeter oracle returned a negative value on " + m.to_string());
  };
  const std::size_t n = space.points();
  if (!space.oracle().has_cut_form() && n <= 20) {
    for (std::size_t s = 0; s < (std::size_t{1} << n); ++s)
      probe(SubsetMask::from_bits(n, s));
    return;
  }
  probe(space.empty_mask());
  probe(space.full_mask());
  for (std::size_t i = 0; i < n && i < 64; ++i) {
    SubsetMask m(n);
    m.set(i, true);
    probe(m);
  }
  for (std::size_t t = 0; t < std::min<std::size_t>(mode.trials, 256); ++t) {
    auto rng = stream(mode.seed ^ 0x6f7261636c65ULL, t);
    SubsetMask m(n);
    for (std::size_t i = 0; i < n; ++i)
      if (rng.next() & 1u) m.set(i, true);
    probe(m);
  }
}

template <typename T>
SubsetMask random_mask(std::size_t n, SplitMix64& rng) {
  SubsetMask m(n);
  double density = rng.next_unit();
  for (std::size_t i = 0; i < n; ++i)
    if (rng.next_unit() < density) m.set(i, true);
  return m;
}

}  // namespace detail

// Machine verification of the perimeter axioms.  Exhaustive mode enumerates
// every set (pairs for P.3), and requires n <= 14; randomized mode samples
// `trials` sets/pairs with counter-based seeding, deterministic under any
// thread count.
template <typename T>
AxiomReport<T> check_axioms(const FiniteSpace<T>& space, const CheckMode& mode) {
  const std::size_t n = space.points();
  if (mode.exhaustive && n > 14)
    throw size_error("exhaustive axiom check limited to n <= 14; use randomized mode");

  detail::validate_oracle_values(space, mode);

  AxiomReport<T> report;
  const bool cut = space.oracle().has_cut_form();
  const Verdict hold_kind = mode.exhaustive ? Verdict::HoldsExhaustive : Verdict::HoldsRandomized;
  const std::size_t trials = mode.exhaustive ? 0 : mode.trials;

  auto add = [&](AxiomFinding f) { report.findings.push_back(std::move(f)); };

  // P.1 / P.2 by direct evaluation.
  {
    T slack = detail::check_slack(space, space.perimeter(space.full_mask()) + T(1));
    AxiomFinding p1{Axiom::P1, Verdict::HoldsExhaustive, 0, "P(empty) evaluated directly", std::nullopt};
    if (abs_value(space.perimeter(space.empty_mask())) > slack) {
      p1.verdict = Verdict::Violated;
      p1.witness = AxiomWitness{{space.empty_mask()}, "P(empty) != 0"};
    }
    add(std::move(p1));
    AxiomFinding p2{Axiom::P2, Verdict::HoldsExhaustive, 0, "P(X) evaluated directly", std::nullopt};
    if (abs_value(space.perimeter(space.full_mask())) > slack) {
      p2.verdict = Verdict::Violated;
      p2.witness = AxiomWitness{{space.full_mask()}, "P(X) != 0"};
    }
    add(std::move(p2));
  }

  // P.3 submodularity over pairs.
  {
    AxiomFinding p3{Axiom::P3, hold_kind, trials, "", std::nullopt};
    if (mode.exhaustive) {
      auto tables = subset_tables(space);
      const std::size_t count = std::size_t{1} << n;
      std::vector<std::uint64_t> first_bad(chunk_count(count, mode.jobs), ~0ULL);
      T slack = detail::check_slack(space, tables.perimeter[count - 1] + space.perimeter(space.empty_mask()) + T(1));
      // Max over the table gives a sound scale for float comparison.
      if constexpr (!scalar_traits<T>::is_exact) {
        T mx(0);
        for (auto& v : tables.perimeter) mx = std::max(mx, v);
        slack = detail::check_slack(space, mx);
      }
      parallel_chunks(count, mode.jobs, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        std::uint64_t bad = ~0ULL;
        for (std::size_t e = begin; e < end && bad == ~0ULL; ++e) {
          for (std::size_t f = e; f < count; ++f) {
            T lhs = tables.perimeter[e & f] + tables.perimeter[e | f];
            T rhs = tables.perimeter[e] + tables.perimeter[f];
            if (lhs > rhs + slack) {
              bad = (static_cast<std::uint64_t>(e) << 24) | f;
              break;
            }
          }
        }
        first_bad[chunk] = bad;
      });
      std::uint64_t bad = ~0ULL;
      for (auto b : first_bad) bad = std::min(bad, b);
      if (bad != ~0ULL) {
        p3.verdict = Verdict::Violated;
        p3.witness = AxiomWitness{{SubsetMask::from_bits(n, bad >> 24), SubsetMask::from_bits(n, bad & 0xffffffULL)},
                                  "P(E&F)+P(E|F) > P(E)+P(F)"};
      }
    } else {
      T scale = space.perimeter(space.full_mask()) + T(1);
      for (std::size_t x = 0; x < n; ++x) scale += space.oracle().has_cut_form() ? space.oracle().weighted_degree(x) : T(0);
      T slack = detail::check_slack(space, scale);
      for (std::size_t t = 0; t < trials; ++t) {
        auto rng = stream(mode.seed ^ 0x503353ULL, t);
        SubsetMask e = detail::random_mask<T>(n, rng);
        SubsetMask f = detail::random_mask<T>(n, rng);
        T lhs = space.perimeter(e & f) + space.perimeter(e | f);
        T rhs = space.perimeter(e) + space.perimeter(f);
        if (lhs > rhs + slack) {
          p3.verdict = Verdict::Violated;
          p3.witness = AxiomWitness{{e, f}, "P(E&F)+P(E|F) > P(E)+P(F)"};
          break;
        }
      }
    }
    add(std::move(p3));
  }

  // P.4 / P.5: on a finite space with strictly positive masses, L1-convergent
  // sequences of indicators are eventually constant, so lower semicontinuity
  // and sublevel compactness hold by structure.
  add(AxiomFinding{Axiom::P4, Verdict::HoldsByStructure, 0,
                   "L1 convergence on a finite space with positive masses implies eventual constancy",
                   std::nullopt});
  add(AxiomFinding{Axiom::P5, Verdict::HoldsByStructure, 0,
                   "indicator sublevels are finite sets, hence L1-compact", std::nullopt});

  // P.6 via profile positivity on proper subsets.
  {
    AxiomFinding p6{Axiom::P6, hold_kind, trials, "profile positivity on proper subsets", std::nullopt};
    if (n <= 20 && (mode.exhaustive || n <= 14)) {
      auto tables = subset_tables(space);
      const std::size_t count = std::size_t{1} << n;
      p6.verdict = Verdict::HoldsExhaustive;
      p6.trials = 0;
      for (std::size_t s = 1; s + 1 < count; ++s) {
        if (tables.perimeter[s] <= detail::check_slack(space, tables.measure[s])) {
          p6.verdict = Verdict::Violated;
          p6.witness = AxiomWitness{{SubsetMask::from_bits(n, s)}, "proper nonempty set with zero perimeter"};
          break;
        }
      }
    } else {
      for (std::size_t t = 0; t < trials; ++t) {
        auto rng = stream(mode.seed ^ 0x503636ULL, t);
        SubsetMask e = detail::random_mask<T>(n, rng);
        if (e.empty() || e.count() == n) continue;
        if (space.perimeter(e) <= detail::check_slack(space, space.measure_of(e))) {
          p6.verdict = Verdict::Violated;
          p6.witness = AxiomWitness{{e}, "proper nonempty set with zero perimeter"};
          break;
        }
      }
    }
    add(std::move(p6));
  }

  // P.7 symmetry under complement.
  {
    AxiomFinding p7{Axiom::P7, hold_kind, trials, "", std::nullopt};
    auto check_one = [&](const SubsetMask& e) -> bool {
      T a = space.perimeter(e);
      T b = space.perimeter(e.complement());
      return abs_value(a - b) <= detail::check_slack(space, a + b);
    };
    if (mode.exhaustive) {
      const std::size_t count = std::size_t{1} << n;
      for (std::size_t s = 0; s < count; ++s) {
        SubsetMask e = SubsetMask::from_bits(n, s);
        if (!check_one(e)) {
          p7.verdict = Verdict::Violated;
          p7.witness = AxiomWitness{{e}, "P(E) != P(X\\E)"};
          break;
        }
      }
    } else {
      for (std::size_t t = 0; t < trials; ++t) {
        auto rng = stream(mode.seed ^ 0x503737ULL, t);
        SubsetMask e = detail::random_mask<T>(n, rng);
        if (!check_one(e)) {
          p7.verdict = Verdict::Violated;
          p7.witness = AxiomWitness{{e}, "P(E) != P(X\\E)"};
          break;
        }
      }
    }
    add(std::move(p7));
  }

  // Relative-perimeter properties need the cut form.
  if (!cut) {
    for (Axiom a : {Axiom::RP1, Axiom::RP2, Axiom::RP3, Axiom::RP4, Axiom::RPplus, Axiom::RPL})
      add(AxiomFinding{a, Verdict::NotApplicable, 0, "oracle has no relative form", std::nullopt});
    return report;
  }

  // RP.1 / RP.2: evaluate the relative form on empty set and full space over
  // sampled (or all) windows.
  {
    auto window_check = [&](const SubsetMask& base, Axiom ax, const char* what) {
      AxiomFinding f{ax, hold_kind, trials, "", std::nullopt};
      auto probe = [&](const SubsetMask& a) {
        return abs_value(relative_perimeter(space, base, a)) <=
               detail::check_slack(space, space.perimeter(space.full_mask()) + T(1));
      };
      if (mode.exhaustive) {
        const std::size_t count = std::size_t{1} << n;
        for (std::size_t s = 0; s < count; ++s) {
          SubsetMask a = SubsetMask::from_bits(n, s);
          if (!probe(a)) {
            f.verdict = Verdict::Violated;
            f.witness = AxiomWitness{{base, a}, what};
            break;
          }
        }
      } else {
        for (std::size_t t = 0; t < trials; ++t) {
          auto rng = stream(mode.seed ^ 0x525031ULL ^ static_cast<std::uint64_t>(ax), t);
          SubsetMask a = detail::random_mask<T>(n, rng);
          if (!probe(a)) {
            f.verdict = Verdict::Violated;
            f.witness = AxiomWitness{{base, a}, what};
            break;
          }
        }
      }
      add(std::move(f));
    };
    window_check(space.empty_mask(), Axiom::RP1, "P(empty; A) != 0");
    window_check(space.full_mask(), Axiom::RP2, "P(X; A) != 0");
  }

  // RP.3: per-point density submodularity; additivity in the window lifts the
  // pointwise inequality to every window.
  {
    AxiomFinding rp3{Axiom::RP3, hold_kind, trials,
                     "pointwise density submodularity; windows follow by additivity", std::nullopt};
    std::size_t pair_trials = mode.exhaustive ? 0 : trials;
    bool exhaustive_pairs = mode.exhaustive && n <= 10;
    if (mode.exhaustive && !exhaustive_pairs) {
      pair_trials = 4096;  // full pair x point sweep would be 4^n * n
      rp3.verdict = Verdict::HoldsRandomized;
      rp3.trials = pair_trials;
    }
    auto pair_ok = [&](const SubsetMask& e, const SubsetMask& f) -> std::optional<std::size_t> {
      for (std::size_t x = 0; x < n; ++x) {
        T lhs = space.oracle().point_density(e & f, x) + space.oracle().point_density(e | f, x);
        T rhs = space.oracle().point_density(e, x) + space.oracle().point_density(f, x);
        if (lhs > rhs + detail::check_slack(space, rhs)) return x;
      }
      return std::nullopt;
    };
    if (exhaustive_pairs) {
      const std::size_t count = std::size_t{1} << n;
      for (std::size_t e = 0; e < count && rp3.verdict != Verdict::Violated; ++e) {
        for (std::size_t f = e; f < count; ++f) {
          auto bad = pair_ok(SubsetMask::from_bits(n, e), SubsetMask::from_bits(n, f));
          if (bad) {
            rp3.verdict = Verdict::Violated;
            rp3.witness = AxiomWitness{{SubsetMask::from_bits(n, e), SubsetMask::from_bits(n, f)},
                                       "density submodularity failed at point " + std::to_string(*bad)};
            break;
          }
        }
      }
    } else {
      for (std::size_t t = 0; t < pair_trials; ++t) {
        auto rng = stream(mode.seed ^ 0x525033ULL, t);
        SubsetMask e = detail::random_mask<T>(n, rng);
        SubsetMask f = detail::random_mask<T>(n, rng);
        auto bad = pair_ok(e, f);
        if (bad) {
          rp3.verdict = Verdict::Violated;
          rp3.witness = AxiomWitness{{e, f}, "density submodularity failed at point " + std::to_string(*bad)};
          break;
        }
      }
    }
    add(std::move(rp3));
  }

  add(AxiomFinding{Axiom::RP4, Verdict::HoldsByStructure, 0,
                   "finite space: window-wise lower semicontinuity reduces to eventual constancy",
                   std::nullopt});
  add(AxiomFinding{Axiom::RPplus, Verdict::HoldsByStructure, 0,
                   "every function has a finite edge-sum variation measure, so BV is closed under sums",
                   std::nullopt});

  // RP.L: with the discrete topology every set is clopen with empty boundary,
  // so locality would force P(E; X) = 0 for every E; any set of positive
  // perimeter is a witness.
  {
    AxiomFinding rpl{Axiom::RPL, Verdict::HoldsExhaustive, 0,
                     "all relative perimeters vanish, locality is vacuous", std::nullopt};
    for (std::size_t i = 0; i < n; ++i) {
      SubsetMask e(n);
      e.set(i, true);
      if (space.perimeter(e) > T(0)) {
        rpl.verdict = Verdict::Violated;
        rpl.witness = AxiomWitness{
            {e, space.full_mask()},
            "E is clopen (empty topological boundary) yet P(E; X) > 0"};
        break;
      }
    }
    add(std::move(rpl));
  }

  return report;
}

}  // namespace pms

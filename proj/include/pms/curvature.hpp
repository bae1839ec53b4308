#pragma once

#include <optional>
#include <vector>

#include "pms/cheeger.hpp"
#include "pms/parallel.hpp"
#include "pms/space.hpp"

namespace pms {

template <typename T>
struct JkappaResult {
  T min_value;         // <= 0: the empty set is always a competitor
  SubsetMask minimal;  // lattice-minimal minimizer
  SubsetMask maximal;  // lattice-maximal minimizer
  bool nontrivial;     // a non-negligible minimizer exists
};

// Exact minimization of J_kappa[F] = P(F) - kappa m(F) over subsets of omega.
template <typename T>
JkappaResult<T> minimize_Jkappa(const FiniteSpace<T>& space, const SubsetMask& omega,
                                const T& kappa) {
  if (kappa < T(0)) throw domain_error("kappa must be non-negative");
  std::vector<T> coeff(space.points(), T(0));
  omega.for_each([&](std::size_t x) { coeff[x] = kappa * space.measure(x); });
  auto sol = minimize_prescribed(space, omega, coeff);
  T slack;
  if constexpr (scalar_traits<T>::is_exact)
    slack = T(0);
  else
    slack = 1e-9 * (1.0 + to_double(kappa * space.measure_of(omega)));
  if (sol.min_value > slack)
    throw theorem_violation_error("min J_kappa must be <= 0 (empty competitor)");
  return {sol.min_value, sol.minimal, sol.maximal, !sol.maximal.empty()};
}

template <typename T>
struct CurvatureScanRow {
  T kappa;
  T min_value;
  bool nontrivial;
  std::size_t min_size;
  std::size_t max_size;
};

template <typename T>
struct CurvatureScan {
  std::vector<CurvatureScanRow<T>> rows;
  std::optional<T> last_false;  // largest grid kappa without nontrivial minimizers
  std::optional<T> first_true;  // smallest grid kappa with them
};

// Scan J_kappa over a sorted kappa grid.  The nontrivial-minimizer flag must
// flip monotonically false -> true; the flip brackets h_1 within one step.
template <typename T>
CurvatureScan<T> kappa_threshold_scan(const FiniteSpace<T>& space, const SubsetMask& omega,
                                      const std::vector<T>& grid, unsigned jobs = 1) {
  if (grid.empty()) throw domain_error("kappa grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i - 1] < grid[i])) throw domain_error("kappa grid must be strictly increasing");
  if (grid.front() < T(0)) throw domain_error("kappa must be non-negative");

  CurvatureScan<T> scan;
  scan.rows.resize(grid.size());
  parallel_chunks(grid.size(), jobs, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto r = minimize_Jkappa(space, omega, grid[i]);
      scan.rows[i] =
          CurvatureScanRow<T>{grid[i], r.min_value, r.nontrivial, r.minimal.count(), r.maximal.count()};
    }
  });

  bool seen_true = false;
  for (auto& row : scan.rows) {
    if (row.nontrivial) {
      seen_true = true;
      if (!scan.first_true) scan.first_true = row.kappa;
    } else {
      if (seen_true)
        throw theorem_violation_error("nontrivial-minimizer flag is not monotone in kappa");
      scan.last_false = row.kappa;
    }
  }
  return scan;
}

template <typename T>
struct CurvatureCertificate {
  SubsetMask set;
  std::vector<T> curvature;  // H per point
  bool verified = false;
  T own_value;  // P(E) - sum_E H m
  T min_value;  // minimum over subsets of omega
};

// Checks whether H is a mean curvature of E in omega: E must minimize
// F -> P(F) - sum_F H m among subsets of omega.
template <typename T>
CurvatureCertificate<T> pmc_certificate(const FiniteSpace<T>& space, const SubsetMask& omega,
                                        const SubsetMask& e, const std::vector<T>& h) {
  if (!e.subset_of(omega)) throw domain_error("certificate set must lie inside the region");
  if (h.size() != space.points()) throw domain_error("curvature vector does not match space");
  std::vector<T> coeff(space.points(), T(0));
  omega.for_each([&](std::size_t x) { coeff[x] = h[x] * space.measure(x); });
  auto sol = minimize_prescribed(space, omega, coeff);

  T own = space.perimeter(e);
  e.for_each([&](std::size_t x) { own -= coeff[x]; });

  T slack;
  if constexpr (scalar_traits<T>::is_exact) {
    slack = T(0);
  } else {
    T scale = abs_value(sol.min_value) + abs_value(own);
    slack = 1e-9 * (1.0 + to_double(scale));
  }
  CurvatureCertificate<T> cert;
  cert.set = e;
  cert.curvature = h;
  cert.own_value = own;
  cert.min_value = sol.min_value;
  cert.verified = own <= sol.min_value + slack;
  return cert;
}

template <typename T>
CurvatureCertificate<T> pmc_certificate_constant(const FiniteSpace<T>& space,
                                                 const SubsetMask& omega, const SubsetMask& e,
                                                 const T& h) {
  return pmc_certificate(space, omega, e, std::vector<T>(space.points(), h));
}

}  // namespace pms

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "pms/bv.hpp"
#include "pms/cheeger.hpp"
#include "pms/parallel.hpp"
#include "pms/rng.hpp"
#include "pms/space.hpp"

namespace pms {

template <typename T>
struct EigenResult {
  T value;
  BVFunction<T> minimizer;
  double p = 1.0;
  bool symmetric = true;  // false: tilde variant over non-negative competitors (no P.7)
  bool optimal = true;    // exact for p = 1; best-found upper bound for p > 1
  bool converged = true;
  std::size_t restarts = 0;
  std::size_t iterations = 0;
};

struct PBoundReport {
  double h1 = 0;
  double hard_bound = 0;    // (h1 / 2p)^p: guaranteed discretely
  double paper_bound = 0;   // (h1 / p)^p: continuum constant, reported only
  double margin_paper = 0;  // value - paper_bound
  bool hard_ok = false;
};

namespace detail {

template <typename T>
CheegerCertificate<T> solve_h1(const FiniteSpace<T>& space, const SubsetMask& omega) {
  if (space.oracle().has_cut_form()) return dinkelbach_h1(space, omega);
  return brute_force_hN(space, omega, std::size_t{1});
}

// Random element of BV_0(omega); non-negative when `nonnegative`.
template <typename T>
BVFunction<T> random_bv0(const FiniteSpace<T>& space, const SubsetMask& omega, SplitMix64& rng,
                         bool nonnegative) {
  BVFunction<T> u(space.points(), T(0));
  bool any = false;
  omega.for_each([&](std::size_t x) {
    // Small dyadic steps keep rational mode exact.
    long ticks = static_cast<long>(rng.next_below(129)) - (nonnegative ? 0 : 64);
    u[x] = T(ticks) / T(64);
    if (ticks != 0) any = true;
  });
  if (!any) {
    auto pts = omega.points();
    u[pts[rng.next_below(pts.size())]] = T(1);
  }
  return u;
}

}  // namespace detail

// First 1-eigenvalue.  The value is h_1 (their equality needs only P.1, P.2,
// P.4, P.7 here); the certificate is validated two-sided: the indicator of
// the maximal Cheeger set attains the value, and a seeded family of random
// BV_0 competitors cannot beat it.  Without P.7 the result is the tilde
// variant over non-negative competitors and is labeled as such.
template <typename T>
EigenResult<T> lambda_11(const FiniteSpace<T>& space, const SubsetMask& omega,
                         std::uint64_t seed = 0, std::size_t samples = 1000) {
  for (Axiom a : {Axiom::P1, Axiom::P2, Axiom::P4})
    if (!space.oracle().declares(a))
      throw axiom_missing_error("lambda_{1,1} needs P.1, P.2, P.4 declared or verified");
  const bool symmetric = space.oracle().declares(Axiom::P7);

  auto cert = detail::solve_h1(space, omega);
  // The eigenfunction convention is the indicator of the maximal Cheeger set;
  // the Dinkelbach chamber already is the maximal minimizer at h_1, small
  // brute-force instances recover it exactly.
  SubsetMask chamber = cert.cluster.chambers.front();
  if (omega.count() <= 16)
    chamber = maximal_minimal_cheeger(space, omega, cert.value).maximal;

  EigenResult<T> out;
  out.value = cert.value;
  out.p = 1.0;
  out.symmetric = symmetric;
  out.optimal = true;
  out.minimizer.assign(space.points(), T(0));
  chamber.for_each([&](std::size_t x) { out.minimizer[x] = T(1); });

  // Attainment by the certificate chamber.
  {
    T var = variation(space, out.minimizer);
    T mass = space.measure_of(chamber);
    T quotient = var / mass;
    T slack;
    if constexpr (scalar_traits<T>::is_exact)
      slack = T(0);
    else
      slack = 1e-10 * (1.0 + std::abs(to_double(out.value)));
    if (abs_value(quotient - out.value) > slack)
      throw theorem_violation_error("Cheeger indicator does not attain lambda_{1,1}");
  }

  // Random Rayleigh quotients stay above the value.
  for (std::size_t t = 0; t < samples; ++t) {
    auto rng = stream(seed ^ 0x3141ULL, t);
    auto u = detail::random_bv0(space, omega, rng, !symmetric);
    T mass(0);
    for (std::size_t i = 0; i < u.size(); ++i) mass += space.measure(i) * abs_value(u[i]);
    if (mass == T(0)) continue;
    T quotient = variation(space, u) / mass;
    T slack;
    if constexpr (scalar_traits<T>::is_exact)
      slack = T(0);
    else
      slack = 1e-10 * (1.0 + std::abs(to_double(out.value)));
    if (quotient < out.value - slack)
      throw theorem_violation_error("random BV_0 competitor beats lambda_{1,1}");
  }
  return out;
}

// First 1-eigenvalue for N-clusters: exact minimum of sum_i h_1(S_i) over
// disjoint supports inside omega, by subset dynamic programming.  The sandwich
// N h_1 <= Lambda_N <= h_N is asserted against the brute clusters.
template <typename T>
T lambda_N(const FiniteSpace<T>& space, const SubsetMask& omega, std::size_t N) {
  const std::size_t n = space.points();
  if (omega.size() != n) throw domain_error("region mask does not match space");
  auto pts = omega.points();
  const std::size_t k = pts.size();
  if (N == 0) throw domain_error("N must be positive");
  if (k < N) throw admissibility_error("region is not N-admissible: fewer than N points");
  if (k > 16) throw size_error("lambda_N support enumeration limited to |omega| <= 16");

  auto tables = subset_tables(space, pts);
  const std::size_t count = std::size_t{1} << k;

  // h1[S]: best chamber ratio achievable inside support S.
  std::vector<T> h1(count, T(0));
  for (std::size_t s = 1; s < count; ++s) {
    T best = tables.perimeter[s] / tables.measure[s];
    for (std::size_t b = s; b;) {
      std::size_t low = b & (~b + 1);
      std::size_t sub = s ^ low;
      b ^= low;
      if (sub && h1[sub] < best) best = h1[sub];
    }
    h1[s] = best;
  }

  // level j: min over j disjoint nonempty supports inside S.
  std::vector<T> prev = h1;
  std::vector<char> prev_has(count, 0);
  for (std::size_t s = 1; s < count; ++s) prev_has[s] = 1;
  for (std::size_t j = 2; j <= N; ++j) {
    std::vector<T> cur(count, T(0));
    std::vector<char> cur_has(count, 0);
    for (std::size_t s = 1; s < count; ++s) {
      for (std::size_t a = s; a; a = (a - 1) & s) {
        std::size_t rest = s ^ a;
        if (!rest || !prev_has[rest]) continue;
        T cand = h1[a] + prev[rest];
        if (!cur_has[s] || cand < cur[s]) {
          cur[s] = cand;
          cur_has[s] = 1;
        }
      }
    }
    prev = std::move(cur);
    prev_has = std::move(cur_has);
  }
  if (!prev_has[count - 1]) throw admissibility_error("no disjoint support assignment exists");
  T lambda = prev[count - 1];

  // Sandwich against the cluster constants.
  T h_1 = h1[count - 1];
  auto hN = brute_force_hN(space, omega, N).value;
  T slack = detail::float_slack<T>(hN + lambda);
  if (T(static_cast<long>(N)) * h_1 > lambda + slack)
    throw theorem_violation_error("N h_1 <= Lambda_N failed");
  if (lambda > hN + slack) throw theorem_violation_error("Lambda_N <= h_N failed");
  return lambda;
}

namespace detail {

struct SmoothedSums {
  double numerator;    // sum over the slope domain of m(x) s_eps(x)^p
  double denominator;  // sum over omega of m(x) |u(x)|_eps^p
};

// Workspace for the p > 1 descent paths: local coordinates over omega,
// incident edges, and the slope-domain bookkeeping.
class PDescent {
public:
  PDescent(const FiniteSpace<double>& space, const SubsetMask& omega, double p, bool slope_over_x)
      : space_(space), p_(p) {
    const std::size_t n = space.points();
    local_.assign(n, -1);
    pts_ = omega.points();
    for (std::size_t i = 0; i < pts_.size(); ++i) local_[pts_[i]] = static_cast<std::ptrdiff_t>(i);
    for (std::size_t x = 0; x < n; ++x) {
      bool in_domain = slope_over_x || local_[x] >= 0;
      if (!in_domain) continue;
      bool touches = local_[x] >= 0;
      if (!touches)
        for (auto& [y, w] : space.oracle().neighbors(x))
          if (local_[y] >= 0) touches = true;
      if (touches) slope_points_.push_back(x);
    }
  }

  const std::vector<std::size_t>& region() const { return pts_; }

  // Smoothed slope sums and gradient of numerator/denominator wrt u (local
  // coordinates).  |d| ~ sqrt(d^2 + eps^2) - eps keeps the zero value exact.
  SmoothedSums evaluate(const std::vector<double>& u, double eps, std::vector<double>* grad_num,
                        std::vector<double>* grad_den) const {
    const std::size_t k = pts_.size();
    if (grad_num) grad_num->assign(k, 0.0);
    if (grad_den) grad_den->assign(k, 0.0);
    auto value_at = [&](std::size_t x) { return local_[x] >= 0 ? u[local_[x]] : 0.0; };
    auto smooth = [&](double d) { return std::sqrt(d * d + eps * eps) - eps; };
    auto smooth_d = [&](double d) { return d / std::sqrt(d * d + eps * eps); };

    SmoothedSums sums{0.0, 0.0};
    for (auto x : slope_points_) {
      double tx = 0;
      for (auto& [y, w] : space_.oracle().neighbors(x)) tx += w * smooth(value_at(x) - value_at(y));
      tx /= 2;
      double m = space_.measure(x);
      double s = tx / m;
      sums.numerator += m * std::pow(s, p_);
      if (grad_num && tx > 0) {
        double outer = p_ * std::pow(s, p_ - 1.0);
        for (auto& [y, w] : space_.oracle().neighbors(x)) {
          double der = w * smooth_d(value_at(x) - value_at(y)) / 2;
          if (local_[x] >= 0) (*grad_num)[local_[x]] += outer * der;
          if (local_[y] >= 0) (*grad_num)[local_[y]] -= outer * der;
        }
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      double m = space_.measure(pts_[i]);
      double a = smooth(u[i]);
      sums.denominator += m * std::pow(a, p_);
      if (grad_den && a > 0)
        (*grad_den)[i] += m * p_ * std::pow(a, p_ - 1.0) * smooth_d(u[i]);
    }
    return sums;
  }

  // Exact (unsmoothed) Rayleigh quotient at u.
  double quotient(const std::vector<double>& u) const {
    auto sums = evaluate(u, 0.0, nullptr, nullptr);
    return sums.denominator > 0 ? sums.numerator / sums.denominator
                                : std::numeric_limits<double>::infinity();
  }

  double lp_norm(const std::vector<double>& u) const {
    double sum = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
      sum += space_.measure(pts_[i]) * std::pow(std::abs(u[i]), p_);
    return std::pow(sum, 1.0 / p_);
  }

private:
  const FiniteSpace<double>& space_;
  double p_;
  std::vector<std::ptrdiff_t> local_;
  std::vector<std::size_t> pts_;
  std::vector<std::size_t> slope_points_;
};

}  // namespace detail

struct RayleighOptions {
  std::size_t restarts = 16;
  std::size_t max_iterations = 100000;
  double plateau_tolerance = 1e-10;
};

// First p-eigenvalue upper bound: normalized smoothed subgradient descent on
// the Rayleigh quotient of the p-slope energy, with an eps -> 0 schedule and
// seeded multi-restart.  The returned value is the exact quotient of the best
// iterate; the hard lower bound (h1/2p)^p is asserted, the continuum constant
// (h1/p)^p only reported.
inline EigenResult<double> lambda_1p(const FiniteSpace<double>& space, const SubsetMask& omega,
                                     double p, std::uint64_t seed, PBoundReport* bound_report = nullptr,
                                     const RayleighOptions& options = {}) {
  if (!(p > 1.0) || !std::isfinite(p)) throw domain_error("lambda_{1,p} needs p in (1, inf)");
  if (omega.empty()) throw admissibility_error("region is empty");
  if (!space.oracle().has_cut_form())
    throw unsupported_operation_error("lambda_{1,p} descent needs a cut oracle");

  detail::PDescent engine(space, omega, p, /*slope_over_x=*/true);
  const std::size_t k = engine.region().size();

  struct RestartOutcome {
    double value = std::numeric_limits<double>::infinity();
    std::vector<double> u;
    std::size_t iterations = 0;
    bool converged = false;
  };
  std::vector<RestartOutcome> outcomes(std::max<std::size_t>(1, options.restarts));

  auto run_restart = [&](std::size_t r) {
    RestartOutcome out;
    std::vector<double> u(k, 0.0);
    if (r == 0) {
      u.assign(k, 1.0);  // indicator of the region: a natural first candidate
    } else {
      auto rng = stream(seed, r);
      for (auto& v : u) v = rng.next_symmetric();
    }
    double norm = engine.lp_norm(u);
    if (norm == 0) u[0] = 1.0, norm = engine.lp_norm(u);
    for (auto& v : u) v /= norm;

    std::vector<double> gn, gd, trial(k);
    double eps = 0.1;
    double step = 0.1;
    std::size_t iter = 0;
    auto sums = engine.evaluate(u, eps, &gn, &gd);
    double current = sums.numerator / sums.denominator;
    while (iter < options.max_iterations) {
      // gradient of N/D
      double gnorm = 0;
      for (std::size_t i = 0; i < k; ++i) {
        double g = (gn[i] * sums.denominator - sums.numerator * gd[i]) /
                   (sums.denominator * sums.denominator);
        trial[i] = g;
        gnorm += g * g;
      }
      gnorm = std::sqrt(gnorm);
      if (gnorm < 1e-14) {
        if (eps <= 1e-9) {
          out.converged = true;
          break;
        }
        eps /= 2;
        sums = engine.evaluate(u, eps, &gn, &gd);
        current = sums.numerator / sums.denominator;
        continue;
      }
      bool moved = false;
      std::vector<double> candidate(k);
      while (step > 1e-14) {
        for (std::size_t i = 0; i < k; ++i) candidate[i] = u[i] - step * trial[i] / gnorm;
        double cn = engine.lp_norm(candidate);
        if (cn > 0) {
          for (auto& v : candidate) v /= cn;
          auto csums = engine.evaluate(candidate, eps, nullptr, nullptr);
          double cval = csums.numerator / csums.denominator;
          ++iter;
          if (cval < current - options.plateau_tolerance * (1.0 + std::abs(current))) {
            u = candidate;
            sums = engine.evaluate(u, eps, &gn, &gd);
            current = sums.numerator / sums.denominator;
            step *= 1.5;
            moved = true;
            break;
          }
        }
        step /= 2;
      }
      if (!moved) {
        if (eps <= 1e-9) {
          out.converged = true;
          break;
        }
        eps /= 2;
        step = std::max(step, eps);
        sums = engine.evaluate(u, eps, &gn, &gd);
        current = sums.numerator / sums.denominator;
      }
    }
    out.iterations = iter;
    out.value = engine.quotient(u);
    out.u = std::move(u);
    return out;
  };

  for (std::size_t r = 0; r < outcomes.size(); ++r) outcomes[r] = run_restart(r);

  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r)
    if (outcomes[r].value < outcomes[best].value) best = r;

  EigenResult<double> result;
  result.p = p;
  result.optimal = false;
  result.value = outcomes[best].value;
  result.converged = outcomes[best].converged;
  result.restarts = outcomes.size();
  result.iterations = outcomes[best].iterations;

  // Normalize: ||u||_p = 1, first nonzero entry >= 0.
  {
    auto u = outcomes[best].u;
    double norm = engine.lp_norm(u);
    for (auto& v : u) v /= norm;
    for (auto& v : u)
      if (v != 0) {
        if (v < 0)
          for (auto& w : u) w = -w;
        break;
      }
    result.minimizer.assign(space.points(), 0.0);
    for (std::size_t i = 0; i < k; ++i) result.minimizer[engine.region()[i]] = u[i];
  }

  // Hard discrete bound; failure would mean a broken evaluator, not geometry.
  double h1 = to_double(detail::solve_h1(space, omega).value);
  double hard = std::pow(h1 / (2 * p), p);
  double paper = std::pow(h1 / p, p);
  if (result.value < hard - 1e-10 * (1.0 + hard))
    throw theorem_violation_error("lambda_{1,p} fell below the guaranteed (h1/2p)^p bound");
  if (bound_report) {
    bound_report->h1 = h1;
    bound_report->hard_bound = hard;
    bound_report->paper_bound = paper;
    bound_report->margin_paper = result.value - paper;
    bound_report->hard_ok = true;
  }
  return result;
}

template <typename T>
struct TorsionResult {
  BVFunction<T> w;
  T energy;   // J_p(w) <= 0
  T l1_mass;  // ||w||_1
  bool converged = true;
  std::size_t iterations = 0;
  PBoundReport bound;  // h1 <= 2 p^{1+1/p} (m(omega)/||w||_1)^{(p-1)/p} is the hard side
};

// p-torsional creep energy minimizer by monotone smoothed descent from zero.
// Every accepted iterate keeps J <= 0, which is what the asserted invariants
// and the hard h_1 bound need; the continuum-prefactor bound is reported.
inline TorsionResult<double> torsion(const FiniteSpace<double>& space, const SubsetMask& omega,
                                     double p, double tolerance, std::size_t max_iterations = 100000) {
  if (!(p > 1.0) || !std::isfinite(p)) throw domain_error("torsion needs p in (1, inf)");
  if (omega.empty()) throw admissibility_error("region is empty");
  if (!space.oracle().has_cut_form())
    throw unsupported_operation_error("torsion descent needs a cut oracle");

  // Discrete Poincare: every region point must drain to the complement.
  {
    const std::size_t n = space.points();
    if (omega.count() == n)
      throw coercivity_error("region equals the whole space: torsion energy is unbounded below");
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack;
    for (std::size_t x = 0; x < n; ++x)
      if (!omega.test(x)) {
        seen[x] = 1;
        stack.push_back(x);
      }
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto& [y, w] : space.oracle().neighbors(v))
        if (w > 0 && !seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    for (std::size_t x = 0; x < n; ++x)
      if (omega.test(x) && !seen[x])
        throw coercivity_error("region point " + space.label(x) +
                               " has no weight path to the complement");
  }

  detail::PDescent engine(space, omega, p, /*slope_over_x=*/false);
  const auto& pts = engine.region();
  const std::size_t k = pts.size();

  auto energy_at = [&](const std::vector<double>& u, double eps, std::vector<double>* grad) {
    std::vector<double> gn;
    auto sums = engine.evaluate(u, eps, grad ? &gn : nullptr, nullptr);
    double linear = 0;
    for (std::size_t i = 0; i < k; ++i) linear += space.measure(pts[i]) * u[i];
    if (grad) {
      grad->assign(k, 0.0);
      for (std::size_t i = 0; i < k; ++i) (*grad)[i] = gn[i] / p - space.measure(pts[i]);
    }
    return sums.numerator / p - linear;
  };

  // Phase one: monotone descent on the smoothed energy with an eps schedule
  // (smoothing avoids stalls at the |.| kinks).  Phase two: exact line
  // minimization along coordinates and equal-value group directions, the
  // directions the kinks live on.  The best iterate under the exact energy is
  // returned; it starts at J(0) = 0, so J <= 0 holds by construction.
  std::vector<double> u(k, 0.0), grad, trial(k);
  std::vector<double> best_u = u;
  double best_true = 0.0;
  std::size_t iter = 0;
  auto note_true = [&](const std::vector<double>& cand) {
    double t = energy_at(cand, 0.0, nullptr);
    if (t < best_true) {
      best_true = t;
      best_u = cand;
    }
  };
  {
    double eps = 0.1;
    double step = 1.0;
    double current = energy_at(u, eps, &grad);
    std::size_t phase_budget = std::min(max_iterations / 2, 500 + 100 * k);
    while (iter < phase_budget) {
      bool moved = false;
      while (step > 1e-15) {
        for (std::size_t i = 0; i < k; ++i) trial[i] = u[i] - step * grad[i];
        double tval = energy_at(trial, eps, nullptr);
        ++iter;
        if (tval < current - 1e-15 * (1.0 + std::abs(current))) {
          u = trial;
          current = energy_at(u, eps, &grad);
          note_true(u);
          step *= 1.7;
          moved = true;
          break;
        }
        step /= 2;
      }
      if (!moved) {
        if (eps <= 1e-9) break;
        eps /= 16;
        step = 1.0;
        current = energy_at(u, eps, &grad);
      }
    }
  }

  // Exact 1-D minimization along d by golden section after bracket expansion;
  // the energy is convex along every line.
  u = best_u;
  auto line_min = [&](const std::vector<double>& base, const std::vector<double>& dir) {
    auto value = [&](double t) {
      for (std::size_t i = 0; i < k; ++i) trial[i] = base[i] + t * dir[i];
      return energy_at(trial, 0.0, nullptr);
    };
    double lo = -1, hi = 1;
    double v0 = value(0);
    while (value(lo) < v0 && lo > -1e12) lo *= 2;
    while (value(hi) < v0 && hi < 1e12) hi *= 2;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = value(x1), f2 = value(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - phi * (b - a);
        f1 = value(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + phi * (b - a);
        f2 = value(x2);
      }
    }
    double t = (a + b) / 2;
    return value(t) < v0 ? t : 0.0;
  };

  bool converged = false;
  {
    double current = best_true;
    for (std::size_t pass = 0; pass < 400 && iter < max_iterations; ++pass) {
      // direction set: coordinates, maximal equal-value groups, whole region
      std::vector<std::vector<double>> dirs;
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<double> d(k, 0.0);
        d[i] = 1.0;
        dirs.push_back(std::move(d));
      }
      {
        std::vector<std::size_t> order(k);
        for (std::size_t i = 0; i < k; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return u[a] < u[b]; });
        std::size_t start = 0;
        while (start < k) {
          std::size_t end = start + 1;
          while (end < k && std::abs(u[order[end]] - u[order[start]]) <=
                                1e-9 * (1.0 + std::abs(u[order[start]])))
            ++end;
          if (end - start >= 2) {
            std::vector<double> d(k, 0.0);
            for (std::size_t j = start; j < end; ++j) d[order[j]] = 1.0;
            dirs.push_back(std::move(d));
          }
          start = end;
        }
        dirs.push_back(std::vector<double>(k, 1.0));
      }
      double before = current;
      for (auto& d : dirs) {
        double t = line_min(u, d);
        ++iter;
        if (t != 0.0) {
          for (std::size_t i = 0; i < k; ++i) u[i] += t * d[i];
          current = energy_at(u, 0.0, nullptr);
          note_true(u);
        }
      }
      if (before - current <= 1e-13 * (1.0 + std::abs(before))) {
        converged = true;
        break;
      }
    }
  }
  u = best_u;

  TorsionResult<double> out;
  out.converged = converged;
  out.iterations = iter;
  out.energy = energy_at(u, 0.0, nullptr);
  out.w.assign(space.points(), 0.0);
  for (std::size_t i = 0; i < k; ++i) out.w[pts[i]] = u[i];
  out.l1_mass = 0;
  for (std::size_t i = 0; i < k; ++i)
    out.l1_mass += space.measure(pts[i]) * std::abs(u[i]);

  const double slack = 1e-8;
  if (out.energy > slack) throw theorem_violation_error("torsion energy above zero");
  {
    auto sums = engine.evaluate(u, 0.0, nullptr, nullptr);
    double linear = 0;
    for (std::size_t i = 0; i < k; ++i) linear += space.measure(pts[i]) * u[i];
    if (sums.numerator > p * linear + slack * (1.0 + std::abs(p * linear)))
      throw theorem_violation_error("torsion energy inequality failed");
  }

  double h1 = to_double(detail::solve_h1(space, omega).value);
  out.bound.h1 = h1;
  if (out.l1_mass > 0) {
    double ratio = to_double(space.measure_of(omega)) / out.l1_mass;
    double factor = std::pow(p, 1.0 + 1.0 / p) * std::pow(ratio, (p - 1.0) / p);
    out.bound.hard_bound = 2 * factor;
    out.bound.paper_bound = factor;
    out.bound.margin_paper = factor - h1;
    out.bound.hard_ok = h1 <= 2 * factor + slack * (1.0 + 2 * factor);
    if (!out.bound.hard_ok)
      throw theorem_violation_error("torsion hard bound h1 <= 2 p^{1+1/p} (m/||w||)^{(p-1)/p} failed");
  } else {
    // Descent never left zero: report without the mass-dependent bounds.
    out.bound.hard_ok = true;
  }
  return out;
}

}  // namespace pms

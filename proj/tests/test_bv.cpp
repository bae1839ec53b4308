#include <catch2/catch_amalgamated.hpp>

#include "pms/bv.hpp"
#include "pms/catalog.hpp"
#include "pms/rng.hpp"

using namespace pms;

namespace {

BVFunction<double> random_function(std::size_t n, SplitMix64& rng) {
  BVFunction<double> u(n);
  for (auto& v : u) v = rng.next_symmetric() * 3.0;
  return u;
}

}  // namespace

TEST_CASE("variation equals perimeter on indicators") {
  for (auto& inst : standard_suite<double>()) {
    if (inst.space.points() > 16) continue;
    auto rng = stream(5, inst.space.points());
    for (int t = 0; t < 10; ++t) {
      SubsetMask e(inst.space.points());
      for (std::size_t i = 0; i < e.size(); ++i)
        if (rng.next() & 1) e.set(i, true);
      BVFunction<double> chi(inst.space.points(), 0.0);
      e.for_each([&](std::size_t x) { chi[x] = 1.0; });
      REQUIRE(variation(inst.space, chi) == Catch::Approx(inst.space.perimeter(e)).margin(1e-12));
    }
  }
}

TEST_CASE("variation level integral on P4") {
  auto p4 = make_path<double>(4);
  REQUIRE(variation(p4, {2, 1, 0, 0}) == Catch::Approx(2.0));
  REQUIRE(variation(p4, {5, 5, 5, 5}) == 0.0);
}

TEST_CASE("variation scaling and translation invariance") {
  auto p4 = make_path<double>(4);
  auto rng = stream(6, 0);
  for (int t = 0; t < 50; ++t) {
    auto u = random_function(4, rng);
    double lambda = rng.next_unit() * 4 + 0.1;
    double c = rng.next_symmetric() * 5;
    double var = variation(p4, u);
    BVFunction<double> scaled(4), shifted(4);
    for (int i = 0; i < 4; ++i) {
      scaled[i] = lambda * u[i];
      shifted[i] = u[i] + c;
    }
    REQUIRE(variation(p4, scaled) == Catch::Approx(lambda * var).margin(1e-10));
    REQUIRE(variation(p4, shifted) == Catch::Approx(var).margin(1e-10));
  }
}

TEST_CASE("variation scaling exact in rational mode") {
  auto p4 = make_path<Rational>(4);
  BVFunction<Rational> u{Rational(7, 3), Rational(1, 2), Rational(0), Rational(-5, 4)};
  Rational var = variation(p4, u);
  BVFunction<Rational> scaled(4);
  for (int i = 0; i < 4; ++i) scaled[i] = Rational(3, 7) * u[i];
  REQUIRE(variation(p4, scaled) == Rational(3, 7) * var);
}

TEST_CASE("variation measure on P4") {
  auto p4 = make_path<double>(4);
  auto dm = variation_measure(p4, {1, 1, 0, 0});
  REQUIRE(dm.density == std::vector<double>{0.0, 0.5, 0.5, 0.0});
  REQUIRE(dm.total == 1.0);
  auto zero = variation_measure(p4, {3, 3, 3, 3});
  REQUIRE(zero.total == 0.0);
}

TEST_CASE("variation measure scaling, window additivity, triangle bound") {
  auto suite = standard_suite<double>();
  auto rng = stream(7, 0);
  for (auto& inst : suite) {
    if (inst.space.points() > 12) continue;
    const std::size_t n = inst.space.points();
    auto u = random_function(n, rng);
    auto v = random_function(n, rng);
    auto du = variation_measure(inst.space, u);

    BVFunction<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = 2.5 * u[i];
    auto dscaled = variation_measure(inst.space, scaled);
    for (std::size_t i = 0; i < n; ++i)
      REQUIRE(dscaled.density[i] == Catch::Approx(2.5 * du.density[i]).margin(1e-12));

    SubsetMask a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) (rng.next() & 1 ? a : b).set(i, true);
    REQUIRE(du.of_window(a) + du.of_window(b) == Catch::Approx(du.total).margin(1e-12));

    BVFunction<double> sum(n);
    for (std::size_t i = 0; i < n; ++i) sum[i] = u[i] + v[i];
    auto dsum = variation_measure(inst.space, sum);
    auto dv = variation_measure(inst.space, v);
    for (std::size_t i = 0; i < n; ++i)
      REQUIRE(dsum.density[i] <= du.density[i] + dv.density[i] + 1e-12);
  }
}

TEST_CASE("variation measure window matches the level integral of relative perimeters") {
  auto p4 = make_path<double>(4);
  BVFunction<double> u{2, 1, 0, 0};
  auto dm = variation_measure(p4, u);
  SubsetMask a = SubsetMask::from_points(4, {1, 2});
  // levels: {u > t} = {v1} on (1,2], {v1,v2} on (0,1]
  double expected = relative_perimeter(p4, SubsetMask::from_points(4, {0}), a) +
                    relative_perimeter(p4, SubsetMask::from_points(4, {0, 1}), a);
  REQUIRE(dm.of_window(a) == Catch::Approx(expected).margin(1e-12));
}

TEST_CASE("symmetric coarea on P4") {
  auto p4 = make_path<double>(4);
  auto [mass, var] = symmetric_coarea(p4, {1, -1, 0, 0});
  REQUIRE(mass == Catch::Approx(2.0));
  REQUIRE(var == Catch::Approx(3.0));

  // non-negative functions reduce to the plain coarea decomposition
  auto [m2, v2] = symmetric_coarea(p4, {2, 1, 0, 0});
  REQUIRE(m2 == Catch::Approx(3.0));
  REQUIRE(v2 == Catch::Approx(2.0));

  // chi_E - chi_complement has variation 2 P(E)
  SubsetMask e = SubsetMask::from_points(4, {0, 1});
  BVFunction<double> pm(4);
  for (int i = 0; i < 4; ++i) pm[i] = e.test(i) ? 1.0 : -1.0;
  auto [m3, v3] = symmetric_coarea(p4, pm);
  REQUIRE(v3 == Catch::Approx(2.0 * p4.perimeter(e)));
  REQUIRE(m3 == Catch::Approx(4.0));
}

TEST_CASE("symmetric coarea refuses without P.7") {
  std::vector<double> table{0.0, 1.0, 2.0, 0.0};  // P({a}) != P({b})
  FiniteSpace<double> space({1.0, 1.0}, PerimeterOracle<double>::table(2, table));
  REQUIRE_THROWS_AS(symmetric_coarea(space, BVFunction<double>{1.0, -1.0}), axiom_missing_error);
}

TEST_CASE("weak p-slope collapses to the 1-slope") {
  auto p4 = make_path<double>(4);
  BVFunction<double> chi{1, 1, 1, 0};
  auto s2 = weak_p_slope(p4, chi, 2.0);
  REQUIRE(s2.values == std::vector<double>{0.0, 0.0, 0.5, 0.5});
  auto s3 = weak_p_slope(p4, chi, 3.0);
  REQUIRE(s2.values == s3.values);  // p-independent
  auto zero = weak_p_slope(p4, {4, 4, 4, 4}, 1.5);
  REQUIRE(zero.values == std::vector<double>(4, 0.0));
  REQUIRE_THROWS_AS(weak_p_slope(p4, chi, 1.0), domain_error);

  // integral identity: sum_A |grad u| m = |Du|(A)
  auto rng = stream(8, 0);
  auto u = random_function(4, rng);
  auto slope = weak_p_slope(p4, u, 2.0);
  auto dm = variation_measure(p4, u);
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    SubsetMask a = SubsetMask::from_bits(4, bits);
    double lhs = 0;
    a.for_each([&](std::size_t x) { lhs += slope.values[x] * p4.measure(x); });
    REQUIRE(lhs == Catch::Approx(dm.of_window(a)).margin(1e-12));
  }
}

TEST_CASE("chain rule defect diagnostics") {
  auto p4 = make_path<double>(4);
  auto identity = [](const double& r) { return r; };
  auto one = [](const double&) { return 1.0; };
  BVFunction<double> u{2, 1, 0, 0};
  REQUIRE(chain_rule_defect<double>(p4, u, identity, one) == Catch::Approx(0.0).margin(1e-14));

  // affine maps are exact on two-valued functions
  BVFunction<double> chi{1, 1, 0, 0};
  REQUIRE(chain_rule_defect<double>(
              p4, chi, [](const double& r) { return 2 * r + 5; },
              [](const double&) { return 2.0; }) == Catch::Approx(0.0).margin(1e-14));

  // cubic on a three-valued function: defect 4 by direct evaluation
  double defect = chain_rule_defect<double>(
      p4, u, [](const double& r) { return r * r * r; },
      [](const double& r) { return 3 * r * r; });
  REQUIRE(defect == Catch::Approx(4.0).margin(1e-12));

  REQUIRE_THROWS_AS(chain_rule_defect<double>(
                        p4, u, [](const double& r) { return -r; },
                        [](const double&) { return -1.0; }),
                    domain_error);
}

TEST_CASE("chain rule defect decreases under refinement of a smooth profile") {
  auto phi = [](const double& r) { return r * r * r + r; };
  auto dphi = [](const double& r) { return 3 * r * r + 1; };
  std::vector<double> defects;
  for (std::size_t s : {4, 8, 16, 32}) {
    auto mg = build_metric_graph<double>({{0, 1, 1.0}}, s);
    BVFunction<double> u(mg.space.points(), 0.0);
    for (std::size_t i = 0; i < s; ++i) {
      double x = (static_cast<double>(i) + 0.5) / static_cast<double>(s);
      u[i] = x * (1.0 - x);
    }
    defects.push_back(chain_rule_defect<double>(mg.space, u, phi, dphi));
  }
  for (std::size_t i = 1; i < defects.size(); ++i) REQUIRE(defects[i] < defects[i - 1]);
}

TEST_CASE("variation is convex") {
  auto p4 = make_path<double>(4);
  auto rng = stream(9, 0);
  for (int t = 0; t < 30; ++t) {
    auto u = random_function(4, rng);
    auto v = random_function(4, rng);
    REQUIRE(convexity_check(p4, u, v, rng.next_unit()));
    REQUIRE(convexity_check(p4, u, u, 0.5));
    REQUIRE(convexity_check(p4, u, v, 0.0));
  }
  REQUIRE_THROWS_AS(convexity_check(p4, BVFunction<double>(4, 0.0), BVFunction<double>(4, 1.0), 1.5),
                    domain_error);
}

#include <catch2/catch_amalgamated.hpp>

#include "pms/catalog.hpp"
#include "pms/cheeger.hpp"
#include "pms/profile.hpp"

using namespace pms;

namespace {

SubsetMask p4_omega() { return SubsetMask::from_points(4, {0, 1, 2}); }

}  // namespace

TEST_CASE("brute force h_1 and h_2 on P4") {
  auto p4 = make_path<double>(4);
  auto h1 = brute_force_hN(p4, p4_omega(), 1);
  REQUIRE(h1.value == Catch::Approx(1.0 / 3.0));
  REQUIRE(h1.cluster.chambers[0] == p4_omega());

  auto h2 = brute_force_hN(p4, p4_omega(), 2);
  REQUIRE(h2.value == Catch::Approx(2.0));
  REQUIRE(h2.cluster.chambers.size() == 2);
  REQUIRE(h2.cluster.chambers[0] == SubsetMask::from_points(4, {0}));
  REQUIRE(h2.cluster.chambers[1] == SubsetMask::from_points(4, {1, 2}));
}

TEST_CASE("single point region") {
  auto space = make_path<double>(2, {2.0}, {0.5, 1.0});
  SubsetMask omega(2);
  omega.set(0, true);
  auto cert = brute_force_hN(space, omega, 1);
  REQUIRE(cert.value == Catch::Approx(4.0));  // W/m = 2/0.5
  auto dk = dinkelbach_h1(space, omega);
  REQUIRE(dk.value == Catch::Approx(4.0));
}

TEST_CASE("admissibility and budget guards") {
  auto p4 = make_path<double>(4);
  SubsetMask omega(4);
  REQUIRE_THROWS_AS(brute_force_hN(p4, omega, 1), admissibility_error);
  omega.set(0, true);
  REQUIRE_THROWS_AS(brute_force_hN(p4, omega, 2), admissibility_error);
  REQUIRE_THROWS_AS(dinkelbach_h1(p4, SubsetMask(4)), admissibility_error);
  auto grid = build_unit_square<double>(6);  // 36 region points
  REQUIRE_THROWS_AS(brute_force_hN(grid.space, grid.omega, 2), size_error);
}

TEST_CASE("dinkelbach on P4 terminates in one round") {
  auto p4 = make_path<Rational>(4);
  auto cert = dinkelbach_h1(p4, p4_omega());
  REQUIRE(cert.value == Rational(1, 3));
  REQUIRE(cert.trace.size() == 1);
  REQUIRE(cert.trace[0].kappa == Rational(1, 3));
  REQUIRE(cert.trace[0].j_value == Rational(0));
  REQUIRE(cert.cluster.chambers[0] == p4_omega());
  REQUIRE(cert.ratios[0] == cert.value);
}

TEST_CASE("dinkelbach separates disconnected singletons") {
  // two region points with boundary ratios 1 and 2
  std::vector<CutEdge<Rational>> edges{{0, 2, Rational(1)}, {1, 2, Rational(2)}};
  FiniteSpace<Rational> space({Rational(1), Rational(1), Rational(1)},
                              PerimeterOracle<Rational>::cut(3, std::move(edges)));
  SubsetMask omega = SubsetMask::from_points(3, {0, 1});
  auto cert = dinkelbach_h1(space, omega);
  REQUIRE(cert.value == Rational(1));
  REQUIRE(cert.cluster.chambers[0] == SubsetMask::from_points(3, {0}));
  // kappa strictly decreases along the trace
  for (std::size_t i = 1; i < cert.trace.size(); ++i)
    REQUIRE(cert.trace[i].kappa < cert.trace[i - 1].kappa);
}

TEST_CASE("dinkelbach equals brute force on the whole suite") {
  SECTION("rational, exact") {
    for (auto& inst : standard_suite<Rational>()) {
      if (inst.omega.count() > 14) continue;
      auto brute = brute_force_hN(inst.space, inst.omega, 1);
      auto dink = dinkelbach_h1(inst.space, inst.omega);
      INFO(inst.name);
      REQUIRE(brute.value == dink.value);
    }
  }
  SECTION("float, 1e-10") {
    for (auto& inst : standard_suite<double>()) {
      if (inst.omega.count() > 14) continue;
      auto brute = brute_force_hN(inst.space, inst.omega, 1);
      auto dink = dinkelbach_h1(inst.space, inst.omega);
      INFO(inst.name);
      REQUIRE(dink.value == Catch::Approx(brute.value).margin(1e-10));
    }
  }
}

TEST_CASE("unit square h_1 = 4 at every refinement") {
  for (std::size_t n : {2, 3}) {
    auto g = build_unit_square<double>(n);
    auto brute = brute_force_hN(g.space, g.omega, 1);
    REQUIRE(brute.value == Catch::Approx(4.0).margin(1e-12));
  }
  for (std::size_t n : {4, 8, 16}) {
    auto g = build_unit_square<double>(n);
    auto dk = dinkelbach_h1(g.space, g.omega);
    REQUIRE(dk.value == Catch::Approx(4.0).margin(1e-9));
  }
  auto gr = build_unit_square<Rational>(5);
  REQUIRE(dinkelbach_h1(gr.space, gr.omega).value == Rational(4));
}

TEST_CASE("maximal and minimal Cheeger sets") {
  SECTION("unique Cheeger set: maximal equals minimal") {
    auto p4 = make_path<double>(4);
    auto mm = maximal_minimal_cheeger(p4, p4_omega(), 1.0 / 3.0);
    REQUIRE(mm.maximal == p4_omega());
    REQUIRE(mm.minimal_list.size() == 1);
    REQUIRE(mm.minimal_list[0] == p4_omega());
  }
  SECTION("twin dumbbell: union maximal, lobes minimal") {
    auto d = build_dumbbell<Rational>(2, 4, Rational(1, 100));
    auto h1 = dinkelbach_h1(d.space, d.omega);
    auto mm = maximal_minimal_cheeger(d.space, d.omega, h1.value);
    REQUIRE(mm.maximal == (d.lobes[0] | d.lobes[1]));
    REQUIRE(mm.minimal_list.size() == 2);
    REQUIRE(((mm.minimal_list[0] == d.lobes[0] && mm.minimal_list[1] == d.lobes[1]) ||
             (mm.minimal_list[0] == d.lobes[1] && mm.minimal_list[1] == d.lobes[0])));
  }
  SECTION("every enumerated Cheeger set sits inside the maximal one") {
    for (auto& inst : standard_suite<Rational>()) {
      if (inst.omega.count() > 12) continue;
      auto h1 = brute_force_hN(inst.space, inst.omega, 1);
      auto mm = maximal_minimal_cheeger(inst.space, inst.omega, h1.value);
      auto pts = inst.omega.points();
      auto tables = subset_tables(inst.space, pts);
      for (std::size_t s = 1; s < tables.perimeter.size(); ++s) {
        if (tables.perimeter[s] == h1.value * tables.measure[s]) {
          auto mask = tables.to_global(static_cast<std::uint32_t>(s), inst.space.points());
          INFO(inst.name);
          REQUIRE(mask.subset_of(mm.maximal));
        }
      }
    }
  }
}

TEST_CASE("anchored minimal minimizer beyond the exhaustive regime") {
  auto g = build_unit_square<double>(5);  // 25 region points
  auto h1 = dinkelbach_h1(g.space, g.omega);
  auto mm = maximal_minimal_cheeger(g.space, g.omega, h1.value);
  REQUIRE(!mm.exhaustive);
  REQUIRE(!mm.maximal.empty());
  REQUIRE(mm.minimal_list.size() == 1);
  REQUIRE(mm.minimal_list[0].subset_of(mm.maximal));
  // the reported minimal set is itself a minimizer of J_{h1}
  double j = g.space.perimeter(mm.minimal_list[0]) - h1.value * g.space.measure_of(mm.minimal_list[0]);
  REQUIRE(j == Catch::Approx(0.0).margin(1e-8));
}

TEST_CASE("cluster theorem verifier on P4 and the twin instance") {
  auto p4 = make_path<double>(4);
  auto report = verify_cluster_inequalities(p4, p4_omega(), 2);
  REQUIRE(report.constants[0] == Catch::Approx(1.0 / 3.0));
  REQUIRE(report.constants[1] == Catch::Approx(2.0));
  REQUIRE(report.verified.size() >= 4);

  auto twin = make_twin_triangles<Rational>();
  SubsetMask omega = SubsetMask::full(7);
  omega.set(6, false);
  auto rep2 = verify_cluster_inequalities(twin, omega, 2);
  REQUIRE(rep2.constants[1] == Rational(2) * rep2.constants[0]);
}

TEST_CASE("region monotonicity of h_1") {
  auto p4 = make_path<double>(4);
  auto small = brute_force_hN(p4, SubsetMask::from_points(4, {0, 1}), 1);
  REQUIRE(small.value == Catch::Approx(0.5));
  REQUIRE(small.value >= brute_force_hN(p4, p4_omega(), 1).value);
}

TEST_CASE("h_1 blows up along shrinking regions") {
  auto p6 = make_path<double>(6);
  auto profile = isoperimetric_profile(p6);
  double previous = 0.0;
  for (std::size_t k = 5; k >= 1; --k) {
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < k; ++i) pts.push_back(i);
    SubsetMask omega = SubsetMask::from_points(6, pts);
    auto cert = brute_force_hN(p6, omega, 1);
    REQUIRE(cert.value >= previous);
    auto bound = profile.value_at(p6.measure_of(omega));
    REQUIRE(bound.has_value());
    REQUIRE(cert.value >= *bound - 1e-12);
    previous = cert.value;
  }
}

TEST_CASE("local search upper-bounds and matches brute force on the suite") {
  for (auto& inst : standard_suite<double>()) {
    if (inst.omega.count() > 12 || inst.omega.count() < 2) continue;
    auto brute = brute_force_hN(inst.space, inst.omega, 2);
    auto local = local_search_hN(inst.space, inst.omega, 2, 97, 16);
    INFO(inst.name);
    REQUIRE(local.value >= brute.value - 1e-10);
    REQUIRE(local.value == Catch::Approx(brute.value).margin(1e-9));
    REQUIRE(!local.optimal);
    validate_cluster(inst.space, inst.omega, local.cluster);
  }
}

TEST_CASE("local search is deterministic and delegates N=1") {
  auto p4 = make_path<double>(4);
  auto a = local_search_hN(p4, p4_omega(), 2, 1234, 4);
  auto b = local_search_hN(p4, p4_omega(), 2, 1234, 4);
  REQUIRE(a.value == b.value);
  REQUIRE(a.cluster.chambers.size() == b.cluster.chambers.size());
  for (std::size_t i = 0; i < a.cluster.chambers.size(); ++i)
    REQUIRE(a.cluster.chambers[i] == b.cluster.chambers[i]);

  auto one = local_search_hN(p4, p4_omega(), 1, 0, 1);
  REQUIRE(one.method == SolverMethod::Dinkelbach);
  REQUIRE(one.value == Catch::Approx(1.0 / 3.0));
}

TEST_CASE("every cluster is optimal when the perimeter vanishes") {
  // P identically zero: h_N = 0 and any assignment wins; ties resolve to the
  // lexicographically smallest canonical tuple.
  KernelSpec<double> spec;
  spec.positions = {{0.0}, {1.0}, {2.0}, {3.0}};
  spec.measures = {1.0, 1.0, 1.0, 1.0};
  spec.kernel = [](const std::vector<double>&, const std::vector<double>&) { return 0.0; };
  auto space = build_kernel_space(spec);
  auto omega = SubsetMask::full(4);
  auto h2 = brute_force_hN(space, omega, 2);
  REQUIRE(h2.value == 0.0);
  REQUIRE(h2.cluster.chambers[0] == SubsetMask::from_points(4, {0}));
  REQUIRE(h2.cluster.chambers[1] == SubsetMask::from_points(4, {1}));
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pms/axioms.hpp"
#include "pms/catalog.hpp"
#include "pms/cheeger.hpp"

using namespace pms;

TEST_CASE("unit square grid: boundary length 4, unit mass") {
  for (std::size_t n : {2, 3, 5}) {
    auto g = build_unit_square<double>(n);
    REQUIRE(g.space.perimeter(g.omega) == Catch::Approx(4.0).margin(1e-12));
    REQUIRE(g.space.measure_of(g.omega) == Catch::Approx(1.0).margin(1e-12));
  }
  auto gr = build_unit_square<Rational>(3);
  REQUIRE(gr.space.perimeter(gr.omega) == Rational(4));
  REQUIRE(gr.space.measure_of(gr.omega) == Rational(1));
}

TEST_CASE("grid builder validates densities") {
  GridSpec spec;
  spec.nx = spec.ny = 2;
  spec.spacing = 0.5;
  spec.volume_density = [](double x, double) { return x < 0.5 ? 0.0 : 1.0; };
  REQUIRE_THROWS_AS(build_grid(spec, true), domain_error);
}

TEST_CASE("8-neighbor Cauchy-Crofton weights approximate disk boundary length") {
  GridSpec spec;
  std::size_t n = 128;
  spec.nx = spec.ny = n;
  spec.x0 = spec.y0 = -1.0;
  spec.spacing = 2.0 / static_cast<double>(n);
  spec.volume_density = [](double, double) { return 1.0; };
  spec.neighborhood = 8;
  auto g = build_grid(spec, true);
  for (double r : {0.4, 0.6, 0.8}) {
    auto ball = g.ball_mask(0, 0, r);
    REQUIRE(g.space.perimeter(ball) == Catch::Approx(2 * std::numbers::pi * r).epsilon(0.02));
  }
}

TEST_CASE("radial-weight disk reproduces the sqrt(r)/2 ratio trend") {
  auto g = build_radial_disk(128);
  for (double r : {0.4, 0.6}) {
    auto ball = g.ball_mask(0, 0, r);
    double ratio = g.space.perimeter(ball) / g.space.measure_of(ball);
    REQUIRE(ratio == Catch::Approx(std::sqrt(r) / 2).epsilon(0.08));
  }
}

TEST_CASE("radial-weight disk h_1 falls toward zero under refinement") {
  double previous = 1e9;
  for (std::size_t n : {8, 16, 32}) {
    auto g = build_radial_disk(n);
    auto h1 = dinkelbach_h1(g.space, g.omega);
    REQUIRE(h1.value < previous);
    previous = h1.value;
  }
}

TEST_CASE("Gaussian line mass approaches one") {
  // midpoint sums of a Gaussian converge spectrally; the defect is visible on
  // coarse grids and already at rounding level by n = 64
  double previous_defect = 1e9;
  for (std::size_t n : {4, 8, 16}) {
    auto g = build_gaussian_line(n);
    double defect = std::abs(1.0 - g.space.measure_of(g.omega));
    REQUIRE(defect < previous_defect);
    previous_defect = defect;
  }
  auto fine = build_gaussian_line(128);
  REQUIRE(std::abs(1.0 - fine.space.measure_of(fine.omega)) < 1e-6);
}

TEST_CASE("kernel space doubles the kernel into the cut") {
  KernelSpec<double> spec;
  spec.positions = {{0.0}, {1.0}};
  spec.measures = {1.0, 1.0};
  spec.kernel = [](const std::vector<double>&, const std::vector<double>&) { return 1.0; };
  auto space = build_kernel_space(spec);
  SubsetMask one(2);
  one.set(0, true);
  REQUIRE(space.perimeter(one) == 2.0);  // ordered pairs count twice
}

TEST_CASE("kernel scaling is 1-homogeneous in the cut and in h_1") {
  KernelSpec<double> base;
  for (int i = 0; i < 5; ++i) base.positions.push_back({static_cast<double>(i)});
  base.measures.assign(5, 1.0);
  base.kernel = [](const std::vector<double>& a, const std::vector<double>& b) {
    return 1.0 / (1.0 + std::abs(a[0] - b[0]));
  };
  auto doubled = base;
  doubled.kernel = [](const std::vector<double>& a, const std::vector<double>& b) {
    return 2.0 / (1.0 + std::abs(a[0] - b[0]));
  };
  auto s1 = build_kernel_space(base);
  auto s2 = build_kernel_space(doubled);
  SubsetMask omega = SubsetMask::from_points(5, {0, 1, 2});
  REQUIRE(s2.perimeter(omega) == Catch::Approx(2 * s1.perimeter(omega)).margin(1e-12));
  auto h1a = dinkelbach_h1(s1, omega);
  auto h1b = dinkelbach_h1(s2, omega);
  REQUIRE(h1b.value == Catch::Approx(2 * h1a.value).margin(1e-10));
}

TEST_CASE("asymmetric kernels are rejected") {
  KernelSpec<double> spec;
  spec.positions = {{0.0}, {1.0}};
  spec.measures = {1.0, 1.0};
  spec.kernel = [](const std::vector<double>& a, const std::vector<double>& b) {
    return a[0] < b[0] ? 1.0 : 2.0;
  };
  REQUIRE_THROWS_AS(build_kernel_space(spec), domain_error);
}

TEST_CASE("fractional row h_1 decreases as the region grows") {
  auto space = build_fractional_row(8, 0.5, 0.125);
  double previous = 1e18;
  for (std::size_t k = 3; k <= 7; ++k) {
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < k; ++i) pts.push_back(i);
    auto cert = dinkelbach_h1(space, SubsetMask::from_points(8, pts));
    REQUIRE(cert.value <= previous + 1e-12);
    previous = cert.value;
  }
}

TEST_CASE("metric graph: single edge h_1 = 2/L at every subdivision") {
  for (double length : {1.0, 2.5}) {
    for (std::size_t s : {1, 2, 4, 8}) {
      auto mg = build_metric_graph<double>({{0, 1, length}}, s);
      auto cert = dinkelbach_h1(mg.space, mg.interior);
      REQUIRE(cert.value == Catch::Approx(2.0 / length).margin(1e-12));
    }
  }
}

TEST_CASE("metric graph: 3-star stable under subdivision") {
  double reference = 0;
  for (std::size_t s : {8, 16, 32}) {
    auto mg = build_metric_graph<double>({{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}}, s);
    auto cert = dinkelbach_h1(mg.space, mg.interior);
    if (reference == 0) reference = cert.value;
    REQUIRE(cert.value == Catch::Approx(reference).epsilon(0.02));
  }
  REQUIRE(reference == Catch::Approx(1.0).epsilon(0.02));
}

TEST_CASE("metric graph: zero subdivision is the combinatorial graph") {
  auto mg = build_metric_graph<double>({{0, 1, 2.0}, {1, 2, 1.0}}, 0);
  REQUIRE(mg.space.points() == 3);
  REQUIRE(mg.space.measure(0) == 1.0);  // half the incident length
  REQUIRE(mg.space.measure(1) == 1.5);
  SubsetMask middle(3);
  middle.set(1, true);
  REQUIRE(mg.space.perimeter(middle) == 2.0);  // unit weight per crossing
  REQUIRE_THROWS_AS(build_metric_graph<double>({{0, 1, -1.0}}, 2), domain_error);
}

TEST_CASE("twin dumbbell saturates h_2 = 2 h_1") {
  auto d = build_dumbbell<Rational>(2, 4, Rational(1, 100));
  auto h1 = dinkelbach_h1(d.space, d.omega);
  auto h2 = brute_force_hN(d.space, d.omega, 2);
  REQUIRE(h2.value == Rational(2) * h1.value);

  auto df = build_dumbbell<double>(2, 4, 0.01);
  auto h1f = dinkelbach_h1(df.space, df.omega);
  auto h2f = brute_force_hN(df.space, df.omega, 2);
  REQUIRE(std::abs(h2f.value - 2 * h1f.value) <= 1e-9);
}

TEST_CASE("disconnected dumbbell (eps = 0) still saturates exactly") {
  auto d = build_dumbbell<Rational>(2, 3, Rational(0));
  auto h1 = brute_force_hN(d.space, d.omega, 1);
  auto h2 = brute_force_hN(d.space, d.omega, 2);
  REQUIRE(h1.value == Rational(1));
  REQUIRE(h2.value == Rational(2) * h1.value);
}

TEST_CASE("four-lobe chain: the optimal pair is the two interior lobes") {
  auto d = build_dumbbell<double>(4, 3, 0.01);
  auto h2 = brute_force_hN(d.space, d.omega, 2);
  REQUIRE(h2.cluster.chambers.size() == 2);
  bool interior_pair =
      (h2.cluster.chambers[0] == d.lobes[1] && h2.cluster.chambers[1] == d.lobes[2]) ||
      (h2.cluster.chambers[0] == d.lobes[2] && h2.cluster.chambers[1] == d.lobes[1]);
  REQUIRE(interior_pair);
}

TEST_CASE("dumbbell parameter guards") {
  REQUIRE_THROWS_AS(build_dumbbell<double>(1, 4, 0.01), domain_error);
  REQUIRE_THROWS_AS(build_dumbbell<double>(2, 1, 0.01), domain_error);
  REQUIRE_THROWS_AS(build_dumbbell<double>(2, 4, 0.4), domain_error);
}

TEST_CASE("the standard suite is large enough and structurally aligned") {
  auto fl = standard_suite<double>();
  auto ra = standard_suite<Rational>();
  REQUIRE(fl.size() == ra.size());
  std::size_t small = 0;
  for (auto& inst : fl)
    if (inst.omega.count() <= 14) ++small;
  REQUIRE(small >= 25);
  for (std::size_t i = 0; i < fl.size(); ++i) {
    REQUIRE(fl[i].name == ra[i].name);
    REQUIRE(fl[i].space.points() == ra[i].space.points());
    REQUIRE(fl[i].omega == ra[i].omega);
    REQUIRE(!fl[i].omega.empty());
  }
}

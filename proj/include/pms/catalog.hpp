#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "pms/rng.hpp"
#include "pms/space.hpp"

namespace pms {

// ---------------------------------------------------------------------------
// Elementary graph builders (exact in rational mode).
// ---------------------------------------------------------------------------

template <typename T>
FiniteSpace<T> make_path(std::size_t n, std::vector<T> weights = {}, std::vector<T> measures = {}) {
  if (n == 0) throw domain_error("path needs at least one vertex");
  if (weights.empty()) weights.assign(n > 0 ? n - 1 : 0, T(1));
  if (measures.empty()) measures.assign(n, T(1));
  if (weights.size() != n - 1 || measures.size() != n) throw domain_error("bad path data");
  std::vector<CutEdge<T>> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, weights[i]});
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i + 1));
  return FiniteSpace<T>(std::move(measures), PerimeterOracle<T>::cut(n, std::move(edges)),
                        std::move(labels));
}

template <typename T>
FiniteSpace<T> make_cycle(std::size_t n) {
  if (n < 3) throw domain_error("cycle needs at least three vertices");
  std::vector<CutEdge<T>> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, T(1)});
  return FiniteSpace<T>(std::vector<T>(n, T(1)), PerimeterOracle<T>::cut(n, std::move(edges)));
}

template <typename T>
FiniteSpace<T> make_complete(std::size_t n) {
  if (n < 2) throw domain_error("complete graph needs at least two vertices");
  std::vector<CutEdge<T>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j, T(1)});
  return FiniteSpace<T>(std::vector<T>(n, T(1)), PerimeterOracle<T>::cut(n, std::move(edges)));
}

// Hub at index 0, leaves 1..n.
template <typename T>
FiniteSpace<T> make_star(std::size_t leaves) {
  if (leaves < 1) throw domain_error("star needs at least one leaf");
  std::vector<CutEdge<T>> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.push_back({0, i, T(1)});
  return FiniteSpace<T>(std::vector<T>(leaves + 1, T(1)),
                        PerimeterOracle<T>::cut(leaves + 1, std::move(edges)));
}

// Two unit-weight triangles, both wired to a shared exterior vertex (last
// index) with per-vertex boundary weight 1.  Symmetric twin components.
template <typename T>
FiniteSpace<T> make_twin_triangles() {
  const std::size_t n = 7;  // 2 x 3 + exterior
  std::vector<CutEdge<T>> edges;
  for (std::size_t base : {std::size_t{0}, std::size_t{3}}) {
    edges.push_back({base, base + 1, T(1)});
    edges.push_back({base, base + 2, T(1)});
    edges.push_back({base + 1, base + 2, T(1)});
    for (std::size_t i = 0; i < 3; ++i) edges.push_back({base + i, 6, T(1)});
  }
  return FiniteSpace<T>(std::vector<T>(n, T(1)), PerimeterOracle<T>::cut(n, std::move(edges)));
}

// ---------------------------------------------------------------------------
// Dumbbells: complete lobes with outer boundary, chained by thin bridges.
// A bridge replaces part of its anchor's boundary (weight 3*eps) with a
// cheaper crossing (weight eps), so interior lobes have the smaller ratio,
// the discrete analogue of the boundary shortcut across a tube opening.
// ---------------------------------------------------------------------------

template <typename T>
struct DumbbellSpace {
  FiniteSpace<T> space;
  SubsetMask omega;
  std::vector<SubsetMask> lobes;
  std::vector<std::size_t> bridge_points;
};

template <typename T>
DumbbellSpace<T> build_dumbbell(std::size_t lobe_count, std::size_t lobe_size, const T& eps) {
  if (lobe_count < 2) throw domain_error("dumbbell needs at least two lobes");
  if (lobe_size < 2) throw domain_error("dumbbell lobes need at least two vertices");
  if (!(T(3) * eps < T(1))) throw domain_error("bridge weight must stay below the lobe cut scale");

  const std::size_t bridges = lobe_count - 1;
  const std::size_t n = lobe_count * lobe_size + bridges + 1;  // + exterior
  const std::size_t exterior = n - 1;
  auto lobe_vertex = [&](std::size_t lobe, std::size_t i) { return lobe * lobe_size + i; };
  auto bridge_vertex = [&](std::size_t b) { return lobe_count * lobe_size + b; };

  std::vector<T> measures(n, T(1));
  std::vector<CutEdge<T>> edges;
  std::vector<T> boundary(n, T(0));
  for (std::size_t l = 0; l < lobe_count; ++l) {
    for (std::size_t i = 0; i < lobe_size; ++i)
      for (std::size_t j = i + 1; j < lobe_size; ++j)
        edges.push_back({lobe_vertex(l, i), lobe_vertex(l, j), T(1)});
    for (std::size_t i = 0; i < lobe_size; ++i) boundary[lobe_vertex(l, i)] = T(1);
  }
  for (std::size_t b = 0; b < bridges; ++b) {
    std::size_t node = bridge_vertex(b);
    measures[node] = frac<T>(1, 20);
    boundary[node] = frac<T>(1, 2);
    // anchor 0 of the right lobe, anchor 1 of the left lobe
    std::size_t left = lobe_vertex(b, 1 % lobe_size);
    std::size_t right = lobe_vertex(b + 1, 0);
    edges.push_back({node, left, eps});
    edges.push_back({node, right, eps});
    boundary[left] -= T(3) * eps;
    boundary[right] -= T(3) * eps;
  }
  for (std::size_t x = 0; x + 1 < n; ++x)
    if (boundary[x] > T(0)) edges.push_back({x, exterior, boundary[x]});

  DumbbellSpace<T> out{
      FiniteSpace<T>(std::move(measures), PerimeterOracle<T>::cut(n, std::move(edges))),
      SubsetMask(n), {}, {}};
  out.omega = SubsetMask::full(n);
  out.omega.set(exterior, false);
  for (std::size_t l = 0; l < lobe_count; ++l) {
    SubsetMask lobe(n);
    for (std::size_t i = 0; i < lobe_size; ++i) lobe.set(lobe_vertex(l, i), true);
    out.lobes.push_back(lobe);
  }
  for (std::size_t b = 0; b < bridges; ++b) out.bridge_points.push_back(bridge_vertex(b));
  return out;
}

// ---------------------------------------------------------------------------
// Metric graphs.  Each edge of positive length splits into `subdivision`
// segment points of mass length/subdivision; crossing any transition costs 1.
// At a junction the incident end segments form a unit-weight clique (one
// crossing per incident pair).  Degree-1 vertices become exterior cap points
// so that the open interior keeps its boundary.  subdivision = 0 yields the
// plain combinatorial graph with half-length vertex masses.
// ---------------------------------------------------------------------------

template <typename T>
struct MetricEdge {
  std::size_t a, b;
  T length;
};

template <typename T>
struct MetricGraphSpace {
  FiniteSpace<T> space;
  SubsetMask interior;  // all segment points
};

template <typename T>
MetricGraphSpace<T> build_metric_graph(const std::vector<MetricEdge<T>>& edges,
                                       std::size_t subdivision) {
  if (edges.empty()) throw domain_error("metric graph needs at least one edge");
  std::size_t vmax = 0;
  for (auto& e : edges) {
    if (!(e.length > T(0))) throw domain_error("metric edges need positive length");
    vmax = std::max({vmax, e.a + 1, e.b + 1});
  }

  if (subdivision == 0) {
    std::vector<T> measures(vmax, T(0));
    std::vector<CutEdge<T>> cut;
    for (auto& e : edges) {
      measures[e.a] += e.length / T(2);
      measures[e.b] += e.length / T(2);
      cut.push_back({e.a, e.b, T(1)});
    }
    for (auto& m : measures)
      if (!(m > T(0))) throw domain_error("metric graph has an isolated vertex");
    MetricGraphSpace<T> out{
        FiniteSpace<T>(std::move(measures), PerimeterOracle<T>::cut(vmax, std::move(cut))),
        SubsetMask(vmax)};
    out.interior = SubsetMask::full(vmax);
    return out;
  }

  std::vector<std::size_t> degree(vmax, 0);
  for (auto& e : edges) {
    degree[e.a]++;
    degree[e.b]++;
  }

  std::vector<T> measures;
  std::vector<std::string> labels;
  std::vector<CutEdge<T>> cut;
  // end segments at each original vertex, with their edge length (for caps)
  std::vector<std::vector<std::pair<std::size_t, T>>> incident(vmax);

  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    const auto& e = edges[ei];
    std::size_t first = measures.size();
    for (std::size_t s = 0; s < subdivision; ++s) {
      measures.push_back(e.length / T(static_cast<long>(subdivision)));
      labels.push_back("e" + std::to_string(ei) + "s" + std::to_string(s));
      if (s > 0) cut.push_back({first + s - 1, first + s, T(1)});
    }
    incident[e.a].push_back({first, e.length});
    incident[e.b].push_back({first + subdivision - 1, e.length});
  }
  const std::size_t segment_count = measures.size();
  for (std::size_t v = 0; v < vmax; ++v) {
    if (degree[v] == 0) continue;
    if (degree[v] == 1) {
      // exterior cap keeps the interval's endpoint boundary
      std::size_t cap = measures.size();
      measures.push_back(incident[v].front().second / T(2 * static_cast<long>(subdivision)));
      labels.push_back("cap" + std::to_string(v));
      cut.push_back({incident[v].front().first, cap, T(1)});
      continue;
    }
    for (std::size_t i = 0; i < incident[v].size(); ++i)
      for (std::size_t j = i + 1; j < incident[v].size(); ++j)
        cut.push_back({incident[v][i].first, incident[v][j].first, T(1)});
  }

  const std::size_t n = measures.size();
  MetricGraphSpace<T> out{
      FiniteSpace<T>(std::move(measures), PerimeterOracle<T>::cut(n, std::move(cut)),
                     std::move(labels)),
      SubsetMask(n)};
  for (std::size_t i = 0; i < segment_count; ++i) out.interior.set(i, true);
  return out;
}

// ---------------------------------------------------------------------------
// Kernel (non-local) spaces: a point cloud with a symmetric kernel becomes a
// dense cut with w(x,y) = 2 K(x,y) m(x) m(y); the ordered-pair double count
// of the defining integral is folded into the weight.
// ---------------------------------------------------------------------------

template <typename T>
struct KernelSpec {
  std::vector<std::vector<double>> positions;
  std::vector<T> measures;
  std::function<T(const std::vector<double>&, const std::vector<double>&)> kernel;
  double truncation_radius = 0;  // 0: no truncation
};

template <typename T>
FiniteSpace<T> build_kernel_space(const KernelSpec<T>& spec) {
  const std::size_t n = spec.positions.size();
  if (n == 0) throw domain_error("kernel space needs points");
  if (spec.measures.size() != n) throw domain_error("kernel space measure count mismatch");
  auto dist2 = [&](std::size_t i, std::size_t j) {
    double d = 0;
    for (std::size_t k = 0; k < spec.positions[i].size(); ++k) {
      double t = spec.positions[i][k] - spec.positions[j][k];
      d += t * t;
    }
    return d;
  };
  std::vector<CutEdge<T>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (spec.truncation_radius > 0 &&
          dist2(i, j) > spec.truncation_radius * spec.truncation_radius)
        continue;
      T kij = spec.kernel(spec.positions[i], spec.positions[j]);
      T kji = spec.kernel(spec.positions[j], spec.positions[i]);
      if (kij != kji) throw domain_error("kernel must be symmetric");
      if (kij < T(0)) throw domain_error("kernel must be non-negative");
      if (kij == T(0)) continue;
      edges.push_back({i, j, T(2) * kij * spec.measures[i] * spec.measures[j]});
    }
  }
  return FiniteSpace<T>(spec.measures, PerimeterOracle<T>::cut(n, std::move(edges)));
}

// Fractional kernel |x-y|^{-(d+s)} on a 1-D row of `count` points with
// spacing and per-point mass `spacing`.
inline FiniteSpace<double> build_fractional_row(std::size_t count, double s, double spacing) {
  KernelSpec<double> spec;
  for (std::size_t i = 0; i < count; ++i) spec.positions.push_back({spacing * static_cast<double>(i)});
  spec.measures.assign(count, spacing);
  spec.kernel = [s](const std::vector<double>& a, const std::vector<double>& b) {
    double d = std::abs(a[0] - b[0]);
    return std::pow(d, -(1.0 + s));
  };
  return build_kernel_space(spec);
}

// ---------------------------------------------------------------------------
// Weighted grids.
// ---------------------------------------------------------------------------

struct GridSpec {
  std::size_t nx = 1, ny = 1;
  double x0 = 0, y0 = 0;  // lower-left corner of the interior region
  double spacing = 1.0;
  std::function<double(double, double)> volume_density;  // g > 0
  // h(x, y, nu_x, nu_y): perimeter density sampled at face midpoints
  std::function<double(double, double, double, double)> edge_density;
  int neighborhood = 4;  // 4: crystalline |.|_1; 8: Cauchy-Crofton two-slope
  // optional exact cell mass override (adaptive quadrature near singularities)
  std::function<double(double, double, double)> cell_mass;
};

struct GridSpace {
  FiniteSpace<double> space;
  SubsetMask omega;  // interior cells
  std::size_t nx_total = 0, ny_total = 0;
  double x0 = 0, y0 = 0;  // of the extended grid
  double spacing = 1.0;
  bool has_ring = false;

  std::size_t index(std::size_t ix, std::size_t iy) const { return iy * nx_total + ix; }
  double cx(std::size_t ix) const { return x0 + (static_cast<double>(ix) + 0.5) * spacing; }
  double cy(std::size_t iy) const { return y0 + (static_cast<double>(iy) + 0.5) * spacing; }

  SubsetMask ball_mask(double cx0, double cy0, double r) const {
    SubsetMask m(space.points());
    for (std::size_t iy = 0; iy < ny_total; ++iy)
      for (std::size_t ix = 0; ix < nx_total; ++ix) {
        double dx = cx(ix) - cx0, dy = cy(iy) - cy0;
        if (std::sqrt(dx * dx + dy * dy) <= r) m.set(index(ix, iy), true);
      }
    return m & omega;
  }
};

// Cauchy-Crofton two-slope weights: with these the cut of a digital set
// converges to the isotropic boundary length averaged over directions
// (exactly, for boundaries sweeping all normals uniformly).
inline constexpr double kCcAxis = std::numbers::pi / 8.0;
inline constexpr double kCcDiagonal = std::numbers::pi / (8.0 * std::numbers::sqrt2);

inline GridSpace build_grid(const GridSpec& spec, bool embed_boundary) {
  if (spec.nx == 0 || spec.ny == 0) throw domain_error("grid needs at least one cell");
  if (!spec.volume_density) throw domain_error("grid needs a volume density");
  if (spec.neighborhood != 4 && spec.neighborhood != 8)
    throw domain_error("grid neighborhood must be 4 or 8");
  const double h = spec.spacing;
  const std::size_t ring = embed_boundary ? 1 : 0;
  GridSpace out{FiniteSpace<double>({1.0}, PerimeterOracle<double>::cut(1, {})),  // replaced below
                SubsetMask(0),
                spec.nx + 2 * ring,
                spec.ny + 2 * ring,
                spec.x0 - h * static_cast<double>(ring),
                spec.y0 - h * static_cast<double>(ring),
                h,
                embed_boundary};

  const std::size_t total = out.nx_total * out.ny_total;
  std::vector<double> measures(total);
  for (std::size_t iy = 0; iy < out.ny_total; ++iy) {
    for (std::size_t ix = 0; ix < out.nx_total; ++ix) {
      double mass = spec.cell_mass ? spec.cell_mass(out.cx(ix), out.cy(iy), h)
                                   : spec.volume_density(out.cx(ix), out.cy(iy)) * h * h;
      if (!(mass > 0) || !std::isfinite(mass))
        throw domain_error("grid cell with non-positive mass (density must stay positive)");
      measures[out.index(ix, iy)] = mass;
    }
  }

  auto hdensity = [&](double x, double y, double nx, double ny) {
    return spec.edge_density ? spec.edge_density(x, y, nx, ny) : 1.0;
  };
  std::vector<CutEdge<double>> edges;
  const bool cc = spec.neighborhood == 8;
  const double axis_scale = cc ? kCcAxis : 1.0;
  for (std::size_t iy = 0; iy < out.ny_total; ++iy) {
    for (std::size_t ix = 0; ix < out.nx_total; ++ix) {
      std::size_t a = out.index(ix, iy);
      if (ix + 1 < out.nx_total) {
        double w = hdensity(out.cx(ix) + h / 2, out.cy(iy), 1, 0) * h * axis_scale;
        edges.push_back({a, out.index(ix + 1, iy), w});
      }
      if (iy + 1 < out.ny_total) {
        double w = hdensity(out.cx(ix), out.cy(iy) + h / 2, 0, 1) * h * axis_scale;
        edges.push_back({a, out.index(ix, iy + 1), w});
      }
      if (cc && ix + 1 < out.nx_total && iy + 1 < out.ny_total) {
        double mx = out.cx(ix) + h / 2, my = out.cy(iy) + h / 2;
        const double inv = 1.0 / std::numbers::sqrt2;
        edges.push_back({a, out.index(ix + 1, iy + 1),
                         hdensity(mx, my, inv, inv) * h * kCcDiagonal});
        edges.push_back({out.index(ix + 1, iy), out.index(ix, iy + 1),
                         hdensity(mx, my, inv, -inv) * h * kCcDiagonal});
      }
    }
  }

  out.space = FiniteSpace<double>(std::move(measures),
                                  PerimeterOracle<double>::cut(total, std::move(edges)));
  out.omega = SubsetMask(total);
  for (std::size_t iy = ring; iy < out.ny_total - ring; ++iy)
    for (std::size_t ix = ring; ix < out.nx_total - ring; ++ix) out.omega.set(out.index(ix, iy), true);
  return out;
}

// Unit square with unit densities and the crystalline 4-neighborhood,
// exterior ring included; exact in rational mode.
template <typename T>
struct UnitSquareSpace {
  FiniteSpace<T> space;
  SubsetMask omega;
};

template <typename T>
UnitSquareSpace<T> build_unit_square(std::size_t n) {
  if (n == 0) throw domain_error("grid needs at least one cell");
  const std::size_t side = n + 2;
  const std::size_t total = side * side;
  auto index = [&](std::size_t ix, std::size_t iy) { return iy * side + ix; };
  const T w = frac<T>(1, static_cast<long>(n));
  const T mass = w * w;
  std::vector<CutEdge<T>> edges;
  for (std::size_t iy = 0; iy < side; ++iy)
    for (std::size_t ix = 0; ix < side; ++ix) {
      if (ix + 1 < side) edges.push_back({index(ix, iy), index(ix + 1, iy), w});
      if (iy + 1 < side) edges.push_back({index(ix, iy), index(ix, iy + 1), w});
    }
  UnitSquareSpace<T> out{
      FiniteSpace<T>(std::vector<T>(total, mass), PerimeterOracle<T>::cut(total, std::move(edges))),
      SubsetMask(total)};
  for (std::size_t iy = 1; iy <= n; ++iy)
    for (std::size_t ix = 1; ix <= n; ++ix) out.omega.set(index(ix, iy), true);
  return out;
}

// Weight ||x||^{-3/2} inside the unit disk, exp(-||x||) outside: the measure
// concentrates at the origin faster than the perimeter can shrink, so ball
// ratios P(B_r)/m(B_r) fall like sqrt(r)/2 and h_1 drops to zero under
// refinement.
inline double radial_weight(double x, double y) {
  double r = std::sqrt(x * x + y * y);
  if (r <= 1.0) return std::pow(r, -1.5);
  return std::exp(-r);
}

// Adaptive cell mass for the radial weight: repeated 4-way midpoint
// subdivision near the singularity.
inline double radial_cell_mass(double cx, double cy, double h, int depth = 0) {
  double r = std::sqrt(cx * cx + cy * cy);
  if (depth >= 9 || r > 4 * h) return radial_weight(cx, cy) * h * h;
  double q = h / 4;
  return radial_cell_mass(cx - q, cy - q, h / 2, depth + 1) +
         radial_cell_mass(cx + q, cy - q, h / 2, depth + 1) +
         radial_cell_mass(cx - q, cy + q, h / 2, depth + 1) +
         radial_cell_mass(cx + q, cy + q, h / 2, depth + 1);
}

// Radial-weight disk on [-1,1]^2 with isotropic (8-neighbor Cauchy-Crofton)
// perimeter; omega is the grid disk of radius 0.95.
inline GridSpace build_radial_disk(std::size_t n) {
  GridSpec spec;
  spec.nx = spec.ny = n;
  spec.x0 = spec.y0 = -1.0;
  spec.spacing = 2.0 / static_cast<double>(n);
  spec.volume_density = radial_weight;
  spec.neighborhood = 8;
  spec.cell_mass = [](double cx, double cy, double h) { return radial_cell_mass(cx, cy, h); };
  auto grid = build_grid(spec, true);
  grid.omega = grid.ball_mask(0.0, 0.0, 0.95);
  return grid;
}

// 1-D Gaussian line on [-L, L]: mass and edge densities both the standard
// Gaussian density; total interior mass tends to 1 under refinement.
inline GridSpace build_gaussian_line(std::size_t n, double half_width = 8.0) {
  GridSpec spec;
  spec.nx = n;
  spec.ny = 1;
  spec.x0 = -half_width;
  spec.y0 = 0;
  spec.spacing = 2.0 * half_width / static_cast<double>(n);
  spec.volume_density = [](double x, double) {
    return std::exp(-x * x / 2.0) / std::sqrt(2.0 * std::numbers::pi);
  };
  spec.edge_density = [](double x, double, double, double) {
    return std::exp(-x * x / 2.0) / std::sqrt(2.0 * std::numbers::pi);
  };
  // 1-D: cell mass is density * spacing (one cell deep)
  spec.cell_mass = [&spec](double cx, double, double h) {
    return std::exp(-cx * cx / 2.0) / std::sqrt(2.0 * std::numbers::pi) * h;
  };
  return build_grid(spec, true);
}

// ---------------------------------------------------------------------------
// Standard instance suite used across tests and acceptance runs.
// ---------------------------------------------------------------------------

template <typename T>
struct CatalogInstance {
  std::string name;
  FiniteSpace<T> space;
  SubsetMask omega;
  bool rational_exact = true;  // weights/measures representable exactly
  bool axioms_clean = true;    // expected to pass P.1-P.3, P.6, P.7
  bool spectral = false;       // used in the p-eigenvalue/torsion rounds
  bool scan = false;           // used in the kappa-scan rounds
};

namespace detail {

template <typename T>
SubsetMask all_but(const FiniteSpace<T>& space, std::vector<std::size_t> removed) {
  SubsetMask m = SubsetMask::full(space.points());
  for (auto r : removed) m.set(r, false);
  return m;
}

// Connected random graph with dyadic weights; vertex 0 is the exterior.
template <typename T>
FiniteSpace<T> random_sparse(std::size_t n, std::uint64_t seed) {
  auto rng = stream(seed, 0);
  std::vector<CutEdge<T>> edges;
  for (std::size_t v = 1; v < n; ++v) {
    std::size_t parent = rng.next_below(v);
    edges.push_back({parent, v, frac<T>(1 + static_cast<long>(rng.next_below(8)), 8)});
  }
  std::size_t extra = n / 2;
  for (std::size_t k = 0; k < extra; ++k) {
    std::size_t a = rng.next_below(n), b = rng.next_below(n);
    if (a == b) continue;
    edges.push_back({std::min(a, b), std::max(a, b), frac<T>(1 + static_cast<long>(rng.next_below(8)), 8)});
  }
  std::vector<T> measures;
  for (std::size_t v = 0; v < n; ++v)
    measures.push_back(frac<T>(1 + static_cast<long>(rng.next_below(4)), 4));
  return FiniteSpace<T>(std::move(measures), PerimeterOracle<T>::cut(n, std::move(edges)));
}

}  // namespace detail

// At least 25 small catalog spaces with designated regions; every instance is
// exact in rational mode and passes the axiom suite.
template <typename T>
std::vector<CatalogInstance<T>> standard_suite() {
  std::vector<CatalogInstance<T>> suite;
  auto add = [&](std::string name, FiniteSpace<T> space, SubsetMask omega, bool spectral = false,
                 bool scan = false) {
    suite.push_back(CatalogInstance<T>{std::move(name), std::move(space), std::move(omega), true,
                                       true, spectral, scan});
  };

  for (std::size_t n : {2, 3, 4, 5, 6}) {
    auto space = make_path<T>(n);
    auto omega = detail::all_but(space, {n - 1});
    add("path-P" + std::to_string(n), std::move(space), std::move(omega), n == 4, n >= 4);
  }
  {
    std::vector<T> w{frac<T>(1, 3), frac<T>(2, 5), frac<T>(1, 2), frac<T>(3, 4)};
    std::vector<T> m{frac<T>(1, 2), T(1), frac<T>(3, 2), T(2), frac<T>(5, 4)};
    auto space = make_path<T>(5, w, m);
    add("path-weighted-a", space, detail::all_but(space, {4}), false, true);
  }
  {
    std::vector<T> w{frac<T>(7, 8), frac<T>(1, 8), frac<T>(5, 8)};
    std::vector<T> m{T(2), frac<T>(1, 4), frac<T>(1, 4), T(1)};
    auto space = make_path<T>(4, w, m);
    add("path-weighted-b", space, detail::all_but(space, {3}), false, false);
  }
  for (std::size_t n : {4, 5, 6}) {
    auto space = make_cycle<T>(n);
    add("cycle-C" + std::to_string(n), space, detail::all_but(space, {0}), n == 5, n == 5);
  }
  for (std::size_t n : {3, 4, 5}) {
    auto space = make_complete<T>(n);
    add("complete-K" + std::to_string(n), space, detail::all_but(space, {0}), n == 4, n == 4);
  }
  for (std::size_t leaves : {3, 4, 5}) {
    auto space = make_star<T>(leaves);
    add("star-S" + std::to_string(leaves), space, detail::all_but(space, {1}), leaves == 4,
        leaves == 3);
  }
  {
    auto space = make_twin_triangles<T>();
    add("twin-triangles", space, detail::all_but(space, {6}), true, true);
  }
  {
    auto d = build_dumbbell<T>(2, 3, frac<T>(1, 100));
    add("dumbbell-twin-K3", std::move(d.space), std::move(d.omega), true, true);
  }
  {
    auto d = build_dumbbell<T>(2, 4, frac<T>(1, 100));
    add("dumbbell-twin-K4", std::move(d.space), std::move(d.omega), false, true);
  }
  {
    auto g = build_unit_square<T>(2);
    add("unit-square-n2", std::move(g.space), std::move(g.omega), true, true);
  }
  {
    auto g = build_unit_square<T>(3);
    add("unit-square-n3", std::move(g.space), std::move(g.omega), false, false);
  }
  for (std::size_t s : {1, 2, 4}) {
    auto m = build_metric_graph<T>({{0, 1, T(1)}}, s);
    add("metric-edge-s" + std::to_string(s), std::move(m.space), std::move(m.interior), s == 2,
        s == 2);
  }
  {
    auto m = build_metric_graph<T>({{0, 1, T(1)}, {0, 2, T(1)}, {0, 3, T(1)}}, 2);
    add("metric-star3-s2", std::move(m.space), std::move(m.interior), false, false);
  }
  {
    auto m = build_metric_graph<T>({{0, 1, T(2)}, {1, 2, T(1)}, {2, 3, frac<T>(3, 2)}}, 0);
    auto omega = detail::all_but(m.space, {0});
    add("metric-path-s0", std::move(m.space), std::move(omega), false, false);
  }
  {
    KernelSpec<T> spec;
    for (std::size_t i = 0; i < 4; ++i) spec.positions.push_back({static_cast<double>(i)});
    spec.measures.assign(4, T(1));
    spec.kernel = [](const std::vector<double>&, const std::vector<double>&) { return frac<T>(1, 2); };
    auto space = build_kernel_space(spec);
    add("kernel-const-row4", space, detail::all_but(space, {3}), false, false);
  }
  {
    KernelSpec<T> spec;
    for (std::size_t i = 0; i < 5; ++i) spec.positions.push_back({static_cast<double>(i)});
    spec.measures.assign(5, frac<T>(1, 2));
    spec.kernel = [](const std::vector<double>& a, const std::vector<double>& b) {
      long d = static_cast<long>(std::llabs(static_cast<long long>(a[0] - b[0])));
      return frac<T>(1, 1 + d);
    };
    auto space = build_kernel_space(spec);
    add("kernel-decay-row5", space, detail::all_but(space, {4}), false, false);
  }
  {
    auto space = make_path<T>(2, {frac<T>(3, 2)}, {frac<T>(1, 2), T(1)});
    SubsetMask omega(space.points());
    omega.set(0, true);
    add("single-point-boundary", std::move(space), std::move(omega), false, true);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t n = 10 + i;
    auto space = detail::random_sparse<T>(n, 0xc0ffee + i);
    add("random-sparse-" + std::to_string(i + 1), space, detail::all_but(space, {0}), i == 0,
        i == 0);
  }
  {
    auto d = build_dumbbell<T>(4, 3, frac<T>(1, 100));
    suite.push_back(CatalogInstance<T>{"dumbbell-chain-4xK3", std::move(d.space),
                                       std::move(d.omega), true, true, false, false});
  }
  return suite;
}

}  // namespace pms

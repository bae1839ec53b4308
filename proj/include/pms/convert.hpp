#pragma once

#include <vector>

#include "pms/space.hpp"

namespace pms {

// Float view of an exact space (spectral p > 1 and torsion run in doubles).
inline FiniteSpace<double> space_to_double(const FiniteSpace<Rational>& space) {
  std::vector<double> measures;
  measures.reserve(space.points());
  for (std::size_t i = 0; i < space.points(); ++i) measures.push_back(to_double(space.measure(i)));
  if (!space.oracle().has_cut_form()) {
    std::vector<double> table;
    table.reserve(space.oracle().table_values().size());
    for (auto& v : space.oracle().table_values()) table.push_back(to_double(v));
    auto oracle = PerimeterOracle<double>::table(space.points(), std::move(table));
    for (auto a : space.oracle().declared_axioms()) oracle.declare(a);
    return FiniteSpace<double>(std::move(measures), std::move(oracle), space.labels());
  }
  std::vector<CutEdge<double>> edges;
  edges.reserve(space.oracle().edges().size());
  for (auto& e : space.oracle().edges()) edges.push_back({e.a, e.b, to_double(e.weight)});
  auto oracle = PerimeterOracle<double>::cut(space.points(), std::move(edges));
  for (auto a : space.oracle().declared_axioms()) oracle.declare(a);
  return FiniteSpace<double>(std::move(measures), std::move(oracle), space.labels());
}

inline const FiniteSpace<double>& space_to_double(const FiniteSpace<double>& space) { return space; }

}  // namespace pms

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pms/errors.hpp"
#include "pms/mask.hpp"
#include "pms/scalar.hpp"

namespace pms {

enum class Axiom { P1, P2, P3, P4, P5, P6, P7, RP1, RP2, RP3, RP4, RPplus, RPL };

inline std::string axiom_name(Axiom a) {
  switch (a) {
    case Axiom::P1: return "P.1";
    case Axiom::P2: return "P.2";
    case Axiom::P3: return "P.3";
    case Axiom::P4: return "P.4";
    case Axiom::P5: return "P.5";
    case Axiom::P6: return "P.6";
    case Axiom::P7: return "P.7";
    case Axiom::RP1: return "RP.1";
    case Axiom::RP2: return "RP.2";
    case Axiom::RP3: return "RP.3";
    case Axiom::RP4: return "RP.4";
    case Axiom::RPplus: return "RP.+";
    case Axiom::RPL: return "RP.L";
  }
  return "?";
}

template <typename T>
struct CutEdge {
  std::size_t a, b;
  T weight;
};

// Perimeter functional over subsets.  Two concrete forms: a symmetric
// edge-weight cut (carries a genuine relative perimeter) and an explicit
// value table for small spaces.
template <typename T>
class PerimeterOracle {
public:
  static PerimeterOracle cut(std::size_t n, std::vector<CutEdge<T>> edges) {
    PerimeterOracle o;
    o.n_ = n;
    o.kind_ = Kind::Cut;
    o.adjacency_.assign(n, {});
    for (auto& e : edges) {
      if (e.a >= n || e.b >= n || e.a == e.b) throw domain_error("bad cut edge endpoints");
      if (e.weight < T(0)) throw malformed_oracle_error("negative cut weight");
      if (e.weight == T(0)) continue;
      o.adjacency_[e.a].push_back({e.b, e.weight});
      o.adjacency_[e.b].push_back({e.a, e.weight});
      o.edges_.push_back(e);
    }
    o.declared_ = {Axiom::P1, Axiom::P2, Axiom::P3, Axiom::P4, Axiom::P5,
                   Axiom::P7, Axiom::RP1, Axiom::RP2, Axiom::RP3, Axiom::RP4,
                   Axiom::RPplus};
    return o;
  }

  // values[mask] = P(E) with point i at bit i; requires n <= 24.
  static PerimeterOracle table(std::size_t n, std::vector<T> values) {
    if (n > 24) throw size_error("table oracle limited to n <= 24");
    if (values.size() != (std::size_t{1} << n)) throw domain_error("table oracle needs 2^n entries");
    PerimeterOracle o;
    o.n_ = n;
    o.kind_ = Kind::Table;
    o.table_ = std::move(values);
    o.declared_ = {Axiom::P4, Axiom::P5};
    return o;
  }

  bool has_cut_form() const { return kind_ == Kind::Cut; }
  std::size_t points() const { return n_; }

  T total(const SubsetMask& e) const {
    if (e.size() != n_) throw domain_error("mask does not match oracle");
    if (kind_ == Kind::Table) return table_[e.bits64()];
    T sum(0);
    for (auto& edge : edges_)
      if (e.test(edge.a) != e.test(edge.b)) sum += edge.weight;
    return sum;
  }

  // P(E; A) via the half-weight vertex split.  Iterates the edge list in the
  // same order as total(), so P(E; X) reproduces P(E) bit for bit.
  T relative(const SubsetMask& e, const SubsetMask& a) const {
    require_cut("relative perimeter");
    if (e.size() != n_ || a.size() != n_) throw domain_error("mask does not match oracle");
    T sum(0);
    for (auto& edge : edges_) {
      if (e.test(edge.a) == e.test(edge.b)) continue;
      int ends = (a.test(edge.a) ? 1 : 0) + (a.test(edge.b) ? 1 : 0);
      if (ends == 2)
        sum += edge.weight;
      else if (ends == 1)
        sum += edge.weight / T(2);
    }
    return sum;
  }

  // |D chi_E|({x}) = (1/2) sum_y w(x,y) |chi_E(x) - chi_E(y)|.
  T point_density(const SubsetMask& e, std::size_t x) const {
    require_cut("per-point perimeter density");
    return twice_density(e, x) / T(2);
  }

  T weighted_degree(std::size_t x) const {
    require_cut("weighted degree");
    T sum(0);
    for (auto& [y, w] : adjacency_[x]) sum += w;
    return sum;
  }

  const std::vector<std::pair<std::size_t, T>>& neighbors(std::size_t x) const {
    require_cut("adjacency");
    return adjacency_[x];
  }

  const std::vector<CutEdge<T>>& edges() const {
    require_cut("edge list");
    return edges_;
  }

  const std::vector<T>& table_values() const {
    if (kind_ != Kind::Table) throw unsupported_operation_error("oracle has no table form");
    return table_;
  }

  bool declares(Axiom a) const { return declared_.count(a) > 0; }
  const std::set<Axiom>& declared_axioms() const { return declared_; }
  void declare(Axiom a) { declared_.insert(a); }

private:
  enum class Kind { Cut, Table };

  void require_cut(const char* what) const {
    if (kind_ != Kind::Cut)
      throw unsupported_operation_error(std::string(what) + " requires a cut oracle");
  }

  T twice_density(const SubsetMask& e, std::size_t x) const {
    T sum(0);
    bool inside = e.test(x);
    for (auto& [y, w] : adjacency_[x])
      if (e.test(y) != inside) sum += w;
    return sum;
  }

  std::size_t n_ = 0;
  Kind kind_ = Kind::Cut;
  std::vector<std::vector<std::pair<std::size_t, T>>> adjacency_;
  std::vector<CutEdge<T>> edges_;
  std::vector<T> table_;
  std::set<Axiom> declared_;
};

// Finite perimeter-measure space: points with strictly positive masses plus a
// perimeter oracle.  Immutable after construction.
template <typename T>
class FiniteSpace {
public:
  FiniteSpace(std::vector<T> measures, PerimeterOracle<T> oracle,
              std::vector<std::string> labels = {})
      : measures_(std::move(measures)), oracle_(std::move(oracle)), labels_(std::move(labels)) {
    if (measures_.empty()) throw domain_error("space needs at least one point");
    if (oracle_.points() != measures_.size()) throw domain_error("oracle size mismatch");
    for (auto& m : measures_) {
      if (!scalar_traits<T>::is_finite(m) || m <= T(0))
        throw domain_error("point measures must be strictly positive");
    }
    if (labels_.empty()) {
      labels_.reserve(measures_.size());
      for (std::size_t i = 0; i < measures_.size(); ++i) labels_.push_back("p" + std::to_string(i));
    }
    if (labels_.size() != measures_.size()) throw domain_error("label count mismatch");
    total_ = T(0);
    for (auto& m : measures_) total_ += m;
  }

  std::size_t points() const { return measures_.size(); }
  const T& measure(std::size_t i) const { return measures_[i]; }
  const std::vector<T>& measures() const { return measures_; }
  const T& total_measure() const { return total_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const PerimeterOracle<T>& oracle() const { return oracle_; }

  T measure_of(const SubsetMask& e) const {
    if (e.size() != points()) throw domain_error("mask does not match space");
    T sum(0);
    e.for_each([&](std::size_t i) { sum += measures_[i]; });
    return sum;
  }

  T perimeter(const SubsetMask& e) const { return oracle_.total(e); }

  SubsetMask empty_mask() const { return SubsetMask(points()); }
  SubsetMask full_mask() const { return SubsetMask::full(points()); }

private:
  std::vector<T> measures_;
  PerimeterOracle<T> oracle_;
  std::vector<std::string> labels_;
  T total_;
};

// P(E; A) with the oracle's relative form; additive over disjoint windows and
// P(E; X) = P(E) bit-exactly for cut oracles.
template <typename T>
T relative_perimeter(const FiniteSpace<T>& space, const SubsetMask& e, const SubsetMask& a) {
  return space.oracle().relative(e, a);
}

}  // namespace pms

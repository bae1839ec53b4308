#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "pms/errors.hpp"
#include "pms/scalar.hpp"

namespace pms {

// Directed flow network with designated source/sink.  min_cut() returns the
// cut value together with both canonical minimizers of the source-side
// partition: the minimal one (residual-reachable set) and the maximal one
// (complement of the set that still reaches the sink).
template <typename T>
class FlowNetwork {
public:
  explicit FlowNetwork(std::size_t inner_nodes)
      : n_(inner_nodes + 2), source_(inner_nodes), sink_(inner_nodes + 1), head_(n_, -1) {}

  std::size_t source() const { return source_; }
  std::size_t sink() const { return sink_; }
  std::size_t nodes() const { return n_; }

  void add_arc(std::size_t from, std::size_t to, T capacity) {
    check_arc(from, to, capacity);
    push_arc(from, to, capacity);
    push_arc(to, from, T(0));
  }

  // Undirected capacity: both orientations carry the weight.
  void add_edge(std::size_t a, std::size_t b, T capacity) {
    check_arc(a, b, capacity);
    push_arc(a, b, capacity);
    push_arc(b, a, capacity);
  }

  struct CutResult {
    T value;
    std::vector<char> min_source_side;  // indexed by node id; nonzero on source side
    std::vector<char> max_source_side;
  };

  CutResult min_cut() {
    const T eps = epsilon();
    run_dinic(eps);
    CutResult out;
    out.min_source_side = reachable_from_source(eps);
    out.max_source_side = not_reaching_sink(eps);
    out.value = cut_capacity(out.min_source_side);
    return out;
  }

private:
  struct Arc {
    std::size_t to;
    std::ptrdiff_t next;
    T residual;
    T capacity;
  };

  void check_arc(std::size_t from, std::size_t to, const T& capacity) const {
    if (from >= n_ || to >= n_) throw domain_error("flow arc endpoint out of range");
    if (!scalar_traits<T>::is_finite(capacity) || capacity < T(0))
      throw domain_error("flow capacities must be finite and non-negative");
  }

  void push_arc(std::size_t from, std::size_t to, T cap) {
    arcs_.push_back(Arc{to, head_[from], cap, cap});
    head_[from] = static_cast<std::ptrdiff_t>(arcs_.size() - 1);
  }

  T epsilon() const {
    if constexpr (scalar_traits<T>::is_exact) {
      return T(0);
    } else {
      T mx(0);
      for (auto& a : arcs_) mx = std::max(mx, a.capacity);
      return 1e-13 * (1.0 + mx);
    }
  }

  bool build_levels(const T& eps) {
    levels_.assign(n_, -1);
    queue_.clear();
    queue_.push_back(source_);
    levels_[source_] = 0;
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      std::size_t v = queue_[qi];
      for (std::ptrdiff_t i = head_[v]; i >= 0; i = arcs_[i].next) {
        if (arcs_[i].residual > eps && levels_[arcs_[i].to] < 0) {
          levels_[arcs_[i].to] = levels_[v] + 1;
          queue_.push_back(arcs_[i].to);
        }
      }
    }
    return levels_[sink_] >= 0;
  }

  // Iterative blocking flow for one level phase.
  void run_phase(const T& eps, const T& infinity) {
    iter_ = head_;
    std::vector<std::size_t> path;  // arc indices from the source to the cursor
    std::size_t v = source_;
    while (true) {
      if (v == sink_) {
        T bottleneck = infinity;
        for (auto idx : path) bottleneck = std::min(bottleneck, arcs_[idx].residual);
        for (auto idx : path) {
          arcs_[idx].residual -= bottleneck;
          arcs_[idx ^ 1].residual += bottleneck;
        }
        std::size_t keep = path.size();
        for (std::size_t pos = 0; pos < path.size(); ++pos) {
          if (!(arcs_[path[pos]].residual > eps)) {
            keep = pos;
            break;
          }
        }
        path.resize(keep);
        v = path.empty() ? source_ : arcs_[path.back()].to;
        continue;
      }
      std::ptrdiff_t& i = iter_[v];
      while (i >= 0 && !(arcs_[i].residual > eps && levels_[arcs_[i].to] == levels_[v] + 1))
        i = arcs_[i].next;
      if (i >= 0) {
        path.push_back(static_cast<std::size_t>(i));
        v = arcs_[i].to;
      } else {
        if (v == source_) break;
        levels_[v] = -1;
        path.pop_back();
        v = path.empty() ? source_ : arcs_[path.back()].to;
      }
    }
  }

  void run_dinic(const T& eps) {
    T infinity(0);
    for (auto& a : arcs_) infinity += a.capacity;
    infinity += T(1);
    while (build_levels(eps)) run_phase(eps, infinity);
  }

  std::vector<char> reachable_from_source(const T& eps) const {
    std::vector<char> seen(n_, 0);
    std::vector<std::size_t> stack{source_};
    seen[source_] = 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::ptrdiff_t i = head_[v]; i >= 0; i = arcs_[i].next) {
        if (arcs_[i].residual > eps && !seen[arcs_[i].to]) {
          seen[arcs_[i].to] = 1;
          stack.push_back(arcs_[i].to);
        }
      }
    }
    return seen;
  }

  std::vector<char> not_reaching_sink(const T& eps) const {
    // v reaches the sink if some residual arc (v -> w) leads to a reaching w;
    // found by walking arcs backwards from the sink.
    std::vector<std::vector<std::size_t>> incoming(n_);
    for (std::size_t v = 0; v < n_; ++v)
      for (std::ptrdiff_t i = head_[v]; i >= 0; i = arcs_[i].next)
        if (arcs_[i].residual > eps) incoming[arcs_[i].to].push_back(v);
    std::vector<char> reach(n_, 0);
    std::vector<std::size_t> stack{sink_};
    reach[sink_] = 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (auto w : incoming[v]) {
        if (!reach[w]) {
          reach[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::vector<char> side(n_, 0);
    for (std::size_t v = 0; v < n_; ++v) side[v] = reach[v] ? 0 : 1;
    return side;
  }

  T cut_capacity(const std::vector<char>& source_side) const {
    T total(0);
    for (std::size_t v = 0; v < n_; ++v) {
      if (!source_side[v]) continue;
      for (std::ptrdiff_t i = head_[v]; i >= 0; i = arcs_[i].next)
        if (!source_side[arcs_[i].to]) total += arcs_[i].capacity;
    }
    return total;
  }

  std::size_t n_, source_, sink_;
  std::vector<std::ptrdiff_t> head_;
  std::vector<Arc> arcs_;
  std::vector<int> levels_;
  std::vector<std::ptrdiff_t> iter_;
  std::vector<std::size_t> queue_;
};

}  // namespace pms

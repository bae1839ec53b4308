#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "pms/errors.hpp"

namespace pms {

// Measurable set as a bit vector over the host space's points.
class SubsetMask {
public:
  SubsetMask() = default;
  explicit SubsetMask(std::size_t n) : n_(n), blocks_((n + 63) / 64, 0) {}

  static SubsetMask full(std::size_t n) {
    SubsetMask m(n);
    for (std::size_t i = 0; i < m.blocks_.size(); ++i) m.blocks_[i] = ~0ULL;
    m.trim();
    return m;
  }

  static SubsetMask from_bits(std::size_t n, std::uint64_t bits) {
    SubsetMask m(n);
    if (!m.blocks_.empty()) m.blocks_[0] = bits;
    m.trim();
    return m;
  }

  static SubsetMask from_points(std::size_t n, const std::vector<std::size_t>& pts) {
    SubsetMask m(n);
    for (auto p : pts) m.set(p, true);
    return m;
  }

  std::size_t size() const { return n_; }

  bool test(std::size_t i) const { return (blocks_[i >> 6] >> (i & 63)) & 1ULL; }

  void set(std::size_t i, bool v) {
    if (i >= n_) throw domain_error("mask index out of range");
    std::uint64_t bit = 1ULL << (i & 63);
    if (v)
      blocks_[i >> 6] |= bit;
    else
      blocks_[i >> 6] &= ~bit;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto b : blocks_) c += static_cast<std::size_t>(std::popcount(b));
    return c;
  }

  bool empty() const {
    for (auto b : blocks_)
      if (b) return false;
    return true;
  }

  bool operator==(const SubsetMask& o) const { return n_ == o.n_ && blocks_ == o.blocks_; }
  bool operator!=(const SubsetMask& o) const { return !(*this == o); }

  SubsetMask operator&(const SubsetMask& o) const { return combine(o, [](auto a, auto b) { return a & b; }); }
  SubsetMask operator|(const SubsetMask& o) const { return combine(o, [](auto a, auto b) { return a | b; }); }
  SubsetMask operator-(const SubsetMask& o) const { return combine(o, [](auto a, auto b) { return a & ~b; }); }

  SubsetMask complement() const {
    SubsetMask m(n_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) m.blocks_[i] = ~blocks_[i];
    m.trim();
    return m;
  }

  bool subset_of(const SubsetMask& o) const {
    check_same(o);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & ~o.blocks_[i]) return false;
    return true;
  }

  bool intersects(const SubsetMask& o) const {
    check_same(o);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & o.blocks_[i]) return true;
    return false;
  }

  // Numeric order with point 0 as the least significant bit; the canonical
  // order used for tie-breaking.
  bool lex_less(const SubsetMask& o) const {
    check_same(o);
    for (std::size_t i = blocks_.size(); i-- > 0;) {
      if (blocks_[i] != o.blocks_[i]) return blocks_[i] < o.blocks_[i];
    }
    return false;
  }

  std::vector<std::size_t> points() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      std::uint64_t b = blocks_[bi];
      while (b) {
        out.push_back((bi << 6) + static_cast<std::size_t>(std::countr_zero(b)));
        b &= b - 1;
      }
    }
    return out;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      std::uint64_t b = blocks_[bi];
      while (b) {
        fn((bi << 6) + static_cast<std::size_t>(std::countr_zero(b)));
        b &= b - 1;
      }
    }
  }

  // Low 64 bits; valid whenever n <= 64 (the exhaustive regimes).
  std::uint64_t bits64() const { return blocks_.empty() ? 0 : blocks_[0]; }

  std::string to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) s[i] = '1';
    return s;
  }

private:
  template <typename Op>
  SubsetMask combine(const SubsetMask& o, Op op) const {
    check_same(o);
    SubsetMask m(n_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) m.blocks_[i] = op(blocks_[i], o.blocks_[i]);
    m.trim();
    return m;
  }

  void check_same(const SubsetMask& o) const {
    if (n_ != o.n_) throw domain_error("mask length mismatch");
  }

  void trim() {
    if (n_ % 64 != 0 && !blocks_.empty()) blocks_.back() &= (1ULL << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> blocks_;
};

}  // namespace pms

#pragma once

// The root order on positive roots: beta <= gamma iff gamma - beta has only
// nonnegative simple-root coefficients. Antichains, increasing sets and the
// maps between them.

#include "domreg/rootsystem.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace domreg {

class NotAntichain : public std::invalid_argument {
 public:
  NotAntichain() : std::invalid_argument("root set is not an antichain") {}
};

class NotIncreasing : public std::invalid_argument {
 public:
  NotIncreasing() : std::invalid_argument("root set is not upward closed") {}
};

// Set of positive-root indices; posets are limited to 64 roots.
class RootSet {
 public:
  static constexpr std::size_t capacity = 64;

  constexpr RootSet() = default;
  constexpr explicit RootSet(std::uint64_t bits) : bits_(bits) {}
  RootSet(std::initializer_list<std::size_t> idx) {
    for (auto i : idx) insert(i);
  }
  static RootSet from(const std::vector<std::size_t>& idx) {
    RootSet s;
    for (auto i : idx) s.insert(i);
    return s;
  }
  static constexpr RootSet all(std::size_t n) {
    return RootSet(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
  void insert(std::size_t i) {
    if (i >= capacity) throw std::out_of_range("RootSet index out of range");
    bits_ |= std::uint64_t{1} << i;
  }
  void erase(std::size_t i) { bits_ &= ~(std::uint64_t{1} << i); }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool subset_of(RootSet o) const { return (bits_ & ~o.bits_) == 0; }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1)
      out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  friend constexpr RootSet operator|(RootSet a, RootSet b) { return RootSet(a.bits_ | b.bits_); }
  friend constexpr RootSet operator&(RootSet a, RootSet b) { return RootSet(a.bits_ & b.bits_); }
  friend constexpr RootSet operator-(RootSet a, RootSet b) { return RootSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(RootSet, RootSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

// Canonical antichain order: size, then lexicographic member indices.
inline bool canonical_less(RootSet a, RootSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.members() < b.members();
}

// Pairwise-incomparable roots. Construction through RootPoset validates.
class Antichain {
 public:
  Antichain() = default;
  explicit Antichain(RootSet s) : set_(s) {}
  RootSet set() const { return set_; }
  std::vector<std::size_t> members() const { return set_.members(); }
  std::size_t size() const { return set_.size(); }
  bool empty() const { return set_.empty(); }
  friend bool operator==(const Antichain&, const Antichain&) = default;
  friend bool operator<(const Antichain& a, const Antichain& b) {
    return canonical_less(a.set_, b.set_);
  }

 private:
  RootSet set_;
};

// "{a3, a7}" with 1-based labels.
inline std::string label(const Antichain& a) {
  std::string s = "{";
  bool first = true;
  for (auto i : a.members()) {
    if (!first) s += ", ";
    s += "a" + std::to_string(i + 1);
    first = false;
  }
  return s + "}";
}

template <OrderedField F>
class RootPoset {
 public:
  explicit RootPoset(RootSystem<F> system) : system_(std::move(system)) {
    const std::size_t n = system_.size();
    if (n > RootSet::capacity)
      throw std::length_error("root posets are limited to 64 positive roots");
    up_.assign(n, RootSet());
    down_.assign(n, RootSet());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        bool le = true;
        bool tie = false;
        const auto& bi = system_.root(i).coeffs;
        const auto& bj = system_.root(j).coeffs;
        for (std::size_t k = 0; k < bi.size(); ++k) {
          F diff = bj[k] - bi[k];
          if (near_tie(diff))
            degenerate_.push_back("coefficient comparison a" + std::to_string(i + 1) + " vs a" +
                                  std::to_string(j + 1) + " is within 10*epsilon of a tie");
          // Reflections copy coordinates, so structural ties are exactly zero;
          // a nonzero difference below epsilon is a rounded coincidence.
          if (!is_exact_field<F>() && sign(diff) == 0 && to_real(diff) != 0) tie = true;
          if (sign(diff) < 0) {
            le = false;
            break;
          }
        }
        if (le && tie && i != j)
          degenerate_.push_back("a" + std::to_string(i + 1) + " <= a" + std::to_string(j + 1) +
                                " rests on a coefficient tie within epsilon");
        if (le) {
          up_[i].insert(j);
          down_[j].insert(i);
        }
      }
    }
  }

  const RootSystem<F>& system() const { return system_; }
  std::size_t size() const { return system_.size(); }
  RootSet universe() const { return RootSet::all(size()); }
  const std::vector<std::string>& degenerate_notes() const { return degenerate_; }

  bool leq(std::size_t b, std::size_t g) const { return up_.at(b).contains(g); }
  bool comparable(std::size_t b, std::size_t g) const { return leq(b, g) || leq(g, b); }
  RootSet up(std::size_t b) const { return up_.at(b); }
  RootSet down(std::size_t b) const { return down_.at(b); }

  bool is_antichain(RootSet s) const {
    for (auto i : s.members())
      if (((up_[i] | down_[i]) & s) != RootSet{i}) return false;
    return true;
  }
  bool is_increasing(RootSet s) const {
    for (auto i : s.members())
      if (!up_[i].subset_of(s)) return false;
    return true;
  }

  Antichain make_antichain(RootSet s) const {
    if (!is_antichain(s)) throw NotAntichain();
    return Antichain(s);
  }

  Antichain minimals(RootSet s) const {
    RootSet out;
    for (auto i : s.members())
      if ((down_[i] & s) == RootSet{i}) out.insert(i);
    return Antichain(out);
  }
  Antichain maximals(RootSet s) const {
    RootSet out;
    for (auto i : s.members())
      if ((up_[i] & s) == RootSet{i}) out.insert(i);
    return Antichain(out);
  }

  // I(L) = {beta | delta <= beta for some delta in L}
  RootSet ideal(const Antichain& a) const {
    if (!is_antichain(a.set())) throw NotAntichain();
    RootSet out;
    for (auto i : a.members()) out = out | up_[i];
    return out;
  }

  // Maximal elements of the complement of an increasing set.
  Antichain complement_maximals(RootSet inc) const {
    if (!is_increasing(inc)) throw NotIncreasing();
    return maximals(universe() - inc);
  }

  // Same set through the extension characterization:
  // {beta not in I | I + {beta} is increasing}.
  Antichain complement_extensions(RootSet inc) const {
    if (!is_increasing(inc)) throw NotIncreasing();
    RootSet out;
    for (auto i : (universe() - inc).members()) {
      RootSet ext = inc;
      ext.insert(i);
      if (is_increasing(ext)) out.insert(i);
    }
    return Antichain(out);
  }

  // L' precedes L iff I(L') is contained in I(L).
  bool preceq(const Antichain& lhs, const Antichain& rhs) const {
    return ideal(lhs).subset_of(ideal(rhs));
  }

  // All antichains including the empty one, in canonical order. Depth-first
  // extension in root order, pruning comparable candidates.
  std::vector<Antichain> enumerate_antichains() const {
    std::vector<Antichain> out;
    std::vector<RootSet> incomparable(size());
    for (std::size_t i = 0; i < size(); ++i)
      incomparable[i] = universe() - (up_[i] | down_[i]);
    auto rec = [&](auto&& self, RootSet current, RootSet candidates) -> void {
      out.emplace_back(current);
      for (auto i : candidates.members()) {
        RootSet next = current;
        next.insert(i);
        // only later indices, to visit each set once
        RootSet later(candidates.bits() & ~((std::uint64_t{2} << i) - 1));
        self(self, next, later & incomparable[i]);
      }
    };
    rec(rec, RootSet(), universe());
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Antichain> maximal_antichains() const {
    std::vector<Antichain> out;
    for (const auto& a : enumerate_antichains())
      if (is_maximal(a)) out.push_back(a);
    return out;
  }

  bool is_maximal(const Antichain& a) const {
    for (std::size_t i = 0; i < size(); ++i) {
      if (a.set().contains(i)) continue;
      bool free = true;
      for (auto j : a.members())
        if (comparable(i, j)) {
          free = false;
          break;
        }
      if (free) return false;
    }
    return true;
  }

  // Cover relations (b, g): b < g with nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> hasse_edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t b = 0; b < size(); ++b) {
      RootSet above = up_[b] - RootSet{b};
      for (auto g : above.members()) {
        RootSet between = above & (down_[g] - RootSet{g});
        if (between.empty()) out.emplace_back(b, g);
      }
    }
    return out;
  }

  // True when g = s_i(b) for some simple reflection.
  bool is_reflection_cover(std::size_t b, std::size_t g) const {
    const auto& rb = system_.root(b).coeffs;
    const auto& rg = system_.root(g).coeffs;
    for (std::size_t i = 0; i < system_.rank(); ++i) {
      auto img = system_.reflect(i, rb);
      if (std::equal(img.begin(), img.end(), rg.begin(), rg.end())) return true;
    }
    return false;
  }

 private:
  RootSystem<F> system_;
  std::vector<RootSet> up_;
  std::vector<RootSet> down_;
  std::vector<std::string> degenerate_;
};

}  // namespace domreg

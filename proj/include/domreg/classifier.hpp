#pragma once

// Full census of a root poset: good/bad maximal antichains, propagation of
// nonemptiness from good maximal antichains, LP resolution of the rest,
// the all-antichain Int_C criterion, and dihedral ratio sweeps.

#include "domreg/feasibility.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace domreg {

// Runs f(i) for i in [0, n) on up to `threads` workers, in contiguous chunks.
// The first exception thrown by any worker is rethrown.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& f) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  const std::size_t chunk = (n + workers - 1) / workers;
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w * chunk; i < std::min(n, (w + 1) * chunk); ++i) f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

template <OrderedField F>
struct MaximalAntichainVerdict {
  Antichain antichain;
  bool good = false;
  std::optional<WeightPoint<F>> int_c_witness;
  bool degenerate = false;
};

struct GeneralizedCatalan {
  std::vector<long> exponents;
  long coxeter_number = 0;
  long cat = 0;
  long cat_positive = 0;
};

// cat = prod (h + e + 1)/(e + 1), cat_positive = prod (h + e - 1)/(e + 1).
inline GeneralizedCatalan catalan_numbers(Family family, int m = 0) {
  GeneralizedCatalan c;
  switch (family) {
    case Family::H3:
      c.exponents = {1, 5, 9};
      c.coxeter_number = 10;
      break;
    case Family::H4:
      c.exponents = {1, 11, 19, 29};
      c.coxeter_number = 30;
      break;
    case Family::I2:
      if (m < 2) throw std::invalid_argument("I2(m) requires m >= 2");
      c.exponents = {1, m - 1};
      c.coxeter_number = m;
      break;
  }
  Rational all(1), positive(1);
  for (long e : c.exponents) {
    all = all * Rational(c.coxeter_number + e + 1, e + 1);
    positive = positive * Rational(c.coxeter_number + e - 1, e + 1);
  }
  if (!all.is_integer() || !positive.is_integer())
    throw std::logic_error("Catalan product is not an integer");
  c.cat = all.numerator().get_si();
  c.cat_positive = positive.numerator().get_si();
  return c;
}

inline GeneralizedCatalan catalan_numbers(const SystemSpec& spec) {
  return catalan_numbers(spec.family, spec.m);
}

template <OrderedField F>
std::vector<MaximalAntichainVerdict<F>> classify_maximal(const RootPoset<F>& p, unsigned threads = 1) {
  auto maximal = p.maximal_antichains();
  std::vector<MaximalAntichainVerdict<F>> out(maximal.size());
  parallel_for(maximal.size(), threads, [&](std::size_t i) {
    auto res = int_c(p, maximal[i]);
    out[i].antichain = maximal[i];
    out[i].good = res.status == FeasibilityStatus::Feasible;
    out[i].degenerate = res.status == FeasibilityStatus::Degenerate;
    out[i].int_c_witness = std::move(res.witness);
  });
  return out;
}

// Increasing sets I(L) \ S for S a subset of L, over the good maximal L,
// returned as their minimal antichains in canonical order.
template <OrderedField F>
std::vector<Antichain> propagate(const RootPoset<F>& p, const std::vector<MaximalAntichainVerdict<F>>& maximal) {
  std::set<Antichain> marked;
  for (const auto& v : maximal) {
    if (!v.good) continue;
    RootSet inc = p.ideal(v.antichain);
    auto members = v.antichain.members();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << members.size()); ++mask) {
      RootSet drop;
      for (std::size_t j = 0; j < members.size(); ++j)
        if ((mask >> j) & 1U) drop.insert(members[j]);
      marked.insert(p.minimals(inc - drop));
    }
  }
  return {marked.begin(), marked.end()};
}

struct BijectionCheck {
  bool holds = true;
  std::vector<Antichain> violations;
  bool empty_list_empty = true;
  bool agree = true;
};

// Int_C over every nonempty antichain.
template <OrderedField F>
BijectionCheck bijection_criterion(const RootPoset<F>& p, unsigned threads = 1,
                                   std::vector<std::string>* degenerate = nullptr) {
  auto all = p.enumerate_antichains();
  std::vector<FeasibilityStatus> status(all.size(), FeasibilityStatus::Feasible);
  parallel_for(all.size(), threads, [&](std::size_t i) {
    if (!all[i].empty()) status[i] = int_c(p, all[i]).status;
  });
  BijectionCheck out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (status[i] == FeasibilityStatus::Infeasible) out.violations.push_back(all[i]);
    if (status[i] == FeasibilityStatus::Degenerate && degenerate)
      degenerate->push_back("Int_C" + label(all[i]) + " has slack within epsilon of zero");
  }
  out.holds = out.violations.empty();
  return out;
}

struct ClassificationCounts {
  std::size_t positive_roots = 0;
  std::size_t antichain_total = 0;
  std::map<std::size_t, std::size_t> by_size;
  std::size_t maximal_total = 0;
  std::size_t good = 0;
  std::size_t bad = 0;
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> maximal_by_size;  // good, bad
  std::size_t propagated_nonempty = 0;
  std::size_t lp_resolved = 0;
  std::size_t lp_nonempty = 0;
  std::size_t empty = 0;
  std::map<std::size_t, std::size_t> empty_by_size;
  std::size_t regions = 0;
  std::size_t bounded = 0;
  std::size_t unbounded = 0;
  std::size_t degenerate = 0;
};

template <OrderedField F>
struct ClassificationReport {
  SystemSpec spec;
  std::string field_backend;
  std::vector<RegionVerdict<F>> verdicts;  // every antichain, canonical order
  std::vector<MaximalAntichainVerdict<F>> maximal;
  std::vector<Antichain> empty_list;
  ClassificationCounts counts;
  GeneralizedCatalan catalan;
  BijectionCheck bijection;
  // bounded verdicts that disagree with "contains no simple root"
  std::vector<Antichain> bounded_discrepancies;
  std::vector<std::string> degenerate;
};

struct ClassifyOptions {
  unsigned threads = 1;
};

template <OrderedField F>
ClassificationReport<F> classify_all(const RootPoset<F>& p, ClassifyOptions opt = {}) {
  ClassificationReport<F> rep;
  rep.spec = p.system().spec();
  rep.field_backend = field_name<F>();
  rep.catalan = catalan_numbers(rep.spec);
  for (const auto& note : p.system().degenerate_notes()) rep.degenerate.push_back(note);
  for (const auto& note : p.degenerate_notes()) rep.degenerate.push_back(note);

  auto all = p.enumerate_antichains();
  auto& c = rep.counts;
  c.positive_roots = p.size();
  c.antichain_total = all.size();
  for (const auto& a : all) ++c.by_size[a.size()];

  rep.maximal = classify_maximal(p, opt.threads);
  c.maximal_total = rep.maximal.size();
  for (const auto& m : rep.maximal) {
    auto& slot = c.maximal_by_size[m.antichain.size()];
    if (m.good) {
      ++c.good;
      ++slot.first;
    } else {
      ++c.bad;
      ++slot.second;
    }
    if (m.degenerate) rep.degenerate.push_back("Int_C" + label(m.antichain) + " has slack within epsilon of zero");
  }

  auto marked = propagate(p, rep.maximal);
  std::set<Antichain> propagated(marked.begin(), marked.end());

  // Every antichain goes through the region LP: propagated ones for their
  // witnesses, the survivors for their verdict.
  rep.verdicts.resize(all.size());
  parallel_for(all.size(), opt.threads, [&](std::size_t i) {
    auto v = region_status(p, all[i]);
    if (v.status == RegionStatus::NonEmpty) v.bounded = bounded(p, all[i], *v.witness);
    if (propagated.contains(all[i])) {
      if (v.status == RegionStatus::Empty)
        throw std::logic_error("propagation marked " + label(all[i]) + " but its region is empty");
      v.method = Method::Propagated;
    }
    rep.verdicts[i] = std::move(v);
  });

  RootSet simple;
  for (std::size_t i = 0; i < p.system().rank(); ++i) simple.insert(i);
  for (const auto& v : rep.verdicts) {
    const bool lp = v.method == Method::LP;
    if (lp) ++c.lp_resolved;
    else ++c.propagated_nonempty;
    switch (v.status) {
      case RegionStatus::NonEmpty:
        ++c.regions;
        if (lp) ++c.lp_nonempty;
        if (*v.bounded) ++c.bounded;
        else ++c.unbounded;
        if (*v.bounded != (v.antichain.set() & simple).empty())
          rep.bounded_discrepancies.push_back(v.antichain);
        break;
      case RegionStatus::Empty:
        ++c.empty;
        ++c.empty_by_size[v.antichain.size()];
        rep.empty_list.push_back(v.antichain);
        break;
      case RegionStatus::Degenerate:
        ++c.degenerate;
        rep.degenerate.push_back("region of " + label(v.antichain) + " has slack within epsilon of zero");
        break;
    }
  }

  rep.bijection = bijection_criterion(p, opt.threads, &rep.degenerate);
  rep.bijection.empty_list_empty = rep.empty_list.empty();
  rep.bijection.agree = rep.bijection.holds == rep.bijection.empty_list_empty;
  return rep;
}

// ---------------------------------------------------------------------------
// Dihedral ratio sweep.

template <OrderedField F>
struct GridPoint {
  F ratio;
  std::string label;
  bool critical = false;
};

// Critical ratios sin(k pi/m)/sin(l pi/m), 1 <= k != l <= m/2, together with
// r = 1, midpoints of consecutive values, their reciprocals, and two outer
// points. Closed under r -> 1/r. Sorted ascending.
template <OrderedField F>
std::vector<GridPoint<F>> ratio_grid(int m) {
  if (m % 2 != 0) throw OddRatioNotOne();
  const int half = m / 2;
  std::vector<GridPoint<F>> crit;
  auto add = [](std::vector<GridPoint<F>>& v, GridPoint<F> g) {
    for (const auto& x : v)
      if (sign(x.ratio - g.ratio) == 0) return;
    v.push_back(std::move(g));
  };
  add(crit, {F(1), "1", false});
  for (int k = 1; k <= half; ++k)
    for (int l = 1; l <= half; ++l) {
      if (k == l) continue;
      auto num = sin_pi<F>(k, m);
      auto den = sin_pi<F>(l, m);
      if (!num || !den)
        throw UnrepresentableInField("sin(k pi/" + std::to_string(m) + ") not in field " + field_name<F>());
      F r = *num / *den;
      if (sign(r - F(1)) == 0) continue;
      add(crit, {r, "sin(" + std::to_string(k) + ")/sin(" + std::to_string(l) + ")", true});
    }
  auto by_value = [](const GridPoint<F>& a, const GridPoint<F>& b) { return sign(a.ratio - b.ratio) < 0; };
  std::sort(crit.begin(), crit.end(), by_value);

  std::vector<GridPoint<F>> grid = crit;
  for (std::size_t i = 0; i + 1 < crit.size(); ++i) {
    F mid = (crit[i].ratio + crit[i + 1].ratio) / F(2);
    add(grid, {mid, to_decimal(mid, 12), false});
    F inv = F(1) / mid;
    add(grid, {inv, to_decimal(inv, 12), false});
  }
  F lo = crit.front().ratio / F(2);
  F hi = crit.back().ratio * F(2);
  add(grid, {lo, to_decimal(lo, 12), false});
  add(grid, {hi, to_decimal(hi, 12), false});
  std::sort(grid.begin(), grid.end(), by_value);
  return grid;
}

template <OrderedField F>
struct SweepRow {
  GridPoint<F> point;
  std::size_t antichains = 0;
  std::size_t regions = 0;
  std::size_t bounded = 0;
  std::size_t empty = 0;
  bool bijection_holds = true;
  bool bijection_agree = true;
  bool degenerate = false;
  bool boundary = false;  // counts differ from the previous row
};

template <OrderedField F>
SweepRow<F> sweep_point(int m, const GridPoint<F>& g, unsigned threads = 1) {
  RootPoset<F> p(RootSystem<F>::dihedral(m, g.ratio, g.label));
  auto rep = classify_all(p, {threads});
  SweepRow<F> row;
  row.point = g;
  row.antichains = rep.counts.antichain_total;
  row.regions = rep.counts.regions;
  row.bounded = rep.counts.bounded;
  row.empty = rep.counts.empty;
  row.bijection_holds = rep.bijection.holds;
  row.bijection_agree = rep.bijection.agree;
  row.degenerate = !rep.degenerate.empty();
  return row;
}

template <OrderedField F>
std::vector<SweepRow<F>> sweep_ratio(int m, const std::vector<GridPoint<F>>& ratios, unsigned threads = 1) {
  if (m % 2 != 0) throw OddRatioNotOne();
  std::vector<SweepRow<F>> rows(ratios.size());
  parallel_for(ratios.size(), threads, [&](std::size_t i) { rows[i] = sweep_point(m, ratios[i]); });
  for (std::size_t i = 1; i < rows.size(); ++i)
    rows[i].boundary = rows[i].regions != rows[i - 1].regions || rows[i].bounded != rows[i - 1].bounded;
  return rows;
}

template <OrderedField F>
std::vector<SweepRow<F>> sweep_ratio(int m, unsigned threads = 1) {
  return sweep_ratio(m, ratio_grid<F>(m), threads);
}

}  // namespace domreg

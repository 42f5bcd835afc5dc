#pragma once

// Oracles shared by the test binaries. Each one recomputes its answer by a
// route that does not go through the library code under test.

#include "domreg/classifier.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cmath>
#include <random>

namespace oracle {

using Dec50 = boost::multiprecision::cpp_dec_float_50;

inline Dec50 golden_value(const domreg::GoldenScalar& x) {
  auto q = [](const domreg::Rational& r) {
    return Dec50(r.numerator().get_str()) / Dec50(r.denominator().get_str());
  };
  Dec50 tau = (1 + boost::multiprecision::sqrt(Dec50(5))) / 2;
  return q(x.a()) + q(x.b()) * tau;
}

// Antichains by filtering every subset of the roots.
template <class Leq>
std::size_t subset_antichains(std::size_t n, Leq leq) {
  std::size_t count = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        if (i != j && ((s >> i) & 1U) && ((s >> j) & 1U) && leq(i, j)) ok = false;
    count += ok;
  }
  return count;
}

// Upward-closed sets, grown from the empty set: a root may be added once
// every root above it is present.
template <class Leq>
std::size_t increasing_sets(std::size_t n, Leq leq) {
  std::set<std::uint64_t> seen{0};
  std::vector<std::uint64_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (auto s : frontier)
      for (std::size_t i = 0; i < n; ++i) {
        if ((s >> i) & 1U) continue;
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j)
          if (j != i && leq(i, j) && !((s >> j) & 1U)) ok = false;
        if (!ok) continue;
        auto t = s | (std::uint64_t{1} << i);
        if (seen.insert(t).second) next.push_back(t);
      }
    frontier = std::move(next);
  }
  return seen.size();
}

// Dominant regions of I2(m) with |a1| = 1, |a2| = r, counted in floating
// point from an ambient construction of the roots. Lines x.c = 1 through the
// open quadrant cut it into 1 + L + sum over intersection points of
// (lines through the point - 1) regions.
struct PlaneCount {
  std::size_t regions = 0;
  std::size_t bounded = 0;
};

inline PlaneCount dihedral_regions(int m, double r) {
  const double pi = std::acos(-1.0);
  const double a2x = -r * std::cos(pi / m), a2y = r * std::sin(pi / m);
  std::vector<std::pair<double, double>> coeffs;
  for (int j = 0; j < m; ++j) {
    double len = (m % 2 == 1 || j % 2 == 0) ? 1.0 : r;
    double vx = len * std::cos(j * pi / m), vy = len * std::sin(j * pi / m);
    double c2 = vy / a2y;
    coeffs.emplace_back(vx - c2 * a2x, c2);
  }
  std::vector<std::pair<double, double>> points;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      auto [a, b] = coeffs[i];
      auto [c, d] = coeffs[j];
      double det = a * d - b * c;
      if (std::abs(det) < 1e-12) continue;
      double x = (d - b) / det, y = (a - c) / det;
      if (x > 1e-9 && y > 1e-9) points.emplace_back(x, y);
    }
  std::vector<std::size_t> pairs_at;
  std::vector<std::pair<double, double>> distinct;
  for (auto p : points) {
    std::size_t k = 0;
    for (; k < distinct.size(); ++k)
      if (std::abs(distinct[k].first - p.first) < 1e-7 && std::abs(distinct[k].second - p.second) < 1e-7) break;
    if (k == distinct.size()) {
      distinct.push_back(p);
      pairs_at.push_back(0);
    }
    ++pairs_at[k];
  }
  std::size_t regions = 1 + static_cast<std::size_t>(m);
  for (auto pairs : pairs_at) {
    std::size_t lines = 2;
    while (lines * (lines - 1) / 2 < pairs) ++lines;
    regions += lines - 1;
  }
  // Only the two simple-root lines reach infinity inside the quadrant; they
  // leave three unbounded regions.
  return {regions, regions - 3};
}

// Rank of a matrix over an exact field by plain elimination.
template <class F>
std::size_t rank(std::vector<std::vector<F>> a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && sign(a[piv][c]) == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || sign(a[i][c]) == 0) continue;
      F f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] = a[i][k] - f * a[r][k];
    }
    ++r;
  }
  return r;
}

}  // namespace oracle

#pragma once

// DOT Hasse diagrams and SVG pictures of rank-2 arrangements.
//
// The SVG places a_1 = (1, 0) and a_2 = r(-cos(pi/m), sin(pi/m)) in the plane
// and draws H_{beta,c} for c = -1, 0, 1. Geometry is converted to doubles only
// for drawing; labels sit at the exact engine's witness points.

#include "domreg/classifier.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>

namespace domreg {

template <OrderedField F>
std::string display(const F& x) {
  if constexpr (is_exact_field<F>()) return x.str();
  else return to_decimal(x, 6);
}

template <OrderedField F>
std::string coeff_string(const std::vector<F>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + display(v[i]);
  return s + ")";
}

// Minimal roots at the top; covers that are not a single simple reflection
// are dashed.
template <OrderedField F>
std::string poset_dot(const RootPoset<F>& p) {
  std::ostringstream out;
  out << "digraph poset {\n  rankdir=TB;\n  node [shape=box, fontsize=10];\n";
  out << "  label=\"" << p.system().spec().str() << "\";\n";
  for (const auto& r : p.system().positives())
    out << "  a" << r.index + 1 << " [label=\"a" << r.index + 1 << "\\n" << coeff_string(r.coeffs) << "\"];\n";
  for (auto [b, g] : p.hasse_edges()) {
    out << "  a" << b + 1 << " -> a" << g + 1;
    if (!p.is_reflection_cover(b, g)) out << " [style=dashed]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

namespace detail {

struct Vec2 {
  double x = 0, y = 0;
};

inline double to_double(const Real& r) { return r.convert_to<double>(); }

}  // namespace detail

template <OrderedField F>
std::string arrangement_svg(const RootPoset<F>& p, const ClassificationReport<F>& rep) {
  using detail::Vec2;
  const auto& rs = p.system();
  if (rs.rank() != 2) throw std::invalid_argument("figure: SVG output needs a rank-2 system");
  const int m = rs.spec().m;
  const Real pi = boost::math::constants::pi<Real>();
  const Real r = to_real(rs.ratio());
  const Real cs = boost::multiprecision::cos(pi / m), sn = boost::multiprecision::sin(pi / m);
  const Real a2x = -r * cs, a2y = r * sn;

  auto ambient = [&](const std::vector<F>& c) {
    Real u = to_real(c[0]), w = to_real(c[1]);
    return Vec2{detail::to_double(u + w * a2x), detail::to_double(w * a2y)};
  };
  // v with (v|a_1) = x_1, (v|a_2) = x_2
  auto weight_point = [&](const std::vector<F>& x) {
    Real x1 = to_real(x[0]), x2 = to_real(x[1]);
    Real vy = (x2 / r + cs * x1) / sn;
    return Vec2{detail::to_double(x1), detail::to_double(vy)};
  };

  std::vector<Vec2> betas;
  for (const auto& root : rs.positives()) betas.push_back(ambient(root.coeffs));

  // Extent: every witness and every vertex of the c = +-1 lines.
  double extent = 1.5;
  auto grow = [&](Vec2 v) { extent = std::max({extent, std::abs(v.x) * 1.2, std::abs(v.y) * 1.2}); };
  for (std::size_t i = 0; i < betas.size(); ++i)
    for (std::size_t j = i + 1; j < betas.size(); ++j) {
      const Vec2 a = betas[i], b = betas[j];
      double det = a.x * b.y - a.y * b.x;
      if (std::abs(det) < 1e-12) continue;
      grow({(b.y - a.y) / det, (a.x - b.x) / det});
    }
  std::vector<std::pair<Vec2, std::string>> labels;
  for (const auto& v : rep.verdicts) {
    if (v.status != RegionStatus::NonEmpty) continue;
    Vec2 w = weight_point(v.witness->x);
    grow(w);
    std::string text = v.antichain.empty() ? "&#8709;" : "";
    for (auto i : v.antichain.members()) text += (text.empty() ? "" : ",") + std::to_string(i + 1);
    labels.emplace_back(w, text);
  }

  const double size = 640, scale = size / (2 * extent);
  auto px = [&](Vec2 v) { return Vec2{size / 2 + v.x * scale, size / 2 - v.y * scale}; };
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  out << "<title>" << rs.spec().str() << " dominant regions</title>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // dominant chamber: the cone spanned by w_1, w_2
  {
    Vec2 w1 = weight_point({F(1), F(0)}), w2 = weight_point({F(0), F(1)});
    auto far = [&](Vec2 v) {
      double n = std::hypot(v.x, v.y);
      return Vec2{v.x / n * extent * 3, v.y / n * extent * 3};
    };
    Vec2 o = px({0, 0}), p1 = px(far(w1)), p2 = px(far(w2));
    out << "<polygon class=\"chamber\" fill=\"#eef4ff\" points=\"" << o.x << "," << o.y << " " << p1.x << ","
        << p1.y << " " << p2.x << "," << p2.y << "\"/>\n";
  }

  for (std::size_t i = 0; i < betas.size(); ++i) {
    const Vec2 b = betas[i];
    const double n2 = b.x * b.x + b.y * b.y;
    for (int c : {-1, 0, 1}) {
      // points t*d + c*b/|b|^2 with d perpendicular to b
      Vec2 base{c * b.x / n2, c * b.y / n2}, d{-b.y, b.x};
      double lo = -1e300, hi = 1e300;
      auto clip = [&](double p0, double dp) {
        if (std::abs(dp) < 1e-15) return;
        double t1 = (-extent - p0) / dp, t2 = (extent - p0) / dp;
        lo = std::max(lo, std::min(t1, t2));
        hi = std::min(hi, std::max(t1, t2));
      };
      clip(base.x, d.x);
      clip(base.y, d.y);
      if (lo >= hi) continue;
      Vec2 s = px({base.x + lo * d.x, base.y + lo * d.y}), e = px({base.x + hi * d.x, base.y + hi * d.y});
      out << "<line class=\"hyperplane\" data-root=\"" << i + 1 << "\" data-c=\"" << c << "\" x1=\"" << s.x
          << "\" y1=\"" << s.y << "\" x2=\"" << e.x << "\" y2=\"" << e.y << "\" stroke=\""
          << (c == 0 ? "#222" : "#888") << "\" stroke-width=\"" << (c == 0 ? 1.5 : 1.0) << "\"/>\n";
    }
  }
  for (const auto& [w, text] : labels) {
    Vec2 q = px(w);
    out << "<text class=\"region\" x=\"" << q.x << "\" y=\"" << q.y
        << "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#b00\">" << text << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace domreg

#pragma once

// Positive roots of H3, H4 and I2(m) in simple-root coordinates.
//
// Everything lives in simple-root coefficient space. A point of the dominant
// chamber is written in the fundamental-weight basis, v = sum x_i w_i, and
// because (w_i | a_j) = delta_ij the pairing (v | beta) is the plain dot
// product x . coeffs(beta). No square roots of norms are ever needed.

#include "domreg/exactfield.hpp"
#include "domreg/linalg.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace domreg {

class OddRatioNotOne : public std::invalid_argument {
 public:
  OddRatioNotOne()
      : std::invalid_argument("I2(m) with odd m has one root orbit; ratio must be 1") {}
};

class NonPositiveRatio : public std::invalid_argument {
 public:
  NonPositiveRatio() : std::invalid_argument("root length ratio must be positive") {}
};

class ClosureOverflow : public std::runtime_error {
 public:
  ClosureOverflow()
      : std::runtime_error("reflection closure exceeded 10000 roots; Gram matrix is not of finite type") {}
};

class SpecParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Family { H3, H4, I2 };

// r = sin(k pi / m) / sin(l pi / m)
struct SinRatio {
  int k = 1;
  int l = 1;
  friend bool operator==(const SinRatio&, const SinRatio&) = default;
};

using RatioSpec = std::variant<Rational, SinRatio>;

struct SystemSpec {
  Family family = Family::H3;
  int m = 0;  // I2 only
  RatioSpec ratio = Rational(1);
  // Literal text of the ratio as written by the user, kept for reports.
  std::string ratio_text;

  std::size_t rank() const {
    switch (family) {
      case Family::H3: return 3;
      case Family::H4: return 4;
      case Family::I2: return 2;
    }
    return 0;
  }

  // Grammar: H3 | H4 | I2:<m> | I2:<m>:r=<decimal> | I2:<m>:r=sin(<k>)/sin(<l>)
  static SystemSpec parse(std::string_view text);

  std::string str() const {
    switch (family) {
      case Family::H3: return "H3";
      case Family::H4: return "H4";
      case Family::I2: {
        std::string s = "I2:" + std::to_string(m);
        if (!ratio_text.empty()) s += ":r=" + ratio_text;
        return s;
      }
    }
    return "";
  }
};

namespace detail {

inline int parse_int(std::string_view s, const std::string& whole) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw SpecParseError("bad integer in system spec '" + whole + "'");
  return v;
}

}  // namespace detail

inline SystemSpec SystemSpec::parse(std::string_view text) {
  const std::string whole(text);
  SystemSpec spec;
  if (text == "H3") {
    spec.family = Family::H3;
    return spec;
  }
  if (text == "H4") {
    spec.family = Family::H4;
    return spec;
  }
  if (!text.starts_with("I2:"))
    throw SpecParseError("unknown system spec '" + whole +
                         "' (expected H3, H4, I2:<m>[:r=...])");
  spec.family = Family::I2;
  text.remove_prefix(3);
  auto colon = text.find(':');
  spec.m = detail::parse_int(text.substr(0, colon), whole);
  if (spec.m < 2) throw SpecParseError("I2(m) requires m >= 2");
  if (colon == std::string_view::npos) return spec;

  std::string_view rest = text.substr(colon + 1);
  if (!rest.starts_with("r="))
    throw SpecParseError("expected r=<ratio> in '" + whole + "'");
  rest.remove_prefix(2);
  spec.ratio_text = std::string(rest);
  if (rest.starts_with("sin(")) {
    auto close1 = rest.find(')');
    if (close1 == std::string_view::npos || rest.substr(close1, 6) != ")/sin(" ||
        !rest.ends_with(")"))
      throw SpecParseError("expected sin(<k>)/sin(<l>) in '" + whole + "'");
    int k = detail::parse_int(rest.substr(4, close1 - 4), whole);
    std::string_view second = rest.substr(close1 + 6);
    second.remove_suffix(1);
    int l = detail::parse_int(second, whole);
    spec.ratio = SinRatio{k, l};
  } else {
    try {
      spec.ratio = Rational::parse(rest);
    } catch (const std::invalid_argument&) {
      throw SpecParseError("bad ratio in '" + whole + "'");
    }
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Constants available in each field.

template <OrderedField F>
std::optional<F> sqrt_constant(long d);

template <>
inline std::optional<Rational> sqrt_constant<Rational>(long d) {
  if (d == 1) return Rational(1);
  return std::nullopt;
}
template <>
inline std::optional<GoldenScalar> sqrt_constant<GoldenScalar>(long d) {
  if (d == 1) return GoldenScalar(1);
  if (d == 5) return GoldenScalar(Rational(-1), Rational(2));  // 2 tau - 1
  return std::nullopt;
}
template <>
inline std::optional<Sqrt2Scalar> sqrt_constant<Sqrt2Scalar>(long d) {
  if (d == 1) return Sqrt2Scalar(1);
  if (d == 2) return Sqrt2Scalar::generator();
  return std::nullopt;
}
template <>
inline std::optional<Sqrt3Scalar> sqrt_constant<Sqrt3Scalar>(long d) {
  if (d == 1) return Sqrt3Scalar(1);
  if (d == 3) return Sqrt3Scalar::generator();
  return std::nullopt;
}
template <>
inline std::optional<ApproxScalar> sqrt_constant<ApproxScalar>(long d) {
  return ApproxScalar(boost::multiprecision::sqrt(Real(d)));
}

// sin(k pi / m) when the field can represent it exactly (always for approx).
template <OrderedField F>
std::optional<F> sin_pi(long k, long m) {
  if (m <= 0) throw std::invalid_argument("sin_pi: m must be positive");
  if constexpr (!is_exact_field<F>()) {
    Real angle = boost::math::constants::pi<Real>() * Real(k) / Real(m);
    return ApproxScalar(boost::multiprecision::sin(angle));
  } else {
    long kk = ((k % (2 * m)) + 2 * m) % (2 * m);
    int s = 1;
    if (kk > m) {
      kk -= m;
      s = -1;
    }
    kk = std::min(kk, m - kk);
    if (kk == 0) return F(0);
    long g = std::gcd(kk, m);
    long num = kk / g, den = m / g;
    std::optional<F> v;
    auto half_sqrt = [&](long d) -> std::optional<F> {
      auto r = sqrt_constant<F>(d);
      if (!r) return std::nullopt;
      return F(*r * F(Rational(1, 2)));
    };
    if (num == 1 && den == 2) v = F(1);
    else if (num == 1 && den == 6) v = F(Rational(1, 2));
    else if (num == 1 && den == 3) v = half_sqrt(3);
    else if (num == 1 && den == 4) v = half_sqrt(2);
    else if (num == 3 && den == 10) {  // cos(pi/5) = (1 + sqrt5) / 4
      if (auto r5 = sqrt_constant<F>(5)) v = F((F(1) + *r5) * F(Rational(1, 4)));
    } else if (num == 1 && den == 10) {  // sin(pi/10) = (sqrt5 - 1) / 4
      if (auto r5 = sqrt_constant<F>(5)) v = F((*r5 - F(1)) * F(Rational(1, 4)));
    }
    if (!v) return std::nullopt;
    return s > 0 ? *v : F(-*v);
  }
}

// cos(pi / m) = sin((m - 2) pi / (2m))
template <OrderedField F>
std::optional<F> cos_pi_over(long m) {
  return sin_pi<F>(m - 2, 2 * m);
}

class UnrepresentableInField : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <OrderedField F>
F ratio_value(const SystemSpec& spec) {
  if (const auto* q = std::get_if<Rational>(&spec.ratio)) return F(*q);
  const auto& sr = std::get<SinRatio>(spec.ratio);
  // sin(k pi/m) = sin(l pi/m) without needing either value in the field.
  auto reduce = [m = static_cast<long>(spec.m)](long k) {
    long kk = ((k % (2 * m)) + 2 * m) % (2 * m);
    return kk > m ? -std::min(kk - m, 2 * m - kk) : std::min(kk, m - kk);
  };
  if (reduce(sr.k) == reduce(sr.l) && reduce(sr.l) != 0) return F(1);
  auto num = sin_pi<F>(sr.k, spec.m);
  auto den = sin_pi<F>(sr.l, spec.m);
  if (!num || !den)
    throw UnrepresentableInField(std::string("ratio sin(") + std::to_string(sr.k) +
                                 ")/sin(" + std::to_string(sr.l) +
                                 ") is not representable in field " + field_name<F>());
  if (sign(*den) == 0) throw NonPositiveRatio();
  return F(*num / *den);
}

// ---------------------------------------------------------------------------

template <OrderedField F>
struct Root {
  std::size_t index = 0;  // canonical position, 0-based
  std::vector<F> coeffs;

  F height() const {
    F h{0};
    for (const auto& c : coeffs) h = h + c;
    return h;
  }
};

// v = sum x_i w_i in the fundamental-weight basis.
template <OrderedField F>
struct WeightPoint {
  std::vector<F> x;
};

template <OrderedField F>
F evaluate(const WeightPoint<F>& v, const Root<F>& beta) {
  if (v.x.size() != beta.coeffs.size())
    throw std::invalid_argument("evaluate: dimension mismatch");
  return dot(v.x, beta.coeffs);
}

template <OrderedField F>
class RootSystem {
 public:
  static RootSystem build(const SystemSpec& spec);

  // General constructor from a Coxeter matrix and simple root lengths squared.
  // Off-diagonal Gram entries are -|a_i||a_j| cos(pi / m_ij); `lengths` holds
  // the norms |a_i| themselves.
  static RootSystem from_coxeter(SystemSpec spec,
                                 const std::vector<std::vector<long>>& coxeter,
                                 const std::vector<F>& lengths);

  // I2(m) with |a_1| = 1 and |a_2| = r for an arbitrary field value r.
  static RootSystem dihedral(int m, const F& r, std::string ratio_text);

  std::size_t rank() const { return gram_.size(); }
  const Matrix<F>& gram() const { return gram_; }
  const std::vector<Root<F>>& positives() const { return positives_; }
  const Root<F>& root(std::size_t i) const { return positives_.at(i); }
  std::size_t size() const { return positives_.size(); }
  const SystemSpec& spec() const { return spec_; }
  const F& ratio() const { return ratio_; }

  F inner(std::span<const F> u, std::span<const F> w) const {
    const std::size_t n = rank();
    if (u.size() != n || w.size() != n)
      throw std::invalid_argument("inner: dimension mismatch");
    F s{0};
    for (std::size_t i = 0; i < n; ++i) {
      if (sign(u[i]) == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (sign(w[j]) != 0 && sign(gram_[i][j]) != 0) s = s + u[i] * gram_[i][j] * w[j];
    }
    return s;
  }
  F inner(const std::vector<F>& u, const std::vector<F>& w) const {
    return inner(std::span<const F>(u), std::span<const F>(w));
  }

  // s_i(beta) = beta - 2 (beta | a_i) / (a_i | a_i) a_i, i 0-based.
  std::vector<F> reflect(std::size_t i, std::span<const F> beta) const {
    if (i >= rank()) throw std::out_of_range("reflect: simple index out of range");
    if (beta.size() != rank()) throw std::invalid_argument("reflect: dimension mismatch");
    F pairing{0};
    for (std::size_t j = 0; j < rank(); ++j) pairing = pairing + beta[j] * gram_[j][i];
    std::vector<F> out(beta.begin(), beta.end());
    out[i] = out[i] - F(2) * pairing / gram_[i][i];
    return out;
  }
  std::vector<F> reflect(std::size_t i, const std::vector<F>& beta) const {
    return reflect(i, std::span<const F>(beta));
  }

  F norm2(const Root<F>& r) const { return inner(r.coeffs, r.coeffs); }

  // Index of the positive root with these coefficients, if any.
  std::optional<std::size_t> find(std::span<const F> coeffs) const {
    for (const auto& r : positives_)
      if (std::equal(r.coeffs.begin(), r.coeffs.end(), coeffs.begin(), coeffs.end()))
        return r.index;
    return std::nullopt;
  }

  std::vector<std::string> degenerate_notes() const { return degenerate_; }

 private:
  SystemSpec spec_;
  Matrix<F> gram_;
  std::vector<Root<F>> positives_;
  F ratio_{1};
  std::vector<std::string> degenerate_;
};

template <OrderedField F>
RootSystem<F> RootSystem<F>::from_coxeter(SystemSpec spec,
                                          const std::vector<std::vector<long>>& coxeter,
                                          const std::vector<F>& lengths) {
  const std::size_t n = coxeter.size();
  RootSystem rs;
  rs.spec_ = std::move(spec);
  rs.gram_.assign(n, std::vector<F>(n, F(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        rs.gram_[i][i] = lengths[i] * lengths[i];
        continue;
      }
      auto c = cos_pi_over<F>(coxeter[i][j]);
      if (!c)
        throw UnrepresentableInField("cos(pi/" + std::to_string(coxeter[i][j]) +
                                     ") is not representable in field " + field_name<F>());
      rs.gram_[i][j] = -(lengths[i] * lengths[j] * *c);
    }
  }

  // Breadth-first closure: every positive root is reached from a simple root
  // through simple reflections that stay positive.
  auto is_positive = [](const std::vector<F>& v) {
    bool nonzero = false;
    for (const auto& c : v) {
      int s = sign(c);
      if (s < 0) return false;
      nonzero = nonzero || s > 0;
    }
    return nonzero;
  };
  std::vector<std::vector<F>> found;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<F> e(n, F(0));
    e[i] = F(1);
    found.push_back(std::move(e));
  }
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (std::size_t i = 0; i < n; ++i) {
      auto img = rs.reflect(i, found[head]);
      if (!is_positive(img)) continue;
      if (std::find(found.begin(), found.end(), img) != found.end()) continue;
      found.push_back(std::move(img));
      if (found.size() > 10000) throw ClosureOverflow();
    }
  }

  for (const auto& v : found)
    for (const auto& c : v)
      if (near_tie(c)) rs.degenerate_.push_back("root coefficient " + to_decimal(c, 6) +
                                                " is within 10*epsilon of zero");

  // Canonical order: height ascending, then coefficient vectors in
  // descending lexicographic order (so a_1, ..., a_n keep their labels).
  std::vector<Root<F>> roots;
  for (auto& v : found) roots.push_back(Root<F>{0, std::move(v)});
  std::stable_sort(roots.begin(), roots.end(), [](const Root<F>& a, const Root<F>& b) {
    int h = sign(a.height() - b.height());
    if (h != 0) return h < 0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
      int s = sign(a.coeffs[i] - b.coeffs[i]);
      if (s != 0) return s > 0;
    }
    return false;
  });
  for (std::size_t i = 0; i < roots.size(); ++i) roots[i].index = i;
  rs.positives_ = std::move(roots);
  return rs;
}

template <OrderedField F>
RootSystem<F> RootSystem<F>::build(const SystemSpec& spec) {
  switch (spec.family) {
    case Family::H3:
      return from_coxeter(spec, {{1, 5, 2}, {5, 1, 3}, {2, 3, 1}},
                          std::vector<F>(3, F(1)));
    case Family::H4:
      return from_coxeter(spec, {{1, 5, 2, 2}, {5, 1, 3, 2}, {2, 3, 1, 3}, {2, 2, 3, 1}},
                          std::vector<F>(4, F(1)));
    case Family::I2: {
      if (spec.m < 2) throw std::invalid_argument("I2(m) requires m >= 2");
      F r = ratio_value<F>(spec);
      if (sign(r) <= 0) throw NonPositiveRatio();
      if (spec.m % 2 == 1 && sign(r - F(1)) != 0) throw OddRatioNotOne();
      auto rs = from_coxeter(spec, {{1, spec.m}, {spec.m, 1}}, {F(1), r});
      rs.ratio_ = r;
      return rs;
    }
  }
  throw std::invalid_argument("unknown family");
}

template <OrderedField F>
RootSystem<F> RootSystem<F>::dihedral(int m, const F& r, std::string ratio_text) {
  if (m < 2) throw std::invalid_argument("I2(m) requires m >= 2");
  if (sign(r) <= 0) throw NonPositiveRatio();
  if (m % 2 == 1 && sign(r - F(1)) != 0) throw OddRatioNotOne();
  SystemSpec spec;
  spec.family = Family::I2;
  spec.m = m;
  spec.ratio_text = std::move(ratio_text);
  auto rs = from_coxeter(spec, {{1, m}, {m, 1}}, {F(1), r});
  rs.ratio_ = r;
  return rs;
}

// ---------------------------------------------------------------------------
// Backend selection.

enum class Backend { Rational, Golden, Sqrt2, Sqrt3, Approx };
enum class FieldChoice { Auto, Exact, Approx };

inline const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Rational: return "rational";
    case Backend::Golden: return "tau";
    case Backend::Sqrt2: return "sqrt2";
    case Backend::Sqrt3: return "sqrt3";
    case Backend::Approx: return "approx";
  }
  return "";
}

class BackendUnavailable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Backend select_backend(const SystemSpec& spec, FieldChoice choice) {
  if (spec.family != Family::I2) {
    if (choice == FieldChoice::Approx)
      throw BackendUnavailable("H3/H4 are computed exactly; --field approx is not supported");
    return Backend::Golden;
  }
  std::optional<Backend> exact;
  switch (spec.m) {
    case 2:
    case 3: exact = Backend::Rational; break;
    case 4: exact = Backend::Sqrt2; break;
    case 5: exact = Backend::Golden; break;
    case 6: exact = Backend::Sqrt3; break;
    default: break;
  }
  if (choice == FieldChoice::Approx) return Backend::Approx;
  if (exact) return *exact;
  if (choice == FieldChoice::Exact)
    throw BackendUnavailable("no exact field for I2(" + std::to_string(spec.m) + ")");
  return Backend::Approx;
}

}  // namespace domreg

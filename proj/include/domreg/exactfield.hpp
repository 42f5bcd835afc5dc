#pragma once

// Ordered fields used by the geometry engine.
//
//   Rational          exact rationals (GMP backed, always canonical)
//   Quadratic<Ext>    exact a + b*x where x^2 = p*x + q; instantiated for the
//                     golden ratio tau (x^2 = x + 1), sqrt(2) and sqrt(3)
//   ApproxScalar      60-digit decimal floating point with a comparison
//                     tolerance, for dihedral systems outside the exact fields
//
// Every engine template is written against the free functions sign(),
// near_tie(), to_decimal(), to_real() and field_name<F>(); FieldScalar is
// the tagged union used at serialization and CLI boundaries.

#include <gmpxx.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace domreg {

class DivByZero : public std::domain_error {
 public:
  DivByZero() : std::domain_error("division by zero") {}
};

class TagMismatch : public std::invalid_argument {
 public:
  TagMismatch(std::string_view lhs, std::string_view rhs)
      : std::invalid_argument("field tag mismatch: " + std::string(lhs) +
                              " vs " + std::string(rhs)) {}
};

using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_dec_float<60>, boost::multiprecision::et_off>;

// ---------------------------------------------------------------------------
// Rational

class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long n, long d) {
    if (d == 0) throw DivByZero();
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  Rational(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw DivByZero();
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }

  // Accepts "p", "p/q", and decimal literals such as "-1.25" or "3e-2".
  static Rational parse(std::string_view text);

  const mpq_class& value() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  bool is_integer() const { return v_.get_den() == 1; }

  // "p" for integers, "p/q" otherwise.
  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (sgn(o.v_) == 0) throw DivByZero();
    v_ /= o.v_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.v_ == b.v_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  mpq_class v_{0};
};

inline int sign(const Rational& x) { return sgn(x.value()); }

inline Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto bad = [&] {
    return std::invalid_argument("not a rational literal: '" + s + "'");
  };
  if (s.empty()) throw bad();
  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpz_class n, d;
    if (n.set_str(s.substr(0, slash), 10) != 0 ||
        d.set_str(s.substr(slash + 1), 10) != 0)
      throw bad();
    return Rational(n, d);
  }
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_point = false, seen_digit = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw bad();
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') throw bad();
    std::size_t used = 0;
    long exponent = 0;
    try {
      exponent = std::stol(s.substr(pos + 1), &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != s.size() - pos - 1) throw bad();
    scale += exponent;
  }
  mpz_class n(digits, 10);
  if (negative) n = -n;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  return scale >= 0 ? Rational(mpz_class(n * p10), mpz_class(1))
                    : Rational(n, p10);
}

inline mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline mpz_class floor_to_integer(const Rational& x) {
  return floor_div(x.numerator(), x.denominator());
}

inline Real to_real(const Rational& x) {
  return Real(x.numerator().get_str()) / Real(x.denominator().get_str());
}

// ---------------------------------------------------------------------------
// Quadratic extensions Q(x), x^2 = p*x + q, x the positive root.

struct GoldenExt {
  static constexpr long p = 1, q = 1;
  static constexpr const char* name = "tau";
  static constexpr const char* symbol = "τ";
};
struct Sqrt2Ext {
  static constexpr long p = 0, q = 2;
  static constexpr const char* name = "sqrt2";
  static constexpr const char* symbol = "√2";
};
struct Sqrt3Ext {
  static constexpr long p = 0, q = 3;
  static constexpr const char* name = "sqrt3";
  static constexpr const char* symbol = "√3";
};

template <class Ext>
class Quadratic {
 public:
  // Discriminant of x^2 - p x - q; x = (p + sqrt(D)) / 2.
  static constexpr long discriminant = Ext::p * Ext::p + 4 * Ext::q;

  Quadratic() = default;
  Quadratic(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  Quadratic(Rational a) : a_(std::move(a)) {}  // NOLINT
  Quadratic(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static Quadratic generator() { return Quadratic(Rational(0), Rational(1)); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  bool is_rational() const { return sign(b_) == 0; }

  Quadratic conjugate() const {
    return Quadratic(a_ + b_ * Rational(Ext::p), -b_);
  }
  // (a + b x)(a + b x') = a^2 + a b p - q b^2
  Rational norm() const {
    return a_ * a_ + a_ * b_ * Rational(Ext::p) - b_ * b_ * Rational(Ext::q);
  }

  Quadratic operator-() const { return Quadratic(-a_, -b_); }
  Quadratic& operator+=(const Quadratic& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  Quadratic& operator-=(const Quadratic& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  Quadratic& operator*=(const Quadratic& o) {
    Rational bd = b_ * o.b_;
    Rational a = a_ * o.a_ + bd * Rational(Ext::q);
    Rational b = a_ * o.b_ + b_ * o.a_ + bd * Rational(Ext::p);
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  Quadratic& operator/=(const Quadratic& o) {
    Rational n = o.norm();
    if (sign(n) == 0) throw DivByZero();
    *this *= o.conjugate();
    a_ /= n;
    b_ /= n;
    return *this;
  }
  friend Quadratic operator+(Quadratic x, const Quadratic& y) { return x += y; }
  friend Quadratic operator-(Quadratic x, const Quadratic& y) { return x -= y; }
  friend Quadratic operator*(Quadratic x, const Quadratic& y) { return x *= y; }
  friend Quadratic operator/(Quadratic x, const Quadratic& y) { return x /= y; }
  friend bool operator==(const Quadratic&, const Quadratic&) = default;

  // a + b x = (u + b sqrt(D)) / 2 with u = 2a + b p. Equal signs decide
  // immediately; otherwise compare u^2 against D b^2 (never equal, D is not
  // a perfect square).
  friend int sign(const Quadratic& x) {
    Rational u = Rational(2) * x.a_ + x.b_ * Rational(Ext::p);
    int su = sign(u), sb = sign(x.b_);
    if (sb == 0) return su;
    if (su == 0 || su == sb) return sb;
    int c = sign(u * u - Rational(discriminant) * x.b_ * x.b_);
    return c > 0 ? su : sb;
  }
  friend std::strong_ordering operator<=>(const Quadratic& x,
                                          const Quadratic& y) {
    int s = sign(x - y);
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  std::string str() const {
    if (sign(b_) == 0) return a_.str();
    std::string out;
    if (sign(a_) != 0) out = a_.str() + (sign(b_) > 0 ? " + " : " - ");
    else if (sign(b_) < 0) out = "-";
    Rational mag = sign(b_) < 0 ? -b_ : b_;
    if (mag != Rational(1)) out += mag.str() + "*";
    return out + Ext::symbol;
  }

 private:
  Rational a_{0};
  Rational b_{0};
};

using GoldenScalar = Quadratic<GoldenExt>;
using Sqrt2Scalar = Quadratic<Sqrt2Ext>;
using Sqrt3Scalar = Quadratic<Sqrt3Ext>;

inline mpz_class isqrt(const mpz_class& n) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

template <class Ext>
mpz_class floor_to_integer(const Quadratic<Ext>& x) {
  // x = (U + B sqrt(D)) / (2L) with integers U, B and L > 0.
  Rational u = Rational(2) * x.a() + x.b() * Rational(Ext::p);
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), u.denominator().get_mpz_t(),
          x.b().denominator().get_mpz_t());
  mpz_class big_u = u.numerator() * (l / u.denominator());
  mpz_class big_b = x.b().numerator() * (l / x.b().denominator());
  mpz_class den = 2 * l;
  if (big_b == 0) return floor_div(big_u, den);
  mpz_class root = isqrt(big_b * big_b * Quadratic<Ext>::discriminant);
  mpz_class fl = big_b > 0 ? root : mpz_class(-root - 1);
  return floor_div(big_u + fl, den);
}

template <class Ext>
Real to_real(const Quadratic<Ext>& x) {
  Real gen = (Real(Ext::p) + boost::multiprecision::sqrt(
                                 Real(Quadratic<Ext>::discriminant))) /
             2;
  return to_real(x.a()) + to_real(x.b()) * gen;
}

// ---------------------------------------------------------------------------
// ApproxScalar

inline const Real& default_epsilon() {
  static const Real eps("1e-30");
  return eps;
}

class ApproxScalar {
 public:
  ApproxScalar() : eps_(default_epsilon()) {}
  ApproxScalar(long v) : v_(v), eps_(default_epsilon()) {}  // NOLINT
  explicit ApproxScalar(Real v, Real eps = default_epsilon())
      : v_(std::move(v)), eps_(std::move(eps)) {}
  ApproxScalar(const Rational& r)  // NOLINT(google-explicit-constructor)
      : v_(to_real(r)), eps_(default_epsilon()) {}

  const Real& value() const { return v_; }
  const Real& epsilon() const { return eps_; }
  ApproxScalar with_epsilon(Real eps) const {
    return ApproxScalar(v_, std::move(eps));
  }

  ApproxScalar operator-() const { return ApproxScalar(-v_, eps_); }
  ApproxScalar& operator+=(const ApproxScalar& o) {
    v_ += o.v_;
    eps_ = std::max(eps_, o.eps_);
    return *this;
  }
  ApproxScalar& operator-=(const ApproxScalar& o) {
    v_ -= o.v_;
    eps_ = std::max(eps_, o.eps_);
    return *this;
  }
  ApproxScalar& operator*=(const ApproxScalar& o) {
    v_ *= o.v_;
    eps_ = std::max(eps_, o.eps_);
    return *this;
  }
  ApproxScalar& operator/=(const ApproxScalar& o) {
    if (abs(o.v_) < std::max(eps_, o.eps_)) throw DivByZero();
    v_ /= o.v_;
    eps_ = std::max(eps_, o.eps_);
    return *this;
  }
  friend ApproxScalar operator+(ApproxScalar x, const ApproxScalar& y) { return x += y; }
  friend ApproxScalar operator-(ApproxScalar x, const ApproxScalar& y) { return x -= y; }
  friend ApproxScalar operator*(ApproxScalar x, const ApproxScalar& y) { return x *= y; }
  friend ApproxScalar operator/(ApproxScalar x, const ApproxScalar& y) { return x /= y; }

  // Tolerance equality; not transitive, which is why ties are surfaced.
  friend bool operator==(const ApproxScalar& x, const ApproxScalar& y) {
    return abs(x.v_ - y.v_) < std::max(x.eps_, y.eps_);
  }
  friend int sign(const ApproxScalar& x) {
    if (abs(x.v_) < x.eps_) return 0;
    return x.v_ > 0 ? 1 : -1;
  }
  friend std::strong_ordering operator<=>(const ApproxScalar& x,
                                          const ApproxScalar& y) {
    int s = sign(x - y);
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  std::string str() const { return v_.str(40); }

 private:
  Real v_{0};
  Real eps_;
};

// True when |x| lies in [eps, 10 eps): resolved, but too close to call safely.
inline bool near_tie(const ApproxScalar& x) {
  Real m = abs(x.value());
  return m >= x.epsilon() && m < 10 * x.epsilon();
}
inline bool near_tie(const Rational&) { return false; }
template <class Ext>
bool near_tie(const Quadratic<Ext>&) { return false; }

inline Real to_real(const ApproxScalar& x) { return x.value(); }

inline mpz_class floor_to_integer(const ApproxScalar& x) {
  Real f = boost::multiprecision::floor(x.value());
  std::string digits = f.str(0, std::ios_base::fixed);
  return mpz_class(digits.substr(0, digits.find('.')), 10);
}

// ---------------------------------------------------------------------------
// Field traits

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr const char* name = "rational";
  static constexpr bool exact = true;
};
template <class Ext>
struct FieldTraits<Quadratic<Ext>> {
  static constexpr const char* name = Ext::name;
  static constexpr bool exact = true;
};
template <>
struct FieldTraits<ApproxScalar> {
  static constexpr const char* name = "approx";
  static constexpr bool exact = false;
};

template <class F>
concept OrderedField = requires(const F& x, const F& y) {
  { x + y } -> std::convertible_to<F>;
  { x - y } -> std::convertible_to<F>;
  { x * y } -> std::convertible_to<F>;
  { x / y } -> std::convertible_to<F>;
  { -x } -> std::convertible_to<F>;
  { sign(x) } -> std::convertible_to<int>;
  { near_tie(x) } -> std::convertible_to<bool>;
  { to_real(x) } -> std::convertible_to<Real>;
  { floor_to_integer(x) } -> std::convertible_to<mpz_class>;
  F(Rational(1));
  FieldTraits<F>::name;
};

template <OrderedField F>
constexpr const char* field_name() {
  return FieldTraits<F>::name;
}

template <OrderedField F>
constexpr bool is_exact_field() {
  return FieldTraits<F>::exact;
}

template <OrderedField F>
F abs(const F& x) {
  return sign(x) < 0 ? -x : x;
}

// Decimal expansion with `digits` significant digits, rounded half away from
// zero. Exact backends round correctly; the approximate backend rounds its
// stored value.
template <OrderedField F>
std::string to_decimal(const F& x, int digits) {
  if (digits < 1) throw std::invalid_argument("to_decimal: digits must be >= 1");
  if (sign(x) == 0) return "0";
  if (sign(x) < 0) return "-" + to_decimal(F(-x), digits);

  auto pow10 = [](long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(e)));
    return e >= 0 ? F(Rational(p, mpz_class(1))) : F(Rational(mpz_class(1), p));
  };
  // Smallest e with x < 10^e.
  long e = 0;
  while (sign(x - pow10(e)) >= 0) ++e;
  while (sign(x - pow10(e - 1)) < 0) --e;

  long k = digits - e;
  F half = F(Rational(1, 2));
  mpz_class n = floor_to_integer(F(x * pow10(k) + half));
  mpz_class limit;
  mpz_ui_pow_ui(limit.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  if (n >= limit) {
    --k;
    n = floor_to_integer(F(x * pow10(k) + half));
  }
  std::string s = n.get_str();
  if (k <= 0) return s + std::string(static_cast<std::size_t>(-k), '0');
  auto frac = static_cast<std::size_t>(k);
  if (s.size() <= frac) s = std::string(frac - s.size() + 1, '0') + s;
  return s.substr(0, s.size() - frac) + "." + s.substr(s.size() - frac);
}

// ---------------------------------------------------------------------------
// FieldScalar: the tagged union used at serialization boundaries.

using FieldScalar =
    std::variant<Rational, GoldenScalar, Sqrt2Scalar, Sqrt3Scalar, ApproxScalar>;

enum class ArithOp { Add, Sub, Mul, Div };

inline const char* tag_name(const FieldScalar& x) {
  return std::visit(
      [](const auto& v) { return FieldTraits<std::decay_t<decltype(v)>>::name; },
      x);
}

inline FieldScalar arith(const FieldScalar& x, const FieldScalar& y, ArithOp op) {
  if (x.index() != y.index()) throw TagMismatch(tag_name(x), tag_name(y));
  return std::visit(
      [&](const auto& lhs) -> FieldScalar {
        using T = std::decay_t<decltype(lhs)>;
        const T& rhs = std::get<T>(y);
        switch (op) {
          case ArithOp::Add: return T(lhs + rhs);
          case ArithOp::Sub: return T(lhs - rhs);
          case ArithOp::Mul: return T(lhs * rhs);
          case ArithOp::Div: return T(lhs / rhs);
        }
        throw std::invalid_argument("unknown arithmetic op");
      },
      x);
}

inline int sign(const FieldScalar& x) {
  return std::visit([](const auto& v) { return sign(v); }, x);
}

inline bool near_tie(const FieldScalar& x) {
  return std::visit([](const auto& v) { return near_tie(v); }, x);
}

inline std::string to_decimal(const FieldScalar& x, int digits) {
  return std::visit([&](const auto& v) { return to_decimal(v, digits); }, x);
}

}  // namespace domreg

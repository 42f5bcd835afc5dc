#pragma once

// Exact feasibility of systems mixing equalities and strict inequalities.
//
// Strict inequalities are handled by a uniform slack: maximize t with every
// strict constraint tightened by t and t <= 1. The open system is nonempty
// iff the optimum t* is positive, and the optimizer is then an interior
// witness with margin t*. When t* <= 0 a Motzkin-type certificate is solved
// for separately and checked by re-substitution.

#include "domreg/linalg.hpp"
#include "domreg/rootposet.hpp"
#include "domreg/simplex.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace domreg {

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch() : std::invalid_argument("linear system: dimension mismatch") {}
};

class EmptyAntichain : public std::invalid_argument {
 public:
  EmptyAntichain() : std::invalid_argument("Int_C requires a nonempty antichain") {}
};

template <OrderedField F>
struct LinearConstraint {
  std::vector<F> coeffs;
  F rhs{0};
};

template <OrderedField F>
struct LinearSystem {
  std::size_t dimension = 0;
  std::vector<LinearConstraint<F>> equalities;  // a.x = b
  std::vector<LinearConstraint<F>> strict_ge;   // a.x > b
  std::vector<LinearConstraint<F>> strict_le;   // a.x < b
};

// Multipliers: free for equalities, nonnegative for strict rows. Combining
//   sum mu (a.x - b) + sum y_ge (b - a.x) + sum y_le (a.x - b)
// cancels x and leaves a constant K. For strict multipliers not all zero the
// combination is negative on any solution, so K >= 0 is a contradiction;
// with only equality multipliers K != 0 is.
template <OrderedField F>
struct FarkasCertificate {
  std::vector<F> equality;
  std::vector<F> strict_ge;
  std::vector<F> strict_le;
};

enum class FeasibilityStatus { Feasible, Infeasible, Degenerate };

template <OrderedField F>
struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::Infeasible;
  std::optional<WeightPoint<F>> witness;
  std::optional<FarkasCertificate<F>> farkas;
  std::optional<F> slack;
};

inline const char* status_name(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::Feasible: return "feasible";
    case FeasibilityStatus::Infeasible: return "infeasible";
    case FeasibilityStatus::Degenerate: return "degenerate";
  }
  return "";
}

template <OrderedField F>
void check_dimensions(const LinearSystem<F>& sys) {
  auto ok = [&](const auto& rows) {
    for (const auto& r : rows)
      if (r.coeffs.size() != sys.dimension) return false;
    return true;
  };
  if (!ok(sys.equalities) || !ok(sys.strict_ge) || !ok(sys.strict_le)) throw DimensionMismatch();
}

// Exact re-substitution check of a certificate, independent of the solver.
template <OrderedField F>
bool verify_farkas(const LinearSystem<F>& sys, const FarkasCertificate<F>& cert) {
  if (cert.equality.size() != sys.equalities.size() ||
      cert.strict_ge.size() != sys.strict_ge.size() ||
      cert.strict_le.size() != sys.strict_le.size())
    return false;
  std::vector<F> combo(sys.dimension, F(0));
  F constant{0};
  bool any_strict = false;
  for (std::size_t k = 0; k < sys.equalities.size(); ++k) {
    const F& mu = cert.equality[k];
    for (std::size_t i = 0; i < sys.dimension; ++i)
      combo[i] = combo[i] + mu * sys.equalities[k].coeffs[i];
    constant = constant - mu * sys.equalities[k].rhs;
  }
  for (std::size_t k = 0; k < sys.strict_ge.size(); ++k) {
    const F& y = cert.strict_ge[k];
    if (sign(y) < 0) return false;
    any_strict = any_strict || sign(y) > 0;
    for (std::size_t i = 0; i < sys.dimension; ++i)
      combo[i] = combo[i] - y * sys.strict_ge[k].coeffs[i];
    constant = constant + y * sys.strict_ge[k].rhs;
  }
  for (std::size_t k = 0; k < sys.strict_le.size(); ++k) {
    const F& y = cert.strict_le[k];
    if (sign(y) < 0) return false;
    any_strict = any_strict || sign(y) > 0;
    for (std::size_t i = 0; i < sys.dimension; ++i)
      combo[i] = combo[i] + y * sys.strict_le[k].coeffs[i];
    constant = constant - y * sys.strict_le[k].rhs;
  }
  for (const auto& c : combo)
    if (sign(c) != 0) return false;
  return any_strict ? sign(constant) >= 0 : sign(constant) != 0;
}

// Checks a witness against every constraint; returns the smallest margin on
// the strict rows (1 when there are none), or nullopt on any violation.
template <OrderedField F>
std::optional<F> witness_margin(const LinearSystem<F>& sys, const std::vector<F>& x) {
  F margin{1};
  for (const auto& e : sys.equalities)
    if (sign(dot(e.coeffs, x) - e.rhs) != 0) return std::nullopt;
  for (const auto& c : sys.strict_ge) {
    F m = dot(c.coeffs, x) - c.rhs;
    if (sign(m) <= 0) return std::nullopt;
    if (sign(m - margin) < 0) margin = m;
  }
  for (const auto& c : sys.strict_le) {
    F m = c.rhs - dot(c.coeffs, x);
    if (sign(m) <= 0) return std::nullopt;
    if (sign(m - margin) < 0) margin = m;
  }
  return margin;
}

namespace detail {

// Split free variable columns: z = z_plus - z_minus.
template <OrderedField F>
std::vector<F> split_free(const std::vector<F>& coeffs) {
  std::vector<F> out;
  out.reserve(2 * coeffs.size());
  for (const auto& c : coeffs) out.push_back(c);
  for (const auto& c : coeffs) out.push_back(-c);
  return out;
}

template <OrderedField F>
FarkasCertificate<F> solve_farkas(const LinearSystem<F>& sys, bool equalities_only) {
  const std::size_t n = sys.dimension;
  const std::size_t ne = sys.equalities.size();
  const std::size_t ng = sys.strict_ge.size();
  const std::size_t nl = sys.strict_le.size();
  // Columns: mu_plus (ne) | mu_minus (ne) | y_ge (ng) | y_le (nl)
  LinearProgram<F> lp;
  lp.num_vars = 2 * ne + ng + nl;
  auto column = [&](std::size_t i) {
    std::vector<F> row(lp.num_vars, F(0));
    for (std::size_t k = 0; k < ne; ++k) {
      row[k] = sys.equalities[k].coeffs[i];
      row[ne + k] = -sys.equalities[k].coeffs[i];
    }
    for (std::size_t k = 0; k < ng; ++k) row[2 * ne + k] = -sys.strict_ge[k].coeffs[i];
    for (std::size_t k = 0; k < nl; ++k) row[2 * ne + ng + k] = sys.strict_le[k].coeffs[i];
    return row;
  };
  for (std::size_t i = 0; i < n; ++i) lp.add_row(column(i), RowSense::Equal, F(0));

  std::vector<F> constant(lp.num_vars, F(0));
  for (std::size_t k = 0; k < ne; ++k) {
    constant[k] = -sys.equalities[k].rhs;
    constant[ne + k] = sys.equalities[k].rhs;
  }
  for (std::size_t k = 0; k < ng; ++k) constant[2 * ne + k] = sys.strict_ge[k].rhs;
  for (std::size_t k = 0; k < nl; ++k) constant[2 * ne + ng + k] = -sys.strict_le[k].rhs;

  if (equalities_only) {
    // y = 0 and K = 1.
    for (std::size_t k = 2 * ne; k < lp.num_vars; ++k) {
      std::vector<F> row(lp.num_vars, F(0));
      row[k] = F(1);
      lp.add_row(std::move(row), RowSense::Equal, F(0));
    }
    lp.add_row(constant, RowSense::Equal, F(1));
  } else {
    std::vector<F> total(lp.num_vars, F(0));
    for (std::size_t k = 2 * ne; k < lp.num_vars; ++k) total[k] = F(1);
    lp.add_row(std::move(total), RowSense::Equal, F(1));
    lp.add_row(constant, RowSense::GreaterEqual, F(0));
  }
  auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw std::logic_error("infeasible system without a Farkas certificate");
  FarkasCertificate<F> cert;
  for (std::size_t k = 0; k < ne; ++k) cert.equality.push_back(sol.x[k] - sol.x[ne + k]);
  for (std::size_t k = 0; k < ng; ++k) cert.strict_ge.push_back(sol.x[2 * ne + k]);
  for (std::size_t k = 0; k < nl; ++k) cert.strict_le.push_back(sol.x[2 * ne + ng + k]);
  return cert;
}

}  // namespace detail

template <OrderedField F>
FeasibilityResult<F> solve(const LinearSystem<F>& sys) {
  check_dimensions(sys);
  const std::size_t n = sys.dimension;
  FeasibilityResult<F> result;

  // Eliminate equalities: x = x0 + N y.
  Matrix<F> a;
  std::vector<F> b;
  for (const auto& e : sys.equalities) {
    a.push_back(e.coeffs);
    b.push_back(e.rhs);
  }
  auto affine = solve_affine(a, b, n);
  if (!affine) {
    result.status = FeasibilityStatus::Infeasible;
    result.farkas = detail::solve_farkas(sys, true);
    if (!verify_farkas(sys, *result.farkas))
      throw std::logic_error("Farkas certificate failed verification");
    return result;
  }
  const std::size_t k = affine->kernel.size();

  // Strict rows as g.y < h.
  struct Row {
    std::vector<F> g;
    F h;
  };
  std::vector<Row> strict;
  auto project = [&](const std::vector<F>& coeffs) {
    std::vector<F> g(k, F(0));
    for (std::size_t j = 0; j < k; ++j) g[j] = dot(coeffs, affine->kernel[j]);
    return g;
  };
  for (const auto& c : sys.strict_ge) {
    auto g = project(c.coeffs);
    for (auto& v : g) v = -v;
    strict.push_back({std::move(g), dot(c.coeffs, affine->particular) - c.rhs});
  }
  for (const auto& c : sys.strict_le)
    strict.push_back({project(c.coeffs), c.rhs - dot(c.coeffs, affine->particular)});

  // t = 1 - s, s >= 0: minimize s subject to g.y - s <= h - 1.
  LinearProgram<F> lp;
  lp.num_vars = 2 * k + 1;
  for (const auto& r : strict) {
    auto row = detail::split_free(r.g);
    row.push_back(F(-1));
    lp.add_row(std::move(row), RowSense::LessEqual, r.h - F(1));
  }
  lp.objective.assign(lp.num_vars, F(0));
  lp.objective.back() = F(-1);
  auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw std::logic_error("slack program must have an optimum");

  F t = F(1) - sol.x.back();
  result.slack = t;
  int s = sign(t);
  if (s > 0) {
    std::vector<F> x = affine->particular;
    for (std::size_t j = 0; j < k; ++j) {
      F yj = sol.x[j] - sol.x[k + j];
      if (sign(yj) == 0) continue;
      for (std::size_t i = 0; i < n; ++i) x[i] = x[i] + yj * affine->kernel[j][i];
    }
    result.status = FeasibilityStatus::Feasible;
    result.witness = WeightPoint<F>{std::move(x)};
    return result;
  }
  if (s == 0 && !is_exact_field<F>()) {
    result.status = FeasibilityStatus::Degenerate;
    return result;
  }
  result.status = FeasibilityStatus::Infeasible;
  result.farkas = detail::solve_farkas(sys, false);
  if (!verify_farkas(sys, *result.farkas))
    throw std::logic_error("Farkas certificate failed verification");
  return result;
}

// ---------------------------------------------------------------------------
// Root-system specific systems.

template <OrderedField F>
LinearSystem<F> chamber_system(std::size_t n) {
  LinearSystem<F> sys;
  sys.dimension = n;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<F> e(n, F(0));
    e[i] = F(1);
    sys.strict_ge.push_back({std::move(e), F(0)});
  }
  return sys;
}

// Int_C(L): (v | beta) = 1 for beta in L, v in the dominant chamber.
template <OrderedField F>
LinearSystem<F> int_c_system(const RootPoset<F>& p, const Antichain& a, const F& level = F(1)) {
  auto sys = chamber_system<F>(p.system().rank());
  for (auto i : a.members()) sys.equalities.push_back({p.system().root(i).coeffs, level});
  return sys;
}

template <OrderedField F>
FeasibilityResult<F> int_c(const RootPoset<F>& p, const Antichain& a) {
  if (a.empty()) throw EmptyAntichain();
  if (!p.is_antichain(a.set())) throw NotAntichain();
  return solve(int_c_system(p, a));
}

// R_I for I = I(L): (v|beta) > c on L, (v|gamma) < c on I^c_max, v in C.
template <OrderedField F>
LinearSystem<F> region_system(const RootPoset<F>& p, const Antichain& a, const F& level = F(1)) {
  auto sys = chamber_system<F>(p.system().rank());
  for (auto i : a.members()) sys.strict_ge.push_back({p.system().root(i).coeffs, level});
  for (auto i : p.complement_maximals(p.ideal(a)).members())
    sys.strict_le.push_back({p.system().root(i).coeffs, level});
  return sys;
}

// Convex weights showing sum c_j beta_j < sum d_j gamma_j in the root order.
template <OrderedField F>
struct OrderCertificate {
  std::vector<std::pair<std::size_t, F>> lower;  // over I_min
  std::vector<std::pair<std::size_t, F>> upper;  // over I^c_max
};

template <OrderedField F>
std::vector<F> weighted_sum(const RootPoset<F>& p, const std::vector<std::pair<std::size_t, F>>& w) {
  std::vector<F> out(p.system().rank(), F(0));
  for (const auto& [idx, weight] : w)
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = out[i] + weight * p.system().root(idx).coeffs[i];
  return out;
}

template <OrderedField F>
bool verify_order_certificate(const RootPoset<F>& p, const OrderCertificate<F>& cert) {
  auto convex = [](const auto& w) {
    F total{0};
    for (const auto& [idx, weight] : w) {
      if (sign(weight) < 0) return false;
      total = total + weight;
    }
    return sign(total - F(1)) == 0;
  };
  if (cert.lower.empty() || cert.upper.empty()) return false;
  if (!convex(cert.lower) || !convex(cert.upper)) return false;
  auto lo = weighted_sum(p, cert.lower);
  auto hi = weighted_sum(p, cert.upper);
  bool nonzero = false;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    int s = sign(hi[i] - lo[i]);
    if (s < 0) return false;
    nonzero = nonzero || s > 0;
  }
  return nonzero;
}

// Searches convex weights c on `lower`, d on `upper` with sum d gamma - sum c
// beta in the nonnegative cone, maximizing its coefficient sum. Accepts only a
// positive optimum. No emptiness check is made here.
template <OrderedField F>
std::optional<OrderCertificate<F>> find_order_certificate(const RootPoset<F>& p, const Antichain& lower,
                                                          const Antichain& upper) {
  auto lo = lower.members();
  auto hi = upper.members();
  if (lo.empty() || hi.empty()) return std::nullopt;
  const std::size_t n = p.system().rank();
  LinearProgram<F> lp;
  lp.num_vars = lo.size() + hi.size();
  auto coeff = [&](std::size_t root, std::size_t i) { return p.system().root(root).coeffs[i]; };
  lp.objective.assign(lp.num_vars, F(0));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<F> row(lp.num_vars, F(0));
    for (std::size_t j = 0; j < lo.size(); ++j) row[j] = -coeff(lo[j], i);
    for (std::size_t j = 0; j < hi.size(); ++j) row[lo.size() + j] = coeff(hi[j], i);
    for (std::size_t j = 0; j < lp.num_vars; ++j) lp.objective[j] = lp.objective[j] + row[j];
    lp.add_row(std::move(row), RowSense::GreaterEqual, F(0));
  }
  std::vector<F> sum_c(lp.num_vars, F(0)), sum_d(lp.num_vars, F(0));
  for (std::size_t j = 0; j < lo.size(); ++j) sum_c[j] = F(1);
  for (std::size_t j = 0; j < hi.size(); ++j) sum_d[lo.size() + j] = F(1);
  lp.add_row(std::move(sum_c), RowSense::Equal, F(1));
  lp.add_row(std::move(sum_d), RowSense::Equal, F(1));
  auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal || sign(sol.value) <= 0) return std::nullopt;
  OrderCertificate<F> cert;
  for (std::size_t j = 0; j < lo.size(); ++j)
    if (sign(sol.x[j]) != 0) cert.lower.emplace_back(lo[j], sol.x[j]);
  for (std::size_t j = 0; j < hi.size(); ++j)
    if (sign(sol.x[lo.size() + j]) != 0) cert.upper.emplace_back(hi[j], sol.x[lo.size() + j]);
  return cert;
}

// Recession cone {d >= 0 | d.gamma <= 0 for gamma in I^c_max} is {0}?
template <OrderedField F>
bool recession_cone_trivial(const RootPoset<F>& p, const Antichain& a) {
  const std::size_t n = p.system().rank();
  LinearProgram<F> lp;
  lp.num_vars = n;
  for (auto g : p.complement_maximals(p.ideal(a)).members())
    lp.add_row(p.system().root(g).coeffs, RowSense::LessEqual, F(0));
  lp.add_row(std::vector<F>(n, F(1)), RowSense::LessEqual, F(1));
  lp.objective.assign(n, F(1));
  auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) throw std::logic_error("recession program must have an optimum");
  return sign(sol.value) == 0;
}

enum class RegionStatus { NonEmpty, Empty, Degenerate };
enum class Method { Propagated, LP };

inline const char* region_status_name(RegionStatus s) {
  switch (s) {
    case RegionStatus::NonEmpty: return "nonempty";
    case RegionStatus::Empty: return "empty";
    case RegionStatus::Degenerate: return "degenerate";
  }
  return "";
}
inline const char* method_name(Method m) { return m == Method::Propagated ? "propagated" : "lp"; }

template <OrderedField F>
using RegionCertificate = std::variant<std::monostate, OrderCertificate<F>, FarkasCertificate<F>>;

template <OrderedField F>
struct RegionVerdict {
  Antichain antichain;
  RegionStatus status = RegionStatus::Empty;
  std::optional<WeightPoint<F>> witness;
  RegionCertificate<F> certificate;
  std::optional<bool> bounded;
  Method method = Method::LP;
  std::optional<F> slack;
};

template <OrderedField F>
RegionVerdict<F> region_status(const RootPoset<F>& p, const Antichain& a) {
  RegionVerdict<F> v;
  v.antichain = p.make_antichain(a.set());
  auto sys = region_system(p, a);
  auto res = solve(sys);
  v.slack = res.slack;
  switch (res.status) {
    case FeasibilityStatus::Feasible:
      v.status = RegionStatus::NonEmpty;
      v.witness = std::move(res.witness);
      break;
    case FeasibilityStatus::Degenerate:
      v.status = RegionStatus::Degenerate;
      break;
    case FeasibilityStatus::Infeasible: {
      v.status = RegionStatus::Empty;
      auto upper = p.complement_maximals(p.ideal(a));
      if (auto oc = find_order_certificate(p, a, upper); oc && verify_order_certificate(p, *oc))
        v.certificate = std::move(*oc);
      else
        v.certificate = std::move(*res.farkas);
      break;
    }
  }
  return v;
}

// Order certificate for a region already known to be empty. Rejects
// antichains whose region is not empty.
template <OrderedField F>
std::optional<OrderCertificate<F>> order_certificate(const RootPoset<F>& p, const Antichain& a) {
  if (solve(region_system(p, a)).status != FeasibilityStatus::Infeasible)
    throw std::logic_error("order_certificate: region is not empty");
  return find_order_certificate(p, a, p.complement_maximals(p.ideal(a)));
}

template <OrderedField F>
bool bounded(const RootPoset<F>& p, const Antichain& a, const WeightPoint<F>& witness) {
  auto margin = witness_margin(region_system(p, a), witness.x);
  if (!margin) throw std::invalid_argument("bounded: witness does not lie in the region");
  return recession_cone_trivial(p, a);
}

// Which side of each H_{beta,1} the point lies on: the set {beta | (v|beta) > 1}.
template <OrderedField F>
RootSet sign_type(const RootPoset<F>& p, const WeightPoint<F>& v) {
  RootSet out;
  for (const auto& r : p.system().positives())
    if (sign(evaluate(v, r) - F(1)) > 0) out.insert(r.index);
  return out;
}

}  // namespace domreg

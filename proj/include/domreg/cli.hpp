#pragma once

// Command-line front end. run() parses argv, dispatches to the field backend
// chosen for the system, and writes to the given streams (or --out).
// Exit codes: 0 success, 1 verification mismatch, 2 usage error,
// 3 internal failure.

#include "domreg/catalog.hpp"
#include "domreg/render.hpp"
#include "domreg/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace domreg::cli {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string field = "auto";
  unsigned threads = 1;
  std::string out_path;
  std::string format;
  std::string epsilon;
  bool show_empty = false;
};

inline FieldChoice parse_field(const std::string& s) {
  if (s == "auto") return FieldChoice::Auto;
  if (s == "exact") return FieldChoice::Exact;
  if (s == "approx") return FieldChoice::Approx;
  throw UsageError("--field must be auto, exact or approx");
}

inline std::optional<Real> parse_epsilon(const std::string& s) {
  if (s.empty()) return std::nullopt;
  Real e;
  try {
    e = Real(s);
  } catch (const std::exception&) {
    throw UsageError("--epsilon: not a decimal: " + s);
  }
  if (e <= 0) throw UsageError("--epsilon must be positive");
  return e;
}

// Calls fn(RootSystem<F>) for the backend selected for spec.
template <class Fn>
auto with_system(const SystemSpec& spec, const Options& opt, Fn&& fn) {
  const Backend backend = select_backend(spec, parse_field(opt.field));
  const auto eps = parse_epsilon(opt.epsilon);
  if (eps && backend != Backend::Approx) throw UsageError("--epsilon applies to the approx backend only");
  switch (backend) {
    case Backend::Rational: return fn(RootSystem<Rational>::build(spec));
    case Backend::Golden: return fn(RootSystem<GoldenScalar>::build(spec));
    case Backend::Sqrt2: return fn(RootSystem<Sqrt2Scalar>::build(spec));
    case Backend::Sqrt3: return fn(RootSystem<Sqrt3Scalar>::build(spec));
    case Backend::Approx: break;
  }
  ApproxScalar r = ratio_value<ApproxScalar>(spec);
  if (eps) r = r.with_epsilon(*eps);
  return fn(RootSystem<ApproxScalar>::dihedral(spec.m, r, spec.ratio_text));
}

class Output {
 public:
  Output(const Options& opt, std::ostream& out) : out_(&out) {
    if (!opt.out_path.empty()) {
      file_.open(opt.out_path);
      if (!file_) throw UsageError("cannot open " + opt.out_path + " for writing");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ostream* out_;
  std::ofstream file_;
};

inline std::string format_or(const Options& opt, const std::string& fallback,
                             std::initializer_list<const char*> allowed) {
  std::string f = opt.format.empty() ? fallback : opt.format;
  for (const char* a : allowed)
    if (f == a) return f;
  throw UsageError("--format " + f + " is not available for this command");
}

inline std::string histogram_text(const std::map<std::size_t, std::size_t>& h) {
  std::string s;
  for (const auto& [k, v] : h) s += (s.empty() ? "" : " ") + std::to_string(k) + ":" + std::to_string(v);
  return s;
}

// ---------------------------------------------------------------------------

inline int cmd_roots(const SystemSpec& spec, const Options& opt, std::ostream& out) {
  return with_system(spec, opt, [&](auto rs) {
    using F = std::decay_t<decltype(rs.ratio())>;
    Output o(opt, out);
    if (format_or(opt, "text", {"text", "json"}) == "json") {
      Json gram = Json::array();
      for (const auto& row : rs.gram()) gram.push_back(vector_json(row));
      o.stream() << Json{{"spec", spec.str()},
                         {"field_backend", field_name<F>()},
                         {"rank", rs.rank()},
                         {"gram", gram},
                         {"roots", roots_json(rs)}}
                        .dump(2)
                 << "\n";
    } else {
      o.stream() << spec.str() << ": " << rs.size() << " positive roots over " << field_name<F>() << "\n";
      for (const auto& r : rs.positives())
        o.stream() << "a" << r.index + 1 << "\t" << coeff_string(r.coeffs) << "\tnorm2 " << display(rs.norm2(r))
                   << "\n";
    }
    return 0;
  });
}

inline int cmd_poset(const SystemSpec& spec, const Options& opt, std::ostream& out) {
  return with_system(spec, opt, [&](auto rs) {
    RootPoset p(std::move(rs));
    Output o(opt, out);
    const auto fmt = format_or(opt, "dot", {"dot", "json", "text"});
    if (fmt == "dot") {
      o.stream() << poset_dot(p);
    } else if (fmt == "json") {
      Json covers = Json::array();
      for (auto [b, g] : p.hasse_edges())
        covers.push_back(Json{{"lower", b + 1}, {"upper", g + 1}, {"reflection", p.is_reflection_cover(b, g)}});
      o.stream() << Json{{"spec", spec.str()}, {"roots", roots_json(p.system())}, {"covers", covers}}.dump(2) << "\n";
    } else {
      for (auto [b, g] : p.hasse_edges())
        o.stream() << "a" << b + 1 << " < a" << g + 1 << (p.is_reflection_cover(b, g) ? "" : "  (not a reflection)")
                   << "\n";
    }
    return 0;
  });
}

inline int cmd_antichains(const SystemSpec& spec, const Options& opt, std::ostream& out) {
  return with_system(spec, opt, [&](auto rs) {
    RootPoset p(std::move(rs));
    auto all = p.enumerate_antichains();
    std::map<std::size_t, std::size_t> hist;
    for (const auto& a : all) ++hist[a.size()];
    Output o(opt, out);
    if (format_or(opt, "text", {"text", "json"}) == "json") {
      Json list = Json::array(), maximal = Json::array();
      for (const auto& a : all) list.push_back(members_json(a));
      for (const auto& a : p.maximal_antichains()) maximal.push_back(members_json(a));
      o.stream() << Json{{"spec", spec.str()},
                         {"total", all.size()},
                         {"by_size", histogram_json(hist)},
                         {"maximal", maximal},
                         {"antichains", list}}
                        .dump(2)
                 << "\n";
    } else {
      o.stream() << spec.str() << ": " << all.size() << " antichains (sizes " << histogram_text(hist) << "), "
                 << p.maximal_antichains().size() << " maximal\n";
      for (const auto& a : all) o.stream() << label(a) << (p.is_maximal(a) ? "  maximal" : "") << "\n";
    }
    return 0;
  });
}

template <OrderedField F>
void write_summary(std::ostream& s, const ClassificationReport<F>& rep) {
  const auto& c = rep.counts;
  s << "system          " << rep.spec.str() << "\n"
    << "field           " << rep.field_backend << "\n"
    << "positive roots  " << c.positive_roots << "\n"
    << "antichains      " << c.antichain_total << "  (sizes " << histogram_text(c.by_size) << ")\n"
    << "maximal         " << c.maximal_total << "  good " << c.good << "  bad " << c.bad << "\n"
    << "propagated      " << c.propagated_nonempty << "\n"
    << "lp resolved     " << c.lp_resolved << "  (nonempty " << c.lp_nonempty << ", empty " << c.empty << ")\n"
    << "regions         " << c.regions << "\n"
    << "bounded         " << c.bounded << "\n";
  if (c.empty) s << "empty by size   " << histogram_text(c.empty_by_size) << "\n";
  if (c.degenerate) s << "degenerate      " << c.degenerate << "\n";
  s << "Int_C criterion " << (rep.bijection.holds ? "holds" : "fails") << "  ("
    << rep.bijection.violations.size() << " antichains with empty Int_C; census "
    << (rep.bijection.agree ? "agrees" : "DISAGREES") << ")\n"
    << "Cat(W)          " << rep.catalan.cat << "  positive " << rep.catalan.cat_positive << "\n";
  if (!rep.bounded_discrepancies.empty())
    s << "bounded regions containing a simple root, or unbounded without one: "
      << rep.bounded_discrepancies.size() << "\n";
  for (const auto& note : rep.degenerate) s << "degenerate: " << note << "\n";
}

template <OrderedField F>
void write_empty_listing(std::ostream& s, const RootPoset<F>& p, const ClassificationReport<F>& rep) {
  s << rep.empty_list.size() << " empty regions\n";
  for (const auto& v : rep.verdicts) {
    if (v.status != RegionStatus::Empty) continue;
    s << label(v.antichain) << "\n";
    for (auto i : v.antichain.members()) s << "  a" << i + 1 << " = " << coeff_string(p.system().root(i).coeffs) << "\n";
    auto upper = p.complement_maximals(p.ideal(v.antichain));
    s << "  complement maximals " << label(upper) << "\n";
    if (const auto* oc = std::get_if<OrderCertificate<F>>(&v.certificate)) {
      auto side = [&](const auto& w) {
        std::string t;
        for (const auto& [idx, weight] : w)
          t += (t.empty() ? "" : " + ") + std::string("(") + display(weight) + ")*a" + std::to_string(idx + 1);
        return t;
      };
      s << "  " << side(oc->lower) << "  <  " << side(oc->upper) << "\n";
    } else {
      s << "  Farkas certificate\n";
    }
  }
}

inline int cmd_classify(const SystemSpec& spec, const Options& opt, std::ostream& out, std::ostream& err) {
  return with_system(spec, opt, [&](auto rs) {
    RootPoset p(std::move(rs));
    auto rep = classify_all(p, {opt.threads});
    Output o(opt, out);
    const auto fmt = format_or(opt, "json", {"json", "text"});
    if (fmt == "json") o.stream() << report_json(rep, p.system()).dump(2) << "\n";
    else write_summary(o.stream(), rep);
    if (opt.show_empty) write_empty_listing(fmt == "json" && !o.to_file() ? err : o.stream(), p, rep);
    return 0;
  });
}

inline int cmd_verify(const std::vector<std::string>& specs, const Options& opt, std::ostream& out) {
  Output o(opt, out);
  int status = 0;
  for (const auto& text : specs) {
    auto spec = SystemSpec::parse(text);
    auto mismatches = with_system(spec, opt, [&](auto rs) {
      auto expect = catalog_expectation(rs);
      RootPoset p(std::move(rs));
      auto rep = classify_all(p, {opt.threads});
      if (!expect.note.empty()) o.stream() << "note " << spec.str() << ": " << expect.note << "\n";
      return compare(expect, rep);
    });
    if (mismatches.empty()) {
      o.stream() << "PASS " << spec.str() << "\n";
      continue;
    }
    status = 1;
    o.stream() << "FAIL " << spec.str() << "\n";
    for (const auto& mm : mismatches)
      o.stream() << "  " << mm.field << ": expected " << mm.expected << ", got " << mm.actual << "\n";
  }
  return status;
}

template <OrderedField F>
std::vector<GridPoint<F>> parse_ratios(int m, const std::vector<std::string>& texts) {
  std::vector<GridPoint<F>> out;
  for (const auto& t : texts) {
    auto spec = SystemSpec::parse("I2:" + std::to_string(m) + ":r=" + t);
    F r = ratio_value<F>(spec);
    out.push_back({r, t, classify_ratio(m, r) == RatioClass::Critical});
  }
  return out;
}

inline int cmd_sweep(int m, const std::vector<std::string>& ratios, const Options& opt, std::ostream& out) {
  if (m < 2) throw UsageError("sweep: m must be at least 2");
  if (m % 2 != 0) throw OddRatioNotOne();
  SystemSpec base;
  base.family = Family::I2;
  base.m = m;
  return with_system(base, opt, [&](auto rs) {
    using F = std::decay_t<decltype(rs.ratio())>;
    auto grid = ratios.empty() ? ratio_grid<F>(m) : parse_ratios<F>(m, ratios);
    auto eps = parse_epsilon(opt.epsilon);
    if constexpr (std::is_same_v<F, ApproxScalar>)
      if (eps)
        for (auto& g : grid) g.ratio = g.ratio.with_epsilon(*eps);
    auto rows = sweep_ratio(m, grid, opt.threads);
    Output o(opt, out);
    if (format_or(opt, "text", {"text", "json"}) == "json") {
      o.stream() << sweep_json(m, rows).dump(2) << "\n";
    } else {
      o.stream() << "I2(" << m << ") ratio sweep over " << field_name<F>() << "\n";
      o.stream() << "r\tvalue\tantichains\tregions\tbounded\tflags\n";
      for (const auto& r : rows) {
        std::string flags;
        if (r.point.critical) flags += "critical ";
        if (r.boundary) flags += "boundary ";
        if (r.degenerate) flags += "degenerate ";
        if (!r.bijection_holds) flags += "bijection-fails ";
        o.stream() << r.point.label << "\t" << to_decimal(r.point.ratio, 8) << "\t" << r.antichains << "\t"
                   << r.regions << "\t" << r.bounded << "\t" << flags << "\n";
      }
    }
    return 0;
  });
}

inline int cmd_figure(const SystemSpec& spec, const Options& opt, std::ostream& out) {
  return with_system(spec, opt, [&](auto rs) {
    RootPoset p(std::move(rs));
    const auto fmt = format_or(opt, "svg", {"svg", "dot"});
    if (fmt == "svg" && p.system().rank() != 2) throw UsageError("figure: SVG output needs an I2 system");
    Output o(opt, out);
    if (fmt == "dot") {
      o.stream() << poset_dot(p);
    } else {
      auto rep = classify_all(p, {opt.threads});
      o.stream() << arrangement_svg(p, rep);
    }
    return 0;
  });
}

inline int cmd_catalan(const SystemSpec& spec, const Options& opt, std::ostream& out) {
  auto c = catalan_numbers(spec);
  Output o(opt, out);
  if (format_or(opt, "text", {"text", "json"}) == "json") {
    Json j = catalan_json(c);
    j["spec"] = spec.str();
    o.stream() << j.dump(2) << "\n";
  } else {
    o.stream() << spec.str() << ": exponents";
    for (long e : c.exponents) o.stream() << " " << e;
    o.stream() << ", h = " << c.coxeter_number << ", Cat = " << c.cat << ", Cat+ = " << c.cat_positive << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"domreg: region census for Catalan-type arrangements of H3, H4 and I2(m)"};
  app.name("domreg");
  app.require_subcommand(0, 1);
  bool schema = false;
  app.add_flag("--schema", schema, "Print the JSON schema of classification reports");

  Options opt;
  std::string spec_text;
  std::vector<std::string> specs;
  int sweep_m = 0;
  std::vector<std::string> ratios;

  auto common = [&](CLI::App* sub, const std::string& formats) {
    sub->add_option("--field", opt.field, "auto | exact | approx")->check(CLI::IsMember({"auto", "exact", "approx"}));
    sub->add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", opt.out_path, "Write output to this file");
    sub->add_option("--format", opt.format, formats);
    sub->add_option("--epsilon", opt.epsilon, "Comparison tolerance (approx backend)");
  };
  const char* grammar = "H3 | H4 | I2:<m> | I2:<m>:r=<decimal> | I2:<m>:r=sin(<k>)/sin(<l>)";

  auto* roots = app.add_subcommand("roots", "List positive roots");
  roots->add_option("spec", spec_text, grammar)->required();
  common(roots, "text | json");
  auto* poset = app.add_subcommand("poset", "Root poset Hasse diagram");
  poset->add_option("spec", spec_text, grammar)->required();
  common(poset, "dot | json | text");
  auto* antichains = app.add_subcommand("antichains", "Enumerate antichains");
  antichains->add_option("spec", spec_text, grammar)->required();
  common(antichains, "text | json");
  auto* classify = app.add_subcommand("classify", "Classify every dominant region");
  classify->add_option("spec", spec_text, grammar)->required();
  classify->add_flag("--show-empty", opt.show_empty, "List empty regions with root coordinates");
  common(classify, "json | text");
  auto* verify = app.add_subcommand("verify", "Compare against the published counts");
  verify->add_option("specs", specs, grammar)->required();
  common(verify, "text");
  auto* sweep = app.add_subcommand("sweep", "Region counts of I2(m) across root length ratios");
  sweep->add_option("m", sweep_m, "Even m")->required();
  sweep->add_option("--ratio", ratios, "Ratio to test (repeatable); default is the critical grid");
  common(sweep, "text | json");
  auto* figure = app.add_subcommand("figure", "SVG of a rank-2 arrangement, or DOT poset");
  figure->add_option("spec", spec_text, grammar)->required();
  common(figure, "svg | dot");
  auto* catalan = app.add_subcommand("catalan", "Generalized Catalan numbers");
  catalan->add_option("spec", spec_text, grammar)->required();
  common(catalan, "text | json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (schema) {
      Output o(opt, out);
      o.stream() << report_schema() << "\n";
      return 0;
    }
    if (*roots) return cmd_roots(SystemSpec::parse(spec_text), opt, out);
    if (*poset) return cmd_poset(SystemSpec::parse(spec_text), opt, out);
    if (*antichains) return cmd_antichains(SystemSpec::parse(spec_text), opt, out);
    if (*classify) return cmd_classify(SystemSpec::parse(spec_text), opt, out, err);
    if (*verify) return cmd_verify(specs, opt, out);
    if (*sweep) return cmd_sweep(sweep_m, ratios, opt, out);
    if (*figure) return cmd_figure(SystemSpec::parse(spec_text), opt, out);
    if (*catalan) return cmd_catalan(SystemSpec::parse(spec_text), opt, out);
    err << app.help();
    return 2;
  } catch (const std::invalid_argument& e) {
    // spec grammar, backend choice, ratio constraints and other user input
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace domreg::cli

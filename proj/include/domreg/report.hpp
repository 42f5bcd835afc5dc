#pragma once

// JSON serialization of field elements, root systems, classification reports
// and ratio sweeps, plus the report schema and a validator for it.
//
// Field elements:
//   {"a": "p/q", "b": "p/q", "field": "tau" | "sqrt2" | "sqrt3"}
//   {"value": "p/q", "field": "rational"}
//   {"value": "<decimal>", "field": "approx"}

#include "domreg/classifier.hpp"

#include <json.hpp>
#include <rapidjson/document.h>
#include <rapidjson/error/en.h>
#include <rapidjson/schema.h>
#include <rapidjson/stringbuffer.h>

#include <string>

namespace domreg {

using Json = nlohmann::ordered_json;

inline constexpr int kApproxDigits = 40;

inline Json field_json(const Rational& x) { return Json{{"value", x.str()}, {"field", "rational"}}; }

template <class Ext>
Json field_json(const Quadratic<Ext>& x) {
  return Json{{"a", x.a().str()}, {"b", x.b().str()}, {"field", Ext::name}};
}

inline Json field_json(const ApproxScalar& x) {
  return Json{{"value", to_decimal(x, kApproxDigits)}, {"field", "approx"}};
}

inline Json field_json(const FieldScalar& x) {
  return std::visit([](const auto& v) { return field_json(v); }, x);
}

class FieldParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <OrderedField F>
F field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("field")) throw FieldParseError("field element must be an object with \"field\"");
  const std::string tag = j.at("field").get<std::string>();
  if (tag != field_name<F>()) throw TagMismatch(tag, field_name<F>());
  if constexpr (std::is_same_v<F, Rational>) {
    return Rational::parse(j.at("value").get<std::string>());
  } else if constexpr (std::is_same_v<F, ApproxScalar>) {
    return ApproxScalar(Real(j.at("value").get<std::string>()));
  } else {
    return F(Rational::parse(j.at("a").get<std::string>()), Rational::parse(j.at("b").get<std::string>()));
  }
}

template <OrderedField F>
Json vector_json(const std::vector<F>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(field_json(x));
  return out;
}

// 1-based root indices, matching the a<i> labels.
inline Json members_json(const Antichain& a) {
  Json out = Json::array();
  for (auto i : a.members()) out.push_back(i + 1);
  return out;
}

template <OrderedField F>
Json roots_json(const RootSystem<F>& rs) {
  Json out = Json::array();
  for (const auto& r : rs.positives())
    out.push_back(Json{{"index", r.index + 1}, {"coeffs", vector_json(r.coeffs)}, {"norm2", field_json(rs.norm2(r))}});
  return out;
}

template <OrderedField F>
Json certificate_json(const RegionCertificate<F>& cert) {
  if (const auto* oc = std::get_if<OrderCertificate<F>>(&cert)) {
    auto side = [](const auto& weights) {
      Json out = Json::array();
      for (const auto& [idx, w] : weights) out.push_back(Json{{"root", idx + 1}, {"weight", field_json(w)}});
      return out;
    };
    return Json{{"kind", "order"}, {"lower", side(oc->lower)}, {"upper", side(oc->upper)}};
  }
  if (const auto* fc = std::get_if<FarkasCertificate<F>>(&cert)) {
    return Json{{"kind", "farkas"},
                {"equality", vector_json(fc->equality)},
                {"strict_ge", vector_json(fc->strict_ge)},
                {"strict_le", vector_json(fc->strict_le)}};
  }
  return nullptr;
}

template <OrderedField F>
Json verdict_json(const RegionVerdict<F>& v) {
  Json j{{"members", members_json(v.antichain)},
         {"status", region_status_name(v.status)},
         {"method", method_name(v.method)}};
  if (v.witness) j["witness"] = vector_json(v.witness->x);
  if (!std::holds_alternative<std::monostate>(v.certificate)) j["certificate"] = certificate_json(v.certificate);
  if (v.bounded) j["bounded"] = *v.bounded;
  return j;
}

inline Json histogram_json(const std::map<std::size_t, std::size_t>& h) {
  Json out = Json::object();
  for (const auto& [k, v] : h) out[std::to_string(k)] = v;
  return out;
}

inline Json catalan_json(const GeneralizedCatalan& c) {
  return Json{{"exponents", c.exponents},
              {"coxeter_number", c.coxeter_number},
              {"cat", c.cat},
              {"cat_positive", c.cat_positive}};
}

template <OrderedField F>
Json report_json(const ClassificationReport<F>& rep, const RootSystem<F>& rs) {
  const auto& c = rep.counts;
  Json maximal = Json::array();
  for (const auto& m : rep.maximal) {
    Json j{{"members", members_json(m.antichain)}, {"good", m.good}};
    if (m.int_c_witness) j["int_c_witness"] = vector_json(m.int_c_witness->x);
    maximal.push_back(std::move(j));
  }
  Json antichains = Json::array();
  for (const auto& v : rep.verdicts) antichains.push_back(verdict_json(v));

  Json maximal_by_size = Json::object();
  for (const auto& [k, gb] : c.maximal_by_size)
    maximal_by_size[std::to_string(k)] = Json{{"good", gb.first}, {"bad", gb.second}};

  Json counts{{"positive_roots", c.positive_roots},
              {"antichain_total", c.antichain_total},
              {"by_size", histogram_json(c.by_size)},
              {"maximal_total", c.maximal_total},
              {"good", c.good},
              {"bad", c.bad},
              {"maximal_by_size", maximal_by_size},
              {"propagated_nonempty", c.propagated_nonempty},
              {"lp_resolved", c.lp_resolved},
              {"lp_nonempty", c.lp_nonempty},
              {"empty", c.empty},
              {"empty_by_size", histogram_json(c.empty_by_size)},
              {"regions", c.regions},
              {"bounded", c.bounded},
              {"unbounded", c.unbounded},
              {"degenerate", c.degenerate}};

  Json violations = Json::array();
  for (const auto& a : rep.bijection.violations) violations.push_back(members_json(a));
  Json discrepancies = Json::array();
  for (const auto& a : rep.bounded_discrepancies) discrepancies.push_back(members_json(a));
  Json empty_list = Json::array();
  for (const auto& a : rep.empty_list) empty_list.push_back(members_json(a));

  return Json{{"spec", rep.spec.str()},
              {"field_backend", rep.field_backend},
              {"positive_roots", roots_json(rs)},
              {"antichains", std::move(antichains)},
              {"maximal_antichains", std::move(maximal)},
              {"empty_list", std::move(empty_list)},
              {"counts", std::move(counts)},
              {"catalan", catalan_json(rep.catalan)},
              {"bijection",
               {{"holds", rep.bijection.holds},
                {"violations", std::move(violations)},
                {"empty_list_empty", rep.bijection.empty_list_empty},
                {"agree", rep.bijection.agree}}},
              {"bounded_criterion", {{"discrepancies", std::move(discrepancies)}}},
              {"degenerate", rep.degenerate}};
}

template <OrderedField F>
Json sweep_json(int m, const std::vector<SweepRow<F>>& rows) {
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back(Json{{"ratio", field_json(r.point.ratio)},
                       {"label", r.point.label},
                       {"critical", r.point.critical},
                       {"antichains", r.antichains},
                       {"regions", r.regions},
                       {"bounded", r.bounded},
                       {"empty", r.empty},
                       {"bijection_holds", r.bijection_holds},
                       {"bijection_agree", r.bijection_agree},
                       {"degenerate", r.degenerate},
                       {"boundary", r.boundary}});
  return Json{{"sweep", {{"m", m}, {"field_backend", field_name<F>()}, {"rows", std::move(out)}}}};
}

// JSON Schema (draft-04) accepting either a classification report or a sweep.
inline const std::string& report_schema() {
  static const std::string schema = R"({
  "$schema": "http://json-schema.org/draft-04/schema#",
  "definitions": {
    "count": {"type": "integer", "minimum": 0},
    "field": {
      "oneOf": [
        {"type": "object",
         "properties": {"a": {"type": "string"}, "b": {"type": "string"},
                        "field": {"enum": ["tau", "sqrt2", "sqrt3"]}},
         "required": ["a", "b", "field"], "additionalProperties": false},
        {"type": "object",
         "properties": {"value": {"type": "string"}, "field": {"enum": ["rational", "approx"]}},
         "required": ["value", "field"], "additionalProperties": false}
      ]
    },
    "vector": {"type": "array", "items": {"$ref": "#/definitions/field"}},
    "members": {"type": "array", "items": {"type": "integer", "minimum": 1}, "uniqueItems": true},
    "histogram": {"type": "object", "additionalProperties": {"$ref": "#/definitions/count"}},
    "weights": {
      "type": "array", "minItems": 1,
      "items": {"type": "object",
                "properties": {"root": {"type": "integer", "minimum": 1},
                               "weight": {"$ref": "#/definitions/field"}},
                "required": ["root", "weight"], "additionalProperties": false}
    },
    "certificate": {
      "oneOf": [
        {"type": "object",
         "properties": {"kind": {"enum": ["order"]},
                        "lower": {"$ref": "#/definitions/weights"},
                        "upper": {"$ref": "#/definitions/weights"}},
         "required": ["kind", "lower", "upper"], "additionalProperties": false},
        {"type": "object",
         "properties": {"kind": {"enum": ["farkas"]},
                        "equality": {"$ref": "#/definitions/vector"},
                        "strict_ge": {"$ref": "#/definitions/vector"},
                        "strict_le": {"$ref": "#/definitions/vector"}},
         "required": ["kind", "equality", "strict_ge", "strict_le"], "additionalProperties": false}
      ]
    },
    "antichain": {
      "type": "object",
      "properties": {
        "members": {"$ref": "#/definitions/members"},
        "status": {"enum": ["nonempty", "empty", "degenerate"]},
        "method": {"enum": ["propagated", "lp"]},
        "witness": {"$ref": "#/definitions/vector"},
        "certificate": {"$ref": "#/definitions/certificate"},
        "bounded": {"type": "boolean"}
      },
      "required": ["members", "status", "method"],
      "additionalProperties": false
    },
    "report": {
      "type": "object",
      "properties": {
        "spec": {"type": "string"},
        "field_backend": {"enum": ["rational", "tau", "sqrt2", "sqrt3", "approx"]},
        "positive_roots": {
          "type": "array",
          "items": {"type": "object",
                    "properties": {"index": {"type": "integer", "minimum": 1},
                                   "coeffs": {"$ref": "#/definitions/vector"},
                                   "norm2": {"$ref": "#/definitions/field"}},
                    "required": ["index", "coeffs", "norm2"], "additionalProperties": false}
        },
        "antichains": {"type": "array", "items": {"$ref": "#/definitions/antichain"}},
        "maximal_antichains": {
          "type": "array",
          "items": {"type": "object",
                    "properties": {"members": {"$ref": "#/definitions/members"},
                                   "good": {"type": "boolean"},
                                   "int_c_witness": {"$ref": "#/definitions/vector"}},
                    "required": ["members", "good"], "additionalProperties": false}
        },
        "empty_list": {"type": "array", "items": {"$ref": "#/definitions/members"}},
        "counts": {
          "type": "object",
          "properties": {
            "positive_roots": {"$ref": "#/definitions/count"},
            "antichain_total": {"$ref": "#/definitions/count"},
            "by_size": {"$ref": "#/definitions/histogram"},
            "maximal_total": {"$ref": "#/definitions/count"},
            "good": {"$ref": "#/definitions/count"},
            "bad": {"$ref": "#/definitions/count"},
            "maximal_by_size": {
              "type": "object",
              "additionalProperties": {
                "type": "object",
                "properties": {"good": {"$ref": "#/definitions/count"}, "bad": {"$ref": "#/definitions/count"}},
                "required": ["good", "bad"], "additionalProperties": false}
            },
            "propagated_nonempty": {"$ref": "#/definitions/count"},
            "lp_resolved": {"$ref": "#/definitions/count"},
            "lp_nonempty": {"$ref": "#/definitions/count"},
            "empty": {"$ref": "#/definitions/count"},
            "empty_by_size": {"$ref": "#/definitions/histogram"},
            "regions": {"$ref": "#/definitions/count"},
            "bounded": {"$ref": "#/definitions/count"},
            "unbounded": {"$ref": "#/definitions/count"},
            "degenerate": {"$ref": "#/definitions/count"}
          },
          "required": ["positive_roots", "antichain_total", "by_size", "maximal_total", "good", "bad",
                       "maximal_by_size", "propagated_nonempty", "lp_resolved", "lp_nonempty", "empty",
                       "empty_by_size", "regions", "bounded", "unbounded", "degenerate"],
          "additionalProperties": false
        },
        "catalan": {
          "type": "object",
          "properties": {"exponents": {"type": "array", "items": {"type": "integer"}},
                         "coxeter_number": {"type": "integer"},
                         "cat": {"type": "integer"},
                         "cat_positive": {"type": "integer"}},
          "required": ["exponents", "coxeter_number", "cat", "cat_positive"],
          "additionalProperties": false
        },
        "bijection": {
          "type": "object",
          "properties": {"holds": {"type": "boolean"},
                         "violations": {"type": "array", "items": {"$ref": "#/definitions/members"}},
                         "empty_list_empty": {"type": "boolean"},
                         "agree": {"type": "boolean"}},
          "required": ["holds", "violations", "empty_list_empty", "agree"],
          "additionalProperties": false
        },
        "bounded_criterion": {
          "type": "object",
          "properties": {"discrepancies": {"type": "array", "items": {"$ref": "#/definitions/members"}}},
          "required": ["discrepancies"], "additionalProperties": false
        },
        "degenerate": {"type": "array", "items": {"type": "string"}}
      },
      "required": ["spec", "field_backend", "antichains", "counts", "bijection", "degenerate"],
      "additionalProperties": false
    },
    "sweep": {
      "type": "object",
      "properties": {
        "sweep": {
          "type": "object",
          "properties": {
            "m": {"type": "integer", "minimum": 2},
            "field_backend": {"enum": ["rational", "tau", "sqrt2", "sqrt3", "approx"]},
            "rows": {
              "type": "array",
              "items": {
                "type": "object",
                "properties": {
                  "ratio": {"$ref": "#/definitions/field"},
                  "label": {"type": "string"},
                  "critical": {"type": "boolean"},
                  "antichains": {"$ref": "#/definitions/count"},
                  "regions": {"$ref": "#/definitions/count"},
                  "bounded": {"$ref": "#/definitions/count"},
                  "empty": {"$ref": "#/definitions/count"},
                  "bijection_holds": {"type": "boolean"},
                  "bijection_agree": {"type": "boolean"},
                  "degenerate": {"type": "boolean"},
                  "boundary": {"type": "boolean"}
                },
                "required": ["ratio", "label", "critical", "antichains", "regions", "bounded", "empty",
                             "bijection_holds", "bijection_agree", "degenerate", "boundary"],
                "additionalProperties": false
              }
            }
          },
          "required": ["m", "field_backend", "rows"],
          "additionalProperties": false
        }
      },
      "required": ["sweep"],
      "additionalProperties": false
    }
  },
  "oneOf": [{"$ref": "#/definitions/report"}, {"$ref": "#/definitions/sweep"}]
})";
  return schema;
}

struct SchemaCheck {
  bool valid = false;
  std::string error;  // JSON pointer of the failing instance and keyword
};

inline SchemaCheck validate_json(const std::string& document, const std::string& schema_text = report_schema()) {
  rapidjson::Document schema_doc;
  if (schema_doc.Parse(schema_text.c_str()).HasParseError())
    return {false, std::string("schema: ") + rapidjson::GetParseError_En(schema_doc.GetParseError())};
  rapidjson::Document doc;
  if (doc.Parse(document.c_str()).HasParseError())
    return {false, std::string("document: ") + rapidjson::GetParseError_En(doc.GetParseError())};
  rapidjson::SchemaDocument schema(schema_doc);
  rapidjson::SchemaValidator validator(schema);
  if (doc.Accept(validator)) return {true, {}};
  rapidjson::StringBuffer where, keyword;
  validator.GetInvalidDocumentPointer().StringifyUriFragment(where);
  return {false, std::string(where.GetString()) + ": " + validator.GetInvalidSchemaKeyword()};
}

inline SchemaCheck validate_json(const Json& document) { return validate_json(document.dump()); }

}  // namespace domreg

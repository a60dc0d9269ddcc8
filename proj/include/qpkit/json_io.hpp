#pragma once

#include <string>

#include <json.hpp>

#include "qpkit/analysis.hpp"
#include "qpkit/independence.hpp"
#include "qpkit/meyer.hpp"
#include "qpkit/qp.hpp"

namespace qpkit {

using Json = nlohmann::json;

// --- FieldScalar <-> {"a": "p/q", "b": "r/s", "m": m} -----------------------

inline Json to_json(const FieldScalar& x) {
  return Json{{"a", rat_to_string(x.rational_part())},
              {"b", rat_to_string(x.radical_part())},
              {"m", x.radicand()}};
}

// Accepts the canonical object form, a bare rational string "p/q", or an
// integer. `context_m` supplies the radicand when the entry omits it.
inline FieldScalar field_scalar_from_json(const Json& j, long context_m = 0) {
  if (j.is_number_integer()) return FieldScalar(make_rat(j.get<long long>()));
  if (j.is_string()) return FieldScalar(parse_rat(j.get<std::string>()));
  if (!j.is_object()) throw std::invalid_argument("field scalar: expected object, string or integer");
  const Rat a = j.contains("a") ? parse_rat(j.at("a").get<std::string>()) : Rat(0);
  const Rat b = j.contains("b") ? parse_rat(j.at("b").get<std::string>()) : Rat(0);
  long m = j.contains("m") ? j.at("m").get<long>() : context_m;
  if (b == 0) m = 0;
  if (b != 0 && m == 0)
    throw std::invalid_argument("field scalar: radical part present but no radicand m");
  return FieldScalar(a, b, m);
}

// --- FrequencyMatrix <-> {"field": {"m": 2}, "P": [[...], ...]} -------------

inline Json to_json(const FrequencyMatrix& p) {
  Json rows = Json::array();
  for (int i = 0; i < p.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < p.cols(); ++j) row.push_back(to_json(p.at(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"field", {{"m", p.radicand()}}}, {"P", std::move(rows)}};
}

inline FrequencyMatrix frequency_matrix_from_json(const Json& j) {
  long m = 0;
  if (j.contains("field") && j.at("field").contains("m")) m = j.at("field").at("m").get<long>();
  const Json& rows = j.at("P");
  if (!rows.is_array() || rows.empty()) throw std::invalid_argument("matrix: P must be a nonempty array");
  const int d = static_cast<int>(rows.size());
  const int n = static_cast<int>(rows.at(0).size());
  std::vector<FieldScalar> entries;
  entries.reserve(static_cast<std::size_t>(d) * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("matrix: ragged rows in P");
    for (const auto& e : row) entries.push_back(field_scalar_from_json(e, m));
  }
  return FrequencyMatrix(d, n, std::move(entries));
}

// --- coefficient maps --------------------------------------------------------

inline Json terms_to_json(const CoeffMap& m) {
  Json arr = Json::array();
  for (const auto& [k, c] : m) {
    Json kk = Json::array();
    for (long long v : k) kk.push_back(v);
    arr.push_back(Json{{"k", std::move(kk)}, {"re", c.real()}, {"im", c.imag()}});
  }
  return arr;
}

inline CoeffMap terms_from_json(const Json& arr, int n) {
  if (!arr.is_array()) throw std::invalid_argument("terms: expected an array");
  CoeffMap out;
  for (const auto& t : arr) {
    KVec k;
    for (const auto& v : t.at("k")) k.push_back(v.get<long long>());
    if (static_cast<int>(k.size()) != n) throw std::invalid_argument("terms: index length != n");
    const double re = t.contains("re") ? t.at("re").get<double>() : 0.0;
    const double im = t.contains("im") ? t.at("im").get<double>() : 0.0;
    out[k] += Complex(re, im);
  }
  return out;
}

// --- TrigPolynomial / ParentSpectrum ----------------------------------------

inline Json to_json(const TrigPolynomial& f) {
  Json j = to_json(f.P);
  j["terms"] = terms_to_json(f.terms);
  return j;
}

inline TrigPolynomial trig_polynomial_from_json(const Json& j) {
  FrequencyMatrix p = frequency_matrix_from_json(j);
  CoeffMap terms = terms_from_json(j.at("terms"), p.cols());
  return TrigPolynomial::make(std::move(p), std::move(terms));
}

inline Json to_json(const ParentSpectrum& F) {
  return Json{{"n", F.n}, {"coeffs", terms_to_json(F.coeffs)}};
}

inline ParentSpectrum parent_spectrum_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  return ParentSpectrum::make(n, terms_from_json(j.at("coeffs"), n));
}

// --- reports -----------------------------------------------------------------

inline Json to_json(const IndependenceVerdict& v) {
  const char* kind = v.kind == VerdictKind::QRank    ? "q_rank"
                     : v.kind == VerdictKind::ZModZd ? "z_mod_zd"
                                                     : "density";
  Json j{{"independent", v.independent}, {"kind", kind}};
  j["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);
  return j;
}

inline Json to_json(const ErgodicityReport& r) {
  Json j;
  j["r_action"] = r.r_action.independent;
  j["z_action"] = r.z_action.independent;
  j["witnesses"] = Json{{"r_action", r.r_action.witness ? Json(*r.r_action.witness) : Json(nullptr)},
                        {"z_action", r.z_action.witness ? Json(*r.z_action.witness) : Json(nullptr)}};
  j["invariant_character"] =
      r.invariant_character ? Json(*r.invariant_character) : Json(nullptr);
  return j;
}

inline Json to_json(const HYReport& r) {
  Json j{{"q", r.q},
         {"lhs", r.lhs},
         {"rhs", r.rhs},
         {"direction", r.direction == Direction::LE ? "le" : "ge"},
         {"holds", r.holds},
         {"slack", r.slack}};
  j["q_conjugate"] = std::isinf(r.q_conjugate) ? Json(nullptr) : Json(r.q_conjugate);
  return j;
}

inline Json to_json(const RegularityVerdict& v) {
  Json j;
  j["mode"] = v.mode == RegularityMode::Holder ? "holder" : "sobolev";
  if (v.mode == RegularityMode::Holder) {
    j["r"] = v.hypothesis_r;
    j["eta"] = v.hypothesis_eta;
  } else {
    j["s"] = v.s;
    j["q"] = v.q;
  }
  j["D_prime"] = v.D_prime;
  j["guaranteed_class"] = v.guaranteed_class ? Json(*v.guaranteed_class) : Json(nullptr);
  j["failures"] = v.failures;
  Json series = Json::array();
  for (std::size_t i = 0; i < v.checked_series.size(); ++i) {
    const auto& row = v.checked_series[i];
    series.push_back(Json{{"order", v.series_orders[i]},
                          {"radius", row.radius},
                          {"partial_sum", row.partial_sum},
                          {"convergent", row.convergent}});
  }
  j["checked_series"] = std::move(series);
  j["offending_k"] = v.offending_k ? Json(*v.offending_k) : Json(nullptr);
  return j;
}

inline Json to_json(const DensityReport& r) {
  return Json{{"min_count", r.min_count}, {"max_count", r.max_count},
              {"C_low", r.C_low},         {"C_high", r.C_high},
              {"min_gap", r.min_gap},     {"covered_halfwidth", r.covered_halfwidth},
              {"L", r.L},                 {"trials", r.trials}};
}

inline Json to_json(const B2IsometryReport& r) {
  return Json{{"parent_sum_sq", r.parent_sum_sq}, {"qp_sum_sq", r.qp_sum_sq}, {"equal", r.equal}};
}

// Maps a byte offset from a JSON parse error to 1-based line/column.
inline std::pair<int, int> line_column_of(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace qpkit

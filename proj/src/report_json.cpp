#include "subbergman/report_json.hpp"

#include <cmath>
#include <string>

#include "subbergman/errors.hpp"

namespace subbergman {
namespace {

// NaN / infinity are not representable in JSON.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json complex_to_json(Complex c) { return json{{"re", number(c.real())}, {"im", number(c.imag())}}; }

json complex_list_to_json(const std::vector<Complex>& v) {
  json out = json::array();
  for (const auto& c : v) out.push_back(complex_to_json(c));
  return out;
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object() && j.contains("re")) {
    const double re = j.at("re").get<double>();
    const double im = j.contains("im") ? j.at("im").get<double>() : 0.0;
    return {re, im};
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const auto comma = s.find(',');
    try {
      size_t used = 0;
      const double re = std::stod(s.substr(0, comma), &used);
      const double im = comma == std::string::npos ? 0.0 : std::stod(s.substr(comma + 1));
      return {re, im};
    } catch (const std::exception&) {
    }
  }
  throw DomainError("cannot parse complex number from " + j.dump());
}

std::vector<Complex> complex_list_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("expected a list of complex numbers, got " + j.dump());
  std::vector<Complex> out;
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

PowerSeriesPoly poly_from_json(const json& j) {
  if (j.is_number() || j.is_object()) return PowerSeriesPoly::constant(complex_from_json(j));
  return PowerSeriesPoly(complex_list_from_json(j));
}

void to_json(json& j, const PowerSeriesPoly& p) {
  j = complex_list_to_json(std::vector<Complex>(p.coeffs().begin(), p.coeffs().end()));
}

void to_json(json& j, const PickTestReport& r) {
  j = json{{"min_eigenvalue", number(r.min_eigenvalue)},
           {"verdict", to_string(r.verdict)},
           {"tolerance", r.tolerance},
           {"witness", complex_list_to_json(r.witness)}};
}

void to_json(json& j, const WitnessResult& r) {
  j = json{{"trial", r.trial}, {"points", complex_list_to_json(r.points)}, {"min_eigenvalue", number(r.min_eigenvalue)}};
}

void to_json(json& j, const RadialProbeReport& r) {
  json osc = json::array();
  for (double v : r.oscillation) osc.push_back(number(v));
  j = json{{"theta", r.theta},
           {"radii", r.radii},
           {"points", complex_list_to_json(r.points)},
           {"values", complex_list_to_json(r.values)},
           {"oscillation", osc},
           {"tail_oscillation", number(r.tail_oscillation)},
           {"verdict", to_string(r.verdict)}};
}

void to_json(json& j, const StolzProbeReport& r) {
  j = json{{"theta", r.theta},
           {"aperture", r.aperture},
           {"paths", {r.paths[0], r.paths[1], r.paths[2]}},
           {"limit_estimate", complex_to_json(r.limit_estimate)},
           {"spread", number(r.spread)},
           {"verdict", to_string(r.verdict)}};
}

void to_json(json& j, const FactorizationReport& r) {
  json tuples = json::array();
  for (const auto& t : r.tuples)
    tuples.push_back(complex_list_to_json({t.z1, t.z2, t.w1, t.w2}));
  j = json{{"alpha", r.alpha},
           {"tuples", tuples},
           {"defects", r.defects},
           {"max_defect", number(r.max_defect)},
           {"max_display_mismatch", number(r.max_display_mismatch)}};
}

void to_json(json& j, const CyclicityReport& r) {
  json res = json::array();
  for (double v : r.residuals) res.push_back(number(v));
  j = json{{"degrees", r.degrees},
           {"residuals", res},
           {"n_work", r.n_work},
           {"excluded_components", r.excluded_components},
           {"eigen_cutoff", r.eigen_cutoff},
           {"verdict", r.inconclusive ? "INCONCLUSIVE" : "COMPLETED"}};
}

void to_json(json& j, const RangeMappingReport& r) {
  json ratios = json::array();
  for (double v : r.ratios) ratios.push_back(number(v));
  j = json{{"alpha_in", r.alpha_in}, {"alpha_out", r.alpha_out}, {"n", r.n},
           {"buffer", r.buffer},     {"degrees", r.degrees},     {"ratios", ratios},
           {"max_ratio", number(r.max_ratio)}, {"min_ratio", number(r.min_ratio)}, {"all_finite", r.all_finite}};
}

void to_json(json& j, const DefectApplication& r) {
  j = json{{"input", r.input},   {"output", r.output},   {"n_work", r.n_work},
           {"n_trust", r.n_trust}, {"r_max", r.r_max}, {"tail_bound", number(r.tail_bound)}};
}

}  // namespace subbergman

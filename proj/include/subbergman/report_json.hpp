#pragma once

// JSON encodings of the report types. Complex numbers are always {"re", "im"}.

#include <json.hpp>

#include <vector>

#include "subbergman/analytic.hpp"
#include "subbergman/boundary.hpp"
#include "subbergman/operators.hpp"
#include "subbergman/pick.hpp"

namespace subbergman {

using json = nlohmann::json;

json complex_to_json(Complex c);
json complex_list_to_json(const std::vector<Complex>& v);
json matrix_to_json(const Eigen::MatrixXcd& m);

/// Accepts a number, [re, im], {"re": .., "im": ..} or the string "re,im".
Complex complex_from_json(const json& j);
std::vector<Complex> complex_list_from_json(const json& j);
/// A list of coefficients (constant term first).
PowerSeriesPoly poly_from_json(const json& j);

void to_json(json& j, const PowerSeriesPoly& p);
void to_json(json& j, const PickTestReport& r);
void to_json(json& j, const WitnessResult& r);
void to_json(json& j, const RadialProbeReport& r);
void to_json(json& j, const StolzProbeReport& r);
void to_json(json& j, const FactorizationReport& r);
void to_json(json& j, const CyclicityReport& r);
void to_json(json& j, const RangeMappingReport& r);
void to_json(json& j, const DefectApplication& r);

}  // namespace subbergman

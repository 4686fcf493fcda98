#pragma once

// JSON and CSV forms of states and reports. Complex numbers are [re, im]
// pairs; reals are 64-bit floats printed with round-trip precision.
//
// StateFile:
//   {"kind": "pure",  "dims": [m, n], "data": [[re, im], ...]}          (m*n)
//   {"kind": "mixed", "dims": [m, n], "data": [[[re, im], ...], ...]}   (mn x mn)
//   {"kind": "schmidt", "d": d, "k": [k1, ...]}   read as sum k_i |i, i>

#include <string>
#include <variant>

#include <json.hpp>

#include "qent/campaign.hpp"
#include "qent/errors.hpp"
#include "qent/measures.hpp"
#include "qent/roof.hpp"
#include "qent/states.hpp"

namespace qent {

// Malformed file contents (as opposed to a state that breaks invariants).
class FormatError : public Error {
public:
    using Error::Error;
};

using StateInput = std::variant<PureState, DensityMatrix>;

// Throws FormatError for structural problems and InvariantError /
// DimensionError when the decoded state is invalid.
StateInput state_from_json(const nlohmann::json& j);
StateInput read_state_file(const std::string& path);

nlohmann::json state_to_json(const PureState& psi);
nlohmann::json state_to_json(const DensityMatrix& rho);
nlohmann::json schmidt_to_json(const SchmidtForm& k);
SchmidtForm schmidt_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const MeasureReport& r);
std::string report_to_csv(const MeasureReport& r);

nlohmann::json sample_to_json(const Sample& s);
Sample sample_from_json(const nlohmann::json& j);

nlohmann::json verify_to_json(const VerifyReport& r);
std::string verify_to_csv(const VerifyReport& r);

// Pass the closed-form value for 2 x 2 inputs to report the oracle gap.
nlohmann::json roof_to_json(const RoofResult& r, RoofMeasure measure, std::optional<double> oracle);

// "%.17g"
std::string format_real(double x);

}  // namespace qent

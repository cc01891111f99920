// JSON and CSV forms of systems and analysis results. Rationals are always
// strings "p/q"; object keys are sorted, so equal results print equal bytes.

#ifndef PLDYN_REPORT_HPP_
#define PLDYN_REPORT_HPP_

#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pldyn/covering.hpp"
#include "pldyn/gallery.hpp"
#include "pldyn/minimality.hpp"
#include "pldyn/orbit.hpp"
#include "pldyn/sensitivity.hpp"

namespace pldyn {

using json = nlohmann::json;

// Schema violations in a system file, prefixed with the offending field.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

json system_to_json(const SystemDef& system);
SystemDef system_from_json(const json& j);
SystemDef load_system(const std::string& path);
void save_system(const SystemDef& system, const std::string& path);

json expected_to_json(const ExpectedVerdicts& e);

json to_json(const SystemDef& system, const TTResult& r);
json to_json(const TransitiveFraction& r);
json to_json(const SystemDef& system, const OrbitApprox& r);
json to_json(const SystemDef& system, const MinimalCells& cells,
             const DistinctMinimalSets& sets);
json to_json(const SystemDef& system, const MInverse& r);
json to_json(const AlmostOpenReport& r);
json to_json(const WeightCertificate& r);
json to_json(const SystemDef& system, const SensitivityVerdict& r,
             const std::optional<DerivedDelta>& derived);
json to_json(const SystemDef& system, const CoveringFamily& r, bool verified);
json to_json(const SystemDef& system, const NonexpansiveVerdict& r);

// Columns cell,radius,x,y,word,separation; one row per witnessed entry.
std::string witnesses_csv(const SystemDef& system, const SensitivityVerdict& r);

// Two-space indentation and a trailing newline.
std::string dump(const json& j);

}  // namespace pldyn

#endif  // PLDYN_REPORT_HPP_

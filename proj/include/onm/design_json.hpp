#pragma once

#include "onm/fir.hpp"
#include "onm/iir.hpp"

#include <json.hpp>

namespace onm {

/// {"type":"iir","family","kind","order","cutoffs","rate","sections":[[b0,b1,b2,a1,a2],...]}
nlohmann::json to_json(const IirDesign& design);
/// {"type":"fir","rate","group_delay","taps":[...]}
nlohmann::json to_json(const FirDesign& design);

IirDesign iir_from_json(const nlohmann::json& doc);
FirDesign fir_from_json(const nlohmann::json& doc);

} // namespace onm

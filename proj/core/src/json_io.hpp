#pragma once

// JSON helpers shared by the core sources. Not installed: nlohmann/json stays
// out of the public headers.

#include <nlohmann/json.hpp>

#include "bcm/network.hpp"

namespace bcm {

nlohmann::json network_json(const Network& net);
Network network_from_json_value(const nlohmann::json& doc);

}  // namespace bcm

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "bcm/network.hpp"

namespace bcm {

/// JSON document: layer_sizes, activations, row-major weight matrices
/// (weights[l][s][t]), biases and seed. Doubles are written in shortest
/// round-trip form, so load(save(net)) is value-exact.
std::string network_to_json(const Network& net, int indent = -1);
Network network_from_json(std::string_view text);

void save_network(const std::filesystem::path& path, const Network& net);
Network load_network(const std::filesystem::path& path);

}  // namespace bcm

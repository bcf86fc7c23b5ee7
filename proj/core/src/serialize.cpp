#include "bcm/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "json_io.hpp"

namespace bcm {

using nlohmann::json;

json network_json(const Network& net) {
  json weights = json::array();
  for (const auto& w : net.weights) {
    json matrix = json::array();
    for (Eigen::Index s = 0; s < w.rows(); ++s) {
      json row = json::array();
      for (Eigen::Index t = 0; t < w.cols(); ++t) row.push_back(w(s, t));
      matrix.push_back(std::move(row));
    }
    weights.push_back(std::move(matrix));
  }
  json biases = json::array();
  for (const auto& b : net.biases) biases.push_back(std::vector<double>(b.data(), b.data() + b.size()));
  return {{"layer_sizes", net.structure.layer_sizes},
          {"hidden_activation", kHiddenActivation},
          {"output_activation", kOutputActivation},
          {"weights", std::move(weights)},
          {"biases", std::move(biases)},
          {"seed", net.seed}};
}

Network network_from_json_value(const json& doc) {
  Network net;
  try {
    net.structure.layer_sizes = doc.at("layer_sizes").get<std::vector<std::size_t>>();
    net.structure.validate();
    if (doc.at("hidden_activation").get<std::string>() != kHiddenActivation ||
        doc.at("output_activation").get<std::string>() != kOutputActivation)
      throw std::invalid_argument("unsupported activation in network document");
    net.seed = doc.at("seed").get<std::uint64_t>();
    const auto& weights = doc.at("weights");
    const auto& biases = doc.at("biases");
    const auto& sizes = net.structure.layer_sizes;
    if (weights.size() != sizes.size() - 1 || biases.size() != sizes.size() - 1)
      throw ShapeError("network document has the wrong number of layers");
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
      const auto rows = static_cast<Eigen::Index>(sizes[l]);
      const auto cols = static_cast<Eigen::Index>(sizes[l + 1]);
      const auto& jw = weights[l];
      if (jw.size() != sizes[l]) throw ShapeError("weight matrix " + std::to_string(l) + " has wrong row count");
      Eigen::MatrixXd w(rows, cols);
      for (Eigen::Index s = 0; s < rows; ++s) {
        const auto& jrow = jw[static_cast<std::size_t>(s)];
        if (jrow.size() != sizes[l + 1])
          throw ShapeError("weight matrix " + std::to_string(l) + " has wrong column count");
        for (Eigen::Index t = 0; t < cols; ++t) w(s, t) = jrow[static_cast<std::size_t>(t)].get<double>();
      }
      const auto b = biases[l].get<std::vector<double>>();
      if (b.size() != sizes[l + 1]) throw ShapeError("bias vector " + std::to_string(l) + " has wrong length");
      net.weights.push_back(std::move(w));
      net.biases.push_back(Eigen::Map<const Eigen::VectorXd>(b.data(), cols));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed network document: ") + e.what());
  }
  if (!net.all_finite()) throw std::invalid_argument("network document contains non-finite values");
  return net;
}

std::string network_to_json(const Network& net, int indent) { return network_json(net).dump(indent); }

Network network_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("network document is not valid JSON: ") + e.what());
  }
  return network_from_json_value(doc);
}

void save_network(const std::filesystem::path& path, const Network& net) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << network_to_json(net, 1) << '\n';
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return network_from_json(buffer.str());
}

}  // namespace bcm

#include "smspsa/manifest.hpp"

#include "smspsa/errors.hpp"
#include "smspsa/matrix_io.hpp"
#include "smspsa/version.hpp"

namespace smspsa {

nlohmann::json objective_to_json(const Objective& objective) {
  switch (objective.kind()) {
    case ObjectiveKind::single_node:
      return {{"kind", "single_node"}, {"target", objective.target()}};
    case ObjectiveKind::linear: {
      std::vector<double> w(objective.weights().data(), objective.weights().data() + objective.weights().size());
      return {{"kind", "linear"}, {"weights", w}};
    }
    case ObjectiveKind::webrank:
      return {{"kind", "webrank"}, {"target", objective.target()}, {"cost_curve", objective.cost_curve().id}};
    case ObjectiveKind::custom:
      break;
  }
  throw InputError("custom objective '" + objective.name() + "' cannot be serialized");
}

Objective objective_from_json(const nlohmann::json& doc) {
  try {
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "single_node") return Objective::single_node(doc.at("target").get<Index>());
    if (kind == "linear") {
      const auto w = doc.at("weights").get<std::vector<double>>();
      RowVectorX<double> weights(static_cast<Index>(w.size()));
      for (std::size_t k = 0; k < w.size(); ++k) weights(static_cast<Index>(k)) = w[k];
      return Objective::linear(std::move(weights));
    }
    if (kind == "webrank") {
      return Objective::webrank(doc.at("target").get<Index>(),
                                cost_curve_by_id(doc.value("cost_curve", std::string("advertising"))));
    }
    throw InputError("unknown objective kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed objective: ") + e.what());
  }
}

nlohmann::json InstanceManifest::to_json() const {
  nlohmann::json doc = {{"version", kVersion},
                        {"n", matrix.size()},
                        {"matrix", io::to_json(matrix.entries())},
                        {"mask", io::mask_to_json(mask)},
                        {"objective", objective_to_json(objective)},
                        {"seed", seed ? nlohmann::json(*seed) : nlohmann::json(nullptr)},
                        {"params", params}};
  if (objective.kind() != ObjectiveKind::linear) doc["target"] = objective.target();
  if (!labels.empty()) doc["labels"] = labels;
  return doc;
}

InstanceManifest InstanceManifest::from_json(const nlohmann::json& doc) {
  try {
    InstanceManifest m{StochasticMatrix(io::from_json(doc.at("matrix"))), io::mask_from_json(doc.at("mask")),
                       objective_from_json(doc.at("objective"))};
    if (doc.contains("seed") && !doc["seed"].is_null()) m.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("params")) m.params = doc["params"];
    if (doc.contains("labels")) m.labels = doc["labels"].get<std::vector<std::string>>();
    if (m.mask.size() != m.matrix.size()) throw StructuralError("mask and matrix dimensions differ");
    m.objective.check_dimension(m.matrix.size());
    if (!m.labels.empty() && static_cast<Index>(m.labels.size()) != m.matrix.size()) {
      throw StructuralError("label count differs from the state count");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed instance manifest: ") + e.what());
  }
}

InstanceManifest InstanceManifest::load(const std::filesystem::path& path) {
  const auto text = io::read_text(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return from_json(doc);
}

void InstanceManifest::save(const std::filesystem::path& path) const { io::write_text(path, to_json().dump(2) + "\n"); }

}  // namespace smspsa

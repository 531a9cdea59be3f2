#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "smspsa/markov.hpp"
#include "smspsa/objectives.hpp"

namespace smspsa {

// {"kind": "single_node", "target": m}, {"kind": "linear", "weights": [...]}
// or {"kind": "webrank", "target": m, "cost_curve": "advertising"}.
nlohmann::json objective_to_json(const Objective& objective);
Objective objective_from_json(const nlohmann::json& doc);

// Contents of instance.json in a run directory.
struct InstanceManifest {
  InstanceManifest(StochasticMatrix p, AdjustmentMask c, Objective f, std::optional<std::uint64_t> s = std::nullopt)
      : matrix(std::move(p)), mask(std::move(c)), objective(std::move(f)), seed(s) {}

  StochasticMatrix matrix;
  AdjustmentMask mask;
  Objective objective;
  std::optional<std::uint64_t> seed;
  nlohmann::json params = nlohmann::json::object();
  std::vector<std::string> labels;  // external node ids, empty when unlabeled

  nlohmann::json to_json() const;
  static InstanceManifest from_json(const nlohmann::json& doc);
  static InstanceManifest load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

}  // namespace smspsa

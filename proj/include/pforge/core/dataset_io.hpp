#pragma once

#include <filesystem>

#include "json.hpp"
#include "pforge/core/dataset.hpp"

namespace pforge {

nlohmann::json constraint_to_json(const ConstraintFunction& f);
ConstraintFunction constraint_from_json(const nlohmann::json& j);

nlohmann::json dataset_to_json(const RPDataset& d);
// Throws std::invalid_argument on malformed input.
RPDataset dataset_from_json(const nlohmann::json& j, double tol_feas = kTolFeas);

RPDataset read_dataset(const std::filesystem::path& path, double tol_feas = kTolFeas);
void write_dataset(const RPDataset& d, const std::filesystem::path& path);

// Shared by every JSON writer in the project: pretty output, trailing newline.
void write_json_file(const nlohmann::json& j, const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace pforge

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace pforge::cli {

// SHA-1 of "blob <size>\0" + bytes, as printed by `git hash-object`.
std::string git_blob_sha1(std::string_view bytes);
std::string git_blob_sha1_file(const std::filesystem::path& path);

// Canonical text of a config: compact dump with sorted keys.
std::string canonical(const nlohmann::json& j);

struct Manifest {
  std::string command;
  std::uint64_t seed = 0;
  nlohmann::json config;
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> outputs;
  nlohmann::json summary = nlohmann::json::object();
};

inline constexpr int kManifestVersion = 1;

// Hashes the config text, every input and every output file; adds a UTC timestamp.
nlohmann::json manifest_json(const Manifest& m);

bool is_manifest(const nlohmann::json& j);

}  // namespace pforge::cli

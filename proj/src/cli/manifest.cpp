#include "pforge/cli/manifest.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace pforge::cli {

using nlohmann::json;

std::string git_blob_sha1(std::string_view bytes) {
  const std::string header = "blob " + std::to_string(bytes.size()) + '\0';
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha1(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), header.data(), header.size()) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
    throw std::runtime_error("SHA-1 digest failed");
  std::string hex;
  char buf[3];
  for (unsigned j = 0; j < len; ++j) {
    std::snprintf(buf, sizeof buf, "%02x", md[j]);
    hex += buf;
  }
  return hex;
}

std::string git_blob_sha1_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return git_blob_sha1(ss.str());
}

std::string canonical(const json& j) { return j.dump(); }  // object keys are kept sorted

json manifest_json(const Manifest& m) {
  json inputs = json::array(), outputs = json::array();
  for (const auto& p : m.inputs) inputs.push_back({{"path", p.string()}, {"sha1", git_blob_sha1_file(p)}});
  for (const auto& p : m.outputs)
    outputs.push_back({{"path", p.filename().string()}, {"sha1", git_blob_sha1_file(p)}});

  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);

  return {{"manifest_version", kManifestVersion},
          {"command", m.command},
          {"seed", m.seed},
          {"config", m.config},
          {"config_sha1", git_blob_sha1(canonical(m.config))},
          {"inputs", inputs},
          {"outputs", outputs},
          {"summary", m.summary},
          {"created", stamp}};
}

bool is_manifest(const json& j) { return j.is_object() && j.contains("manifest_version"); }

}  // namespace pforge::cli

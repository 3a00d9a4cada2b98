#pragma once

#include "splitcm/central.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace splitcm {

/// Persistent JSON store of classification results keyed by HeckeContext::key().
/// Writes are serialized with an advisory file lock and an atomic rename.
class ResultCache {
 public:
  static constexpr int kSchema = 1;

  explicit ResultCache(std::filesystem::path path, std::ostream* warnings = nullptr);

  const std::filesystem::path& path() const { return path_; }
  std::optional<nlohmann::json> get(const std::string& key) const;
  void put(const std::string& key, const nlohmann::json& payload);

 private:
  nlohmann::json load_locked() const;
  std::filesystem::path path_;
  std::ostream* warnings_;
};

nlohmann::json to_json(const Classification& c, double seconds = 0.0);
Classification classification_from_json(const nlohmann::json& j, const HeckeContext& ctx);

nlohmann::json row_to_json(const ClassRow& r);
nlohmann::json complex_to_json(const BigComplex& z, int digits);

}  // namespace splitcm

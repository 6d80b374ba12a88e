#pragma once
#include <atomic>
#include <optional>
#include <string>

#include "json.hpp"

namespace sticklab {

std::string sha256_hex(const std::string& data);

// Content-addressed JSON cache. Entries are written to a temporary file and
// renamed into place; an entry whose stored digest does not match its payload
// is treated as a miss and rewritten.
class Cache {
 public:
  Cache() = default;  // disabled
  explicit Cache(std::string dir);
  static std::string default_dir();

  bool enabled() const { return !dir_.empty(); }
  const std::string& dir() const { return dir_; }
  std::optional<nlohmann::json> get(const std::string& kind, const nlohmann::json& key);
  void put(const std::string& kind, const nlohmann::json& key, const nlohmann::json& payload);

  long hits() const { return hits_; }
  long misses() const { return misses_; }
  long corrupt() const { return corrupt_; }
  nlohmann::json stats() const;

 private:
  std::string path_for(const std::string& kind, const nlohmann::json& key) const;
  std::string dir_;
  std::atomic<long> hits_{0}, misses_{0}, corrupt_{0};
};

}  // namespace sticklab

#include "sticklab/cache.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace sticklab {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

Cache::Cache(std::string dir) : dir_(std::move(dir)) {
  if (dir_.empty()) return;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) {
    std::cerr << "warning: cache directory " << dir_ << " unusable (" << ec.message() << "), caching disabled\n";
    dir_.clear();
  }
}

std::string Cache::default_dir() {
  if (const char* env = std::getenv("STICKLAB_CACHE")) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME")) return std::string(xdg) + "/sticklab";
  if (const char* home = std::getenv("HOME")) return std::string(home) + "/.cache/sticklab";
  return ".sticklab-cache";
}

std::string Cache::path_for(const std::string& kind, const nlohmann::json& key) const {
  return dir_ + "/" + kind + "-" + sha256_hex(key.dump()) + ".json";
}

std::optional<nlohmann::json> Cache::get(const std::string& kind, const nlohmann::json& key) {
  if (!enabled()) return std::nullopt;
  const std::string path = path_for(kind, key);
  std::ifstream in(path);
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  try {
    nlohmann::json entry = nlohmann::json::parse(in);
    const std::string body = entry.at("payload").dump();
    if (entry.at("key") != key || entry.at("digest").get<std::string>() != sha256_hex(body))
      throw std::runtime_error("digest mismatch");
    ++hits_;
    return entry.at("payload");
  } catch (const std::exception& e) {
    ++corrupt_;
    ++misses_;
    std::cerr << "warning: discarding corrupt cache entry " << path << " (" << e.what() << ")\n";
    std::error_code ec;
    fs::remove(path, ec);
    return std::nullopt;
  }
}

void Cache::put(const std::string& kind, const nlohmann::json& key, const nlohmann::json& payload) {
  if (!enabled()) return;
  const std::string path = path_for(kind, key);
  nlohmann::json entry{{"key", key}, {"payload", payload}, {"digest", sha256_hex(payload.dump())}};
  std::ostringstream tmpname;
  tmpname << path << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id());
  {
    std::ofstream out(tmpname.str());
    if (!out) {
      std::cerr << "warning: cannot write cache entry " << path << "\n";
      return;
    }
    out << entry.dump();
  }
  std::error_code ec;
  fs::rename(tmpname.str(), path, ec);
  if (ec) {
    fs::remove(tmpname.str(), ec);
    std::cerr << "warning: cannot publish cache entry " << path << "\n";
  }
}

nlohmann::json Cache::stats() const {
  return {{"dir", dir_}, {"hits", hits_.load()}, {"misses", misses_.load()}, {"corrupt", corrupt_.load()}};
}

}  // namespace sticklab

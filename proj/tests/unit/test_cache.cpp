#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "doctest.h"
#include "sticklab/cache.hpp"

using namespace sticklab;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("sticklab-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("sha256 of known strings") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("read through, then hit") {
  auto dir = fresh_dir("hit");
  Cache c(dir.string());
  nlohmann::json key{{"q", 3}, {"degree", 2}};
  CHECK_FALSE(c.get("irreducibles", key).has_value());
  c.put("irreducibles", key, {"t^2+1", "t^2+t+2"});
  auto v = c.get("irreducibles", key);
  REQUIRE(v.has_value());
  CHECK((*v)[1] == "t^2+t+2");
  CHECK(c.hits() == 1);
  CHECK(c.misses() == 1);
  // no temporaries left behind
  for (auto& e : fs::directory_iterator(dir)) CHECK(e.path().string().find(".tmp.") == std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("tampered entries are dropped") {
  auto dir = fresh_dir("bad");
  Cache c(dir.string());
  nlohmann::json key{{"k", 1}};
  c.put("x", key, {1, 2, 3});
  for (auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path());
    auto j = nlohmann::json::parse(in);
    in.close();
    j["payload"][0] = 9;
    std::ofstream(e.path()) << j.dump();
  }
  CHECK_FALSE(c.get("x", key).has_value());
  CHECK(c.corrupt() == 1);
  c.put("x", key, {1, 2, 3});
  CHECK(c.get("x", key) == nlohmann::json{1, 2, 3});
  fs::remove_all(dir);
}

TEST_CASE("disabled cache never stores") {
  Cache c;
  CHECK_FALSE(c.enabled());
  c.put("x", {{"k", 1}}, 5);
  CHECK_FALSE(c.get("x", {{"k", 1}}).has_value());
}

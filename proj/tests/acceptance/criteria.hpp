#pragma once
#include <string>
#include <vector>

#include "json.hpp"

namespace acceptance {

struct Options {
  bool quick = false;  // D <= 4 everywhere, smaller sweeps
  int workers = 1;
};

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  double budget = 0;  // seconds allowed
  std::string detail;
  nlohmann::json data;
};

// one entry per criterion, in order; a criterion that throws is a failure
std::vector<Result> run_all(const Options& opt);
Result run_one(int id, const Options& opt);
constexpr int kCriteria = 10;

std::string format_line(const Result& r);
nlohmann::json to_json(const Result& r);

}  // namespace acceptance

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "acceptance/criteria.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria, one line each"};
  acceptance::Options opt;
  std::vector<int> only;
  std::string json_out;
  app.add_flag("--quick", opt.quick, "reduced degrees (D <= 4)");
  app.add_option("--workers", opt.workers, "worker threads")->check(CLI::Range(1, 64));
  app.add_option("--only", only, "criterion ids to run")->check(CLI::Range(1, acceptance::kCriteria));
  app.add_option("--json", json_out, "also write a JSON report here");
  CLI11_PARSE(app, argc, argv);
  if (only.empty())
    for (int i = 1; i <= acceptance::kCriteria; ++i) only.push_back(i);

  int failed = 0;
  nlohmann::json report = nlohmann::json::array();
  for (int id : only) {
    auto r = acceptance::run_one(id, opt);
    std::cout << acceptance::format_line(r) << std::endl;
    failed += r.pass ? 0 : 1;
    report.push_back(acceptance::to_json(r));
  }
  std::cout << (only.size() - static_cast<std::size_t>(failed)) << "/" << only.size() << " criteria passed\n";
  if (!json_out.empty()) std::ofstream(json_out) << report.dump(2) << "\n";
  return failed ? 1 : 0;
}

#include "hyperlines/report_io.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace hyperlines {

std::string write_report(const std::string& instance, const std::vector<CheckReport>& checks,
                         long long wall_time_ms) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["instance"] = instance;
  json arr = json::array();
  bool overall = true;
  for (const auto& c : checks) {
    overall = overall && c.pass();
    json e;
    e["id"] = c.name;
    e["verdict"] = c.pass() ? "pass" : "fail";
    e["violations"] = c.violations;
    e["witnesses"] = c.witnesses;
    e["stats"] = c.stats;  // std::map, already key-sorted
    e["truncated"] = c.truncated();
    arr.push_back(std::move(e));
  }
  doc["checks"] = std::move(arr);
  doc["overall"] = overall ? "pass" : "fail";
  doc["wall_time_ms"] = wall_time_ms;
  return doc.dump(2) + "\n";
}

void write_report_file(const std::string& instance, const std::vector<CheckReport>& checks,
                       long long wall_time_ms, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << write_report(instance, checks, wall_time_ms);
}

}  // namespace hyperlines

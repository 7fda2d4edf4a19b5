#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "csmaa/dataset.hpp"
#include "csmaa/hierarchy.hpp"

namespace fixtures {

inline std::string data(const std::string& name) { return std::string(CSMAA_DATA_DIR) + "/" + name; }

inline csmaa::Hierarchy hierarchy_from_json(const std::string& json) {
  std::istringstream in(json);
  return csmaa::Hierarchy::build(csmaa::parse_hierarchy_spec(in));
}

/// Root with leaves named a, b, c, ... (n <= 26).
inline csmaa::Hierarchy flat(std::size_t n) {
  std::string json = R"({"label":"root","children":[)";
  for (std::size_t i = 0; i < n; ++i) {
    if (i) json += ",";
    json += R"({"label":")" + std::string(1, static_cast<char>('a' + i)) + R"("})";
  }
  return hierarchy_from_json(json + "]}");
}

inline csmaa::Hierarchy eis() { return csmaa::load_hierarchy(data("eis_hierarchy.json")); }

inline csmaa::PerformanceTable table_from_csv(const std::string& csv, const csmaa::Hierarchy& h) {
  std::istringstream in(csv);
  return csmaa::load_table(in, h, "<test>");
}

inline std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("csmaa_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Published expected rankings at the root, countries in data-file order.
inline const std::vector<std::string> kCountries = {
    "BE", "BG", "CZ", "DK", "DE", "EE", "IE", "EL", "ES", "FR", "HR", "IT", "CY", "LV",
    "LT", "LU", "HU", "MT", "NL", "AT", "PL", "PT", "RO", "SI", "SK", "FI", "SE", "UK"};
inline const std::vector<int> kUniversityRanking = {9,  27, 13, 2,  5,  14, 11, 20, 17, 10,
                                                    26, 22, 21, 24, 16, 8,  23, 19, 4,  6,
                                                    25, 15, 28, 12, 18, 3,  1,  7};
inline const std::vector<int> kIndustryRanking = {7,  27, 14, 5,  6,  12, 10, 25, 19, 11,
                                                  24, 21, 17, 23, 18, 8,  16, 20, 3,  9,
                                                  26, 15, 28, 13, 22, 2,  1,  4};
inline const std::vector<int> kGovernmentRanking = {10, 27, 14, 3,  9,  12, 5,  24, 15, 8,
                                                    26, 22, 18, 23, 19, 7,  16, 21, 4,  11,
                                                    25, 17, 28, 13, 20, 6,  1,  2};

}  // namespace fixtures

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sigrig/chargenus.hpp"
#include "sigrig/thomfix.hpp"

namespace sigrig {

using json = nlohmann::json;

// Malformed input document; `path` points at the offending field
// ("components[1].T[0].roots").
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// 15 significant digits, for diffable reports.
std::string format_number(double v);
std::string format_number(cplx v);

// "a,b" or a bare real part.
cplx parse_complex(const std::string& s);

// "p1^2 p2" <-> descending partition {2, 1, 1}.
std::vector<int> parse_partition_key(const std::string& key);
std::string partition_key(const std::vector<int>& partition);

ManifoldData manifold_from_json(const json& j, const std::string& path);
json manifold_to_json(const ManifoldData& M);

struct SpecialSpec {
  double s = 0.0;
  double t = 0.0;  // lattice coordinates of the point a
  int n = 1;
};

struct FixtureData {
  FixedPointModel model;
  std::vector<SpecialSpec> special;
  std::string name;
};

FixtureData fixture_from_json(const json& j);
FixtureData load_fixture(const std::string& file);

json load_json_file(const std::string& file);

}  // namespace sigrig

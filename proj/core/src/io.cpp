#include "sigrig/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sigrig {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string format_number(cplx v) {
  return format_number(v.real()) + "," + format_number(v.imag());
}

cplx parse_complex(const std::string& s) {
  std::size_t comma = s.find(',');
  try {
    if (comma == std::string::npos) return cplx(std::stod(s), 0.0);
    return cplx(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse complex number: " + s);
  }
}

std::vector<int> parse_partition_key(const std::string& key) {
  std::vector<int> parts;
  std::istringstream in(key);
  std::string tok;
  while (in >> tok) {
    std::size_t caret = tok.find('^');
    std::string base = tok.substr(0, caret);
    long count = 1;
    if (caret != std::string::npos) {
      try {
        count = std::stol(tok.substr(caret + 1));
      } catch (const std::exception&) {
        count = 0;
      }
    }
    if (base.size() < 2 || base[0] != 'p' || count < 1)
      throw std::invalid_argument("bad partition key token: " + tok);
    int idx;
    try {
      idx = std::stoi(base.substr(1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad partition key token: " + tok);
    }
    if (idx < 1) throw std::invalid_argument("bad partition key token: " + tok);
    for (long c = 0; c < count; ++c) parts.push_back(idx);
  }
  if (parts.empty()) throw std::invalid_argument("empty partition key");
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

std::string partition_key(const std::vector<int>& partition) {
  std::string out;
  for (std::size_t i = 0; i < partition.size();) {
    std::size_t j = i;
    while (j < partition.size() && partition[j] == partition[i]) ++j;
    if (!out.empty()) out += ' ';
    out += "p" + std::to_string(partition[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

namespace {

Rational rational_from_json(const json& j, const std::string& path) {
  if (j.is_number_integer()) return rational(j.get<long long>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    try {
      return Rational(s);
    } catch (const std::exception&) {
      throw SchemaError(path, "cannot parse rational '" + s + "'");
    }
  }
  throw SchemaError(path, "expected integer or rational string");
}

long long_field(const json& j, const char* key, const std::string& path,
                bool required, long fallback = 0) {
  if (!j.contains(key)) {
    if (required) throw SchemaError(path + "." + key, "missing field");
    return fallback;
  }
  if (!j[key].is_number_integer())
    throw SchemaError(path + "." + key, "expected integer");
  return j[key].get<long>();
}

}  // namespace

ManifoldData manifold_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected object");
  ManifoldData M;
  M.dimension = static_cast<int>(long_field(j, "dim", path, true));
  if (M.dimension < 0 || M.dimension % 4 != 0)
    throw SchemaError(path + ".dim", "dimension must be a multiple of 4");
  if (j.contains("name")) M.name = j["name"].get<std::string>();
  if (j.contains("numbers")) {
    if (!j["numbers"].is_object())
      throw SchemaError(path + ".numbers", "expected object");
    for (const auto& [key, val] : j["numbers"].items()) {
      std::vector<int> part;
      try {
        part = parse_partition_key(key);
      } catch (const std::exception& e) {
        throw SchemaError(path + ".numbers." + key, e.what());
      }
      int weight = 0;
      for (int p : part) weight += p;
      if (weight != M.weight())
        throw SchemaError(path + ".numbers." + key,
                          "partition weight does not match dimension/4");
      M.pontryagin[part] = rational_from_json(val, path + ".numbers." + key);
    }
  }
  return M;
}

json manifold_to_json(const ManifoldData& M) {
  json j;
  j["dim"] = M.dimension;
  if (!M.name.empty()) j["name"] = M.name;
  json nums = json::object();
  for (const auto& [part, val] : M.pontryagin)
    nums[partition_key(part)] = to_string(val);
  j["numbers"] = std::move(nums);
  return j;
}

namespace {

std::vector<long> root_from_json(const json& j, const PolyRing& ring,
                                 const std::string& path) {
  std::vector<long> root(ring.names.size(), 0);
  if (!j.is_array()) throw SchemaError(path, "expected array");
  if (j.empty()) return root;
  auto add_term = [&](const json& term, const std::string& tpath) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_string() ||
        !term[1].is_number_integer())
      throw SchemaError(tpath, "expected [generator, coefficient]");
    std::string name = term[0].get<std::string>();
    auto it = std::find(ring.names.begin(), ring.names.end(), name);
    if (it == ring.names.end())
      throw SchemaError(tpath, "unknown generator '" + name + "'");
    root[static_cast<std::size_t>(it - ring.names.begin())] +=
        term[1].get<long>();
  };
  if (j[0].is_string()) {
    add_term(j, path);  // bare [name, coeff] shorthand
    return root;
  }
  for (std::size_t i = 0; i < j.size(); ++i)
    add_term(j[i], path + "[" + std::to_string(i) + "]");
  return root;
}

// A summand entry; m = 0 entries describe the fixed part and are returned
// through `fixed` instead.
void summand_from_json(const json& j, const PolyRing& ring,
                       const std::string& path,
                       std::vector<BundleSummand>& moving,
                       std::vector<std::vector<long>>& fixed) {
  if (!j.is_object()) throw SchemaError(path, "expected object");
  BundleSummand s;
  s.m = long_field(j, "m", path, true);
  s.d = long_field(j, "d", path, false, 1);
  if (s.d < 1) throw SchemaError(path + ".d", "multiplicity must be positive");
  if (j.contains("roots")) {
    const json& r = j["roots"];
    if (!r.is_array()) throw SchemaError(path + ".roots", "expected array");
    bool single = !r.empty() && r[0].is_string();
    if (single) {
      s.roots.push_back(root_from_json(r, ring, path + ".roots"));
    } else {
      for (std::size_t i = 0; i < r.size(); ++i)
        s.roots.push_back(
            root_from_json(r[i], ring, path + ".roots[" + std::to_string(i) + "]"));
    }
  }
  if (s.roots.size() > static_cast<std::size_t>(s.d))
    throw SchemaError(path + ".roots",
                      "more roots than the multiplicity d allows");
  s.roots.resize(static_cast<std::size_t>(s.d),
                 std::vector<long>(ring.names.size(), 0));
  if (s.m == 0) {
    for (auto& root : s.roots) fixed.push_back(std::move(root));
  } else {
    moving.push_back(std::move(s));
  }
}

std::vector<int> monomial_from_string(const std::string& str,
                                      const PolyRing& ring,
                                      const std::string& path) {
  std::vector<int> expo(ring.names.size(), 0);
  std::istringstream in(str);
  std::string tok;
  while (in >> tok) {
    std::size_t caret = tok.find('^');
    std::string base = tok.substr(0, caret);
    int count = 1;
    if (caret != std::string::npos) {
      try {
        count = std::stoi(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw SchemaError(path, "bad exponent in '" + tok + "'");
      }
    }
    auto it = std::find(ring.names.begin(), ring.names.end(), base);
    if (it == ring.names.end())
      throw SchemaError(path, "unknown generator '" + base + "'");
    expo[static_cast<std::size_t>(it - ring.names.begin())] += count;
  }
  return expo;
}

FixedComponent component_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected object");
  FixedComponent F;
  if (j.contains("ring")) {
    const json& r = j["ring"];
    if (!r.is_object()) throw SchemaError(path + ".ring", "expected object");
    std::vector<std::string> names;
    std::vector<int> degrees;
    if (r.contains("generators")) {
      if (!r["generators"].is_array())
        throw SchemaError(path + ".ring.generators", "expected array");
      for (std::size_t i = 0; i < r["generators"].size(); ++i) {
        const json& g = r["generators"][i];
        std::string gpath =
            path + ".ring.generators[" + std::to_string(i) + "]";
        if (!g.is_object() || !g.contains("name") || !g["name"].is_string())
          throw SchemaError(gpath, "expected {name, degree}");
        names.push_back(g["name"].get<std::string>());
        degrees.push_back(static_cast<int>(long_field(g, "degree", gpath, true)));
      }
    }
    int cap = static_cast<int>(long_field(r, "cap", path + ".ring", true));
    try {
      F.ring = PolyRing::make(names, degrees, cap);
    } catch (const std::exception& e) {
      throw SchemaError(path + ".ring", e.what());
    }
    if (r.contains("integral")) {
      if (!r["integral"].is_string())
        throw SchemaError(path + ".ring.integral", "expected monomial string");
      auto expo = monomial_from_string(r["integral"].get<std::string>(), F.ring,
                                       path + ".ring.integral");
      try {
        F.ring.set_integral(expo);
      } catch (const std::exception& e) {
        throw SchemaError(path + ".ring.integral", e.what());
      }
    }
  } else {
    F.ring = PolyRing::make({}, {}, 0);
  }
  if (F.ring.integral_index < 0) F.ring.set_integral(
      std::vector<int>(F.ring.names.size(), 0));

  auto read_list = [&](const char* key, std::vector<BundleSummand>& moving,
                       std::vector<std::vector<long>>& fixed) {
    if (!j.contains(key)) return;
    if (!j[key].is_array())
      throw SchemaError(path + "." + key, "expected array");
    for (std::size_t i = 0; i < j[key].size(); ++i)
      summand_from_json(j[key][i], F.ring,
                        path + "." + key + "[" + std::to_string(i) + "]",
                        moving, fixed);
  };
  read_list("T", F.T, F.T0_roots);
  read_list("V", F.V, F.V0_roots);
  F.delta = static_cast<int>(long_field(j, "delta", path, false, 0));
  F.delta_prime =
      static_cast<int>(long_field(j, "delta_prime", path, false, 0));
  if (j.contains("name")) F.name = j["name"].get<std::string>();
  return F;
}

}  // namespace

FixtureData fixture_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("fixture", "expected object");
  FixtureData fx;
  if (j.contains("components")) {
    if (!j["components"].is_array())
      throw SchemaError("components", "expected array");
    for (std::size_t i = 0; i < j["components"].size(); ++i)
      fx.model.components.push_back(component_from_json(
          j["components"][i], "components[" + std::to_string(i) + "]"));
  } else {
    fx.model.components.push_back(component_from_json(j, "fixture"));
  }
  if (j.contains("special")) {
    if (!j["special"].is_array()) throw SchemaError("special", "expected array");
    for (std::size_t i = 0; i < j["special"].size(); ++i) {
      const json& s = j["special"][i];
      std::string spath = "special[" + std::to_string(i) + "]";
      if (!s.is_object() || !s.contains("a") || !s["a"].is_array() ||
          s["a"].size() != 2 || !s["a"][0].is_number() ||
          !s["a"][1].is_number())
        throw SchemaError(spath, "expected {a: [s, t], n}");
      SpecialSpec sp;
      sp.s = s["a"][0].get<double>();
      sp.t = s["a"][1].get<double>();
      sp.n = static_cast<int>(long_field(s, "n", spath, true));
      if (sp.n < 1) throw SchemaError(spath + ".n", "order must be positive");
      fx.special.push_back(sp);
    }
  }
  if (j.contains("name")) fx.name = j["name"].get<std::string>();
  return fx;
}

json load_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw SchemaError(file, "cannot open file");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw SchemaError(file, std::string("invalid JSON: ") + e.what());
  }
  return j;
}

FixtureData load_fixture(const std::string& file) {
  return fixture_from_json(load_json_file(file));
}

}  // namespace sigrig

#include "wef/io.hpp"

#include <fstream>
#include <sstream>

namespace wef {

using nlohmann::json;

json instance_to_json(const Instance& instance, const json& meta) {
  json doc;
  doc["n"] = instance.agents();
  doc["m"] = instance.resources();
  doc["weights"] = json::array();
  for (int i = 0; i < instance.agents(); ++i) doc["weights"].push_back(instance.weight(i));
  doc["utilities"] = json::array();
  for (int i = 0; i < instance.agents(); ++i) {
    json row = json::array();
    for (int r = 0; r < instance.resources(); ++r) row.push_back(instance.utility(i, r));
    doc["utilities"].push_back(std::move(row));
  }
  if (!meta.is_null()) doc["meta"] = meta;
  return doc;
}

std::string serialize_instance(const Instance& instance, const json& meta) {
  return instance_to_json(instance, meta).dump(2) + "\n";
}

namespace {

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

const json& field(const json& doc, const char* name) {
  if (!doc.is_object()) throw ParseError("document is not a JSON object");
  auto it = doc.find(name);
  if (it == doc.end()) throw ParseError(std::string("missing field '") + name + "'");
  return *it;
}

Scalar integer(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw ParseError(where + " is not an integer");
  return value.get<Scalar>();
}

}  // namespace

InstanceDocument parse_instance_document(std::string_view text) {
  const json doc = parse_json(text, "instance");
  const Scalar n = integer(field(doc, "n"), "field 'n'");
  const Scalar m = integer(field(doc, "m"), "field 'm'");
  if (n < 1) throw ParseError("field 'n' must be at least 1");
  if (m < 0) throw ParseError("field 'm' must be non-negative");

  const json& weights = field(doc, "weights");
  if (!weights.is_array() || static_cast<Scalar>(weights.size()) != n) {
    throw ParseError("field 'weights' must be an array of n = " + std::to_string(n) +
                     " integers");
  }
  WeightVector w(n);
  for (Scalar i = 0; i < n; ++i) {
    w(i) = integer(weights[static_cast<std::size_t>(i)],
                   "weights[" + std::to_string(i) + "]");
  }

  const json& rows = field(doc, "utilities");
  if (!rows.is_array() || static_cast<Scalar>(rows.size()) != n) {
    throw ParseError("field 'utilities' must have n = " + std::to_string(n) + " rows");
  }
  UtilityMatrix u(n, m);
  for (Scalar i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Scalar>(row.size()) != m) {
      throw ParseError("utilities[" + std::to_string(i) + "] must have m = " +
                       std::to_string(m) + " entries");
    }
    for (Scalar r = 0; r < m; ++r) {
      u(i, r) = integer(row[static_cast<std::size_t>(r)],
                        "utilities[" + std::to_string(i) + "][" + std::to_string(r) + "]");
    }
  }

  json meta = nullptr;
  if (auto it = doc.find("meta"); it != doc.end()) meta = *it;
  try {
    return {Instance(std::move(w), std::move(u)), std::move(meta)};
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
}

Instance parse_instance(std::string_view text) {
  return parse_instance_document(text).instance;
}

json allocation_to_json(const Allocation& allocation) {
  json bundles = json::array();
  for (const auto& b : allocation.bundles()) {
    json ids = json::array();
    for (int r : b) ids.push_back(r + 1);
    bundles.push_back(std::move(ids));
  }
  return json{{"bundles", std::move(bundles)}};
}

Allocation parse_allocation(std::string_view text) {
  const json doc = parse_json(text, "allocation");
  const json& bundles = field(doc, "bundles");
  if (!bundles.is_array()) throw ParseError("field 'bundles' must be an array");
  std::vector<Bundle> out;
  for (std::size_t a = 0; a < bundles.size(); ++a) {
    if (!bundles[a].is_array()) {
      throw ParseError("bundles[" + std::to_string(a) + "] must be an array");
    }
    Bundle b;
    for (std::size_t k = 0; k < bundles[a].size(); ++k) {
      const Scalar id = integer(bundles[a][k], "bundles[" + std::to_string(a) + "][" +
                                                   std::to_string(k) + "]");
      if (id < 1) throw ParseError("resource ids are 1-based");
      b.push_back(static_cast<int>(id - 1));
    }
    out.push_back(std::move(b));
  }
  try {
    return Allocation(std::move(out));
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid allocation: ") + e.what());
  }
}

json gadget_map_to_json(const GadgetMap& g) {
  json doc;
  doc["M"] = g.big_m;
  doc["variables"] = json::array();
  for (const auto& v : g.variables) {
    doc["variables"].push_back({{"light_agent", v.light_agent + 1},
                                {"heavy_agent", v.heavy_agent + 1},
                                {"true_resource", v.true_resource + 1},
                                {"false_resource", v.false_resource + 1}});
  }
  doc["clauses"] = json::array();
  for (const auto& c : g.clauses) {
    json slots = json::array();
    json resources = json::array();
    for (int k = 0; k < 3; ++k) {
      slots.push_back(c.slot_agents[static_cast<std::size_t>(k)] + 1);
      resources.push_back(c.slot_resources[static_cast<std::size_t>(k)] + 1);
    }
    doc["clauses"].push_back({{"slot_agents", slots},
                              {"hub_agent", c.hub_agent + 1},
                              {"slot_resources", resources},
                              {"hub_resource", c.hub_resource + 1}});
  }
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
}

}  // namespace wef

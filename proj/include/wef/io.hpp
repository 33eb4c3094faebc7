#ifndef WEF_IO_HPP
#define WEF_IO_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wef/hardness.hpp"
#include "wef/types.hpp"

namespace wef {

/// Malformed or invalid input document. what() names the field (and the
/// line/column for JSON syntax errors).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InstanceDocument {
  Instance instance;
  nlohmann::json meta;  // null when absent
};

/// Canonical instance JSON: {"n", "m", "weights", "utilities", optional "meta"}.
nlohmann::json instance_to_json(const Instance& instance,
                                const nlohmann::json& meta = nullptr);
std::string serialize_instance(const Instance& instance,
                               const nlohmann::json& meta = nullptr);

InstanceDocument parse_instance_document(std::string_view text);
Instance parse_instance(std::string_view text);

/// {"bundles": [[1, 2], [], ...]} with 1-based resource ids, one list per agent.
nlohmann::json allocation_to_json(const Allocation& allocation);
Allocation parse_allocation(std::string_view text);

nlohmann::json gadget_map_to_json(const GadgetMap& gadgets);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace wef

#endif  // WEF_IO_HPP

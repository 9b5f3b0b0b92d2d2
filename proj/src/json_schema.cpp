#include "vaxalloc/json_schema.hpp"

#include <cmath>

namespace vaxalloc {
namespace {

using Json = nlohmann::ordered_json;

bool matches_type(const std::string& type, const Json& value) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  if (type == "number") return value.is_number();
  if (type == "integer") {
    if (value.is_number_integer()) return true;
    if (value.is_number_float()) {
      const double v = value.get<double>();
      return std::isfinite(v) && std::floor(v) == v;
    }
    return false;
  }
  return false;
}

std::string child_path(const std::string& parent, const std::string& key) {
  std::string escaped;
  for (char ch : key) {
    if (ch == '~') {
      escaped += "~0";
    } else if (ch == '/') {
      escaped += "~1";
    } else {
      escaped += ch;
    }
  }
  return parent + "/" + escaped;
}

void check(const Json& schema, const Json& value, const std::string& path,
           std::vector<SchemaViolation>& out) {
  if (schema.is_boolean()) {
    if (!schema.get<bool>()) out.push_back({path, "value not permitted here"});
    return;
  }
  if (!schema.is_object()) return;

  if (auto it = schema.find("type"); it != schema.end()) {
    bool ok = false;
    if (it->is_string()) {
      ok = matches_type(it->get<std::string>(), value);
    } else if (it->is_array()) {
      for (const auto& t : *it) ok = ok || matches_type(t.get<std::string>(), value);
    }
    if (!ok) {
      out.push_back({path, "expected type " + it->dump()});
      return;
    }
  }

  if (auto it = schema.find("enum"); it != schema.end()) {
    bool found = false;
    for (const auto& candidate : *it) found = found || candidate == value;
    if (!found) out.push_back({path, "value must be one of " + it->dump()});
  }

  if (value.is_string()) {
    if (auto it = schema.find("minLength"); it != schema.end()) {
      if (value.get<std::string>().size() < it->get<std::size_t>()) {
        out.push_back({path, "string shorter than " + it->dump()});
      }
    }
  }

  if (value.is_number()) {
    const double v = value.get<double>();
    if (auto it = schema.find("minimum"); it != schema.end() && v < it->get<double>()) {
      out.push_back({path, "value below minimum " + it->dump()});
    }
    if (auto it = schema.find("exclusiveMinimum");
        it != schema.end() && v <= it->get<double>()) {
      out.push_back({path, "value must exceed " + it->dump()});
    }
  }

  if (value.is_array()) {
    if (auto it = schema.find("minItems"); it != schema.end()) {
      if (value.size() < it->get<std::size_t>()) {
        out.push_back({path, "array shorter than " + it->dump()});
      }
    }
    if (auto it = schema.find("items"); it != schema.end()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        check(*it, value[i], path + "/" + std::to_string(i), out);
      }
    }
  }

  if (value.is_object()) {
    if (auto it = schema.find("required"); it != schema.end()) {
      for (const auto& key : *it) {
        if (!value.contains(key.get<std::string>())) {
          out.push_back({path, "missing required property '" + key.get<std::string>() + "'"});
        }
      }
    }
    const auto props = schema.find("properties");
    const auto extra = schema.find("additionalProperties");
    for (const auto& [key, member] : value.items()) {
      if (props != schema.end() && props->contains(key)) {
        check((*props)[key], member, child_path(path, key), out);
      } else if (extra != schema.end()) {
        if (extra->is_boolean() && !extra->get<bool>()) {
          out.push_back({child_path(path, key), "unexpected property '" + key + "'"});
        } else {
          check(*extra, member, child_path(path, key), out);
        }
      }
    }
  }
}

}  // namespace

std::vector<SchemaViolation> validate_against_schema(const Json& schema, const Json& instance) {
  std::vector<SchemaViolation> out;
  check(schema, instance, "", out);
  return out;
}

const Json& district_schema() {
  static const Json schema = Json::parse(
#include "vaxalloc/district_schema.inc"
  );
  return schema;
}

}  // namespace vaxalloc

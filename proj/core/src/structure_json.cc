/* Copyright 2026 The fgovd Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "structure_json.h"

#include <fmt/format.h>

#include "fgovd/errors.h"

namespace fgovd::internal {

using nlohmann::ordered_json;

ordered_json AttributesToJson(const std::vector<Attribute>& attrs) {
  ordered_json node = ordered_json::object();
  for (AttrType t : kAllAttrTypes) {
    std::vector<std::string> values;
    for (const Attribute& a : attrs) {
      if (a.type == t) values.push_back(a.value);
    }
    if (!values.empty()) node[std::string(ToString(t))] = values;
  }
  return node;
}

std::vector<Attribute> AttributesFromJson(const ordered_json& node,
                                          const std::string& where) {
  std::vector<Attribute> attrs;
  if (node.is_null()) return attrs;
  if (!node.is_object()) {
    throw ParseError(where, "attributes must be an object of type -> [values]");
  }
  for (const auto& [key, values] : node.items()) {
    const auto type = ParseAttrType(key);
    if (!type) throw ParseError(where + "." + key, "unknown attribute type");
    if (values.is_string()) {
      attrs.push_back({*type, values.get<std::string>()});
      continue;
    }
    if (!values.is_array()) {
      throw ParseError(where + "." + key, "expected a string or an array");
    }
    for (const auto& v : values) {
      if (!v.is_string()) throw ParseError(where + "." + key, "expected strings");
      attrs.push_back({*type, v.get<std::string>()});
    }
  }
  return attrs;
}

ordered_json PartsToJson(const std::vector<Part>& parts) {
  ordered_json node = ordered_json::array();
  for (const Part& p : parts) {
    node.push_back(
        {{"name", p.name}, {"attributes", AttributesToJson(p.attributes)}});
  }
  return node;
}

std::vector<Part> PartsFromJson(const ordered_json& node,
                                const std::string& where) {
  std::vector<Part> parts;
  if (node.is_null()) return parts;
  if (!node.is_array()) throw ParseError(where, "parts must be an array");
  for (std::size_t i = 0; i < node.size(); ++i) {
    const auto& pn = node[i];
    const std::string pwhere = fmt::format("{}[{}]", where, i);
    if (!pn.is_object() || !pn.contains("name") || !pn["name"].is_string()) {
      throw ParseError(pwhere, "part needs a string 'name'");
    }
    parts.push_back(
        {pn["name"].get<std::string>(),
         AttributesFromJson(pn.contains("attributes") ? pn["attributes"]
                                                      : ordered_json(),
                            pwhere + ".attributes")});
  }
  return parts;
}

}  // namespace fgovd::internal

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

#include "fgovd/taxonomy.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "fgovd/errors.h"
#include "fgovd/rng.h"
#include "fgovd/text.h"

namespace fgovd {
namespace {

using nlohmann::ordered_json;

constexpr std::array<std::string_view, 4> kTypeNames = {
    "color", "material", "pattern", "transparency"};

std::string LineContext(std::string_view source, std::string_view document,
                        std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < document.size(); ++i) {
    if (document[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return fmt::format("{}:{}:{}", source, line, col);
}

}  // namespace

std::string_view ToString(AttrType type) {
  return kTypeNames[static_cast<int>(type)];
}

std::optional<AttrType> ParseAttrType(std::string_view name) {
  const std::string lower = text::ToLower(name);
  for (AttrType t : kAllAttrTypes) {
    if (ToString(t) == lower) return t;
  }
  return std::nullopt;
}

AttributeTaxonomy::AttributeTaxonomy(
    std::string version, std::array<std::vector<std::string>, 4> values,
    std::array<std::set<std::string>, 4> negatives_only)
    : version_(std::move(version)) {
  for (AttrType t : kAllAttrTypes) {
    const int i = static_cast<int>(t);
    std::set<std::string> seen;
    for (const std::string& raw : values[i]) {
      std::string v = text::ToLower(text::Trim(raw));
      if (v.empty()) {
        throw ValidationError(
            fmt::format("taxonomy[{}]: empty value", ToString(t)));
      }
      if (!seen.insert(v).second) {
        throw ValidationError(fmt::format(
            "taxonomy[{}]: duplicate value \"{}\"", ToString(t), v));
      }
      values_[i].push_back(std::move(v));
    }
    for (const std::string& raw : negatives_only[i]) {
      std::string v = text::ToLower(text::Trim(raw));
      if (!seen.contains(v)) {
        throw ValidationError(fmt::format(
            "taxonomy[{}]: negatives_only value \"{}\" is not a listed value",
            ToString(t), v));
      }
      negatives_only_[i].insert(std::move(v));
    }
    for (const std::string& v : values_[i]) by_length_.push_back(v);
  }
  std::sort(by_length_.begin(), by_length_.end(),
            [](const std::string& a, const std::string& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a < b;
            });
  by_length_.erase(std::unique(by_length_.begin(), by_length_.end()),
                   by_length_.end());
}

bool AttributeTaxonomy::Contains(AttrType type, std::string_view value) const {
  const std::string v = text::ToLower(value);
  const auto& vs = values(type);
  return std::find(vs.begin(), vs.end(), v) != vs.end();
}

bool AttributeTaxonomy::IsNegativesOnly(AttrType type,
                                        std::string_view value) const {
  return negatives_only_[static_cast<int>(type)].contains(
      text::ToLower(value));
}

std::string AttributeTaxonomy::ToJson() const {
  ordered_json doc;
  doc["version"] = version_;
  ordered_json neg = ordered_json::object();
  for (AttrType t : kAllAttrTypes) {
    doc[std::string(ToString(t))] = values(t);
    if (!negatives_only_values(t).empty()) {
      neg[std::string(ToString(t))] = std::vector<std::string>(
          negatives_only_values(t).begin(), negatives_only_values(t).end());
    }
  }
  doc["negatives_only"] = neg;
  return doc.dump(2) + "\n";
}

std::string AttributeTaxonomy::Fingerprint() const {
  return fmt::format("{:016x}", StableHash(ToJson()));
}

AttributeTaxonomy ParseTaxonomy(std::string_view document,
                                std::string_view source_name) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(LineContext(source_name, document, e.byte), e.what());
  }
  const std::string src(source_name);
  if (!doc.is_object()) throw ParseError(src, "top level must be an object");

  std::string version = "custom";
  std::array<std::vector<std::string>, 4> values;
  std::array<std::set<std::string>, 4> negatives_only;
  bool seen_type[4] = {false, false, false, false};

  for (const auto& [key, value] : doc.items()) {
    if (key == "version") {
      if (!value.is_string()) {
        throw ParseError(src + ": field 'version'", "expected a string");
      }
      version = value.get<std::string>();
      continue;
    }
    if (key == "negatives_only") {
      if (!value.is_object()) {
        throw ParseError(src + ": field 'negatives_only'",
                         "expected an object of type -> [values]");
      }
      for (const auto& [tkey, list] : value.items()) {
        const auto type = ParseAttrType(tkey);
        const std::string where = src + ": field 'negatives_only." + tkey + "'";
        if (!type) throw ParseError(where, "unknown attribute type");
        if (!list.is_array()) throw ParseError(where, "expected an array");
        for (std::size_t i = 0; i < list.size(); ++i) {
          if (!list[i].is_string()) {
            throw ParseError(fmt::format("{}[{}]", where, i),
                             "expected a string");
          }
          negatives_only[static_cast<int>(*type)].insert(
              list[i].get<std::string>());
        }
      }
      continue;
    }
    const auto type = ParseAttrType(key);
    const std::string where = src + ": field '" + key + "'";
    if (!type) throw ParseError(where, "unknown attribute type");
    if (!value.is_array()) throw ParseError(where, "expected an array");
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (!value[i].is_string()) {
        throw ParseError(fmt::format("{}[{}]", where, i), "expected a string");
      }
      values[static_cast<int>(*type)].push_back(value[i].get<std::string>());
    }
    seen_type[static_cast<int>(*type)] = true;
  }
  for (AttrType t : kAllAttrTypes) {
    if (!seen_type[static_cast<int>(t)]) {
      throw ParseError(src, fmt::format("missing field '{}'", ToString(t)));
    }
  }
  return AttributeTaxonomy(std::move(version), std::move(values),
                           std::move(negatives_only));
}

AttributeTaxonomy LoadTaxonomy(const std::filesystem::path& path) {
  if (path.empty()) return DefaultTaxonomy();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseTaxonomy(buffer.str(), path.string());
}

const AttributeTaxonomy& DefaultTaxonomy() {
  static const AttributeTaxonomy* const kDefault = new AttributeTaxonomy(
      "paco-fgovd-1",
      {{
          {"black",        "light blue",   "blue",        "dark blue",
           "light brown",  "brown",        "dark brown",  "light green",
           "green",        "dark green",   "light grey",  "grey",
           "dark grey",    "light orange", "orange",      "dark orange",
           "light pink",   "pink",         "dark pink",   "light purple",
           "purple",       "dark purple",  "light red",   "red",
           "dark red",     "white",        "light yellow", "yellow",
           "dark yellow"},
          {"text", "stone", "wood", "rattan", "fabric", "crochet", "wool",
           "leather", "velvet", "metal", "paper", "plastic", "glass",
           "ceramic"},
          {"plain", "striped", "dotted", "checkered", "woven", "studded",
           "perforated", "floral", "logo"},
          {"opaque", "translucent", "transparent"},
      }},
      {{{}, {}, {"plain"}, {"opaque"}}});
  return *kDefault;
}

std::vector<AttributeSlot> AttributeSlots(const StructuredObject& obj) {
  std::vector<AttributeSlot> slots;
  for (const Attribute& a : obj.attributes) {
    slots.push_back({"", a.type, a.value});
  }
  for (const Part& p : obj.parts) {
    for (const Attribute& a : p.attributes) {
      slots.push_back({p.name, a.type, a.value});
    }
  }
  return slots;
}

namespace {

void AddUnique(std::vector<Attribute>& attrs, Attribute a) {
  if (std::find(attrs.begin(), attrs.end(), a) == attrs.end()) {
    attrs.push_back(std::move(a));
  }
}

std::vector<Attribute> CleanAttributes(const std::vector<Attribute>& in,
                                       const AttributeTaxonomy& tax,
                                       const StructuredObject& obj,
                                       std::string_view owner) {
  std::vector<Attribute> out;
  for (const Attribute& a : in) {
    std::string v = text::ToLower(text::Trim(a.value));
    if (!tax.Contains(a.type, v)) {
      throw ValidationError(fmt::format(
          "object {} ({}): value \"{}\" not in taxonomy[{}]{}", obj.object_id,
          obj.category, v, ToString(a.type),
          owner.empty() ? std::string() : fmt::format(" on part '{}'", owner)));
    }
    if (tax.IsNegativesOnly(a.type, v)) continue;
    AddUnique(out, {a.type, std::move(v)});
  }
  return out;
}

}  // namespace

StructuredObject SimplifyObject(const StructuredObject& obj,
                                const AttributeTaxonomy& tax) {
  StructuredObject out = obj;
  out.attributes = CleanAttributes(obj.attributes, tax, obj, "");
  out.parts.clear();
  for (const Part& p : obj.parts) {
    Part cleaned{p.name, CleanAttributes(p.attributes, tax, obj, p.name)};
    if (!cleaned.attributes.empty()) out.parts.push_back(std::move(cleaned));
  }

  // Dropping a part can make a slot common to the survivors, so iterate.
  while (out.parts.size() >= 2) {
    std::vector<Attribute> common = out.parts.front().attributes;
    for (std::size_t i = 1; i < out.parts.size(); ++i) {
      const auto& attrs = out.parts[i].attributes;
      std::erase_if(common, [&](const Attribute& a) {
        return std::find(attrs.begin(), attrs.end(), a) == attrs.end();
      });
    }
    if (common.empty()) break;
    for (const Attribute& a : common) AddUnique(out.attributes, a);
    for (Part& p : out.parts) {
      std::erase_if(p.attributes, [&](const Attribute& a) {
        return std::find(common.begin(), common.end(), a) != common.end();
      });
    }
    std::erase_if(out.parts, [](const Part& p) { return p.attributes.empty(); });
  }

  if (out.attributes.empty() && out.parts.empty()) {
    throw DegenerateObjectError(fmt::format(
        "object {} ({}) has no attributes after simplification",
        obj.object_id, obj.category));
  }
  return out;
}

ValidationReport ValidateObject(const StructuredObject& obj,
                                const AttributeTaxonomy& tax,
                                std::optional<ImageBounds> bounds) {
  ValidationReport report;
  auto add = [&](std::string code, std::string message) {
    report.violations.push_back({std::move(code), std::move(message)});
  };
  if (!(obj.bbox.w > 0) || !(obj.bbox.h > 0)) {
    add("degenerate bbox", fmt::format("bbox w={} h={} must be positive",
                                       obj.bbox.w, obj.bbox.h));
  }
  if (bounds) {
    const BBox& b = obj.bbox;
    if (b.x < 0 || b.y < 0 || b.x + b.w > bounds->width ||
        b.y + b.h > bounds->height) {
      add("bbox out of bounds",
          fmt::format("bbox [{}, {}, {}, {}] exceeds image {}x{}", b.x, b.y,
                      b.w, b.h, bounds->width, bounds->height));
    }
  }
  if (obj.category.empty()) add("missing category", "category is empty");
  auto check = [&](const Attribute& a, std::string_view owner) {
    const std::string where =
        owner.empty() ? "object" : fmt::format("part '{}'", owner);
    if (!tax.Contains(a.type, a.value)) {
      add(fmt::format("value not in taxonomy[{}]", ToString(a.type)),
          fmt::format("{}: \"{}\"", where, a.value));
    } else if (tax.IsNegativesOnly(a.type, a.value)) {
      add("negatives-only value",
          fmt::format("{}: \"{}\" is reserved for negatives", where, a.value));
    }
  };
  for (const Attribute& a : obj.attributes) check(a, "");
  for (const Part& p : obj.parts) {
    if (p.attributes.empty()) {
      add("empty part", fmt::format("part '{}' has no attributes", p.name));
    }
    for (const Attribute& a : p.attributes) check(a, p.name);
  }
  if (obj.attributes.empty() && obj.parts.empty()) {
    add("no attributes", "object carries no attribute");
  }
  return report;
}

}  // namespace fgovd

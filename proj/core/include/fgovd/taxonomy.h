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

#ifndef FGOVD_TAXONOMY_H_
#define FGOVD_TAXONOMY_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fgovd {

enum class AttrType { kColor = 0, kMaterial = 1, kPattern = 2, kTransparency = 3 };

inline constexpr std::array<AttrType, 4> kAllAttrTypes = {
    AttrType::kColor, AttrType::kMaterial, AttrType::kPattern,
    AttrType::kTransparency};

std::string_view ToString(AttrType type);
std::optional<AttrType> ParseAttrType(std::string_view name);

// Ordered attribute values per type. Values are stored lowercase and looked
// up case-insensitively. Values flagged negatives-only (e.g. "plain",
// "opaque") may be drawn as substitutes but are stripped from objects.
class AttributeTaxonomy {
 public:
  // Throws ValidationError on empty, duplicate or unknown negatives-only
  // values.
  AttributeTaxonomy(std::string version,
                    std::array<std::vector<std::string>, 4> values,
                    std::array<std::set<std::string>, 4> negatives_only);

  const std::string& version() const { return version_; }
  const std::vector<std::string>& values(AttrType type) const {
    return values_[static_cast<int>(type)];
  }
  const std::set<std::string>& negatives_only_values(AttrType type) const {
    return negatives_only_[static_cast<int>(type)];
  }
  bool Contains(AttrType type, std::string_view value) const;
  bool IsNegativesOnly(AttrType type, std::string_view value) const;

  // Every value of every type, longest first; ties broken alphabetically.
  const std::vector<std::string>& values_by_length() const {
    return by_length_;
  }

  // Hex digest of the canonical content; recorded in benchmark provenance.
  std::string Fingerprint() const;

  // Canonical JSON document accepted by ParseTaxonomy.
  std::string ToJson() const;

 private:
  std::string version_;
  std::array<std::vector<std::string>, 4> values_;
  std::array<std::set<std::string>, 4> negatives_only_;
  std::vector<std::string> by_length_;
};

// Built-in taxonomy: 29 colors, 14 materials, 9 patterns and 3
// transparency levels, with "plain" and "opaque" negatives-only.
const AttributeTaxonomy& DefaultTaxonomy();

// Taxonomy document:
//   {"version": "...",
//    "color": [...], "material": [...], "pattern": [...],
//    "transparency": [...],
//    "negatives_only": {"pattern": ["plain"], ...}}
// Throws ParseError (with line/field context) or ValidationError.
AttributeTaxonomy ParseTaxonomy(std::string_view document,
                                std::string_view source_name = "<taxonomy>");

// Empty path yields DefaultTaxonomy().
AttributeTaxonomy LoadTaxonomy(const std::filesystem::path& path);

struct Attribute {
  AttrType type;
  std::string value;

  friend bool operator==(const Attribute&, const Attribute&) = default;
  friend auto operator<=>(const Attribute&, const Attribute&) = default;
};

struct Part {
  std::string name;
  std::vector<Attribute> attributes;

  friend bool operator==(const Part&, const Part&) = default;
};

// Pixel box, COCO layout.
struct BBox {
  double x = 0;
  double y = 0;
  double w = 0;
  double h = 0;

  double area() const { return w * h; }
  friend bool operator==(const BBox&, const BBox&) = default;
};

using ObjectId = std::int64_t;
using ImageId = std::int64_t;

struct StructuredObject {
  ObjectId object_id = 0;
  ImageId image_id = 0;
  std::string category;
  BBox bbox;
  std::vector<Attribute> attributes;
  std::vector<Part> parts;

  friend bool operator==(const StructuredObject&,
                         const StructuredObject&) = default;
};

// One substitutable attribute unit: owner is the object itself when `part`
// is empty, otherwise the named part.
struct AttributeSlot {
  std::string part;
  AttrType type;
  std::string value;

  bool on_object() const { return part.empty(); }
  friend bool operator==(const AttributeSlot&, const AttributeSlot&) = default;
};

// Object-level slots first, then each part's slots, in document order.
std::vector<AttributeSlot> AttributeSlots(const StructuredObject& obj);

struct ImageRecord {
  ImageId image_id = 0;
  double width = 0;
  double height = 0;
  std::string file_name;
  std::vector<StructuredObject> objects;
};

// Strips negatives-only values, hoists slots shared by every part (two or
// more parts) to the object, drops parts left empty, repeating until
// nothing changes. Values are lowercased.
// Throws ValidationError for values outside the taxonomy and
// DegenerateObjectError when no attribute remains.
StructuredObject SimplifyObject(const StructuredObject& obj,
                                const AttributeTaxonomy& tax);

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

struct ImageBounds {
  double width;
  double height;
};

ValidationReport ValidateObject(const StructuredObject& obj,
                                const AttributeTaxonomy& tax,
                                std::optional<ImageBounds> bounds = {});

}  // namespace fgovd

#endif  // FGOVD_TAXONOMY_H_

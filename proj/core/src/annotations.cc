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

#include "fgovd/annotations.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "fgovd/errors.h"
#include "structure_json.h"

namespace fgovd {
namespace {

using nlohmann::ordered_json;

BBox ParseBox(const ordered_json& node, const std::string& where) {
  if (!node.is_array() || node.size() != 4) {
    throw ParseError(where, "bbox must be [x, y, w, h]");
  }
  for (const auto& v : node) {
    if (!v.is_number()) throw ParseError(where, "bbox entries must be numbers");
  }
  return {node[0].get<double>(), node[1].get<double>(), node[2].get<double>(),
          node[3].get<double>()};
}

}  // namespace

std::vector<ImageRecord> ParseAnnotations(std::string_view document,
                                          std::string_view source_name) {
  const std::string src(source_name);
  ordered_json doc;
  try {
    doc = ordered_json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(fmt::format("{}@byte {}", src, e.byte), e.what());
  }
  if (!doc.is_object() || !doc.contains("images") ||
      !doc.contains("annotations")) {
    throw ParseError(src, "expected an object with 'images' and 'annotations'");
  }

  std::map<std::int64_t, std::string> categories;
  if (doc.contains("categories")) {
    for (const auto& c : doc["categories"]) {
      categories[c.at("id").get<std::int64_t>()] = c.at("name").get<std::string>();
    }
  }

  std::vector<ImageRecord> images;
  std::map<ImageId, std::size_t> index;
  for (std::size_t i = 0; i < doc["images"].size(); ++i) {
    const auto& node = doc["images"][i];
    const std::string where = fmt::format("{}: images[{}]", src, i);
    try {
      ImageRecord img;
      img.image_id = node.at("id").get<ImageId>();
      img.width = node.at("width").get<double>();
      img.height = node.at("height").get<double>();
      img.file_name = node.value("file_name", std::string());
      if (!index.emplace(img.image_id, images.size()).second) {
        throw ParseError(where, fmt::format("duplicate image id {}", img.image_id));
      }
      images.push_back(std::move(img));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where, e.what());
    }
  }

  std::set<ObjectId> seen_objects;  // COCO ids are unique per document
  for (std::size_t i = 0; i < doc["annotations"].size(); ++i) {
    const auto& node = doc["annotations"][i];
    const std::string where = fmt::format("{}: annotations[{}]", src, i);
    try {
      StructuredObject obj;
      obj.object_id = node.at("id").get<ObjectId>();
      obj.image_id = node.at("image_id").get<ImageId>();
      if (node.contains("category")) {
        obj.category = node["category"].get<std::string>();
      } else {
        const auto cid = node.at("category_id").get<std::int64_t>();
        auto it = categories.find(cid);
        if (it == categories.end()) {
          throw ParseError(where, fmt::format("unknown category_id {}", cid));
        }
        obj.category = it->second;
      }
      obj.bbox = ParseBox(node.at("bbox"), where + ".bbox");
      obj.attributes = internal::AttributesFromJson(
          node.contains("attributes") ? node["attributes"] : ordered_json(),
          where + ".attributes");
      obj.parts = internal::PartsFromJson(
          node.contains("parts") ? node["parts"] : ordered_json(),
          where + ".parts");
      auto it = index.find(obj.image_id);
      if (it == index.end()) {
        throw ParseError(where, fmt::format("unknown image_id {}", obj.image_id));
      }
      if (!seen_objects.insert(obj.object_id).second) {
        throw ParseError(where,
                         fmt::format("duplicate object id {}", obj.object_id));
      }
      images[it->second].objects.push_back(std::move(obj));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where, e.what());
    }
  }
  return images;
}

std::vector<ImageRecord> LoadAnnotations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseAnnotations(buffer.str(), path.string());
}

std::string AnnotationsToJson(const std::vector<ImageRecord>& images) {
  ordered_json doc;
  doc["images"] = ordered_json::array();
  doc["annotations"] = ordered_json::array();
  for (const ImageRecord& img : images) {
    doc["images"].push_back({{"id", img.image_id},
                             {"width", img.width},
                             {"height", img.height},
                             {"file_name", img.file_name}});
    for (const StructuredObject& obj : img.objects) {
      ordered_json a;
      a["id"] = obj.object_id;
      a["image_id"] = obj.image_id;
      a["category"] = obj.category;
      a["bbox"] = {obj.bbox.x, obj.bbox.y, obj.bbox.w, obj.bbox.h};
      a["attributes"] = internal::AttributesToJson(obj.attributes);
      a["parts"] = internal::PartsToJson(obj.parts);
      doc["annotations"].push_back(std::move(a));
    }
  }
  return doc.dump(1) + "\n";
}

SimplifiedAnnotations SimplifyAnnotations(const std::vector<ImageRecord>& images,
                                          const AttributeTaxonomy& tax) {
  SimplifiedAnnotations out;
  for (const ImageRecord& img : images) {
    ImageRecord kept = img;
    kept.objects.clear();
    for (const StructuredObject& obj : img.objects) {
      try {
        kept.objects.push_back(SimplifyObject(obj, tax));
      } catch (const DegenerateObjectError& e) {
        out.skipped.push_back({obj.object_id, obj.image_id, e.what()});
      }
    }
    out.images.push_back(std::move(kept));
  }
  return out;
}

}  // namespace fgovd

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

#ifndef FGOVD_TESTS_SUPPORT_FIXTURES_H_
#define FGOVD_TESTS_SUPPORT_FIXTURES_H_

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "fgovd/benchkit.h"
#include "fgovd/taxonomy.h"

namespace fgovd::testing {

inline Attribute Color(std::string v) { return {AttrType::kColor, std::move(v)}; }
inline Attribute Material(std::string v) { return {AttrType::kMaterial, std::move(v)}; }
inline Attribute Pattern(std::string v) { return {AttrType::kPattern, std::move(v)}; }
inline Attribute Transparency(std::string v) {
  return {AttrType::kTransparency, std::move(v)};
}

inline StructuredObject Obj(ObjectId id, std::string category,
                            std::vector<Attribute> attrs,
                            std::vector<Part> parts = {},
                            BBox box = {10, 10, 50, 40}, ImageId image = 1) {
  StructuredObject o;
  o.object_id = id;
  o.image_id = image;
  o.category = std::move(category);
  o.bbox = box;
  o.attributes = std::move(attrs);
  o.parts = std::move(parts);
  return o;
}

// Hand-built group for metric tests: the vocabulary is a positive plus
// `negatives` placeholder captions.
struct GroupSpec {
  ImageId image;
  std::vector<std::pair<ObjectId, BBox>> members;
  std::string positive;
  std::size_t negatives = 5;
};

inline Benchmark MakeBenchmark(const std::vector<GroupSpec>& specs) {
  Benchmark b;
  b.name = "fixture";
  for (const GroupSpec& s : specs) {
    ImageRecord* img = nullptr;
    for (auto& i : b.images) {
      if (i.image_id == s.image) img = &i;
    }
    if (!img) {
      b.images.push_back({s.image, 1000, 1000, "", {}});
      img = &b.images.back();
    }
    ObjectGroup g;
    g.group_id = static_cast<GroupId>(b.groups.size());
    g.image_id = s.image;
    for (const auto& [id, box] : s.members) {
      img->objects.push_back(Obj(id, "thing", {Color("red")}, {}, box, s.image));
      g.object_ids.push_back(id);
    }
    g.vocabulary.positive.text = s.positive;
    for (std::size_t k = 0; k < s.negatives; ++k) {
      g.vocabulary.negatives.push_back(s.positive + " negative " + std::to_string(k));
    }
    b.groups.push_back(std::move(g));
  }
  return b;
}

}  // namespace fgovd::testing

#endif  // FGOVD_TESTS_SUPPORT_FIXTURES_H_

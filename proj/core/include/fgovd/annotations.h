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

#ifndef FGOVD_ANNOTATIONS_H_
#define FGOVD_ANNOTATIONS_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fgovd/taxonomy.h"

namespace fgovd {

// COCO-style annotation document extended with per-annotation attributes
// and parts. See docs/annotation_format.md.
std::vector<ImageRecord> ParseAnnotations(std::string_view document,
                                          std::string_view source_name);
std::vector<ImageRecord> LoadAnnotations(const std::filesystem::path& path);
std::string AnnotationsToJson(const std::vector<ImageRecord>& images);

struct SkippedObject {
  ObjectId object_id;
  ImageId image_id;
  std::string reason;
};

struct SimplifiedAnnotations {
  std::vector<ImageRecord> images;
  std::vector<SkippedObject> skipped;
};

// Simplifies every object. Degenerate objects are skipped and reported;
// unknown attribute values throw ValidationError.
SimplifiedAnnotations SimplifyAnnotations(const std::vector<ImageRecord>& images,
                                          const AttributeTaxonomy& tax);

}  // namespace fgovd

#endif  // FGOVD_ANNOTATIONS_H_

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

#ifndef FGOVD_SRC_STRUCTURE_JSON_H_
#define FGOVD_SRC_STRUCTURE_JSON_H_

#include <string>

#include "json.hpp"

#include "fgovd/taxonomy.h"

// Shared JSON encoding of attribute maps, used by the annotation, example
// and benchmark documents.
namespace fgovd::internal {

nlohmann::ordered_json AttributesToJson(const std::vector<Attribute>& attrs);
std::vector<Attribute> AttributesFromJson(const nlohmann::ordered_json& node,
                                          const std::string& where);
nlohmann::ordered_json PartsToJson(const std::vector<Part>& parts);
std::vector<Part> PartsFromJson(const nlohmann::ordered_json& node,
                                const std::string& where);

}  // namespace fgovd::internal

#endif  // FGOVD_SRC_STRUCTURE_JSON_H_

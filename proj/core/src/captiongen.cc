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

#include "fgovd/captiongen.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "fgovd/errors.h"
#include "fgovd/text.h"
#include "structure_json.h"

namespace fgovd {
namespace {

using nlohmann::ordered_json;

bool MentionsName(std::string_view caption, const std::string& name) {
  if (name.empty()) return true;
  // Generated captions routinely pluralize parts ("four metal legs").
  return text::FindWord(caption, name) || text::FindWord(caption, name + "s") ||
         text::FindWord(caption, name + "es");
}

bool IsLegalCaptionChar(char c) {
  const unsigned char u = static_cast<unsigned char>(c);
  if (u >= 0x80) return false;
  return std::isalpha(u) || c == ' ' || c == ',' || c == '.' || c == '\'' ||
         c == '-' || c == '"';
}

void ReplaceAll(std::string& s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

std::string JoinAnd(const std::vector<std::string>& items,
                    std::string_view sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += (i + 1 == items.size()) ? " and " : std::string(sep);
    out += items[i];
  }
  return out;
}

std::vector<std::string> ValuesOf(const std::vector<Attribute>& attrs,
                                  AttrType type) {
  std::vector<std::string> v;
  for (const Attribute& a : attrs) {
    if (a.type == type) v.push_back(a.value);
  }
  return v;
}

// "transparent light blue striped" style adjective run. Materials are
// only included when `with_material` is set.
std::string AdjectiveRun(const std::vector<Attribute>& attrs,
                         bool with_material) {
  std::vector<std::string> words;
  for (AttrType t : {AttrType::kTransparency, AttrType::kColor,
                     AttrType::kPattern, AttrType::kMaterial}) {
    if (t == AttrType::kMaterial && !with_material) continue;
    const auto values = ValuesOf(attrs, t);
    if (!values.empty()) words.push_back(JoinAnd(values, " and "));
  }
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace

std::string_view ToString(Role role) {
  switch (role) {
    case Role::kSystem:
      return "system";
    case Role::kUser:
      return "user";
    case Role::kAssistant:
      return "assistant";
  }
  return "user";
}

std::string_view ToString(Provenance p) {
  switch (p) {
    case Provenance::kGenerated:
      return "generated";
    case Provenance::kProvided:
      return "provided";
    case Provenance::kPropagated:
      return "propagated";
  }
  return "generated";
}

std::optional<Provenance> ParseProvenance(std::string_view name) {
  for (Provenance p :
       {Provenance::kGenerated, Provenance::kProvided, Provenance::kPropagated}) {
    if (ToString(p) == name) return p;
  }
  return std::nullopt;
}

std::size_t PromptTranscript::answers_after_query() const {
  if (!query_index_) return 0;
  std::size_t n = 0;
  for (std::size_t i = *query_index_ + 1; i < turns_.size(); ++i) {
    if (turns_[i].role == Role::kAssistant) ++n;
  }
  return n;
}

std::string DisplayName(std::string_view name) {
  std::string out(name);
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

std::string SerializeStructure(const StructuredObject& obj) {
  ordered_json node;
  node["object"] = DisplayName(obj.category);
  node["attributes"] = internal::AttributesToJson(obj.attributes);
  ordered_json parts = ordered_json::object();
  for (const Part& p : obj.parts) {
    parts[DisplayName(p.name)] = internal::AttributesToJson(p.attributes);
  }
  node["parts"] = parts;
  return node.dump();
}

const std::vector<InContextExample>& DefaultInContextExamples() {
  static const auto* const kExamples = [] {
    auto* v = new std::vector<InContextExample>;
    auto make = [](std::string category, std::vector<Attribute> attrs,
                   std::vector<Part> parts, std::string caption) {
      StructuredObject o;
      o.category = std::move(category);
      o.attributes = std::move(attrs);
      o.parts = std::move(parts);
      return InContextExample{std::move(o), std::move(caption)};
    };
    v->push_back(make("mug", {{AttrType::kColor, "white"}},
                      {{"handle", {{AttrType::kColor, "black"}}}},
                      "A white mug with a black handle."));
    v->push_back(make("basket",
                      {{AttrType::kColor, "light brown"},
                       {AttrType::kPattern, "woven"},
                       {AttrType::kMaterial, "rattan"}},
                      {}, "A light brown woven basket made of rattan."));
    v->push_back(make(
        "bottle",
        {{AttrType::kColor, "green"}, {AttrType::kTransparency, "translucent"}},
        {{"cap", {{AttrType::kColor, "white"}, {AttrType::kMaterial, "plastic"}}}},
        "A translucent green bottle with a white plastic cap."));
    v->push_back(make(
        "sofa", {{AttrType::kMaterial, "leather"}},
        {{"seat", {{AttrType::kColor, "dark grey"}}},
         {"pillow", {{AttrType::kColor, "yellow"}, {AttrType::kPattern, "dotted"}}}},
        "A leather sofa with a dark grey seat and a yellow dotted pillow."));
    return v;
  }();
  return *kExamples;
}

std::vector<InContextExample> LoadInContextExamples(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  ordered_json doc;
  try {
    doc = ordered_json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(fmt::format("{}@byte {}", path.string(), e.byte), e.what());
  }
  if (!doc.is_array()) throw ParseError(path.string(), "expected an array");
  std::vector<InContextExample> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string where = fmt::format("{}[{}]", path.string(), i);
    const auto& node = doc[i];
    try {
      InContextExample ex;
      ex.object.category = node.at("category").get<std::string>();
      ex.object.attributes = internal::AttributesFromJson(
          node.value("attributes", ordered_json()), where + ".attributes");
      ex.object.parts = internal::PartsFromJson(
          node.value("parts", ordered_json()), where + ".parts");
      ex.caption = node.at("caption").get<std::string>();
      out.push_back(std::move(ex));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where, e.what());
    }
  }
  return out;
}

const PromptStyle& DefaultPromptStyle() {
  static const PromptStyle kStyle{
      "You write a single natural language caption for an object described "
      "by a JSON structure. Mention the object, every part and every "
      "attribute given, and nothing else. Answer with the caption only.",
      "Now forget the objects above: I will describe a new, unrelated "
      "object. Are you ready?",
      "Yes, I am ready. Please give me the new object.",
  };
  return kStyle;
}

PromptTranscript BuildPrompt(const StructuredObject& obj,
                             std::span<const InContextExample> examples,
                             const PromptStyle& style) {
  if (examples.size() != kInContextExampleCount) {
    throw ConfigError(fmt::format("prompt needs exactly {} in-context examples, "
                                  "got {}",
                                  kInContextExampleCount, examples.size()));
  }
  PromptTranscript t;
  t.Append(Role::kSystem, style.system);
  for (const InContextExample& ex : examples) {
    t.Append(Role::kUser, SerializeStructure(ex.object));
    t.Append(Role::kAssistant, ex.caption);
  }
  t.Append(Role::kUser, style.warmup_question);
  t.Append(Role::kAssistant, style.warmup_answer);
  t.Append(Role::kUser, SerializeStructure(obj));
  t.MarkQuery();
  return t;
}

const FollowupTable& DefaultFollowups() {
  static const FollowupTable kTable = {
      "Your answer was too long. Create only one sentence for the object that "
      "describes what the object looks like considering its attributes",
      "Your answer is a definition of what the object is. Give me a caption "
      "that only describes the object and its attributes",
      "You did not specify that you are describing a {object_name}. "
      "Reformulate the caption with this addition",
      "You did not specify that the {object_name} has a {part_name}. "
      "Reformulate the caption with this addition",
      "Could you specify that the {attribute_type} of the {object_name} is "
      "{attribute_value}?",
      "Do not list the elements of the object. Summarize the description of "
      "the object in a natural language caption",
      "You gave me more than one caption. Summarize them in only one caption",
      "Your answer contains a number not present in the JSON. Create a new "
      "caption considering only the attributes I gave you and without adding "
      "information",
      "Answer is not complete. Write a complete caption",
      "Illegal characters in the caption. Remove them",
      "Ensure that the attributes are described using 'and' instead of 'or' "
      "to correctly represent all the specified attributes.",
      "You used the word 'single'; reformulate the caption without it",
  };
  return kTable;
}

std::string FormatFollowup(const FollowupTable& table, const Issue& issue) {
  std::string out = table[static_cast<std::size_t>(issue.code)];
  ReplaceAll(out, "{object_name}", issue.object_name);
  ReplaceAll(out, "{part_name}", issue.part_name);
  ReplaceAll(out, "{attribute_type}", issue.attribute_type);
  ReplaceAll(out, "{attribute_value}", issue.attribute_value);
  return out;
}

std::optional<Issue> CheckCaption(std::string_view caption,
                                  const StructuredObject& obj,
                                  const CheckOptions& options) {
  const std::string_view t = text::Trim(caption);
  const std::string object_name = DisplayName(obj.category);
  auto issue = [&](IssueCode code) {
    return Issue{code, object_name, "", "", ""};
  };
  const auto quotes = std::count(t.begin(), t.end(), '"');

  if (text::WordCount(t) > options.max_words) return issue(IssueCode::kTooLong);
  if (text::ContainsIgnoreCase(t, " is a ")) return issue(IssueCode::kDefinition);
  if (!MentionsName(t, object_name)) return issue(IssueCode::kMissingObject);
  for (const Part& p : obj.parts) {
    if (!MentionsName(t, DisplayName(p.name))) {
      Issue i = issue(IssueCode::kMissingPart);
      i.part_name = DisplayName(p.name);
      return i;
    }
  }
  for (const AttributeSlot& s : AttributeSlots(obj)) {
    if (!text::FindWord(t, s.value) && !text::FindWord(t, s.value + "en")) {
      Issue i = issue(IssueCode::kMissingAttribute);
      if (!s.on_object()) {
        i.object_name = DisplayName(s.part);
        i.part_name = DisplayName(s.part);
      }
      i.attribute_type = std::string(ToString(s.type));
      i.attribute_value = s.value;
      return i;
    }
  }
  if (t.find(':') != std::string_view::npos) return issue(IssueCode::kColon);
  if (quotes > 2) return issue(IssueCode::kMultipleCaptions);
  if (std::any_of(t.begin(), t.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c)) != 0;
      })) {
    return issue(IssueCode::kContainsNumber);
  }
  if (quotes == 1) return issue(IssueCode::kIncomplete);
  if (!std::all_of(t.begin(), t.end(), IsLegalCaptionChar)) {
    return issue(IssueCode::kIllegalCharacter);
  }
  if (text::ContainsIgnoreCase(t, " or ")) return issue(IssueCode::kUsesOr);
  if (text::FindWord(t, "single")) return issue(IssueCode::kUsesSingle);
  return std::nullopt;
}

CaptionOutcome CreateCaption(const StructuredObject& obj,
                             const FollowupTable& followups,
                             CompletionClient& client,
                             std::span<const InContextExample> examples,
                             const GenerationOptions& options,
                             const PromptStyle& style) {
  if (options.n_iterations < 1) {
    throw ConfigError("n_iterations must be at least 1");
  }
  CaptionOutcome out;
  out.transcript = BuildPrompt(obj, examples, style);
  for (std::size_t i = 0; i < options.n_iterations; ++i) {
    const std::string answer(text::Trim(client.Complete(out.transcript)));
    out.transcript.Append(Role::kAssistant, answer);
    auto issue = CheckCaption(answer, obj, options.check);
    out.attempts.push_back({answer, issue});
    if (!issue) {
      std::string_view accepted = answer;
      if (accepted.size() >= 2 && accepted.front() == '"' &&
          accepted.back() == '"') {
        accepted = text::Trim(accepted.substr(1, accepted.size() - 2));
      }
      out.caption = Caption{std::string(accepted), obj.object_id, obj.image_id,
                            Provenance::kGenerated, false};
      return out;
    }
    out.transcript.Append(Role::kUser, FormatFollowup(followups, *issue));
  }
  return out;
}

CaptionMap PropagateCaptions(const ImageRecord& image,
                             const CaptionMap& captions) {
  CaptionMap out = captions;
  std::vector<const StructuredObject*> objects;
  for (const auto& o : image.objects) objects.push_back(&o);
  std::sort(objects.begin(), objects.end(),
            [](const auto* a, const auto* b) { return a->object_id < b->object_id; });

  std::map<std::string, const Caption*> source_by_category;
  for (const StructuredObject* o : objects) {
    auto it = captions.find(o->object_id);
    if (it != captions.end()) source_by_category.try_emplace(o->category, &it->second);
  }
  for (const StructuredObject* o : objects) {
    if (out.contains(o->object_id)) continue;
    auto src = source_by_category.find(o->category);
    if (src == source_by_category.end()) continue;
    Caption c = *src->second;
    c.provenance = Provenance::kPropagated;
    c.review = true;
    c.image_id = image.image_id;
    out.emplace(o->object_id, std::move(c));
  }
  return out;
}

std::string RenderTemplateCaption(const StructuredObject& obj) {
  std::string out = "A";
  const std::string lead = AdjectiveRun(obj.attributes, /*with_material=*/false);
  if (!lead.empty()) out += " " + lead;
  out += " " + DisplayName(obj.category);
  const auto materials = ValuesOf(obj.attributes, AttrType::kMaterial);
  if (!materials.empty()) out += " made of " + JoinAnd(materials, " and ");
  if (!obj.parts.empty()) {
    std::vector<std::string> parts;
    for (const Part& p : obj.parts) {
      const std::string adj = AdjectiveRun(p.attributes, /*with_material=*/true);
      parts.push_back("a " + (adj.empty() ? "" : adj + " ") + DisplayName(p.name));
    }
    out += materials.empty() ? " with " : ", with ";
    out += JoinAnd(parts);
  }
  return out + ".";
}

}  // namespace fgovd

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

#ifndef FGOVD_CAPTIONGEN_H_
#define FGOVD_CAPTIONGEN_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fgovd/taxonomy.h"

namespace fgovd {

enum class Role { kSystem, kUser, kAssistant };
std::string_view ToString(Role role);

struct Turn {
  Role role;
  std::string text;

  friend bool operator==(const Turn&, const Turn&) = default;
};

// Append-only chat transcript. Turns are never modified once appended.
// `query_index` points at the user turn carrying the queried object's
// structure.
class PromptTranscript {
 public:
  void Append(Role role, std::string text) {
    turns_.push_back({role, std::move(text)});
  }
  void MarkQuery() { query_index_ = turns_.size() - 1; }

  const std::vector<Turn>& turns() const { return turns_; }
  std::size_t size() const { return turns_.size(); }
  std::optional<std::size_t> query_index() const { return query_index_; }

  // Assistant turns after the query, i.e. how many answers were already
  // produced for it.
  std::size_t answers_after_query() const;

  friend bool operator==(const PromptTranscript&,
                         const PromptTranscript&) = default;

 private:
  std::vector<Turn> turns_;
  std::optional<std::size_t> query_index_;
};

// Text-completion backend. Implementations: HTTP endpoints and a
// deterministic replay backend (completion_client.h).
class CompletionClient {
 public:
  virtual ~CompletionClient() = default;
  // Returns the assistant answer to the transcript's last user turn.
  // Throws BackendError on transport failure.
  virtual std::string Complete(const PromptTranscript& transcript) = 0;
  virtual std::string BackendId() const = 0;
};

// Compact JSON rendering of category, attributes and parts, as shown to the
// model.
std::string SerializeStructure(const StructuredObject& obj);

// Category names may use underscores ("trash_can"); captions use spaces.
std::string DisplayName(std::string_view name);

struct InContextExample {
  StructuredObject object;
  std::string caption;
};

// Four hand-written structure/caption pairs.
const std::vector<InContextExample>& DefaultInContextExamples();

// Example file: JSON array of {"category", "attributes", "parts", "caption"}
// with the same attribute encoding as the annotation format.
std::vector<InContextExample> LoadInContextExamples(
    const std::filesystem::path& path);

struct PromptStyle {
  std::string system;
  std::string warmup_question;
  std::string warmup_answer;
};
const PromptStyle& DefaultPromptStyle();

inline constexpr std::size_t kInContextExampleCount = 4;

// system, 4 x (user structure, assistant caption), warm-up question and its
// canned answer, then the query turn. Throws ConfigError unless exactly four
// examples are given.
PromptTranscript BuildPrompt(const StructuredObject& obj,
                             std::span<const InContextExample> examples,
                             const PromptStyle& style = DefaultPromptStyle());

// Failure conditions of a generated caption and the follow-up asked for
// each. Numbering is also the check precedence.
enum class IssueCode {
  kTooLong = 0,
  kDefinition = 1,
  kMissingObject = 2,
  kMissingPart = 3,
  kMissingAttribute = 4,
  kColon = 5,
  kMultipleCaptions = 6,
  kContainsNumber = 7,
  kIncomplete = 8,
  kIllegalCharacter = 9,
  kUsesOr = 10,
  kUsesSingle = 11,
};
inline constexpr std::size_t kIssueCodeCount = 12;

struct Issue {
  IssueCode code;
  // Template fillers; empty when the condition has none.
  std::string object_name;
  std::string part_name;
  std::string attribute_type;
  std::string attribute_value;
};

// Follow-up prompt per issue code. Templates may contain {object_name},
// {part_name}, {attribute_type} and {attribute_value}.
using FollowupTable = std::array<std::string, kIssueCodeCount>;
const FollowupTable& DefaultFollowups();
std::string FormatFollowup(const FollowupTable& table, const Issue& issue);

struct CheckOptions {
  std::size_t max_words = 60;
};

// First failing condition in key order, or nullopt for an acceptable
// caption.
std::optional<Issue> CheckCaption(std::string_view caption,
                                  const StructuredObject& obj,
                                  const CheckOptions& options = {});

enum class Provenance { kGenerated, kProvided, kPropagated };
std::string_view ToString(Provenance p);
std::optional<Provenance> ParseProvenance(std::string_view name);

struct Caption {
  std::string text;
  ObjectId source_object_id = 0;
  ImageId image_id = 0;
  Provenance provenance = Provenance::kGenerated;
  // Set on captions that need a human look (e.g. propagated ones).
  bool review = false;

  friend bool operator==(const Caption&, const Caption&) = default;
};

using CaptionMap = std::map<ObjectId, Caption>;

struct Attempt {
  std::string text;
  std::optional<Issue> issue;
};

struct CaptionOutcome {
  std::optional<Caption> caption;
  PromptTranscript transcript;
  std::vector<Attempt> attempts;
};

struct GenerationOptions {
  std::size_t n_iterations = 1;
  CheckOptions check;
};

// Iterative prompting: ask, check, and on failure append the answer and the
// matching follow-up before asking again, at most n_iterations times.
CaptionOutcome CreateCaption(const StructuredObject& obj,
                             const FollowupTable& followups,
                             CompletionClient& client,
                             std::span<const InContextExample> examples,
                             const GenerationOptions& options = {},
                             const PromptStyle& style = DefaultPromptStyle());

// Uncaptioned objects take the caption of the lowest-id captioned object of
// the same category in the image, flagged as propagated for review.
CaptionMap PropagateCaptions(const ImageRecord& image,
                             const CaptionMap& captions);

// Rule-based caption that mentions every attribute and part verbatim.
// Used by the replay backend's synthesize mode and by synthetic corpora.
std::string RenderTemplateCaption(const StructuredObject& obj);

}  // namespace fgovd

#endif  // FGOVD_CAPTIONGEN_H_

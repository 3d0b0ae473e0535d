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

#ifndef FGOVD_NEGATIVES_H_
#define FGOVD_NEGATIVES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fgovd/rng.h"
#include "fgovd/taxonomy.h"

namespace fgovd {

enum class Strategy { kTrivial, kDifficulty, kAttribute };

// How a benchmark's negative captions are produced.
struct NegativeSpec {
  Strategy strategy = Strategy::kDifficulty;
  int k = 1;                         // difficulty: attributes replaced
  AttrType attr_type = AttrType::kColor;  // attribute: type replaced
  std::size_t count = 10;            // N, negatives per positive
  std::uint64_t seed = 0;

  static NegativeSpec Trivial(std::size_t n, std::uint64_t seed = 0);
  static NegativeSpec Difficulty(int k, std::size_t n, std::uint64_t seed = 0);
  static NegativeSpec Attribute(AttrType type, std::size_t n,
                                std::uint64_t seed = 0);

  // "hard"|"medium"|"easy"|"trivial"|"color"|"material"|"pattern"|
  // "transparency". Throws ConfigError otherwise.
  static NegativeSpec FromName(std::string_view name, std::size_t n,
                               std::uint64_t seed = 0);

  // Benchmark name ("hard" for k=1, "medium" for k=2, "easy" for k=3, ...).
  std::string Name() const;

  // Throws ConfigError when k is outside {1,2,3} or N is zero.
  void Validate() const;

  // N capped by the alternatives the taxonomy offers for a single slot of
  // the substituted type (2 for transparency, 8 for pattern).
  std::size_t EffectiveCount(const AttributeTaxonomy& tax) const;
};

// The eight benchmark names in table order.
const std::vector<std::string>& BenchmarkNames();

struct SubstitutionRecord {
  AttributeSlot slot;
  std::string replacement;    // taxonomy value substituted in
  std::size_t offset = 0;     // span in the positive caption
  std::size_t length = 0;
  std::string original_text;  // caption text at the span, verbatim
  std::string inserted_text;  // text written in place of the span

  friend bool operator==(const SubstitutionRecord&,
                         const SubstitutionRecord&) = default;
};

struct Negative {
  std::string text;
  std::vector<SubstitutionRecord> records;
};

struct NegativeSet {
  std::vector<Negative> negatives;
  // Fewer than the requested number could be produced.
  bool short_set = false;
};

struct Mention {
  std::size_t offset;
  std::size_t length;
  std::string value;  // lowercase taxonomy value
};

// Attribute-value mentions in a caption, claimed longest value first with
// word boundaries, so "dark blue" is one mention and not a "blue" one.
// Occurrences of `reserved` names (category, parts) are never claimed.
std::vector<Mention> FindValueMentions(std::string_view caption,
                                       const AttributeTaxonomy& tax,
                                       std::span<const std::string> reserved = {});

// Span of a slot's value in the caption: the k-th mention of that value,
// where k - 1 earlier slots of the object share the same value string.
std::optional<Mention> LocateSlot(std::string_view caption,
                                  const StructuredObject& obj,
                                  const AttributeSlot& slot,
                                  const AttributeTaxonomy& tax);

// Replaces the slot's occurrence with new_value, keeping a leading capital.
// Returns nullopt when the slot cannot be located in the caption.
std::optional<Negative> SubstituteAttribute(std::string_view caption,
                                            const StructuredObject& obj,
                                            const AttributeSlot& slot,
                                            std::string_view new_value,
                                            const AttributeTaxonomy& tax);

// Applies non-overlapping records (spans in `source`) in one pass.
std::string ApplySubstitutions(std::string_view source,
                               std::span<const SubstitutionRecord> records);

struct GenerationLimits {
  // Draw budget per requested negative before giving up with a short set.
  std::size_t draws_per_negative = 100;
};

// Each negative replaces k distinct locatable slots, each by a different
// value of its type. Throws InsufficientAttributesError when fewer than k
// slots are locatable.
NegativeSet GenerateDifficultyNegatives(std::string_view caption,
                                        const StructuredObject& obj, int k,
                                        std::size_t n,
                                        const AttributeTaxonomy& tax, Rng& rng,
                                        const GenerationLimits& limits = {});

// Each negative replaces exactly one slot of `type`; values are drawn
// without replacement per slot, negatives-only values included. Throws
// NotApplicableError when no slot of that type is locatable.
NegativeSet GenerateAttributeNegatives(std::string_view caption,
                                       const StructuredObject& obj,
                                       AttrType type, std::size_t n,
                                       const AttributeTaxonomy& tax, Rng& rng);

struct PoolCaption {
  std::string text;
  std::string category;
};

// N distinct captions of other objects, drawn uniformly. Same-category
// captions are excluded unless `same_class_ok`.
std::vector<std::string> GenerateTrivialNegatives(
    const StructuredObject& target, std::string_view positive,
    std::span<const PoolCaption> pool, std::size_t n, Rng& rng,
    bool same_class_ok, bool* short_set = nullptr);

}  // namespace fgovd

#endif  // FGOVD_NEGATIVES_H_

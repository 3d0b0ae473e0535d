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

#include "fgovd/negatives.h"

#include <algorithm>
#include <cctype>
#include <set>

#include <fmt/format.h>

#include "fgovd/captiongen.h"
#include "fgovd/errors.h"
#include "fgovd/text.h"

namespace fgovd {

NegativeSpec NegativeSpec::Trivial(std::size_t n, std::uint64_t seed) {
  NegativeSpec s;
  s.strategy = Strategy::kTrivial;
  s.count = n;
  s.seed = seed;
  return s;
}

NegativeSpec NegativeSpec::Difficulty(int k, std::size_t n, std::uint64_t seed) {
  NegativeSpec s;
  s.strategy = Strategy::kDifficulty;
  s.k = k;
  s.count = n;
  s.seed = seed;
  return s;
}

NegativeSpec NegativeSpec::Attribute(AttrType type, std::size_t n,
                                     std::uint64_t seed) {
  NegativeSpec s;
  s.strategy = Strategy::kAttribute;
  s.attr_type = type;
  s.count = n;
  s.seed = seed;
  return s;
}

NegativeSpec NegativeSpec::FromName(std::string_view name, std::size_t n,
                                    std::uint64_t seed) {
  const std::string lower = text::ToLower(name);
  if (lower == "hard") return Difficulty(1, n, seed);
  if (lower == "medium" || lower == "normal") return Difficulty(2, n, seed);
  if (lower == "easy") return Difficulty(3, n, seed);
  if (lower == "trivial") return Trivial(n, seed);
  if (auto type = ParseAttrType(lower)) return Attribute(*type, n, seed);
  throw ConfigError(fmt::format("unknown strategy '{}'", name));
}

std::string NegativeSpec::Name() const {
  switch (strategy) {
    case Strategy::kTrivial:
      return "trivial";
    case Strategy::kAttribute:
      return std::string(ToString(attr_type));
    case Strategy::kDifficulty:
      switch (k) {
        case 1:
          return "hard";
        case 2:
          return "medium";
        case 3:
          return "easy";
        default:
          return fmt::format("difficulty-k{}", k);
      }
  }
  return "unknown";
}

void NegativeSpec::Validate() const {
  if (count == 0) throw ConfigError("negative count N must be at least 1");
  if (strategy == Strategy::kDifficulty && (k < 1 || k > 3)) {
    throw ConfigError(fmt::format("difficulty k must be 1, 2 or 3, got {}", k));
  }
}

std::size_t NegativeSpec::EffectiveCount(const AttributeTaxonomy& tax) const {
  if (strategy != Strategy::kAttribute) return count;
  const std::size_t alternatives = tax.values(attr_type).size() - 1;
  return std::min(count, alternatives);
}

const std::vector<std::string>& BenchmarkNames() {
  static const std::vector<std::string> kNames = {
      "hard",  "medium",   "easy",    "trivial",
      "color", "material", "pattern", "transparency"};
  return kNames;
}

std::vector<Mention> FindValueMentions(std::string_view caption,
                                       const AttributeTaxonomy& tax,
                                       std::span<const std::string> reserved) {
  std::vector<bool> claimed(caption.size(), false);
  auto free_span = [&](std::size_t off, std::size_t len) {
    return std::none_of(claimed.begin() + off, claimed.begin() + off + len,
                        [](bool b) { return b; });
  };
  auto claim = [&](std::size_t off, std::size_t len) {
    std::fill(claimed.begin() + off, claimed.begin() + off + len, true);
  };
  for (const std::string& name : reserved) {
    for (std::size_t off : text::FindAllWords(caption, name)) {
      claim(off, name.size());
    }
  }
  std::vector<Mention> mentions;
  for (const std::string& value : tax.values_by_length()) {
    // Adjectival material forms ("wooden", "woolen") count as mentions.
    for (const std::string& form : {value + "en", value}) {
      for (std::size_t off : text::FindAllWords(caption, form)) {
        if (!free_span(off, form.size())) continue;
        claim(off, form.size());
        mentions.push_back({off, form.size(), value});
      }
    }
  }
  std::sort(mentions.begin(), mentions.end(),
            [](const Mention& a, const Mention& b) { return a.offset < b.offset; });
  return mentions;
}

namespace {

std::vector<std::string> ReservedNames(const StructuredObject& obj) {
  std::vector<std::string> names = {DisplayName(obj.category)};
  for (const Part& p : obj.parts) names.push_back(DisplayName(p.name));
  return names;
}

std::optional<Mention> LocateWithMentions(const std::vector<Mention>& mentions,
                                          const std::vector<AttributeSlot>& slots,
                                          const AttributeSlot& slot) {
  auto it = std::find(slots.begin(), slots.end(), slot);
  if (it == slots.end()) return std::nullopt;
  const std::string value = text::ToLower(slot.value);
  const auto ordinal = std::count_if(slots.begin(), it, [&](const AttributeSlot& s) {
    return text::ToLower(s.value) == value;
  });
  std::ptrdiff_t seen = 0;
  for (const Mention& m : mentions) {
    if (m.value != value) continue;
    if (seen++ == ordinal) return m;
  }
  return std::nullopt;
}

SubstitutionRecord MakeRecord(std::string_view caption, const AttributeSlot& slot,
                              const Mention& m, std::string_view new_value) {
  SubstitutionRecord r;
  r.slot = slot;
  r.replacement = std::string(new_value);
  r.offset = m.offset;
  r.length = m.length;
  r.original_text = std::string(caption.substr(m.offset, m.length));
  r.inserted_text = r.replacement;
  if (!r.original_text.empty() && !r.inserted_text.empty() &&
      std::isupper(static_cast<unsigned char>(r.original_text[0]))) {
    r.inserted_text[0] = static_cast<char>(
        std::toupper(static_cast<unsigned char>(r.inserted_text[0])));
  }
  return r;
}

struct LocatedSlot {
  AttributeSlot slot;
  Mention mention;
};

std::vector<LocatedSlot> LocateAll(std::string_view caption,
                                   const StructuredObject& obj,
                                   const AttributeTaxonomy& tax) {
  const auto reserved = ReservedNames(obj);
  const auto mentions = FindValueMentions(caption, tax, reserved);
  const auto slots = AttributeSlots(obj);
  std::vector<LocatedSlot> out;
  for (const AttributeSlot& s : slots) {
    if (auto m = LocateWithMentions(mentions, slots, s)) out.push_back({s, *m});
  }
  return out;
}

// Values of the slot's type that its owner (object or part) does not
// already carry. Swapping in one it has would describe the object truly.
std::vector<std::string> Alternatives(const AttributeTaxonomy& tax,
                                      const StructuredObject& obj,
                                      const AttributeSlot& slot) {
  std::set<std::string> held;
  for (const AttributeSlot& s : AttributeSlots(obj)) {
    if (s.part == slot.part && s.type == slot.type) held.insert(text::ToLower(s.value));
  }
  std::vector<std::string> alts;
  for (const std::string& v : tax.values(slot.type)) {
    if (!held.contains(v)) alts.push_back(v);
  }
  return alts;
}

// Two substitutions on the same owner and type must not write the same value.
bool DistinctPerOwner(const std::vector<SubstitutionRecord>& records) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      if (records[i].slot.part == records[j].slot.part &&
          records[i].slot.type == records[j].slot.type &&
          records[i].replacement == records[j].replacement) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

std::optional<Mention> LocateSlot(std::string_view caption,
                                  const StructuredObject& obj,
                                  const AttributeSlot& slot,
                                  const AttributeTaxonomy& tax) {
  const auto reserved = ReservedNames(obj);
  return LocateWithMentions(FindValueMentions(caption, tax, reserved),
                            AttributeSlots(obj), slot);
}

std::optional<Negative> SubstituteAttribute(std::string_view caption,
                                            const StructuredObject& obj,
                                            const AttributeSlot& slot,
                                            std::string_view new_value,
                                            const AttributeTaxonomy& tax) {
  const auto m = LocateSlot(caption, obj, slot, tax);
  if (!m) return std::nullopt;
  Negative neg;
  neg.records.push_back(MakeRecord(caption, slot, *m, text::ToLower(new_value)));
  neg.text = ApplySubstitutions(caption, neg.records);
  return neg;
}

std::string ApplySubstitutions(std::string_view source,
                               std::span<const SubstitutionRecord> records) {
  std::vector<const SubstitutionRecord*> ordered;
  for (const auto& r : records) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [](const auto* a, const auto* b) { return a->offset < b->offset; });
  std::string out;
  std::size_t cursor = 0;
  for (const SubstitutionRecord* r : ordered) {
    if (r->offset < cursor || r->offset + r->length > source.size()) {
      throw std::invalid_argument("overlapping or out-of-range substitution");
    }
    out.append(source.substr(cursor, r->offset - cursor));
    out.append(r->inserted_text);
    cursor = r->offset + r->length;
  }
  out.append(source.substr(cursor));
  return out;
}

NegativeSet GenerateDifficultyNegatives(std::string_view caption,
                                        const StructuredObject& obj, int k,
                                        std::size_t n,
                                        const AttributeTaxonomy& tax, Rng& rng,
                                        const GenerationLimits& limits) {
  if (k < 1) throw ConfigError("k must be at least 1");
  const auto located = LocateAll(caption, obj, tax);
  if (located.size() < static_cast<std::size_t>(k)) {
    throw InsufficientAttributesError(fmt::format(
        "object {} has {} locatable attribute(s), {} required", obj.object_id,
        located.size(), k));
  }
  std::vector<std::vector<std::string>> alternatives;
  for (const auto& l : located) alternatives.push_back(Alternatives(tax, obj, l.slot));

  NegativeSet out;
  std::set<std::string> seen = {std::string(caption)};
  const std::size_t budget = limits.draws_per_negative * n;
  for (std::size_t draw = 0; draw < budget && out.negatives.size() < n; ++draw) {
    Negative neg;
    for (std::size_t idx :
         rng.SampleWithoutReplacement(located.size(), static_cast<std::size_t>(k))) {
      const auto& alts = alternatives[idx];
      if (alts.empty()) continue;
      neg.records.push_back(MakeRecord(caption, located[idx].slot,
                                       located[idx].mention,
                                       alts[rng.UniformIndex(alts.size())]));
    }
    if (neg.records.size() != static_cast<std::size_t>(k)) continue;
    if (!DistinctPerOwner(neg.records)) continue;
    std::sort(neg.records.begin(), neg.records.end(),
              [](const auto& a, const auto& b) { return a.offset < b.offset; });
    neg.text = ApplySubstitutions(caption, neg.records);
    if (seen.insert(neg.text).second) out.negatives.push_back(std::move(neg));
  }
  out.short_set = out.negatives.size() < n;
  return out;
}

NegativeSet GenerateAttributeNegatives(std::string_view caption,
                                       const StructuredObject& obj,
                                       AttrType type, std::size_t n,
                                       const AttributeTaxonomy& tax, Rng& rng) {
  std::vector<LocatedSlot> candidates;
  for (auto& l : LocateAll(caption, obj, tax)) {
    if (l.slot.type == type) candidates.push_back(std::move(l));
  }
  if (candidates.empty()) {
    throw NotApplicableError(fmt::format("object {} has no locatable {} slot",
                                         obj.object_id, ToString(type)));
  }
  std::vector<std::vector<std::string>> remaining;
  for (const auto& c : candidates) remaining.push_back(Alternatives(tax, obj, c.slot));

  NegativeSet out;
  std::set<std::string> seen = {std::string(caption)};
  while (out.negatives.size() < n) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      if (!remaining[i].empty()) open.push_back(i);
    }
    if (open.empty()) break;
    const std::size_t slot_idx = open[rng.UniformIndex(open.size())];
    auto& pool = remaining[slot_idx];
    const std::size_t pick = rng.UniformIndex(pool.size());
    const std::string value = pool[pick];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));

    Negative neg;
    neg.records.push_back(MakeRecord(caption, candidates[slot_idx].slot,
                                     candidates[slot_idx].mention, value));
    neg.text = ApplySubstitutions(caption, neg.records);
    if (seen.insert(neg.text).second) out.negatives.push_back(std::move(neg));
  }
  out.short_set = out.negatives.size() < n;
  return out;
}

std::vector<std::string> GenerateTrivialNegatives(
    const StructuredObject& target, std::string_view positive,
    std::span<const PoolCaption> pool, std::size_t n, Rng& rng,
    bool same_class_ok, bool* short_set) {
  std::vector<std::string> candidates;
  std::set<std::string> seen = {std::string(positive)};
  for (const PoolCaption& c : pool) {
    if (!same_class_ok && c.category == target.category) continue;
    if (seen.insert(c.text).second) candidates.push_back(c.text);
  }
  std::vector<std::string> out;
  for (std::size_t idx : rng.SampleWithoutReplacement(candidates.size(), n)) {
    out.push_back(candidates[idx]);
  }
  if (short_set) *short_set = out.size() < n;
  return out;
}

}  // namespace fgovd

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

#include "fgovd/benchkit.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

#include "fgovd/errors.h"
#include "fgovd/rng.h"
#include "fgovd/text.h"

namespace fgovd {
namespace {

double Ratio(double num, double den) { return den > 0 ? num / den : 0.0; }

std::string Fixed1(double v) { return fmt::format("{:.1f}", v); }

}  // namespace

const ImageRecord* Benchmark::FindImage(ImageId id) const {
  for (const auto& img : images) {
    if (img.image_id == id) return &img;
  }
  return nullptr;
}

const ObjectGroup* Benchmark::FindGroup(GroupId id) const {
  // Assembled benchmarks number groups 0..n-1.
  if (id >= 0 && static_cast<std::size_t>(id) < groups.size() &&
      groups[static_cast<std::size_t>(id)].group_id == id) {
    return &groups[static_cast<std::size_t>(id)];
  }
  for (const auto& g : groups) {
    if (g.group_id == id) return &g;
  }
  return nullptr;
}

const StructuredObject* Benchmark::FindObject(ImageId image,
                                              ObjectId object) const {
  const ImageRecord* img = FindImage(image);
  if (!img) return nullptr;
  for (const auto& o : img->objects) {
    if (o.object_id == object) return &o;
  }
  return nullptr;
}

std::size_t Benchmark::object_count() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.object_ids.size();
  return n;
}

std::vector<ObjectGroup> GroupObjects(const ImageRecord& image,
                                      const CaptionMap& captions) {
  std::map<std::string, std::vector<ObjectId>> by_text;
  for (const auto& obj : image.objects) {
    auto it = captions.find(obj.object_id);
    if (it == captions.end()) continue;
    by_text[it->second.text].push_back(obj.object_id);
  }
  std::vector<ObjectGroup> groups;
  for (auto& [caption_text, ids] : by_text) {
    std::sort(ids.begin(), ids.end());
    ObjectGroup g;
    g.image_id = image.image_id;
    g.object_ids = ids;
    g.vocabulary.positive = captions.at(ids.front());
    groups.push_back(std::move(g));
  }
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) {
    return a.object_ids.front() < b.object_ids.front();
  });
  for (std::size_t i = 0; i < groups.size(); ++i) {
    groups[i].group_id = static_cast<GroupId>(i);
  }
  return groups;
}

Benchmark AssembleBenchmark(std::span<const ImageRecord> images,
                            const CaptionMap& captions, const NegativeSpec& spec,
                            const AttributeTaxonomy& tax,
                            const AssembleOptions& options) {
  spec.Validate();
  Benchmark b;
  b.name = spec.Name();
  b.spec = spec;
  b.provenance.taxonomy_version = tax.version();
  b.provenance.taxonomy_fingerprint = tax.Fingerprint();
  b.provenance.backend_id = options.backend_id;

  struct Pending {
    const ImageRecord* image;
    std::vector<ObjectGroup> groups;
  };
  std::vector<Pending> pending;
  std::vector<PoolCaption> pool;
  for (const ImageRecord& img : images) {
    Pending p{&img, GroupObjects(img, captions)};
    for (const auto& g : p.groups) {
      const StructuredObject* rep = nullptr;
      for (const auto& o : img.objects) {
        if (o.object_id == g.object_ids.front()) rep = &o;
      }
      pool.push_back({g.vocabulary.positive.text, rep->category});
    }
    pending.push_back(std::move(p));
  }

  GroupId next_id = 0;
  for (Pending& p : pending) {
    ImageRecord kept = *p.image;
    kept.objects.clear();
    std::set<ObjectId> members;
    for (ObjectGroup& g : p.groups) {
      const StructuredObject* rep = nullptr;
      for (const auto& o : p.image->objects) {
        if (o.object_id == g.object_ids.front()) rep = &o;
      }
      const std::string& positive = g.vocabulary.positive.text;
      Rng rng(DeriveSeed(spec.seed,
                         StableHash(fmt::format("{}:{}", g.image_id, rep->object_id))));
      try {
        switch (spec.strategy) {
          case Strategy::kTrivial: {
            bool short_set = false;
            g.vocabulary.negatives =
                GenerateTrivialNegatives(*rep, positive, pool, spec.count, rng,
                                         options.trivial_same_class_ok, &short_set);
            g.vocabulary.short_set = short_set;
            break;
          }
          case Strategy::kDifficulty: {
            auto set = GenerateDifficultyNegatives(positive, *rep, spec.k,
                                                   spec.count, tax, rng,
                                                   options.limits);
            for (auto& n : set.negatives) g.vocabulary.negatives.push_back(n.text);
            g.vocabulary.short_set = set.short_set;
            break;
          }
          case Strategy::kAttribute: {
            auto set = GenerateAttributeNegatives(positive, *rep, spec.attr_type,
                                                  spec.count, tax, rng);
            for (auto& n : set.negatives) g.vocabulary.negatives.push_back(n.text);
            g.vocabulary.short_set = set.short_set;
            break;
          }
        }
      } catch (const InsufficientAttributesError& e) {
        b.exclusions.push_back({g.image_id, g.object_ids, e.what()});
        continue;
      } catch (const NotApplicableError& e) {
        b.exclusions.push_back({g.image_id, g.object_ids, e.what()});
        continue;
      }
      g.group_id = next_id++;
      members.insert(g.object_ids.begin(), g.object_ids.end());
      b.groups.push_back(std::move(g));
    }
    if (members.empty()) continue;
    for (const auto& o : p.image->objects) {
      if (members.contains(o.object_id)) kept.objects.push_back(o);
    }
    b.images.push_back(std::move(kept));
  }
  return b;
}

double BenchmarkStats::objects_per_image() const {
  return Ratio(static_cast<double>(objects), static_cast<double>(images));
}
double BenchmarkStats::positives_per_image() const {
  return Ratio(static_cast<double>(positives), static_cast<double>(images));
}
double BenchmarkStats::negatives_per_positive() const {
  return Ratio(static_cast<double>(negatives), static_cast<double>(positives));
}
double BenchmarkStats::objects_per_positive() const {
  return Ratio(static_cast<double>(objects), static_cast<double>(positives));
}

BenchmarkStats ComputeStats(const Benchmark& b) {
  BenchmarkStats s;
  std::map<ImageId, std::set<std::string>> positives;
  for (const auto& g : b.groups) {
    s.objects += g.object_ids.size();
    s.negatives += g.vocabulary.negatives.size();
    positives[g.image_id].insert(g.vocabulary.positive.text);
  }
  for (const auto& [id, texts] : positives) s.positives += texts.size();
  s.images = b.images.size();
  return s;
}

std::string FormatStatsTable(
    std::span<const std::pair<std::string, BenchmarkStats>> rows) {
  std::string out = fmt::format("{:<14}{:>8}{:>8}{:>9}{:>9}{:>8}{:>8}{:>9}\n",
                                "Name", "Imgs", "Objs", "Obj/Img", "Pos.Caps",
                                "Pos/Img", "Neg/Pos", "Objs/Pos");
  for (const auto& [name, s] : rows) {
    out += fmt::format("{:<14}{:>8}{:>8}{:>9}{:>9}{:>8}{:>8}{:>9}\n", name,
                       s.images, s.objects, Fixed1(s.objects_per_image()),
                       s.positives, Fixed1(s.positives_per_image()),
                       Fixed1(s.negatives_per_positive()),
                       Fixed1(s.objects_per_positive()));
  }
  return out;
}

std::string FormatStatsCsv(
    std::span<const std::pair<std::string, BenchmarkStats>> rows) {
  std::string out =
      "name,imgs,objs,obj_per_img,pos_caps,pos_per_img,neg_per_pos,objs_per_pos\n";
  for (const auto& [name, s] : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", name, s.images, s.objects,
                       Fixed1(s.objects_per_image()), s.positives,
                       Fixed1(s.positives_per_image()),
                       Fixed1(s.negatives_per_positive()),
                       Fixed1(s.objects_per_positive()));
  }
  return out;
}

std::size_t WhitespaceTokenCount(std::string_view s) { return text::WordCount(s); }

Benchmark SelectGroups(const Benchmark& b,
                       const std::function<bool(const ObjectGroup&)>& keep,
                       std::string_view filter_note) {
  Benchmark out;
  out.name = b.name;
  out.spec = b.spec;
  out.provenance = b.provenance;
  out.exclusions = b.exclusions;
  if (!filter_note.empty()) out.provenance.filters.emplace_back(filter_note);
  std::map<ImageId, std::set<ObjectId>> members;
  for (const auto& g : b.groups) {
    if (!keep(g)) continue;
    members[g.image_id].insert(g.object_ids.begin(), g.object_ids.end());
    out.groups.push_back(g);
  }
  for (const auto& img : b.images) {
    auto it = members.find(img.image_id);
    if (it == members.end()) continue;
    ImageRecord kept = img;
    std::erase_if(kept.objects, [&](const StructuredObject& o) {
      return !it->second.contains(o.object_id);
    });
    out.images.push_back(std::move(kept));
  }
  return out;
}

Benchmark FilterMaxTokens(const Benchmark& b, std::size_t limit,
                          const TokenCounter& counter) {
  if (limit < 1) throw ConfigError("token limit must be at least 1");
  return SelectGroups(
      b,
      [&](const ObjectGroup& g) {
        for (std::size_t i = 0; i < g.vocabulary.size(); ++i) {
          if (counter(g.vocabulary.entry(i)) > limit) return false;
        }
        return true;
      },
      fmt::format("max-tokens:{}", limit));
}

std::string_view ToString(LengthBucket bucket) {
  switch (bucket) {
    case LengthBucket::kShort:
      return "short";
    case LengthBucket::kMedium:
      return "medium";
    case LengthBucket::kLong:
      return "long";
    case LengthBucket::kLonger:
      return "longer";
  }
  return "short";
}

LengthBucket BucketForMeanLength(double mean_words) {
  if (mean_words <= 6.0) return LengthBucket::kShort;
  if (mean_words <= 10.0) return LengthBucket::kMedium;
  if (mean_words <= 14.0) return LengthBucket::kLong;
  return LengthBucket::kLonger;
}

double MeanVocabularyWords(const Vocabulary& v) {
  double total = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    total += static_cast<double>(text::WordCount(v.entry(i)));
  }
  return total / static_cast<double>(v.size());
}

std::array<Benchmark, 4> BucketByCaptionLength(const Benchmark& b) {
  std::array<Benchmark, 4> out;
  for (int i = 0; i < 4; ++i) {
    const auto bucket = static_cast<LengthBucket>(i);
    out[i] = SelectGroups(
        b,
        [&](const ObjectGroup& g) {
          return BucketForMeanLength(MeanVocabularyWords(g.vocabulary)) == bucket;
        },
        fmt::format("length:{}", ToString(bucket)));
    out[i].name = fmt::format("{}-{}", b.name, ToString(bucket));
  }
  return out;
}

}  // namespace fgovd

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

#ifndef FGOVD_BENCHKIT_H_
#define FGOVD_BENCHKIT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fgovd/captiongen.h"
#include "fgovd/negatives.h"
#include "fgovd/taxonomy.h"

namespace fgovd {

// The dynamic vocabulary of one object group: the positive caption first,
// then its negatives.
struct Vocabulary {
  Caption positive;
  std::vector<std::string> negatives;
  bool short_set = false;

  std::size_t size() const { return 1 + negatives.size(); }
  const std::string& entry(std::size_t i) const {
    return i == 0 ? positive.text : negatives[i - 1];
  }
};

using GroupId = std::int64_t;

// Objects of one image sharing the same positive caption. One detector
// inference is run per group.
struct ObjectGroup {
  GroupId group_id = 0;
  ImageId image_id = 0;
  std::vector<ObjectId> object_ids;  // ascending
  Vocabulary vocabulary;
};

struct Exclusion {
  ImageId image_id;
  std::vector<ObjectId> object_ids;
  std::string reason;
};

struct BenchmarkProvenance {
  std::string tool_version;
  std::string taxonomy_version;
  std::string taxonomy_fingerprint;
  std::string backend_id;
  std::string config_hash;
  std::vector<std::string> filters;
};

struct Benchmark {
  std::string name;
  NegativeSpec spec;
  // Only the ground-truth objects retained in groups are kept in images.
  std::vector<ImageRecord> images;
  std::vector<ObjectGroup> groups;
  BenchmarkProvenance provenance;
  std::vector<Exclusion> exclusions;

  const ImageRecord* FindImage(ImageId id) const;
  const ObjectGroup* FindGroup(GroupId id) const;
  const StructuredObject* FindObject(ImageId image, ObjectId object) const;
  std::size_t object_count() const;
};

// Groups string-identical positive captions; ordered by smallest member id.
// Group ids are 0..K-1 local to the image.
std::vector<ObjectGroup> GroupObjects(const ImageRecord& image,
                                      const CaptionMap& captions);

struct AssembleOptions {
  bool trivial_same_class_ok = false;
  GenerationLimits limits;
  std::string backend_id;
};

// Builds vocabularies for every group with the NegativeSpec strategy. Groups whose
// representative (lowest object id) fails the strategy's preconditions are
// excluded and reported; images left without groups are dropped.
Benchmark AssembleBenchmark(std::span<const ImageRecord> images,
                            const CaptionMap& captions, const NegativeSpec& spec,
                            const AttributeTaxonomy& tax,
                            const AssembleOptions& options = {});

struct BenchmarkStats {
  std::size_t images = 0;
  std::size_t objects = 0;
  std::size_t positives = 0;  // distinct positive captions, summed per image
  std::size_t negatives = 0;  // total negatives over all positives

  double objects_per_image() const;
  double positives_per_image() const;
  double negatives_per_positive() const;
  double objects_per_positive() const;
};

BenchmarkStats ComputeStats(const Benchmark& b);

// Table rows with the ratio columns rounded to one decimal.
std::string FormatStatsTable(
    std::span<const std::pair<std::string, BenchmarkStats>> rows);
std::string FormatStatsCsv(
    std::span<const std::pair<std::string, BenchmarkStats>> rows);

using TokenCounter = std::function<std::size_t(std::string_view)>;
std::size_t WhitespaceTokenCount(std::string_view s);

// Drops groups where any vocabulary entry exceeds `limit` tokens.
Benchmark FilterMaxTokens(const Benchmark& b, std::size_t limit = 16,
                          const TokenCounter& counter = WhitespaceTokenCount);

enum class LengthBucket { kShort = 0, kMedium = 1, kLong = 2, kLonger = 3 };
std::string_view ToString(LengthBucket bucket);

// Mean word count <= 6 short, <= 10 medium, <= 14 long, otherwise longer.
LengthBucket BucketForMeanLength(double mean_words);
double MeanVocabularyWords(const Vocabulary& v);

std::array<Benchmark, 4> BucketByCaptionLength(const Benchmark& b);

// Keeps only the listed groups, pruning images and their objects.
Benchmark SelectGroups(const Benchmark& b,
                       const std::function<bool(const ObjectGroup&)>& keep,
                       std::string_view filter_note);

}  // namespace fgovd

#endif  // FGOVD_BENCHKIT_H_

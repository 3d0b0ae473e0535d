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

#ifndef FGOVD_SYNTHDET_H_
#define FGOVD_SYNTHDET_H_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "fgovd/benchkit.h"
#include "fgovd/captiongen.h"
#include "fgovd/metrics.h"
#include "fgovd/taxonomy.h"

namespace fgovd {

enum class SynthKind { kPerfect, kRandom, kNoisy };
std::string_view ToString(SynthKind kind);
SynthKind ParseSynthKind(std::string_view name);  // throws ConfigError

// Synthetic detector behaviour.
//   perfect: GT boxes, positive 1.0, negatives 0.0
//   random:  GT boxes, every score ~ U(0, 1)
//   noisy:   jittered GT boxes, positive ~ N(mu, sigma^2) clamped to [0, 1],
//            negatives ~ U(0, mu)
struct SynthProfile {
  SynthKind kind = SynthKind::kPerfect;
  double mu = 0.7;
  double sigma = 0.15;
  double jitter = 0.0;  // max box shift, as a fraction of box size
  std::uint64_t seed = 0;

  void Validate() const;  // sigma >= 0, jitter in [0, 0.5]
};

// One prediction per ground-truth object, in group order.
std::vector<Prediction> RunSynth(const Benchmark& benchmark,
                                 const SynthProfile& profile);

// Caption-at-a-time export of the same detections: one record per vocabulary
// entry per detection.
std::vector<PerCaptionPrediction> ToPerCaption(
    std::span<const Prediction> predictions);

struct SyntheticCorpusOptions {
  std::size_t images = 60;
  std::size_t max_objects_per_image = 3;
  // Chance that an object duplicates the previous one of its image (same
  // category and attributes), yielding multi-object groups.
  double duplicate_probability = 0.15;
  std::uint64_t seed = 0;
};

struct SyntheticCorpus {
  std::vector<ImageRecord> images;
  CaptionMap captions;
};

// Simplified objects on a non-overlapping grid with template captions. Every
// object has a color and at least two further slots.
SyntheticCorpus MakeSyntheticCorpus(const SyntheticCorpusOptions& options,
                                    const AttributeTaxonomy& tax);

}  // namespace fgovd

#endif  // FGOVD_SYNTHDET_H_

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

#ifndef FGOVD_PLOT_H_
#define FGOVD_PLOT_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fgovd/benchkit.h"
#include "fgovd/metrics.h"
#include "fgovd/synthdet.h"

namespace fgovd {

struct SweepSource {
  std::string label;
  SynthProfile profile;
};

struct SweepPoint {
  std::string source;
  std::size_t n = 0;
  double map = -1;          // fraction, -1 when undefined
  double median_rank = 0;
};

// Re-assembles the benchmark for every N in `ns` (same strategy and seed)
// and evaluates each source on it.
std::vector<SweepPoint> SweepNegativeCount(std::span<const ImageRecord> images,
                                           const CaptionMap& captions,
                                           const NegativeSpec& base,
                                           std::span<const std::size_t> ns,
                                           std::span<const SweepSource> sources,
                                           const AttributeTaxonomy& tax,
                                           const EvalOptions& options = {});

// source,n,map,median_rank with mAP x100.
std::string SweepToCsv(std::span<const SweepPoint> points);

// Static line chart, one polyline per source: mAP x100 (left) or median rank
// (right) against N.
std::string SweepToSvg(std::span<const SweepPoint> points, bool rank_panel);

}  // namespace fgovd

#endif  // FGOVD_PLOT_H_

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

#ifndef FGOVD_IO_H_
#define FGOVD_IO_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fgovd/benchkit.h"
#include "fgovd/captiongen.h"
#include "fgovd/metrics.h"

namespace fgovd {

inline constexpr std::string_view kToolVersion = "0.3.0";

std::string ReadFile(const std::filesystem::path& path);
// Writes atomically enough for batch use: to a sibling temp file, then
// renames. Creates parent directories.
void WriteFile(const std::filesystem::path& path, std::string_view contents);

// Captions: one JSON object per line,
// {"object_id", "image_id", "caption", "source_object_id", "provenance",
//  "review"}, ordered by object id.
std::string CaptionsToJsonl(const CaptionMap& captions);
CaptionMap ParseCaptionsJsonl(std::string_view document,
                              std::string_view source_name);
CaptionMap LoadCaptions(const std::filesystem::path& path);

// One line per turn: {"object_id", "turn", "role", "content"}.
std::string TranscriptToJsonl(ObjectId object_id,
                              const PromptTranscript& transcript);

// Rejection report record for an object whose caption never passed the
// checks: every attempt with the failing check code and its follow-up.
std::string RejectionToJson(const StructuredObject& obj,
                            const CaptionOutcome& outcome,
                            const FollowupTable& followups);

// {"meta", "images", "groups"}. Deterministic; no timestamps.
std::string BenchmarkToJson(const Benchmark& benchmark);
Benchmark ParseBenchmark(std::string_view document,
                         std::string_view source_name);
Benchmark LoadBenchmark(const std::filesystem::path& path);

enum class PredictionMode { kVector, kPerCaption };
std::string_view ToString(PredictionMode mode);

struct PredictionFile {
  PredictionMode mode = PredictionMode::kVector;
  std::vector<Prediction> vector;
  std::vector<PerCaptionPrediction> per_caption;
};

// The first non-blank line is the header
// {"format": "fgovd-predictions", "version": 1, "mode": ...}. When a
// benchmark is given, every record is checked against it and the first bad
// one throws InputError naming its line.
PredictionFile ParsePredictions(std::string_view document,
                                std::string_view source_name,
                                const Benchmark* benchmark = nullptr);
PredictionFile LoadPredictions(const std::filesystem::path& path,
                               const Benchmark* benchmark = nullptr);

using Metadata = std::vector<std::pair<std::string, std::string>>;

std::string PredictionsToJsonl(std::span<const Prediction> predictions,
                               const Metadata& header_extra = {});
std::string PredictionsToJsonl(std::span<const PerCaptionPrediction> predictions,
                               const Metadata& header_extra = {});

// Report JSON with AP fields as fractions and x100, rank summary and the
// per-object rank list.
std::string ReportsToJson(std::span<const EvalReport> reports,
                          const Metadata& provenance);
// Aligned table, AP values x100 with one decimal; '-' for undefined.
std::string FormatReportTable(std::span<const EvalReport> reports,
                              bool by_size);
// benchmark,image_id,group_id,object_id,rank,vocabulary_size
std::string RanksToCsv(std::span<const EvalReport> reports);

}  // namespace fgovd

#endif  // FGOVD_IO_H_

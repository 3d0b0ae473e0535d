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

#ifndef FGOVD_METRICS_H_
#define FGOVD_METRICS_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fgovd/benchkit.h"
#include "fgovd/taxonomy.h"

namespace fgovd {

// Intersection over union of two pixel boxes; 0 when the union is empty.
double Iou(const BBox& a, const BBox& b);

// One detection from a single inference over a group's vocabulary. Scores
// follow vocabulary order, so index 0 is the positive caption.
struct Prediction {
  ImageId image_id = 0;
  GroupId group_id = 0;
  BBox bbox;
  std::vector<double> scores;

  double confidence() const;
  // Argmax of the scores; the lowest index wins ties.
  std::size_t label() const;
};

// Output of a caption-at-a-time (REC-style) detector.
struct PerCaptionPrediction {
  ImageId image_id = 0;
  GroupId group_id = 0;
  std::size_t caption_index = 0;
  BBox bbox;
  double confidence = 0;
};

// Greedy suppression ignoring labels: highest confidence first (stable on
// ties), dropping every later box with IoU > iou_threshold against a kept
// one. Returns kept predictions in confidence order.
std::vector<Prediction> ClassAgnosticNms(std::vector<Prediction> predictions,
                                         double iou_threshold = 0.5);

struct EvalOptions {
  double nms_iou = 0.5;
  bool apply_nms = true;
  // Detections per image and category; unlimited when unset.
  std::optional<std::size_t> max_dets;
  double rank_iou = 0.5;
};

// IoU thresholds 0.50:0.05:0.95 and 101 recall points, as in COCO.
const std::array<double, 10>& CocoIouThresholds();
const std::array<double, 101>& CocoRecallThresholds();

enum class AreaRange { kAll = 0, kSmall = 1, kMedium = 2, kLarge = 3 };

// AP fields are in [0, 1], or -1 when no ground truth falls in the range.
struct ApResult {
  double map = -1;
  double ap50 = -1;
  double ap75 = -1;
  double map_small = -1;
  double map_medium = -1;
  double map_large = -1;
  std::size_t categories = 0;
};

// COCO-style mAP where each distinct positive caption is a category. Within
// a group a detection counts for that category only when its argmax is the
// positive caption; it is a true positive when it also matches an unmatched
// member with IoU >= threshold. Applies per-group class-agnostic NMS first
// unless options.apply_nms is false. Throws InputError for predictions that
// do not fit the benchmark.
ApResult CocoMap(const Benchmark& benchmark,
                 std::span<const Prediction> predictions,
                 const EvalOptions& options = {});

struct ObjectRank {
  ImageId image_id;
  GroupId group_id;
  ObjectId object_id;
  std::size_t rank;
  std::size_t vocabulary_size;
};

struct RankResult {
  double median = 0;  // 0 when no object was ranked
  std::vector<ObjectRank> ranks;
  std::size_t skipped = 0;  // objects without a qualifying prediction
};

// 1-based rank of scores[0] in descending order; negatives scoring equal
// to the positive are placed ahead of it.
std::size_t PositiveRank(std::span<const double> scores);

double Median(std::vector<std::size_t> values);

// Per object, the raw (pre-NMS) prediction of its group with IoU >=
// rank_iou and the highest confidence is ranked.
RankResult MedianRank(const Benchmark& benchmark,
                      std::span<const Prediction> predictions,
                      const EvalOptions& options = {});

struct ObjectScores {
  ImageId image_id;
  GroupId group_id;
  ObjectId object_id;
  std::vector<double> scores;
};

// Rebuilds one score vector per ground-truth object from per-caption
// detections: detections with IoU < rank_iou are zeroed, then each caption
// takes the maximum confidence among the rest.
std::vector<ObjectScores> MergePerCaption(
    const Benchmark& benchmark, std::span<const PerCaptionPrediction> predictions,
    double rank_iou = 0.5);

// All-zero vectors count as skipped.
RankResult RankFromScores(const Benchmark& benchmark,
                          std::span<const ObjectScores> scores);

// Score vector is the confidence at caption_index and 0 elsewhere.
std::vector<Prediction> OneHotPredictions(
    const Benchmark& benchmark, std::span<const PerCaptionPrediction> predictions);

struct EvalReport {
  std::string benchmark;
  ApResult ap;
  RankResult rank;
  std::size_t objects = 0;
  std::size_t groups = 0;
  std::size_t predictions = 0;
};

EvalReport Evaluate(const Benchmark& benchmark,
                    std::span<const Prediction> predictions,
                    const EvalOptions& options = {});
EvalReport EvaluatePerCaption(const Benchmark& benchmark,
                              std::span<const PerCaptionPrediction> predictions,
                              const EvalOptions& options = {});

}  // namespace fgovd

#endif  // FGOVD_METRICS_H_

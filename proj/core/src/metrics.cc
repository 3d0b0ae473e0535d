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

#include "fgovd/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "fgovd/errors.h"

namespace fgovd {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Range {
  double lo;
  double hi;
  bool Outside(double area) const { return area < lo || area > hi; }
};

constexpr std::array<Range, 4> kAreaRanges = {{
    {0.0, 1e10},
    {0.0, 32.0 * 32.0},
    {32.0 * 32.0, 96.0 * 96.0},
    {96.0 * 96.0, 1e10},
}};

void CheckPrediction(const Benchmark& b, const Prediction& p, std::size_t index) {
  const ObjectGroup* g = b.FindGroup(p.group_id);
  if (!g) {
    throw InputError(fmt::format("prediction {}: unknown group_id {}", index,
                                 p.group_id));
  }
  if (g->image_id != p.image_id) {
    throw InputError(fmt::format(
        "prediction {}: group {} belongs to image {}, not {}", index, p.group_id,
        g->image_id, p.image_id));
  }
  if (p.scores.size() != g->vocabulary.size()) {
    throw InputError(fmt::format(
        "prediction {}: {} scores for a vocabulary of {}", index, p.scores.size(),
        g->vocabulary.size()));
  }
  for (double s : p.scores) {
    if (!std::isfinite(s)) {
      throw InputError(fmt::format("prediction {}: non-finite score", index));
    }
  }
  if (!(p.bbox.w > 0) || !(p.bbox.h > 0)) {
    throw InputError(fmt::format("prediction {}: degenerate bbox", index));
  }
}

void CheckPerCaption(const Benchmark& b, const PerCaptionPrediction& p,
                     std::size_t index) {
  const ObjectGroup* g = b.FindGroup(p.group_id);
  if (!g) {
    throw InputError(fmt::format("prediction {}: unknown group_id {}", index,
                                 p.group_id));
  }
  if (g->image_id != p.image_id) {
    throw InputError(fmt::format(
        "prediction {}: group {} belongs to image {}, not {}", index, p.group_id,
        g->image_id, p.image_id));
  }
  if (p.caption_index >= g->vocabulary.size()) {
    throw InputError(fmt::format(
        "prediction {}: caption_index {} outside a vocabulary of {}", index,
        p.caption_index, g->vocabulary.size()));
  }
  if (!std::isfinite(p.confidence)) {
    throw InputError(fmt::format("prediction {}: non-finite confidence", index));
  }
  if (!(p.bbox.w > 0) || !(p.bbox.h > 0)) {
    throw InputError(fmt::format("prediction {}: degenerate bbox", index));
  }
}

std::vector<BBox> GroupBoxes(const Benchmark& b, const ObjectGroup& g) {
  std::vector<BBox> boxes;
  for (ObjectId id : g.object_ids) {
    const StructuredObject* o = b.FindObject(g.image_id, id);
    if (!o) {
      throw InputError(fmt::format("group {} references missing object {}",
                                   g.group_id, id));
    }
    boxes.push_back(o->bbox);
  }
  return boxes;
}

// Matches of one (image, category) cell at every IoU threshold.
struct CellEval {
  std::vector<double> scores;  // sorted descending
  std::array<std::vector<char>, 10> matched;
  std::array<std::vector<char>, 10> ignored;
  std::size_t gt_not_ignored = 0;
};

CellEval EvaluateCell(const std::vector<BBox>& gt_boxes,
                      const std::vector<const Prediction*>& dets, Range range,
                      std::optional<std::size_t> max_dets) {
  CellEval cell;
  const auto& thresholds = CocoIouThresholds();

  std::vector<char> gt_ignore(gt_boxes.size());
  for (std::size_t g = 0; g < gt_boxes.size(); ++g) {
    gt_ignore[g] = range.Outside(gt_boxes[g].area());
  }
  std::vector<std::size_t> gt_order(gt_boxes.size());
  std::iota(gt_order.begin(), gt_order.end(), std::size_t{0});
  std::stable_sort(gt_order.begin(), gt_order.end(), [&](auto a, auto b) {
    return gt_ignore[a] < gt_ignore[b];
  });

  std::vector<const Prediction*> dt = dets;
  std::stable_sort(dt.begin(), dt.end(), [](const auto* a, const auto* b) {
    return a->confidence() > b->confidence();
  });
  if (max_dets && dt.size() > *max_dets) dt.resize(*max_dets);

  const std::size_t nd = dt.size();
  const std::size_t ng = gt_order.size();
  std::vector<double> ious(nd * ng);
  for (std::size_t d = 0; d < nd; ++d) {
    for (std::size_t g = 0; g < ng; ++g) {
      ious[d * ng + g] = Iou(dt[d]->bbox, gt_boxes[gt_order[g]]);
    }
  }
  for (std::size_t g = 0; g < ng; ++g) {
    if (!gt_ignore[gt_order[g]]) ++cell.gt_not_ignored;
  }
  for (const auto* d : dt) cell.scores.push_back(d->confidence());

  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    std::vector<long> gt_match(ng, -1);
    cell.matched[t].assign(nd, 0);
    cell.ignored[t].assign(nd, 0);
    for (std::size_t d = 0; d < nd; ++d) {
      double best = std::min(thresholds[t], 1.0 - 1e-10);
      long m = -1;
      for (std::size_t g = 0; g < ng; ++g) {
        if (gt_match[g] >= 0) continue;
        if (m > -1 && !gt_ignore[gt_order[static_cast<std::size_t>(m)]] &&
            gt_ignore[gt_order[g]]) {
          break;
        }
        if (ious[d * ng + g] < best) continue;
        best = ious[d * ng + g];
        m = static_cast<long>(g);
      }
      if (m == -1) continue;
      cell.ignored[t][d] = gt_ignore[gt_order[static_cast<std::size_t>(m)]];
      cell.matched[t][d] = 1;
      gt_match[static_cast<std::size_t>(m)] = static_cast<long>(d);
    }
    for (std::size_t d = 0; d < nd; ++d) {
      if (!cell.matched[t][d] && range.Outside(dt[d]->bbox.area())) {
        cell.ignored[t][d] = 1;
      }
    }
  }
  return cell;
}

// Interpolated AP of one category at threshold index t, or nullopt without
// ground truth.
std::optional<double> AccumulateAp(const std::vector<CellEval>& cells,
                                   std::size_t t) {
  std::size_t npig = 0;
  std::vector<double> scores;
  std::vector<char> matched;
  std::vector<char> ignored;
  for (const CellEval& c : cells) {
    npig += c.gt_not_ignored;
    scores.insert(scores.end(), c.scores.begin(), c.scores.end());
    matched.insert(matched.end(), c.matched[t].begin(), c.matched[t].end());
    ignored.insert(ignored.end(), c.ignored[t].begin(), c.ignored[t].end());
  }
  if (npig == 0) return std::nullopt;

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return scores[a] > scores[b]; });

  const std::size_t nd = order.size();
  std::vector<double> recall(nd);
  std::vector<double> precision(nd);
  double tp = 0;
  double fp = 0;
  for (std::size_t i = 0; i < nd; ++i) {
    const std::size_t d = order[i];
    if (!ignored[d]) {
      if (matched[d]) {
        tp += 1;
      } else {
        fp += 1;
      }
    }
    recall[i] = tp / static_cast<double>(npig);
    precision[i] = tp / (fp + tp + kEps);
  }
  for (std::size_t i = nd; i-- > 1;) {
    if (precision[i] > precision[i - 1]) precision[i - 1] = precision[i];
  }
  double sum = 0;
  for (double r : CocoRecallThresholds()) {
    const auto it = std::lower_bound(recall.begin(), recall.end(), r);
    if (it != recall.end()) {
      sum += precision[static_cast<std::size_t>(it - recall.begin())];
    }
  }
  return sum / static_cast<double>(CocoRecallThresholds().size());
}

double MeanOrMinusOne(double sum, std::size_t n) {
  return n == 0 ? -1.0 : sum / static_cast<double>(n);
}

}  // namespace

double Iou(const BBox& a, const BBox& b) {
  const double ix = std::max(0.0, std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
  const double iy = std::max(0.0, std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return uni > 0 ? inter / uni : 0.0;
}

double Prediction::confidence() const {
  return scores.empty() ? 0.0 : *std::max_element(scores.begin(), scores.end());
}

std::size_t Prediction::label() const {
  return scores.empty() ? 0
                        : static_cast<std::size_t>(
                              std::max_element(scores.begin(), scores.end()) -
                              scores.begin());
}

std::vector<Prediction> ClassAgnosticNms(std::vector<Prediction> predictions,
                                         double iou_threshold) {
  std::vector<double> conf(predictions.size());
  std::vector<std::size_t> order(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    conf[i] = predictions[i].confidence();
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return conf[a] > conf[b]; });
  std::vector<char> suppressed(predictions.size(), 0);
  std::vector<Prediction> kept;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t a = order[i];
    if (suppressed[a]) continue;
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const std::size_t b = order[j];
      if (!suppressed[b] &&
          Iou(predictions[a].bbox, predictions[b].bbox) > iou_threshold) {
        suppressed[b] = 1;
      }
    }
    kept.push_back(std::move(predictions[a]));
  }
  return kept;
}

const std::array<double, 10>& CocoIouThresholds() {
  static const std::array<double, 10> kThresholds = [] {
    std::array<double, 10> t{};
    const double step = (0.95 - 0.5) / 9.0;
    for (int i = 0; i < 10; ++i) t[i] = 0.5 + i * step;
    t[9] = 0.95;
    return t;
  }();
  return kThresholds;
}

const std::array<double, 101>& CocoRecallThresholds() {
  static const std::array<double, 101> kThresholds = [] {
    std::array<double, 101> r{};
    for (int i = 0; i < 101; ++i) r[i] = i * (1.0 / 100.0);
    r[100] = 1.0;
    return r;
  }();
  return kThresholds;
}

ApResult CocoMap(const Benchmark& benchmark,
                 std::span<const Prediction> predictions,
                 const EvalOptions& options) {
  std::map<GroupId, std::vector<Prediction>> by_group;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    CheckPrediction(benchmark, predictions[i], i);
    by_group[predictions[i].group_id].push_back(predictions[i]);
  }
  if (options.apply_nms) {
    for (auto& [id, preds] : by_group) {
      preds = ClassAgnosticNms(std::move(preds), options.nms_iou);
    }
  }

  // Category = positive caption text; cells ordered by image id.
  std::map<std::string, std::vector<const ObjectGroup*>> categories;
  for (const auto& g : benchmark.groups) {
    categories[g.vocabulary.positive.text].push_back(&g);
  }

  ApResult result;
  result.categories = categories.size();
  std::array<double, 4> area_sum{};
  std::array<std::size_t, 4> area_n{};
  double sum50 = 0, sum75 = 0;
  std::size_t n50 = 0, n75 = 0;
  for (auto& [caption, groups] : categories) {
    std::stable_sort(groups.begin(), groups.end(), [](const auto* a, const auto* b) {
      return a->image_id < b->image_id;
    });
    for (std::size_t a = 0; a < kAreaRanges.size(); ++a) {
      std::vector<CellEval> cells;
      for (const ObjectGroup* g : groups) {
        std::vector<const Prediction*> dets;
        if (auto it = by_group.find(g->group_id); it != by_group.end()) {
          for (const Prediction& p : it->second) {
            if (p.label() == 0) dets.push_back(&p);
          }
        }
        cells.push_back(EvaluateCell(GroupBoxes(benchmark, *g), dets,
                                     kAreaRanges[a], options.max_dets));
      }
      for (std::size_t t = 0; t < CocoIouThresholds().size(); ++t) {
        const auto ap = AccumulateAp(cells, t);
        if (!ap) continue;
        area_sum[a] += *ap;
        ++area_n[a];
        if (a == 0 && t == 0) {
          sum50 += *ap;
          ++n50;
        }
        if (a == 0 && t == 5) {
          sum75 += *ap;
          ++n75;
        }
      }
    }
  }
  result.map = MeanOrMinusOne(area_sum[0], area_n[0]);
  result.map_small = MeanOrMinusOne(area_sum[1], area_n[1]);
  result.map_medium = MeanOrMinusOne(area_sum[2], area_n[2]);
  result.map_large = MeanOrMinusOne(area_sum[3], area_n[3]);
  result.ap50 = MeanOrMinusOne(sum50, n50);
  result.ap75 = MeanOrMinusOne(sum75, n75);
  return result;
}

std::size_t PositiveRank(std::span<const double> scores) {
  if (scores.empty()) return 0;
  std::size_t rank = 1;
  for (std::size_t j = 1; j < scores.size(); ++j) {
    if (scores[j] >= scores[0]) ++rank;
  }
  return rank;
}

double Median(std::vector<std::size_t> values) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return static_cast<double>(values[n / 2]);
  return 0.5 * static_cast<double>(values[n / 2 - 1] + values[n / 2]);
}

RankResult MedianRank(const Benchmark& benchmark,
                      std::span<const Prediction> predictions,
                      const EvalOptions& options) {
  std::map<GroupId, std::vector<const Prediction*>> by_group;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    CheckPrediction(benchmark, predictions[i], i);
    by_group[predictions[i].group_id].push_back(&predictions[i]);
  }
  RankResult result;
  std::vector<std::size_t> ranks;
  for (const ObjectGroup& g : benchmark.groups) {
    const auto boxes = GroupBoxes(benchmark, g);
    const auto it = by_group.find(g.group_id);
    for (std::size_t m = 0; m < g.object_ids.size(); ++m) {
      const Prediction* best = nullptr;
      if (it != by_group.end()) {
        for (const Prediction* p : it->second) {
          if (Iou(p->bbox, boxes[m]) < options.rank_iou) continue;
          if (!best || p->confidence() > best->confidence()) best = p;
        }
      }
      if (!best) {
        ++result.skipped;
        continue;
      }
      const std::size_t rank = PositiveRank(best->scores);
      result.ranks.push_back(
          {g.image_id, g.group_id, g.object_ids[m], rank, g.vocabulary.size()});
      ranks.push_back(rank);
    }
  }
  result.median = Median(std::move(ranks));
  return result;
}

std::vector<ObjectScores> MergePerCaption(
    const Benchmark& benchmark, std::span<const PerCaptionPrediction> predictions,
    double rank_iou) {
  std::map<GroupId, std::vector<const PerCaptionPrediction*>> by_group;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    CheckPerCaption(benchmark, predictions[i], i);
    by_group[predictions[i].group_id].push_back(&predictions[i]);
  }
  std::vector<ObjectScores> out;
  for (const ObjectGroup& g : benchmark.groups) {
    const auto boxes = GroupBoxes(benchmark, g);
    const auto it = by_group.find(g.group_id);
    for (std::size_t m = 0; m < g.object_ids.size(); ++m) {
      ObjectScores s{g.image_id, g.group_id, g.object_ids[m],
                     std::vector<double>(g.vocabulary.size(), 0.0)};
      if (it != by_group.end()) {
        for (const PerCaptionPrediction* p : it->second) {
          const double h = Iou(p->bbox, boxes[m]) < rank_iou ? 0.0 : p->confidence;
          s.scores[p->caption_index] = std::max(s.scores[p->caption_index], h);
        }
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

RankResult RankFromScores(const Benchmark& benchmark,
                          std::span<const ObjectScores> scores) {
  RankResult result;
  std::vector<std::size_t> ranks;
  std::size_t seen = 0;
  for (const ObjectScores& s : scores) {
    ++seen;
    const bool all_zero =
        std::all_of(s.scores.begin(), s.scores.end(), [](double v) { return v == 0.0; });
    if (all_zero) {
      ++result.skipped;
      continue;
    }
    const std::size_t rank = PositiveRank(s.scores);
    result.ranks.push_back({s.image_id, s.group_id, s.object_id, rank, s.scores.size()});
    ranks.push_back(rank);
  }
  const std::size_t total = benchmark.object_count();
  if (total > seen) result.skipped += total - seen;
  result.median = Median(std::move(ranks));
  return result;
}

std::vector<Prediction> OneHotPredictions(
    const Benchmark& benchmark, std::span<const PerCaptionPrediction> predictions) {
  std::vector<Prediction> out;
  out.reserve(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const PerCaptionPrediction& p = predictions[i];
    CheckPerCaption(benchmark, p, i);
    Prediction q;
    q.image_id = p.image_id;
    q.group_id = p.group_id;
    q.bbox = p.bbox;
    q.scores.assign(benchmark.FindGroup(p.group_id)->vocabulary.size(), 0.0);
    q.scores[p.caption_index] = p.confidence;
    out.push_back(std::move(q));
  }
  return out;
}

EvalReport Evaluate(const Benchmark& benchmark,
                    std::span<const Prediction> predictions,
                    const EvalOptions& options) {
  EvalReport r;
  r.benchmark = benchmark.name;
  r.ap = CocoMap(benchmark, predictions, options);
  r.rank = MedianRank(benchmark, predictions, options);
  r.objects = benchmark.object_count();
  r.groups = benchmark.groups.size();
  r.predictions = predictions.size();
  return r;
}

EvalReport EvaluatePerCaption(const Benchmark& benchmark,
                              std::span<const PerCaptionPrediction> predictions,
                              const EvalOptions& options) {
  EvalReport r;
  r.benchmark = benchmark.name;
  const auto one_hot = OneHotPredictions(benchmark, predictions);
  r.ap = CocoMap(benchmark, one_hot, options);
  const auto merged = MergePerCaption(benchmark, predictions, options.rank_iou);
  r.rank = RankFromScores(benchmark, merged);
  r.objects = benchmark.object_count();
  r.groups = benchmark.groups.size();
  r.predictions = predictions.size();
  return r;
}

}  // namespace fgovd

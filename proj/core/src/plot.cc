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

#include "fgovd/plot.h"

#include <algorithm>
#include <map>

#include <fmt/format.h>

namespace fgovd {

std::vector<SweepPoint> SweepNegativeCount(std::span<const ImageRecord> images,
                                           const CaptionMap& captions,
                                           const NegativeSpec& base,
                                           std::span<const std::size_t> ns,
                                           std::span<const SweepSource> sources,
                                           const AttributeTaxonomy& tax,
                                           const EvalOptions& options) {
  std::vector<SweepPoint> points;
  for (std::size_t n : ns) {
    NegativeSpec spec = base;
    spec.count = n;
    const Benchmark b = AssembleBenchmark(images, captions, spec, tax);
    for (const SweepSource& src : sources) {
      const auto preds = RunSynth(b, src.profile);
      const EvalReport r = Evaluate(b, preds, options);
      points.push_back({src.label, n, r.ap.map, r.rank.median});
    }
  }
  return points;
}

std::string SweepToCsv(std::span<const SweepPoint> points) {
  std::string out = "source,n,map,median_rank\n";
  for (const SweepPoint& p : points) {
    out += fmt::format("{},{},{},{:g}\n", p.source, p.n,
                       p.map < 0 ? std::string() : fmt::format("{:.4f}", 100 * p.map),
                       p.median_rank);
  }
  return out;
}

std::string SweepToSvg(std::span<const SweepPoint> points, bool rank_panel) {
  constexpr double kW = 640, kH = 400, kLeft = 60, kRight = 150, kTop = 30,
                   kBottom = 50;
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                            "#ff7f0e", "#9467bd", "#8c564b"};
  std::map<std::string, std::vector<const SweepPoint*>> lines;
  std::vector<std::string> order;
  std::size_t n_min = SIZE_MAX, n_max = 0;
  double y_max = rank_panel ? 1.0 : 100.0;
  for (const SweepPoint& p : points) {
    if (!lines.contains(p.source)) order.push_back(p.source);
    lines[p.source].push_back(&p);
    n_min = std::min(n_min, p.n);
    n_max = std::max(n_max, p.n);
    if (rank_panel) y_max = std::max(y_max, p.median_rank);
  }
  if (points.empty()) n_min = n_max = 0;
  const double y_min = rank_panel ? 1.0 : 0.0;
  if (y_max <= y_min) y_max = y_min + 1;
  const double plot_w = kW - kLeft - kRight, plot_h = kH - kTop - kBottom;
  auto px = [&](std::size_t n) {
    if (n_max == n_min) return kLeft + plot_w / 2;
    return kLeft + plot_w * static_cast<double>(n - n_min) /
                       static_cast<double>(n_max - n_min);
  };
  auto py = [&](double v) { return kTop + plot_h * (1 - (v - y_min) / (y_max - y_min)); };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      kW, kH, kW, kH);
  svg += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kW, kH);
  svg += fmt::format(
      "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n"
      "<line x1=\"{0}\" y1=\"{2}\" x2=\"{3}\" y2=\"{2}\" stroke=\"black\"/>\n",
      kLeft, kTop, kTop + plot_h, kLeft + plot_w);
  for (int i = 0; i <= 4; ++i) {
    const double v = y_min + (y_max - y_min) * i / 4.0;
    svg += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.1f}</text>\n",
        kLeft - 6, py(v) + 4, v);
  }
  std::vector<std::size_t> ticks;
  for (const SweepPoint& p : points) ticks.push_back(p.n);
  std::sort(ticks.begin(), ticks.end());
  ticks.erase(std::unique(ticks.begin(), ticks.end()), ticks.end());
  for (std::size_t n : ticks) {
    svg += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", px(n),
        kTop + plot_h + 16, n);
  }
  svg += fmt::format(
      "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">negative captions (N)"
      "</text>\n",
      kLeft + plot_w / 2, kH - 12);
  svg += fmt::format(
      "<text x=\"14\" y=\"{:.1f}\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 14 {:.1f})\">{}</text>\n",
      kTop + plot_h / 2, kTop + plot_h / 2, rank_panel ? "median rank" : "mAP");

  for (std::size_t i = 0; i < order.size(); ++i) {
    const char* color = kColors[i % std::size(kColors)];
    auto pts = lines[order[i]];
    std::sort(pts.begin(), pts.end(),
              [](const SweepPoint* a, const SweepPoint* b) { return a->n < b->n; });
    std::string path;
    for (const SweepPoint* p : pts) {
      const double v = rank_panel ? p->median_rank : 100 * std::max(p->map, 0.0);
      path += fmt::format("{:.1f},{:.1f} ", px(p->n), py(v));
      svg += fmt::format("<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"3\" fill=\"{}\"/>\n",
                         px(p->n), py(v), color);
    }
    svg += fmt::format(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n",
        path, color);
    const double ly = kTop + 16 * static_cast<double>(i);
    svg += fmt::format(
        "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"12\" height=\"3\" fill=\"{}\"/>\n"
        "<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n",
        kLeft + plot_w + 16, ly + 4, color, kLeft + plot_w + 34, ly + 8, order[i]);
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace fgovd

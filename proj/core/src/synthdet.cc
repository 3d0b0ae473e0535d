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

#include "fgovd/synthdet.h"

#include <algorithm>
#include <string>

#include <fmt/format.h>

#include "fgovd/errors.h"
#include "fgovd/rng.h"

namespace fgovd {

std::string_view ToString(SynthKind kind) {
  switch (kind) {
    case SynthKind::kPerfect:
      return "perfect";
    case SynthKind::kRandom:
      return "random";
    case SynthKind::kNoisy:
      return "noisy";
  }
  return "perfect";
}

SynthKind ParseSynthKind(std::string_view name) {
  for (SynthKind k : {SynthKind::kPerfect, SynthKind::kRandom, SynthKind::kNoisy}) {
    if (ToString(k) == name) return k;
  }
  throw ConfigError(fmt::format("unknown synthetic profile '{}'", name));
}

void SynthProfile::Validate() const {
  if (!(sigma >= 0)) throw ConfigError("sigma must be >= 0");
  if (!(jitter >= 0 && jitter <= 0.5)) throw ConfigError("jitter must be in [0, 0.5]");
}

std::vector<Prediction> RunSynth(const Benchmark& benchmark,
                                 const SynthProfile& profile) {
  profile.Validate();
  std::vector<Prediction> out;
  for (const ObjectGroup& g : benchmark.groups) {
    Rng rng(DeriveSeed(profile.seed, static_cast<std::uint64_t>(g.group_id)));
    const std::size_t t = g.vocabulary.size();
    for (ObjectId id : g.object_ids) {
      const StructuredObject* obj = benchmark.FindObject(g.image_id, id);
      if (!obj) {
        throw InputError(fmt::format("group {} references missing object {}",
                                     g.group_id, id));
      }
      Prediction p;
      p.image_id = g.image_id;
      p.group_id = g.group_id;
      p.bbox = obj->bbox;
      p.scores.assign(t, 0.0);
      switch (profile.kind) {
        case SynthKind::kPerfect:
          p.scores[0] = 1.0;
          break;
        case SynthKind::kRandom:
          for (double& s : p.scores) s = rng.Uniform01();
          break;
        case SynthKind::kNoisy: {
          p.bbox.x += rng.Uniform(-profile.jitter, profile.jitter) * p.bbox.w;
          p.bbox.y += rng.Uniform(-profile.jitter, profile.jitter) * p.bbox.h;
          p.scores[0] =
              std::clamp(rng.Normal(profile.mu, profile.sigma), 0.0, 1.0);
          for (std::size_t j = 1; j < t; ++j) {
            p.scores[j] = rng.Uniform(0.0, profile.mu);
          }
          break;
        }
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<PerCaptionPrediction> ToPerCaption(
    std::span<const Prediction> predictions) {
  std::vector<PerCaptionPrediction> out;
  for (const Prediction& p : predictions) {
    for (std::size_t j = 0; j < p.scores.size(); ++j) {
      out.push_back({p.image_id, p.group_id, j, p.bbox, p.scores[j]});
    }
  }
  return out;
}

namespace {

struct CategorySpec {
  const char* name;
  std::vector<const char*> parts;
};

const std::vector<CategorySpec>& Categories() {
  static const std::vector<CategorySpec> kCategories = {
      {"chair", {"leg", "seat", "back"}},
      {"mug", {"handle"}},
      {"lamp", {"shade", "pipe"}},
      {"knife", {"handle", "blade"}},
      {"hat", {}},
      {"basket", {"handle"}},
      {"pillow", {}},
      {"bench", {"leg", "seat"}},
      {"plate", {}},
      {"bottle", {"cap"}},
      {"bag", {"strap"}},
      {"vase", {}},
  };
  return kCategories;
}

std::string Pick(const AttributeTaxonomy& tax, AttrType type, Rng& rng) {
  std::vector<std::string> usable;
  for (const auto& v : tax.values(type)) {
    if (!tax.IsNegativesOnly(type, v)) usable.push_back(v);
  }
  return usable[rng.UniformIndex(usable.size())];
}

StructuredObject RandomObject(const AttributeTaxonomy& tax, Rng& rng) {
  const auto& cats = Categories();
  const CategorySpec& cat = cats[rng.UniformIndex(cats.size())];
  StructuredObject o;
  o.category = cat.name;
  o.attributes.push_back({AttrType::kColor, Pick(tax, AttrType::kColor, rng)});
  if (rng.Uniform01() < 0.8) {
    o.attributes.push_back({AttrType::kMaterial, Pick(tax, AttrType::kMaterial, rng)});
  }
  if (rng.Uniform01() < 0.4) {
    o.attributes.push_back({AttrType::kPattern, Pick(tax, AttrType::kPattern, rng)});
  }
  if (rng.Uniform01() < 0.2) {
    o.attributes.push_back(
        {AttrType::kTransparency, Pick(tax, AttrType::kTransparency, rng)});
  }
  const std::size_t n_parts =
      cat.parts.empty() ? 0 : rng.UniformIndex(std::min<std::size_t>(2, cat.parts.size()) + 1);
  for (std::size_t idx : rng.SampleWithoutReplacement(cat.parts.size(), n_parts)) {
    Part p{cat.parts[idx], {}};
    p.attributes.push_back({AttrType::kColor, Pick(tax, AttrType::kColor, rng)});
    if (rng.Uniform01() < 0.5) {
      p.attributes.push_back({AttrType::kMaterial, Pick(tax, AttrType::kMaterial, rng)});
    }
    o.parts.push_back(std::move(p));
  }
  // Guarantee three slots so every difficulty level applies.
  while (AttributeSlots(o).size() < 3) {
    const AttrType extra =
        rng.Uniform01() < 0.5 ? AttrType::kMaterial : AttrType::kPattern;
    Attribute a{extra, Pick(tax, extra, rng)};
    if (std::find(o.attributes.begin(), o.attributes.end(), a) == o.attributes.end()) {
      o.attributes.push_back(std::move(a));
    }
  }
  return o;
}

}  // namespace

SyntheticCorpus MakeSyntheticCorpus(const SyntheticCorpusOptions& options,
                                    const AttributeTaxonomy& tax) {
  constexpr double kWidth = 640, kHeight = 480;
  constexpr int kCols = 3, kRows = 2;
  constexpr double kCellW = kWidth / kCols, kCellH = kHeight / kRows;

  Rng rng(options.seed);
  SyntheticCorpus corpus;
  ObjectId next_object = 1;
  const std::size_t max_objects =
      std::clamp<std::size_t>(options.max_objects_per_image, 1, kCols * kRows);
  for (std::size_t i = 0; i < options.images; ++i) {
    ImageRecord img;
    img.image_id = static_cast<ImageId>(i + 1);
    img.width = kWidth;
    img.height = kHeight;
    img.file_name = fmt::format("synthetic/{:06d}.jpg", img.image_id);
    const std::size_t n_objects = 1 + rng.UniformIndex(max_objects);
    const auto cells = rng.SampleWithoutReplacement(kCols * kRows, n_objects);
    for (std::size_t c : cells) {
      StructuredObject obj;
      if (!img.objects.empty() && rng.Uniform01() < options.duplicate_probability) {
        obj = img.objects.back();
      } else {
        do {
          obj = SimplifyObject(RandomObject(tax, rng), tax);
        } while (AttributeSlots(obj).size() < 3);
      }
      obj.object_id = next_object++;
      obj.image_id = img.image_id;
      // Sizes span the small, medium and large area ranges.
      const double w = rng.Uniform(16.0, kCellW - 8.0);
      const double h = rng.Uniform(16.0, kCellH - 8.0);
      const double cx = static_cast<double>(c % kCols) * kCellW;
      const double cy = static_cast<double>(c / kCols) * kCellH;
      obj.bbox = {cx + rng.Uniform(0.0, kCellW - w), cy + rng.Uniform(0.0, kCellH - h),
                  w, h};
      corpus.captions[obj.object_id] =
          Caption{RenderTemplateCaption(obj), obj.object_id, obj.image_id,
                  Provenance::kGenerated, false};
      img.objects.push_back(std::move(obj));
    }
    corpus.images.push_back(std::move(img));
  }
  return corpus;
}

}  // namespace fgovd

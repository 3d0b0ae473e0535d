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

#include "fgovd/io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "fgovd/errors.h"
#include "fgovd/text.h"
#include "structure_json.h"

namespace fgovd {
namespace {

using nlohmann::ordered_json;

ordered_json BoxToJson(const BBox& b) { return {b.x, b.y, b.w, b.h}; }

BBox BoxFromJson(const ordered_json& node) {
  if (!node.is_array() || node.size() != 4) {
    throw std::invalid_argument("bbox must be [x, y, w, h]");
  }
  for (const auto& v : node) {
    if (!v.is_number()) throw std::invalid_argument("bbox entries must be numbers");
  }
  return {node[0].get<double>(), node[1].get<double>(), node[2].get<double>(),
          node[3].get<double>()};
}

// Calls `fn` on every non-blank line with its 1-based number.
template <typename Fn>
void ForEachLine(std::string_view document, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    std::size_t end = document.find('\n', pos);
    if (end == std::string_view::npos) end = document.size();
    ++line_no;
    std::string_view line = document.substr(pos, end - pos);
    if (!text::Trim(line).empty()) fn(line_no, line);
    pos = end + 1;
  }
}

ordered_json ObjectToJson(const StructuredObject& obj) {
  ordered_json o;
  o["id"] = obj.object_id;
  o["category"] = obj.category;
  o["bbox"] = BoxToJson(obj.bbox);
  o["area"] = obj.bbox.area();
  o["attributes"] = internal::AttributesToJson(obj.attributes);
  o["parts"] = internal::PartsToJson(obj.parts);
  return o;
}

std::string StrategyName(Strategy s) {
  switch (s) {
    case Strategy::kTrivial:
      return "trivial";
    case Strategy::kDifficulty:
      return "difficulty";
    case Strategy::kAttribute:
      return "attribute";
  }
  return "difficulty";
}

Strategy ParseStrategy(const std::string& s) {
  if (s == "trivial") return Strategy::kTrivial;
  if (s == "difficulty") return Strategy::kDifficulty;
  if (s == "attribute") return Strategy::kAttribute;
  throw std::invalid_argument(fmt::format("unknown strategy '{}'", s));
}

// AP in [0, 1] or -1, formatted as a percentage.
std::string Pct(double ap) {
  return ap < 0 ? std::string("-") : fmt::format("{:.1f}", 100.0 * ap);
}

ordered_json ApJson(double ap) {
  return ap < 0 ? ordered_json(nullptr) : ordered_json(ap);
}

}  // namespace

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw ConfigError(fmt::format("short write to '{}'", path.string()));
  }
  std::filesystem::rename(tmp, path);
}

std::string CaptionsToJsonl(const CaptionMap& captions) {
  std::string out;
  for (const auto& [id, c] : captions) {
    ordered_json j;
    j["object_id"] = id;
    j["image_id"] = c.image_id;
    j["caption"] = c.text;
    j["source_object_id"] = c.source_object_id;
    j["provenance"] = std::string(ToString(c.provenance));
    j["review"] = c.review;
    out += j.dump() + "\n";
  }
  return out;
}

CaptionMap ParseCaptionsJsonl(std::string_view document,
                              std::string_view source_name) {
  CaptionMap out;
  ForEachLine(document, [&](std::size_t line_no, std::string_view line) {
    const std::string where = fmt::format("{}:{}", source_name, line_no);
    try {
      const auto j = ordered_json::parse(line);
      const ObjectId id = j.at("object_id").get<ObjectId>();
      Caption c;
      c.text = j.at("caption").get<std::string>();
      c.image_id = j.at("image_id").get<ImageId>();
      c.source_object_id = j.value("source_object_id", id);
      const std::string prov = j.value("provenance", std::string("generated"));
      auto p = ParseProvenance(prov);
      if (!p) throw ParseError(where, fmt::format("unknown provenance '{}'", prov));
      c.provenance = *p;
      c.review = j.value("review", false);
      if (text::Trim(c.text).empty()) throw ParseError(where, "empty caption");
      if (!out.emplace(id, std::move(c)).second) {
        throw ParseError(where, fmt::format("duplicate object_id {}", id));
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where, e.what());
    }
  });
  return out;
}

CaptionMap LoadCaptions(const std::filesystem::path& path) {
  return ParseCaptionsJsonl(ReadFile(path), path.string());
}

std::string TranscriptToJsonl(ObjectId object_id,
                              const PromptTranscript& transcript) {
  std::string out;
  for (std::size_t i = 0; i < transcript.size(); ++i) {
    const Turn& t = transcript.turns()[i];
    ordered_json j;
    j["object_id"] = object_id;
    j["turn"] = i;
    j["role"] = std::string(ToString(t.role));
    j["content"] = t.text;
    out += j.dump() + "\n";
  }
  return out;
}

std::string RejectionToJson(const StructuredObject& obj,
                            const CaptionOutcome& outcome,
                            const FollowupTable& followups) {
  ordered_json j;
  j["object_id"] = obj.object_id;
  j["image_id"] = obj.image_id;
  j["category"] = obj.category;
  j["attempts"] = ordered_json::array();
  for (const Attempt& a : outcome.attempts) {
    ordered_json aj;
    aj["answer"] = a.text;
    if (a.issue) {
      aj["check"] = static_cast<int>(a.issue->code);
      aj["followup"] = FormatFollowup(followups, *a.issue);
    } else {
      aj["check"] = nullptr;
    }
    j["attempts"].push_back(std::move(aj));
  }
  return j.dump();
}

std::string BenchmarkToJson(const Benchmark& b) {
  ordered_json meta;
  meta["format"] = "fgovd-benchmark";
  meta["version"] = 1;
  meta["name"] = b.name;
  meta["spec"] = {{"strategy", StrategyName(b.spec.strategy)},
                  {"k", b.spec.k},
                  {"attr_type", std::string(ToString(b.spec.attr_type))},
                  {"n", b.spec.count},
                  {"seed", b.spec.seed}};
  meta["tool_version"] = b.provenance.tool_version;
  meta["taxonomy_version"] = b.provenance.taxonomy_version;
  meta["taxonomy_fingerprint"] = b.provenance.taxonomy_fingerprint;
  meta["backend_id"] = b.provenance.backend_id;
  meta["config_hash"] = b.provenance.config_hash;
  meta["filters"] = b.provenance.filters;
  meta["exclusions"] = ordered_json::array();
  for (const Exclusion& e : b.exclusions) {
    meta["exclusions"].push_back(
        {{"image_id", e.image_id}, {"object_ids", e.object_ids}, {"reason", e.reason}});
  }

  ordered_json doc;
  doc["meta"] = std::move(meta);
  doc["images"] = ordered_json::array();
  for (const ImageRecord& img : b.images) {
    ordered_json ij;
    ij["id"] = img.image_id;
    ij["width"] = img.width;
    ij["height"] = img.height;
    ij["file_name"] = img.file_name;
    ij["objects"] = ordered_json::array();
    for (const auto& o : img.objects) ij["objects"].push_back(ObjectToJson(o));
    doc["images"].push_back(std::move(ij));
  }
  doc["groups"] = ordered_json::array();
  for (const ObjectGroup& g : b.groups) {
    ordered_json gj;
    gj["group_id"] = g.group_id;
    gj["image_id"] = g.image_id;
    gj["object_ids"] = g.object_ids;
    gj["positive"] = g.vocabulary.positive.text;
    gj["negatives"] = g.vocabulary.negatives;
    gj["short"] = g.vocabulary.short_set;
    gj["caption_provenance"] = std::string(ToString(g.vocabulary.positive.provenance));
    gj["review"] = g.vocabulary.positive.review;
    doc["groups"].push_back(std::move(gj));
  }
  return doc.dump(1) + "\n";
}

Benchmark ParseBenchmark(std::string_view document, std::string_view source_name) {
  const std::string src(source_name);
  ordered_json doc;
  try {
    doc = ordered_json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(fmt::format("{}@byte {}", src, e.byte), e.what());
  }
  Benchmark b;
  std::string where = src + ": meta";
  try {
    const auto& meta = doc.at("meta");
    if (meta.value("format", std::string()) != "fgovd-benchmark") {
      throw ParseError(where, "not a benchmark document");
    }
    b.name = meta.at("name").get<std::string>();
    const auto& spec = meta.at("spec");
    b.spec.strategy = ParseStrategy(spec.at("strategy").get<std::string>());
    b.spec.k = spec.at("k").get<int>();
    auto type = ParseAttrType(spec.at("attr_type").get<std::string>());
    if (!type) throw ParseError(where, "unknown attr_type");
    b.spec.attr_type = *type;
    b.spec.count = spec.at("n").get<std::size_t>();
    b.spec.seed = spec.at("seed").get<std::uint64_t>();
    b.provenance.tool_version = meta.value("tool_version", std::string());
    b.provenance.taxonomy_version = meta.value("taxonomy_version", std::string());
    b.provenance.taxonomy_fingerprint =
        meta.value("taxonomy_fingerprint", std::string());
    b.provenance.backend_id = meta.value("backend_id", std::string());
    b.provenance.config_hash = meta.value("config_hash", std::string());
    if (meta.contains("filters")) {
      b.provenance.filters = meta["filters"].get<std::vector<std::string>>();
    }
    if (meta.contains("exclusions")) {
      for (const auto& e : meta["exclusions"]) {
        b.exclusions.push_back({e.at("image_id").get<ImageId>(),
                                e.at("object_ids").get<std::vector<ObjectId>>(),
                                e.value("reason", std::string())});
      }
    }

    const auto& images = doc.at("images");
    for (std::size_t i = 0; i < images.size(); ++i) {
      where = fmt::format("{}: images[{}]", src, i);
      const auto& ij = images[i];
      ImageRecord img;
      img.image_id = ij.at("id").get<ImageId>();
      img.width = ij.value("width", 0.0);
      img.height = ij.value("height", 0.0);
      img.file_name = ij.value("file_name", std::string());
      for (const auto& oj : ij.at("objects")) {
        StructuredObject o;
        o.object_id = oj.at("id").get<ObjectId>();
        o.image_id = img.image_id;
        o.category = oj.at("category").get<std::string>();
        o.bbox = BoxFromJson(oj.at("bbox"));
        if (oj.contains("attributes")) {
          o.attributes = internal::AttributesFromJson(oj["attributes"], where);
        }
        if (oj.contains("parts")) o.parts = internal::PartsFromJson(oj["parts"], where);
        img.objects.push_back(std::move(o));
      }
      b.images.push_back(std::move(img));
    }

    const auto& groups = doc.at("groups");
    for (std::size_t i = 0; i < groups.size(); ++i) {
      where = fmt::format("{}: groups[{}]", src, i);
      const auto& gj = groups[i];
      ObjectGroup g;
      g.group_id = gj.at("group_id").get<GroupId>();
      g.image_id = gj.at("image_id").get<ImageId>();
      g.object_ids = gj.at("object_ids").get<std::vector<ObjectId>>();
      if (g.object_ids.empty()) throw ParseError(where, "group without objects");
      Caption& pos = g.vocabulary.positive;
      pos.text = gj.at("positive").get<std::string>();
      pos.image_id = g.image_id;
      pos.source_object_id = g.object_ids.front();
      auto prov = ParseProvenance(gj.value("caption_provenance", std::string("generated")));
      if (!prov) throw ParseError(where, "unknown caption_provenance");
      pos.provenance = *prov;
      pos.review = gj.value("review", false);
      g.vocabulary.negatives = gj.at("negatives").get<std::vector<std::string>>();
      g.vocabulary.short_set = gj.value("short", false);
      for (ObjectId id : g.object_ids) {
        bool found = false;
        for (const auto& img : b.images) {
          if (img.image_id != g.image_id) continue;
          for (const auto& o : img.objects) found = found || o.object_id == id;
        }
        if (!found) {
          throw ParseError(where, fmt::format("object {} not in image {}", id, g.image_id));
        }
      }
      b.groups.push_back(std::move(g));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(where, e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where, e.what());
  }
  return b;
}

Benchmark LoadBenchmark(const std::filesystem::path& path) {
  return ParseBenchmark(ReadFile(path), path.string());
}

std::string_view ToString(PredictionMode mode) {
  return mode == PredictionMode::kVector ? "vector" : "per-caption";
}

PredictionFile ParsePredictions(std::string_view document,
                                std::string_view source_name,
                                const Benchmark* benchmark) {
  PredictionFile file;
  bool have_header = false;
  ForEachLine(document, [&](std::size_t line_no, std::string_view line) {
    auto fail = [&](const std::string& what) {
      throw InputError(fmt::format("{}:{}: {}", source_name, line_no, what));
    };
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      fail(fmt::format("malformed JSON ({})", e.what()));
    }
    if (!j.is_object()) fail("expected a JSON object");
    if (!have_header) {
      if (j.value("format", std::string()) != "fgovd-predictions") {
        fail("missing header line {\"format\": \"fgovd-predictions\", ...}");
      }
      if (j.value("version", 0) != 1) fail("unsupported predictions version");
      const std::string mode = j.value("mode", std::string());
      if (mode == "vector") {
        file.mode = PredictionMode::kVector;
      } else if (mode == "per-caption") {
        file.mode = PredictionMode::kPerCaption;
      } else {
        fail(fmt::format("unknown mode '{}'", mode));
      }
      have_header = true;
      return;
    }
    try {
      const ImageId image = j.at("image_id").get<ImageId>();
      const GroupId group = j.at("group_id").get<GroupId>();
      BBox box;
      try {
        box = BoxFromJson(j.at("bbox"));
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
      if (!(box.w > 0 && box.h > 0) || !std::isfinite(box.x) ||
          !std::isfinite(box.y) || !std::isfinite(box.w) || !std::isfinite(box.h)) {
        fail("bbox must be finite with w, h > 0");
      }
      const ObjectGroup* g = nullptr;
      if (benchmark) {
        g = benchmark->FindGroup(group);
        if (!g) fail(fmt::format("unknown group_id {}", group));
        if (g->image_id != image) {
          fail(fmt::format("group {} belongs to image {}, not {}", group, g->image_id,
                           image));
        }
      }
      if (file.mode == PredictionMode::kVector) {
        Prediction p{image, group, box, j.at("scores").get<std::vector<double>>()};
        for (double s : p.scores) {
          if (!std::isfinite(s)) fail("non-finite score");
        }
        if (p.scores.empty()) fail("empty scores vector");
        if (g && p.scores.size() != g->vocabulary.size()) {
          fail(fmt::format("scores has {} entries but group {} has {} captions",
                           p.scores.size(), group, g->vocabulary.size()));
        }
        file.vector.push_back(std::move(p));
      } else {
        if (!j.at("caption_index").is_number_integer() ||
            j["caption_index"].get<std::int64_t>() < 0) {
          fail("caption_index must be a non-negative integer");
        }
        PerCaptionPrediction p{image, group, j["caption_index"].get<std::size_t>(), box,
                               j.at("confidence").get<double>()};
        if (!std::isfinite(p.confidence)) fail("non-finite confidence");
        if (g && p.caption_index >= g->vocabulary.size()) {
          fail(fmt::format("caption_index {} out of range for group {} ({} captions)",
                           p.caption_index, group, g->vocabulary.size()));
        }
        file.per_caption.push_back(p);
      }
    } catch (const nlohmann::json::exception& e) {
      fail(e.what());
    }
  });
  if (!have_header) {
    throw InputError(fmt::format("{}: empty predictions file", source_name));
  }
  return file;
}

PredictionFile LoadPredictions(const std::filesystem::path& path,
                               const Benchmark* benchmark) {
  return ParsePredictions(ReadFile(path), path.string(), benchmark);
}

namespace {

std::string Header(PredictionMode mode, const Metadata& extra) {
  ordered_json h;
  h["format"] = "fgovd-predictions";
  h["version"] = 1;
  h["mode"] = std::string(ToString(mode));
  for (const auto& [k, v] : extra) h[k] = v;
  return h.dump() + "\n";
}

}  // namespace

std::string PredictionsToJsonl(std::span<const Prediction> predictions,
                               const Metadata& header_extra) {
  std::string out = Header(PredictionMode::kVector, header_extra);
  for (const Prediction& p : predictions) {
    ordered_json j;
    j["image_id"] = p.image_id;
    j["group_id"] = p.group_id;
    j["bbox"] = BoxToJson(p.bbox);
    j["scores"] = p.scores;
    out += j.dump() + "\n";
  }
  return out;
}

std::string PredictionsToJsonl(std::span<const PerCaptionPrediction> predictions,
                               const Metadata& header_extra) {
  std::string out = Header(PredictionMode::kPerCaption, header_extra);
  for (const PerCaptionPrediction& p : predictions) {
    ordered_json j;
    j["image_id"] = p.image_id;
    j["group_id"] = p.group_id;
    j["caption_index"] = p.caption_index;
    j["bbox"] = BoxToJson(p.bbox);
    j["confidence"] = p.confidence;
    out += j.dump() + "\n";
  }
  return out;
}

std::string ReportsToJson(std::span<const EvalReport> reports,
                          const Metadata& provenance) {
  ordered_json doc;
  ordered_json prov = ordered_json::object();
  for (const auto& [k, v] : provenance) prov[k] = v;
  doc["provenance"] = std::move(prov);
  doc["reports"] = ordered_json::array();
  for (const EvalReport& r : reports) {
    ordered_json j;
    j["benchmark"] = r.benchmark;
    j["groups"] = r.groups;
    j["objects"] = r.objects;
    j["predictions"] = r.predictions;
    j["categories"] = r.ap.categories;
    j["map"] = ApJson(r.ap.map);
    j["ap50"] = ApJson(r.ap.ap50);
    j["ap75"] = ApJson(r.ap.ap75);
    j["map_small"] = ApJson(r.ap.map_small);
    j["map_medium"] = ApJson(r.ap.map_medium);
    j["map_large"] = ApJson(r.ap.map_large);
    j["map_x100"] = r.ap.map < 0 ? ordered_json(nullptr) : ordered_json(100 * r.ap.map);
    j["median_rank"] = r.rank.ranks.empty() ? ordered_json(nullptr)
                                            : ordered_json(r.rank.median);
    j["ranked_objects"] = r.rank.ranks.size();
    j["unranked_objects"] = r.rank.skipped;
    ordered_json ranks = ordered_json::array();
    for (const ObjectRank& o : r.rank.ranks) {
      ranks.push_back({{"image_id", o.image_id},
                       {"group_id", o.group_id},
                       {"object_id", o.object_id},
                       {"rank", o.rank},
                       {"vocabulary_size", o.vocabulary_size}});
    }
    j["ranks"] = std::move(ranks);
    doc["reports"].push_back(std::move(j));
  }
  return doc.dump(1) + "\n";
}

std::string FormatReportTable(std::span<const EvalReport> reports, bool by_size) {
  std::string out = fmt::format("{:<22}{:>8}{:>8}{:>8}{:>8}", "Benchmark", "Groups",
                                "Objs", "mAP", "AP50");
  if (by_size) out += fmt::format("{:>8}{:>8}{:>8}", "mAP_S", "mAP_M", "mAP_L");
  out += fmt::format("{:>8}\n", "Rank");
  for (const EvalReport& r : reports) {
    out += fmt::format("{:<22}{:>8}{:>8}{:>8}{:>8}", r.benchmark, r.groups, r.objects,
                       Pct(r.ap.map), Pct(r.ap.ap50));
    if (by_size) {
      out += fmt::format("{:>8}{:>8}{:>8}", Pct(r.ap.map_small), Pct(r.ap.map_medium),
                         Pct(r.ap.map_large));
    }
    out += fmt::format("{:>8}\n", r.rank.ranks.empty()
                                      ? std::string("-")
                                      : fmt::format("{:g}", r.rank.median));
  }
  return out;
}

std::string RanksToCsv(std::span<const EvalReport> reports) {
  std::string out = "benchmark,image_id,group_id,object_id,rank,vocabulary_size\n";
  for (const EvalReport& r : reports) {
    for (const ObjectRank& o : r.rank.ranks) {
      out += fmt::format("{},{},{},{},{},{}\n", r.benchmark, o.image_id, o.group_id,
                         o.object_id, o.rank, o.vocabulary_size);
    }
  }
  return out;
}

}  // namespace fgovd

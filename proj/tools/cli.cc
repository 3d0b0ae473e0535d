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

#include "cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>
#include "CLI11.hpp"

#include "fgovd/annotations.h"
#include "fgovd/benchkit.h"
#include "fgovd/captiongen.h"
#include "fgovd/completion_client.h"
#include "fgovd/errors.h"
#include "fgovd/io.h"
#include "fgovd/metrics.h"
#include "fgovd/negatives.h"
#include "fgovd/plot.h"
#include "fgovd/rng.h"
#include "fgovd/synthdet.h"
#include "fgovd/taxonomy.h"

namespace fgovd::cli {
namespace fs = std::filesystem;
namespace {

// Thrown for bad flag combinations detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string Hex(std::uint64_t v) { return fmt::format("{:016x}", v); }

std::string HashFile(const std::string& path) {
  return path.empty() ? std::string("-") : Hex(StableHash(ReadFile(path)));
}

void RequireFile(const std::string& flag, const std::string& path) {
  if (path.empty()) throw UsageError(fmt::format("{} is required", flag));
  if (!fs::exists(path)) {
    throw UsageError(fmt::format("{} '{}' does not exist", flag, path));
  }
}

AttributeTaxonomy TaxonomyFrom(const std::string& path) {
  if (!path.empty()) RequireFile("--taxonomy", path);
  return LoadTaxonomy(path);
}

struct SpecFlags {
  std::string strategy;
  int k = 0;
  std::string attr;
  std::size_t n = 10;
  std::uint64_t seed = 0;
};

void AddSpecFlags(CLI::App* cmd, SpecFlags& f) {
  cmd->add_option("--strategy", f.strategy,
                  "hard|medium|easy|trivial|color|material|pattern|"
                  "transparency, or difficulty (with --k) / attribute (with --attr)");
  cmd->add_option("--k", f.k, "attributes replaced per negative (difficulty)");
  cmd->add_option("--attr", f.attr, "attribute type replaced (attribute)");
  cmd->add_option("--n", f.n, "negatives per positive caption")->capture_default_str();
  cmd->add_option("--seed", f.seed, "base seed")->capture_default_str();
}

NegativeSpec SpecFrom(const SpecFlags& f) {
  if (f.strategy == "difficulty") {
    if (f.k < 1 || f.k > 3) throw UsageError("--strategy difficulty needs --k 1|2|3");
    return NegativeSpec::Difficulty(f.k, f.n, f.seed);
  }
  if (f.strategy == "attribute") {
    auto type = ParseAttrType(f.attr);
    if (!type) throw UsageError("--strategy attribute needs --attr <type>");
    return NegativeSpec::Attribute(*type, f.n, f.seed);
  }
  if (f.k != 0 || !f.attr.empty()) {
    throw UsageError("--k/--attr only apply to difficulty/attribute strategies");
  }
  try {
    return NegativeSpec::FromName(f.strategy, f.n, f.seed);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
}

std::vector<ImageRecord> SimplifiedImages(const std::string& annotations,
                                          const AttributeTaxonomy& tax,
                                          std::vector<SkippedObject>* skipped) {
  auto simplified = SimplifyAnnotations(LoadAnnotations(annotations), tax);
  if (skipped) *skipped = std::move(simplified.skipped);
  return std::move(simplified.images);
}

fs::path OutputFile(const std::string& out, const std::string& default_name) {
  if (out.empty()) return default_name;
  fs::path p(out);
  if (p.has_extension()) return p;
  return p / default_name;
}

// generate-captions -------------------------------------------------------

struct CaptionFlags {
  std::string annotations;
  std::string taxonomy;
  std::string profile;
  std::string examples;
  std::size_t iterations = 1;
  std::size_t max_words = 60;
  bool no_propagate = false;
  std::string out = ".";
};

int CmdGenerateCaptions(const CaptionFlags& f, std::ostream& out, std::ostream& err) {
  RequireFile("--annotations", f.annotations);
  RequireFile("--backend-profile", f.profile);
  const AttributeTaxonomy tax = TaxonomyFrom(f.taxonomy);
  BackendProfile profile = LoadBackendProfile(f.profile);
  if (const char* url = std::getenv("FGOVD_BACKEND_URL"); url && *url) {
    profile.base_url = url;
  }
  std::vector<InContextExample> examples = DefaultInContextExamples();
  if (!f.examples.empty()) {
    RequireFile("--examples", f.examples);
    examples = LoadInContextExamples(f.examples);
  }
  std::vector<SkippedObject> skipped;
  const auto images = SimplifiedImages(f.annotations, tax, &skipped);
  auto client = MakeCompletionClient(profile);

  GenerationOptions options;
  options.n_iterations = f.iterations;
  options.check.max_words = f.max_words;
  const FollowupTable& followups = DefaultFollowups();

  CaptionMap captions;
  std::string transcripts, rejections;
  std::size_t generated = 0, rejected = 0, propagated = 0;
  for (const ImageRecord& img : images) {
    CaptionMap local;
    for (const StructuredObject& obj : img.objects) {
      CaptionOutcome outcome =
          CreateCaption(obj, followups, *client, examples, options);
      transcripts += TranscriptToJsonl(obj.object_id, outcome.transcript);
      if (outcome.caption) {
        local[obj.object_id] = *outcome.caption;
        ++generated;
      } else {
        rejections += RejectionToJson(obj, outcome, followups) + "\n";
        ++rejected;
      }
    }
    if (!f.no_propagate) {
      CaptionMap filled = PropagateCaptions(img, local);
      propagated += filled.size() - local.size();
      local = std::move(filled);
    }
    captions.merge(local);
  }
  std::string skipped_jsonl;
  for (const SkippedObject& s : skipped) {
    skipped_jsonl += fmt::format(
        "{{\"object_id\":{},\"image_id\":{},\"reason\":\"degenerate\"}}\n",
        s.object_id, s.image_id);
  }
  const fs::path dir(f.out);
  WriteFile(dir / "captions.jsonl", CaptionsToJsonl(captions));
  WriteFile(dir / "transcripts.jsonl", transcripts);
  WriteFile(dir / "rejections.jsonl", rejections);
  WriteFile(dir / "skipped.jsonl", skipped_jsonl);
  out << fmt::format(
      "backend {}: {} accepted, {} rejected, {} propagated, {} degenerate skipped\n",
      client->BackendId(), generated, rejected, propagated, skipped.size());
  (void)err;
  return kExitOk;
}

// build -------------------------------------------------------------------

struct BuildFlags {
  std::string annotations;
  std::string captions;
  std::string taxonomy;
  SpecFlags spec;
  bool all = false;
  bool trivial_same_class = false;
  std::string out = ".";
};

std::string ConfigHash(const std::vector<std::string>& parts) {
  std::string joined;
  for (const auto& p : parts) joined += p + '\x1f';
  return Hex(StableHash(joined));
}

int CmdBuild(const BuildFlags& f, std::ostream& out, std::ostream& err) {
  RequireFile("--annotations", f.annotations);
  RequireFile("--captions", f.captions);
  if (f.all == !f.spec.strategy.empty()) {
    throw UsageError("give exactly one of --strategy or --all");
  }
  const AttributeTaxonomy tax = TaxonomyFrom(f.taxonomy);
  const auto images = SimplifiedImages(f.annotations, tax, nullptr);
  const CaptionMap captions = LoadCaptions(f.captions);

  std::vector<NegativeSpec> specs;
  if (f.all) {
    for (const std::string& name : BenchmarkNames()) {
      specs.push_back(NegativeSpec::FromName(name, f.spec.n, f.spec.seed));
    }
  } else {
    specs.push_back(SpecFrom(f.spec));
  }
  std::string backend_id;
  for (const auto& [id, c] : captions) {
    if (c.provenance == Provenance::kProvided) backend_id = "provided";
  }
  const std::string ann_hash = HashFile(f.annotations);
  const std::string cap_hash = HashFile(f.captions);

  AssembleOptions options;
  options.trivial_same_class_ok = f.trivial_same_class;
  options.backend_id = backend_id.empty() ? "captions:" + cap_hash : backend_id;
  for (const NegativeSpec& spec : specs) {
    Benchmark b = AssembleBenchmark(images, captions, spec, tax, options);
    b.provenance.tool_version = std::string(kToolVersion);
    b.provenance.config_hash =
        ConfigHash({"build", spec.Name(), std::to_string(spec.k),
                    std::to_string(spec.count), std::to_string(spec.seed),
                    tax.Fingerprint(), ann_hash, cap_hash,
                    f.trivial_same_class ? "same-class" : "other-class"});
    const fs::path path = f.all ? fs::path(f.out) / (b.name + ".json")
                                : OutputFile(f.out, b.name + ".json");
    WriteFile(path, BenchmarkToJson(b));
    out << fmt::format("{}: {} images, {} groups, {} objects, {} excluded -> {}\n",
                       b.name, b.images.size(), b.groups.size(), b.object_count(),
                       b.exclusions.size(), path.string());
    if (b.groups.empty()) {
      err << fmt::format("warning: benchmark '{}' is empty\n", b.name);
    }
  }
  return kExitOk;
}

// evaluate ----------------------------------------------------------------

struct EvalFlags {
  std::string benchmark;
  std::string predictions;
  bool owl_subset = false;
  std::size_t token_limit = 16;
  bool by_size = false;
  bool by_length = false;
  double nms_iou = 0.5;
  bool no_nms = false;
  std::size_t max_dets = 0;
  std::string out;
};

EvalReport EvaluateFile(const Benchmark& b, const PredictionFile& p,
                        const EvalOptions& options) {
  if (p.mode == PredictionMode::kVector) return Evaluate(b, p.vector, options);
  return EvaluatePerCaption(b, p.per_caption, options);
}

// Drops predictions whose group is not in the (filtered) benchmark.
PredictionFile Restrict(const PredictionFile& p, const Benchmark& b) {
  PredictionFile r;
  r.mode = p.mode;
  for (const auto& x : p.vector) {
    if (b.FindGroup(x.group_id)) r.vector.push_back(x);
  }
  for (const auto& x : p.per_caption) {
    if (b.FindGroup(x.group_id)) r.per_caption.push_back(x);
  }
  return r;
}

int CmdEvaluate(const EvalFlags& f, std::ostream& out, std::ostream& err) {
  RequireFile("--benchmark", f.benchmark);
  RequireFile("--predictions", f.predictions);
  Benchmark b = LoadBenchmark(f.benchmark);
  const PredictionFile preds = LoadPredictions(f.predictions, &b);
  EvalOptions options;
  options.nms_iou = f.nms_iou;
  options.apply_nms = !f.no_nms;
  if (f.max_dets > 0) options.max_dets = f.max_dets;

  if (f.owl_subset) b = FilterMaxTokens(b, f.token_limit);
  std::vector<EvalReport> reports;
  reports.push_back(EvaluateFile(b, Restrict(preds, b), options));
  if (f.owl_subset) reports.back().benchmark += fmt::format("-max{}", f.token_limit);
  if (f.by_length) {
    for (const Benchmark& part : BucketByCaptionLength(b)) {
      reports.push_back(EvaluateFile(part, Restrict(preds, part), options));
    }
  }
  out << FormatReportTable(reports, f.by_size);
  if (f.out.empty()) return kExitOk;

  const Metadata provenance = {
      {"tool_version", std::string(kToolVersion)},
      {"benchmark_config_hash", b.provenance.config_hash},
      {"seed", std::to_string(b.spec.seed)},
      {"predictions_mode", std::string(ToString(preds.mode))},
      {"filters", fmt::format("{}", fmt::join(b.provenance.filters, ";"))},
      {"config_hash",
       ConfigHash({"evaluate", HashFile(f.benchmark), HashFile(f.predictions),
                   f.owl_subset ? std::to_string(f.token_limit) : "-",
                   f.by_length ? "by-length" : "-", fmt::format("{}", f.nms_iou),
                   f.no_nms ? "no-nms" : "nms", std::to_string(f.max_dets)})}};
  const fs::path dir(f.out);
  WriteFile(dir / "report.json", ReportsToJson(reports, provenance));
  WriteFile(dir / "report.txt", FormatReportTable(reports, f.by_size));
  WriteFile(dir / "ranks.csv", RanksToCsv(reports));
  (void)err;
  return kExitOk;
}

// stats -------------------------------------------------------------------

int CmdStats(const std::vector<std::string>& benchmarks, const std::string& csv,
             std::ostream& out) {
  if (benchmarks.empty()) throw UsageError("--benchmark is required");
  std::vector<std::pair<std::string, BenchmarkStats>> rows;
  for (const auto& path : benchmarks) {
    RequireFile("--benchmark", path);
    const Benchmark b = LoadBenchmark(path);
    rows.emplace_back(b.name, ComputeStats(b));
  }
  out << FormatStatsTable(rows);
  if (!csv.empty()) WriteFile(csv, FormatStatsCsv(rows));
  return kExitOk;
}

// plot --------------------------------------------------------------------

struct PlotFlags {
  std::string annotations;
  std::string captions;
  std::string taxonomy;
  SpecFlags spec;
  std::vector<std::size_t> ns = {1, 2, 3, 5, 7, 10};
  std::vector<std::string> profiles = {"noisy", "random"};
  double mu = 0.7;
  double sigma = 0.15;
  std::size_t synthetic_images = 0;
  std::string out = ".";
};

int CmdPlot(PlotFlags f, std::ostream& out) {
  const AttributeTaxonomy tax = TaxonomyFrom(f.taxonomy);
  std::vector<ImageRecord> images;
  CaptionMap captions;
  if (f.synthetic_images > 0) {
    SyntheticCorpusOptions o;
    o.images = f.synthetic_images;
    o.seed = f.spec.seed;
    auto corpus = MakeSyntheticCorpus(o, tax);
    images = std::move(corpus.images);
    captions = std::move(corpus.captions);
  } else {
    RequireFile("--annotations", f.annotations);
    RequireFile("--captions", f.captions);
    images = SimplifiedImages(f.annotations, tax, nullptr);
    captions = LoadCaptions(f.captions);
  }
  if (f.spec.strategy.empty()) f.spec.strategy = "hard";
  const NegativeSpec base = SpecFrom(f.spec);
  std::vector<SweepSource> sources;
  for (const std::string& name : f.profiles) {
    SynthProfile p;
    try {
      p.kind = ParseSynthKind(name);
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
    p.mu = f.mu;
    p.sigma = f.sigma;
    p.seed = f.spec.seed;
    sources.push_back({name, p});
  }
  std::sort(f.ns.begin(), f.ns.end());
  const auto points = SweepNegativeCount(images, captions, base, f.ns, sources, tax);
  const fs::path dir(f.out);
  WriteFile(dir / "sweep.csv", SweepToCsv(points));
  WriteFile(dir / "sweep_map.svg", SweepToSvg(points, false));
  WriteFile(dir / "sweep_rank.svg", SweepToSvg(points, true));
  out << SweepToCsv(points);
  return kExitOk;
}

// synth / synth-data --------------------------------------------------------

struct SynthFlags {
  std::string benchmark;
  std::string profile = "perfect";
  double mu = 0.7;
  double sigma = 0.15;
  double jitter = 0;
  std::uint64_t seed = 0;
  bool per_caption = false;
  std::string out;
};

int CmdSynth(const SynthFlags& f, std::ostream& out) {
  RequireFile("--benchmark", f.benchmark);
  SynthProfile p;
  try {
    p.kind = ParseSynthKind(f.profile);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  p.mu = f.mu;
  p.sigma = f.sigma;
  p.jitter = f.jitter;
  p.seed = f.seed;
  try {
    p.Validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  const Benchmark b = LoadBenchmark(f.benchmark);
  const auto preds = RunSynth(b, p);
  const Metadata header = {{"source", fmt::format("synth:{}", f.profile)},
                           {"seed", std::to_string(f.seed)},
                           {"benchmark", b.name},
                           {"tool_version", std::string(kToolVersion)}};
  const std::string body = f.per_caption
                               ? PredictionsToJsonl(ToPerCaption(preds), header)
                               : PredictionsToJsonl(preds, header);
  if (f.out.empty()) {
    out << body;
  } else {
    WriteFile(f.out, body);
  }
  return kExitOk;
}

int CmdSynthData(std::size_t images, std::uint64_t seed, const std::string& taxonomy,
                 const std::string& out_dir, std::ostream& out) {
  const AttributeTaxonomy tax = TaxonomyFrom(taxonomy);
  SyntheticCorpusOptions o;
  o.images = images;
  o.seed = seed;
  const SyntheticCorpus corpus = MakeSyntheticCorpus(o, tax);
  const fs::path dir(out_dir);
  WriteFile(dir / "annotations.json", AnnotationsToJson(corpus.images));
  WriteFile(dir / "captions.jsonl", CaptionsToJsonl(corpus.captions));
  out << fmt::format("{} images, {} objects -> {}\n", corpus.images.size(),
                     corpus.captions.size(), dir.string());
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Fine-grained open-vocabulary detection benchmark toolkit", "fgovd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  CaptionFlags cap;
  auto* gen = app.add_subcommand("generate-captions",
                                 "caption structured annotations with a backend");
  gen->add_option("--annotations", cap.annotations, "annotation JSON");
  gen->add_option("--taxonomy", cap.taxonomy, "taxonomy JSON (default built in)");
  gen->add_option("--backend-profile", cap.profile, "backend profile JSON");
  gen->add_option("--examples", cap.examples, "in-context examples JSON");
  gen->add_option("--iterations", cap.iterations, "prompting rounds per object")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  gen->add_option("--max-words", cap.max_words, "caption length limit")
      ->capture_default_str();
  gen->add_flag("--no-propagate", cap.no_propagate,
                "leave objects without an accepted caption uncaptioned");
  gen->add_option("--out", cap.out, "output directory")->capture_default_str();

  BuildFlags build;
  auto* bld = app.add_subcommand("build", "assemble benchmark files");
  bld->add_option("--annotations", build.annotations, "annotation JSON");
  bld->add_option("--captions", build.captions, "captions JSONL");
  bld->add_option("--taxonomy", build.taxonomy, "taxonomy JSON");
  AddSpecFlags(bld, build.spec);
  bld->add_flag("--all", build.all, "build all eight benchmarks");
  bld->add_flag("--trivial-same-class", build.trivial_same_class,
                "let trivial negatives come from the same category");
  bld->add_option("--out", build.out, "output file or directory")
      ->capture_default_str();

  EvalFlags ev;
  auto* evc = app.add_subcommand("evaluate", "score predictions on a benchmark");
  evc->add_option("--benchmark", ev.benchmark, "benchmark JSON");
  evc->add_option("--predictions", ev.predictions, "predictions JSONL");
  evc->add_flag("--owl-subset", ev.owl_subset,
                "keep groups whose captions fit --token-limit");
  evc->add_option("--token-limit", ev.token_limit, "token limit for --owl-subset")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  evc->add_flag("--by-size", ev.by_size, "include mAP_S/M/L columns");
  evc->add_flag("--by-length", ev.by_length, "add caption-length bucket reports");
  evc->add_option("--nms-iou", ev.nms_iou, "class-agnostic NMS IoU threshold")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  evc->add_flag("--no-nms", ev.no_nms, "predictions are already suppressed");
  evc->add_option("--max-dets", ev.max_dets, "detections per image, 0 = unlimited")
      ->capture_default_str();
  evc->add_option("--out", ev.out, "directory for report.json/txt and ranks.csv");

  std::vector<std::string> stats_benchmarks;
  std::string stats_csv;
  auto* st = app.add_subcommand("stats", "benchmark statistics table");
  st->add_option("--benchmark", stats_benchmarks, "benchmark JSON (repeatable)");
  st->add_option("--out", stats_csv, "CSV output file");

  PlotFlags plot;
  auto* pl = app.add_subcommand("plot", "mAP and rank against the number of negatives");
  pl->add_option("--annotations", plot.annotations, "annotation JSON");
  pl->add_option("--captions", plot.captions, "captions JSONL");
  pl->add_option("--taxonomy", plot.taxonomy, "taxonomy JSON");
  AddSpecFlags(pl, plot.spec);
  pl->add_option("--ns", plot.ns, "negative counts to sweep")->delimiter(',');
  pl->add_option("--profiles", plot.profiles, "synthetic detectors")->delimiter(',');
  pl->add_option("--mu", plot.mu, "noisy positive mean")->capture_default_str();
  pl->add_option("--sigma", plot.sigma, "noisy positive spread")->capture_default_str();
  pl->add_option("--synthetic", plot.synthetic_images,
                 "use a synthetic corpus of this many images");
  pl->add_option("--out", plot.out, "output directory")->capture_default_str();

  SynthFlags syn;
  auto* sy = app.add_subcommand("synth", "synthetic detector predictions");
  sy->add_option("--benchmark", syn.benchmark, "benchmark JSON");
  sy->add_option("--profile", syn.profile, "perfect|random|noisy")
      ->capture_default_str();
  sy->add_option("--mu", syn.mu, "noisy positive mean")->capture_default_str();
  sy->add_option("--sigma", syn.sigma, "noisy positive spread")->capture_default_str();
  sy->add_option("--jitter", syn.jitter, "noisy box shift fraction")
      ->capture_default_str();
  sy->add_option("--seed", syn.seed, "seed")->capture_default_str();
  sy->add_flag("--per-caption", syn.per_caption, "write per-caption records");
  sy->add_option("--out", syn.out, "predictions JSONL (default stdout)");

  std::size_t data_images = 60;
  std::uint64_t data_seed = 0;
  std::string data_taxonomy, data_out = ".";
  auto* sd = app.add_subcommand("synth-data", "synthetic annotations and captions");
  sd->add_option("--images", data_images, "image count")->capture_default_str();
  sd->add_option("--seed", data_seed, "seed")->capture_default_str();
  sd->add_option("--taxonomy", data_taxonomy, "taxonomy JSON");
  sd->add_option("--out", data_out, "output directory")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return CmdGenerateCaptions(cap, out, err);
    if (bld->parsed()) return CmdBuild(build, out, err);
    if (evc->parsed()) return CmdEvaluate(ev, out, err);
    if (st->parsed()) return CmdStats(stats_benchmarks, stats_csv, out);
    if (pl->parsed()) return CmdPlot(plot, out);
    if (sy->parsed()) return CmdSynth(syn, out);
    if (sd->parsed()) return CmdSynthData(data_images, data_seed, data_taxonomy, data_out, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BackendError& e) {
    err << "backend error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace fgovd::cli
